"""Attractors of clopen invariant sets.

A clopen set that the map cannot leave traps orbits; if it also spreads
sideways (some iterate lands inside the intersection of the set with
both its shift neighbors) its attractor is a subshift and is computed
from below through an invariant SFT.

Run with:  python demos/03_attractors.py
"""

from calimits import (
    BINARY,
    CellularAutomaton,
    ClopenSet,
    is_invariant_clopen,
    is_spreading_clopen,
    limit_approximation,
    omega_of_clopen,
    reach_clopen,
    spreading_states,
    subshift_equal,
)

ca = CellularAutomaton.eca(128)  # the AND rule
print("spreading states of rule 128:", [BINARY.name(s) for s in spreading_states(ca)])

# The cylinder [0] is invariant (AND preserves a 0) and spreading
# (a 0 infects all three cells above it in one step).
basin = ClopenSet.cylinder(BINARY, "0")
print("[0] invariant:", is_invariant_clopen(ca, basin).outcome_name())
spread = is_spreading_clopen(ca, basin)
print("[0] spreading with exponent:", spread.certificate["exponent"])

# Its attractor is the single all-zero configuration: a minimal attractor.
report = omega_of_clopen(ca, basin)
print("attractor symbols:", sorted(BINARY.format_word(w) for w in report.omega.language(1)))
print("exact:", report.exact, "| minimal:", report.minimal)

# The maximal attractor (the limit set) still contains the all-ones
# configuration, so this automaton carries at least two distinct
# subshift attractors.
approx = limit_approximation(ca, budget=5)
print("\n1 survives in every limit stage:", all((1,) in s.language(1) for s in approx.images))
print("attractor of [0] equals the limit approximation:",
      subshift_equal(report.omega, approx.last))

# Uniform reachability: every point of [0] reaches [00] within one step.
target = ClopenSet.cylinder(BINARY, "00")
v = reach_clopen(ca, basin, target, budget=3)
print("\n[0] reaches [00] uniformly in", v.certificate["steps"], "step")

# The identity rule spreads nothing: the same queries stay Unknown.
ident = CellularAutomaton.eca(204)
print("identity [0] spreading:", is_spreading_clopen(ident, basin, budget=3).outcome_name())

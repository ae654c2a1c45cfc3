"""Rule transformations with audited certificates.

Three constructions connect the behavior of one automaton to another:
a fresh spreading state that absorbs the old one's constant block, a
product whose second layer disappears on its spreading state, and a
surjectivity counterexample that leaves the limit set untouched.

Run with:  python demos/05_constructions.py
"""

import json

from calimits import (
    BINARY,
    CellularAutomaton,
    SoficShift,
    augment_spreading,
    check_nilpotent,
    check_surjective,
    find_state_avoiding_orbit,
    image,
    limit_approximation,
    product_collapse,
    subshift_equal,
    surjective_counterexample,
)

# -- spreading-state augmentation ---------------------------------------------
ca128 = CellularAutomaton.eca(128)
aug, audit = augment_spreading(ca128, "0")
print("augmented alphabet:", aug.alphabet.symbols)
print("audit:", json.dumps(audit, indent=2))

# The nilpotency status transfers through the construction.
ca0 = CellularAutomaton.eca(0)
aug0, _ = augment_spreading(ca0, "0")
print("rule 0 nilpotent:", check_nilpotent(ca0).outcome_name(),
      "| augmented:", check_nilpotent(aug0).outcome_name())

# The bounded search for an orbit avoiding the old spreading state:
# all-ones works for the AND rule; nothing works for the constant rule.
print("orbit avoiding 0 under rule 128:", find_state_avoiding_orbit(ca128, "0"))
print("orbit avoiding 0 under rule 0:", find_state_avoiding_orbit(ca0, "0"))

# -- product with a collapsing layer --------------------------------------------
ident = CellularAutomaton.eca(204)
h, prod, paudit = product_collapse(ident, ca0, "0")
print("\nproduct alphabet:", h.alphabet.symbols)
approx = limit_approximation(h, 4)
print("product stabilizes at:", approx.stabilized_at)
omega = approx.limit_set.with_alphabet(BINARY)
print("its limit set is the full binary shift:",
      subshift_equal(omega, SoficShift.full(BINARY)))

# With a non-nilpotent second layer the product keeps extra symbols
# alive forever: two different limit sets, hence a detectable difference.
h2, _, _ = product_collapse(ident, ca128, "0")
marker = h2.alphabet.index("1_1")
approx2 = limit_approximation(h2, 4)
print("1_1 survives every stage:",
      all((marker,) in s.language(1) for s in approx2.images))

# -- surjectivity counterexample -------------------------------------------------
shift_rule = CellularAutomaton.eca(170)
g, caudit = surjective_counterexample(shift_rule, "0")
print("\ncounterexample alphabet:", g.alphabet.symbols)
v = check_surjective(g)
print("counterexample surjective:", v.outcome_name(), "orphan word:", v.certificate["word"])
img = image(g, SoficShift.full(g.alphabet))
print("yet its image is the full binary shift:",
      subshift_equal(img.with_alphabet(BINARY), SoficShift.full(BINARY)))

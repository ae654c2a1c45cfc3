"""Limit sets by exact forward images.

The limit set of an automaton is the intersection of all forward images
of the full shift.  Each image is sofic and computable, the chain is
decreasing, and a repeated stage means the chain is constant from there
on: the limit set is then known exactly and the automaton is stable.

Run with:  python demos/02_limit_sets.py
"""

from calimits import (
    BINARY,
    CellularAutomaton,
    check_nilpotent,
    check_stable,
    limit_approximation,
    limit_language,
    separating_word,
    verify_nilpotent_certificate,
)

# -- a stable case: the constant-zero rule ------------------------------------
ca0 = CellularAutomaton.eca(0)
approx = limit_approximation(ca0, budget=4)
print("rule 0 stabilizes at step:", approx.stabilized_at)
print("its limit set has the single symbol:", approx.limit_set.language(1))

verdict = check_nilpotent(ca0)
print("nilpotent:", verdict.outcome_name(), "certificate:", verdict.certificate)
print("certificate replays:", verify_nilpotent_certificate(ca0, verdict))

# -- an unstable-looking case: the AND rule ------------------------------------
# Rule 128 erases every finite island of 1s, but wider and wider gaps
# survive longer: the image chain keeps shrinking forever.
ca128 = CellularAutomaton.eca(128)
approx = limit_approximation(ca128, budget=5)
print("\nrule 128 stabilized:", approx.exact)
for i in range(len(approx.images) - 1):
    w = separating_word(approx.images[i], approx.images[i + 1])
    print(f"  stage {i} loses the word {BINARY.format_word(w)}")

# The stability checker never answers False: a shrinking finite chain
# proves nothing, so it reports Unknown with the evidence attached.
verdict = check_stable(ca128, budget=5)
print("stable:", verdict.outcome_name())

# The limit language at a fixed word length can stall early even while
# deeper words are still disappearing; the status says which happened.
words, status = limit_language(ca128, 3, budget=5)
print(
    "3-words of the limit set (upper bound):",
    sorted(BINARY.format_word(u) for u in words),
)
print("status:", status)

# Nilpotency refuted by two fixed points: both constants survive forever.
verdict = check_nilpotent(ca128)
print("nilpotent:", verdict.outcome_name(), "witnesses:", verdict.certificate["first"], verdict.certificate["second"])

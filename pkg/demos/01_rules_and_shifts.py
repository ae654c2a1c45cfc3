"""Rules, words and sofic shifts: the vocabulary of the package.

Run with:  python demos/01_rules_and_shifts.py
"""

from calimits import (
    BINARY,
    SFT,
    CellularAutomaton,
    SoficShift,
    eca_rule,
    is_mixing,
    separating_word,
    subshift_equal,
)

# -- local rules -------------------------------------------------------------
# Elementary rules follow the usual convention: the output for a
# neighborhood, read as a 3-bit number, is that bit of the rule number.

rule = eca_rule(110)
print("rule 110 on neighborhood 110:", rule((1, 1, 0)))
print("rule id of rule 110:", rule.descriptor().canonical_id)

# Words are plain tuples of symbol indices; the alphabet translates.
w = BINARY.word("0110111")
print("sliding application of 110 to 0110111:", BINARY.format_word(rule.extend(w)))

# The n-th iterate is again a local rule, with n times the radius.
twice = rule.power(2)
print("radius of the second iterate:", twice.radius)

# -- sofic shifts and SFTs ----------------------------------------------------
# The golden mean shift forbids the word 11.  As an SFT it is given by
# its allowed 2-words; the de Bruijn graph presents it as a sofic shift.

golden = SFT(BINARY, 2, frozenset({(0, 0), (0, 1), (1, 0)}))
gshift = golden.to_sofic()
print("\ngolden mean 4-words:", sorted(BINARY.format_word(u) for u in gshift.language(4)))
print("golden mean is mixing:", is_mixing(golden))

# The even shift (1s separated by even 0-runs) is sofic but not an SFT:
# every finite-order approximation strictly overshoots it.
even = SoficShift(BINARY, [(0, 1, 0), (0, 0, 1), (1, 0, 0)])
approx = even.sft_approximation(3).to_sofic()
print("even shift equals its order-3 approximation:", subshift_equal(even, approx))
wit = separating_word(approx, even)
print("word separating them:", BINARY.format_word(wit))

# Subshift equality is decided exactly, through canonical minimal
# presentations of the factor languages.
full = SoficShift.full(BINARY)
ca = CellularAutomaton.eca(170)
from calimits import image

print("\nshift rule is surjective:", subshift_equal(image(ca, full), full))

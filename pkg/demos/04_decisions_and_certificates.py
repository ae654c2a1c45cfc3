"""Exact decisions and their machine-checkable certificates.

Surjectivity, injectivity, closing and periodic-point existence are
decided exactly on the full shift.  Every True/False answer ships a
certificate, and every certificate has an independent verifier that
replays it by brute force.

Run with:  python demos/04_decisions_and_certificates.py
"""

import json

from calimits import (
    CellularAutomaton,
    check_closing,
    check_injective,
    check_surjective,
    limit_property_semitest,
    pair_shift,
    periodic_point_exists,
    verify_closing_certificate,
    verify_injective_certificate,
    verify_surjective_certificate,
)

for number in (170, 90, 128):
    ca = CellularAutomaton.eca(number)
    v = check_surjective(ca)
    print(f"rule {number} surjective: {v.outcome_name()}")
    if v.certificate:
        print("  certificate:", json.dumps(v.certificate))
    print("  replay passes:", verify_surjective_certificate(ca, v))

# Injectivity of the XOR rule fails; the certificate is a pair of
# distinct periodic configurations with the same image.
ca90 = CellularAutomaton.eca(90)
v = check_injective(ca90)
print("\nrule 90 injective:", v.outcome_name())
print("  collapsed pair:", v.certificate["first"], v.certificate["second"])
print("  replay passes:", verify_injective_certificate(ca90, v))

# Closing: the XOR rule recovers a cell from one known cell and the
# image of a 2-window; the AND rule is refuted by a lone 1 collapsing
# onto the all-zero point.
v = check_closing(ca90, "right", budget=4)
print("\nrule 90 right-closing:", v.outcome_name(), "at exponent", v.certificate["exponent"])

ca128 = CellularAutomaton.eca(128)
v = check_closing(ca128, "right", budget=4)
print("rule 128 right-closing:", v.outcome_name())
print("  asymptotic pair:", json.dumps(v.certificate["first"]), json.dumps(v.certificate["second"]))
print("  replay passes:", verify_closing_certificate(ca128, v))

# Periodic points of any temporal period are decidable.
v = periodic_point_exists(ca128, 2)
print("\nrule 128 has a 2-periodic point:", v.outcome_name(), "witness:", v.certificate["point"])

# The pair shift tracks a configuration and its image side by side.
ps = pair_shift(ca128, 1)
print("\npair shift of rule 128 at window 1:",
      len(ps.sft.words), "pair words;",
      "source projection vertices:", ps.proj_x.n_vertices)

# Properties of the map on the limit set are undecidable in general;
# the surrogate answers only when the limit set is known exactly.
ident = CellularAutomaton.eca(204)
print("\nidentity acts as the identity on its limit set:",
      limit_property_semitest(ident, "identity").outcome_name())
print("rule 128 identity surrogate:",
      limit_property_semitest(ca128, "identity", budget=4).to_json())

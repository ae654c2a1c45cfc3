from itertools import product

import pytest

from calimits import (
    BINARY,
    Alphabet,
    CellularAutomaton,
    ConstructionError,
    LocalRule,
    PeriodicConfiguration,
    SoficShift,
    augment_spreading,
    check_nilpotent,
    check_surjective,
    find_state_avoiding_orbit,
    image,
    limit_approximation,
    product_alphabet,
    product_collapse,
    spreading_states,
    subshift_equal,
    surjective_counterexample,
)


# -- spreading-state augmentation --------------------------------------------


def test_augment_rejects_non_spreading(eca):
    with pytest.raises(ConstructionError):
        augment_spreading(eca(204), "0")


def test_augment_table_audit_exhaustive(eca):
    aug, audit = augment_spreading(eca(128), "0")
    assert audit["new_state_spreading"]
    assert audit["only_all_s_maps_to_new"]
    assert audit["old_neighborhoods_preserved"]
    alph = aug.alphabet
    assert alph.symbols == ("0", "1", "0_prime")
    s, one, prime = alph.index("0"), alph.index("1"), alph.index("0_prime")
    f, g = eca(128).rule, aug.rule
    # all 27 neighborhoods against the defining case split
    for w in product(range(3), repeat=3):
        if prime in w or w == (s, s, s):
            assert g(w) == prime, w
        else:
            assert g(w) == f(w), w


def test_augment_new_state_is_spreading(eca):
    for n in (0, 128, 254):
        aug, _ = augment_spreading(eca(n), spreading_states(eca(n))[0])
        prime = aug.alphabet.size - 1
        assert prime in spreading_states(aug)


def test_augment_nilpotency_transfer(eca):
    # nilpotent input stays nilpotent, with a nearby stabilization step
    base = check_nilpotent(eca(0))
    assert base.is_true
    aug, _ = augment_spreading(eca(0), "0")
    lifted = check_nilpotent(aug)
    assert lifted.is_true
    assert lifted.certificate["step"] <= base.certificate["step"] + 2
    assert lifted.certificate["symbol"] == "0_prime"


def test_augment_refutation_lifts(eca):
    # a non-nilpotent input gives a non-nilpotent augmentation
    refuted = check_nilpotent(eca(128))
    assert refuted.is_false
    aug, _ = augment_spreading(eca(128), "0")
    lifted = check_nilpotent(aug)
    assert lifted.is_false


def test_augment_name_collision():
    a = Alphabet(("0", "0_prime"))
    table = [0] * (2 ** 3)
    ca = CellularAutomaton(LocalRule(a, 1, table))
    assert 0 in spreading_states(ca)
    with pytest.raises(ConstructionError, match="reserved"):
        augment_spreading(ca, "0")


def test_avoiding_orbit_search(eca):
    pc = find_state_avoiding_orbit(eca(128), "0")
    assert pc == PeriodicConfiguration((1,))
    assert find_state_avoiding_orbit(eca(0), "0") is None


# -- product with collapsing layer -------------------------------------------


def test_product_alphabet_roundtrip():
    prod = product_alphabet(BINARY, BINARY, "0")
    assert prod.alphabet.symbols == ("0", "1", "0_1", "1_1")
    for c in range(prod.alphabet.size):
        assert prod.encode(*prod.decode(c)) == c
    for a in range(2):
        for b in range(2):
            c = prod.encode(a, b)
            assert prod.decode(c) == (a, b)


def test_product_alphabet_name_collision():
    weird = Alphabet(("0", "0_1"))
    with pytest.raises(ConstructionError, match="collide"):
        product_alphabet(weird, BINARY, "0")


def test_product_requires_spreading(eca):
    with pytest.raises(ConstructionError):
        product_collapse(eca(204), eca(204), "0")


def test_product_table_is_componentwise(eca):
    h, prod, audit = product_collapse(eca(204), eca(0), "0")
    assert audit["decode_encode_roundtrip"]
    f, g = eca(204).rule, eca(0).rule
    for w in product(range(4), repeat=3):
        first = tuple(prod.decode(c)[0] for c in w)
        second = tuple(prod.decode(c)[1] for c in w)
        assert h.rule(w) == prod.encode(f(first), g(second)), w


def test_product_with_nilpotent_layer_recovers_first_factor(eca):
    h, prod, _ = product_collapse(eca(204), eca(0), "0")
    approx = limit_approximation(h, 4)
    assert approx.exact and approx.stabilized_at == 1
    omega = approx.limit_set.with_alphabet(BINARY)
    assert subshift_equal(omega, SoficShift.full(BINARY))
    # the product acts as the first factor (identity) on its limit set
    for w in product((0, 1), repeat=3):
        assert h.rule(w) == w[1]


def test_product_with_surviving_layer_differs(eca):
    h, prod, _ = product_collapse(eca(204), eca(128), "0")
    marker = h.alphabet.index("1_1")
    approx = limit_approximation(h, 4)
    for stage in approx.images:
        assert (marker,) in stage.language(1)
    # the marker symbol sits on a fixed configuration, hence in the limit set
    pc = PeriodicConfiguration((marker,))
    assert pc.step(h.rule) == pc


def test_product_pads_radii():
    a = Alphabet(("0", "1"))
    small = CellularAutomaton(LocalRule(a, 0, [0, 0]))  # radius-0 constant, spreading 0
    big = CellularAutomaton.eca(204)
    h, prod, _ = product_collapse(big, small, "0")
    assert h.radius == 1
    for w in product(range(h.alphabet.size), repeat=3):
        first = tuple(prod.decode(c)[0] for c in w)
        assert h.rule(w) == prod.encode(first[1], 0), w


def test_product_a_cylinder_union_invariant_and_spreading(eca):
    from calimits import ClopenSet, is_invariant_clopen, is_spreading_clopen

    h, prod, _ = product_collapse(eca(204), eca(0), "0")
    u = ClopenSet.symbol_union(h.alphabet, ("0", "1"))
    assert is_invariant_clopen(h, u).is_true
    assert is_spreading_clopen(h, u).is_true


# -- surjectivity counterexample ---------------------------------------------


def test_counterexample_requires_surjective(eca):
    with pytest.raises(ConstructionError):
        surjective_counterexample(eca(128), "0")


def test_counterexample_properties(eca):
    g, audit = surjective_counterexample(eca(170), "0")
    assert g.alphabet.symbols == ("0", "1", "b")
    assert audit["new_symbol_unreachable"]
    v = check_surjective(g)
    assert v.is_false and v.certificate["word"] == "b"
    img = image(g, SoficShift.full(g.alphabet))
    assert subshift_equal(img.with_alphabet(BINARY), SoficShift.full(BINARY))


def test_counterexample_preserves_limit_set(eca):
    g, _ = surjective_counterexample(eca(170), "0")
    la_g = limit_approximation(g, 3)
    la_f = limit_approximation(eca(170), 3)
    assert la_g.exact and la_g.stabilized_at == 1
    assert subshift_equal(la_g.limit_set.with_alphabet(BINARY), la_f.limit_set)


def test_counterexample_substitution_commutes_with_extension(eca):
    g, _ = surjective_counterexample(eca(170), "0")
    b = g.alphabet.index("b")
    f = eca(170).rule
    for w in product(range(3), repeat=5):
        substituted = tuple(0 if s == b else s for s in w)
        assert g.rule.extend(w) == f.extend(substituted), w


def test_counterexample_name_collision(eca):
    with pytest.raises(ConstructionError, match="reserved"):
        surjective_counterexample(eca(170), "0", new_symbol="1")

"""Acceptance suite: one test per criterion, each printing a PASS/FAIL line.

Every expected value here was produced by an independent brute-force
oracle (exhaustive word or periodic-configuration enumeration) before
being frozen into an assertion; the oracles live next to the criteria
they back.
"""

import random
import time
from contextlib import contextmanager
from itertools import product

from calimits import (
    BINARY,
    Alphabet,
    CellularAutomaton,
    ClopenSet,
    EventuallyPeriodicConfiguration,
    LocalRule,
    PeriodicConfiguration,
    SoficShift,
    augment_spreading,
    check_closing,
    check_injective,
    check_nilpotent,
    check_surjective,
    image,
    is_invariant_clopen,
    is_spreading_clopen,
    limit_approximation,
    limit_language,
    omega_of_clopen,
    pair_shift,
    periodic_point_exists,
    preimage_counts,
    product_collapse,
    separating_word,
    spreading_states,
    subshift_equal,
    subshift_subset,
    surjective_counterexample,
    verify_closing_certificate,
    verify_injective_certificate,
    verify_nilpotent_certificate,
    verify_periodic_point_certificate,
    verify_spreading_certificate,
    verify_surjective_certificate,
)
from calimits.shifts import ShiftError


@contextmanager
def criterion(number, label, seconds=None):
    start = time.monotonic()
    try:
        yield
    except BaseException:
        print(f"FAIL criterion {number}: {label}")
        raise
    elapsed = time.monotonic() - start
    if seconds is not None and elapsed >= seconds:
        print(f"FAIL criterion {number}: {label} (took {elapsed:.1f}s, budget {seconds}s)")
        raise AssertionError(f"criterion {number} exceeded its {seconds}s budget")
    print(f"PASS criterion {number}: {label} ({elapsed:.1f}s)")


def stage_image(ca, n):
    """The n-th forward image of the full shift, computed stage by stage."""
    shift = SoficShift.full(ca.alphabet)
    for _ in range(n):
        shift = image(ca, shift).minimal_presentation()
    return shift


def brute_stage_words(ca, n, k):
    """Oracle: length-k words of the n-th image by exhaustive sliding
    application to every word of length k + 2nr."""
    out = set()
    for u in product(range(ca.alphabet.size), repeat=k + 2 * n * ca.radius):
        w = u
        for _ in range(n):
            w = ca.rule.extend(w)
        out.add(w)
    return out


def test_criterion_1_decidable_check_matrix():
    with criterion(1, "decidable-check matrix with verified certificates", seconds=5):
        eca = {n: CellularAutomaton.eca(n) for n in (0, 90, 128, 170, 204)}

        for n in (170, 204):
            v = check_surjective(eca[n])
            assert v.is_true and verify_surjective_certificate(eca[n], v)
            v = check_injective(eca[n])
            assert v.is_true and verify_injective_certificate(eca[n], v)

        v = check_surjective(eca[90])
        assert v.is_true and verify_surjective_certificate(eca[90], v)
        v = check_injective(eca[90])
        assert v.is_false and verify_injective_certificate(eca[90], v)
        # the classical collapse exists: both constants map to all-zero
        zero, one = PeriodicConfiguration((0,)), PeriodicConfiguration((1,))
        assert zero.step(eca[90].rule) == one.step(eca[90].rule) == zero
        # the emitted pair is a genuine distinct collapse
        x = PeriodicConfiguration.from_json(v.certificate["first"], BINARY)
        y = PeriodicConfiguration.from_json(v.certificate["second"], BINARY)
        assert x != y and x.step(eca[90].rule) == y.step(eca[90].rule)

        v = check_surjective(eca[128])
        assert v.is_false
        assert v.certificate["word"] == "101"
        assert verify_surjective_certificate(eca[128], v)

        v = check_nilpotent(eca[0])
        assert v.is_true and v.certificate["step"] == 1
        assert verify_nilpotent_certificate(eca[0], v)


def test_criterion_2_limit_language_oracle_equivalence():
    with criterion(2, "image-stage languages equal brute-force languages", seconds=10):
        for number in (0, 90, 128, 170, 204):
            ca = CellularAutomaton.eca(number)
            for n in range(4):
                stage = stage_image(ca, n)
                for k in range(1, 6):
                    assert stage.language(k) == brute_stage_words(ca, n, k), (
                        number,
                        n,
                        k,
                    )


def test_criterion_3_and_rule_limit_behavior():
    with criterion(3, "AND-rule limit language and strictly decreasing chain"):
        ca = CellularAutomaton.eca(128)

        words, _ = limit_language(ca, 3)
        assert words == set(product((0, 1), repeat=3)) - {(1, 0, 1)}

        stage2 = stage_image(ca, 2)
        gaps = [(1, 0, 1), (1, 0, 0, 1), (1, 0, 0, 0, 1)]

        def hits_gap(w):
            return any(
                w[i : i + len(g)] == g
                for g in gaps
                for i in range(len(w) - len(g) + 1)
            )

        expected = {w for w in product((0, 1), repeat=5) if not hits_gap(w)}
        assert stage2.language(5) == expected
        assert expected == brute_stage_words(ca, 2, 5)

        approx = limit_approximation(ca, 4)
        assert approx.stabilized_at is None
        assert len(approx.images) == 5
        for a, b in zip(approx.images, approx.images[1:]):
            assert subshift_subset(b, a)
            assert not subshift_equal(a, b)


def test_criterion_4_attractor_suite():
    with criterion(4, "AND-rule attractor of [0] vs the limit approximation"):
        ca = CellularAutomaton.eca(128)
        basin = ClopenSet.cylinder(BINARY, "0")

        inv = is_invariant_clopen(ca, basin)
        assert inv.is_true

        spread = is_spreading_clopen(ca, basin)
        assert spread.is_true and spread.certificate["exponent"] == 1
        assert verify_spreading_certificate(ca, basin, spread)

        report = omega_of_clopen(ca, basin)
        assert report.exact and report.minimal
        assert report.omega.language(1) == {(0,)}

        # the symbol 1 never leaves the limit stages: 1^inf is fixed
        one = PeriodicConfiguration((1,))
        assert one.step(ca.rule) == one
        approx = limit_approximation(ca, 6)
        for stage in approx.images:
            assert (1,) in stage.language(1)

        # two distinct subshift attractors certified: the minimal one from
        # [0], and the maximal one, which contains 1^inf, hence differs
        for stage in approx.images:
            assert not subshift_equal(report.omega, stage)
        assert subshift_subset(report.omega, approx.last)


def brute_closing_window(rule, n):
    """Independent oracle for the closing window condition (plain
    dictionary grouping, no vectorization)."""
    r = rule.radius
    span = 2 * n + 2 * r + 1
    groups = {}
    for u in product(range(rule.alphabet.size), repeat=span):
        key = (u[r : r + n], rule.extend(u))
        groups.setdefault(key, set()).add(u[n + r])
    return all(len(v) == 1 for v in groups.values())


def test_criterion_5_closing_suite():
    with criterion(5, "closing checks and the pair shift"):
        eca204 = CellularAutomaton.eca(204)
        eca90 = CellularAutomaton.eca(90)
        eca128 = CellularAutomaton.eca(128)

        v = check_closing(eca204, "right")
        assert v.is_true and v.certificate["exponent"] == 1

        v = check_closing(eca90, "right", budget=4)
        assert v.is_true and v.certificate["exponent"] == 2
        assert not brute_closing_window(eca90.rule, 1)
        assert brute_closing_window(eca90.rule, 2)

        v = check_closing(eca128, "right", budget=4)
        assert v.is_false
        x = EventuallyPeriodicConfiguration.from_json(v.certificate["first"], BINARY)
        y = EventuallyPeriodicConfiguration.from_json(v.certificate["second"], BINARY)
        assert x != y
        assert x.left == y.left and x.mid_start == y.mid_start
        assert x.step(eca128.rule) == y.step(eca128.rule)
        assert verify_closing_certificate(eca128, v)

        ps = pair_shift(eca128, 1)
        assert subshift_equal(image(eca128, ps.proj_x), ps.proj_y)
        approx = limit_approximation(eca128, 4)
        assert subshift_subset(approx.last, ps.proj_x)


def test_criterion_6_construction_fidelity():
    with criterion(6, "constructions match their defining case splits"):
        eca204 = CellularAutomaton.eca(204)
        eca128 = CellularAutomaton.eca(128)
        eca170 = CellularAutomaton.eca(170)
        eca0 = CellularAutomaton.eca(0)

        # spreading augmentation: exhaustive audit over all 27 neighborhoods
        aug, audit = augment_spreading(eca128, "0")
        assert audit["new_state_spreading"]
        assert audit["only_all_s_maps_to_new"]
        assert audit["old_neighborhoods_preserved"]
        prime = aug.alphabet.index("0_prime")
        for w in product(range(3), repeat=3):
            if prime in w or w == (0, 0, 0):
                assert aug.rule(w) == prime
            else:
                assert aug.rule(w) == eca128.rule(w)

        # identity x nilpotent: the product limit set is the first factor
        h, prod, paudit = product_collapse(eca204, eca0, "0")
        assert paudit["decode_encode_roundtrip"]
        approx = limit_approximation(h, 4)
        assert approx.exact
        omega = approx.limit_set.with_alphabet(BINARY)
        assert subshift_equal(omega, SoficShift.full(BINARY))
        for w in product((0, 1), repeat=3):
            assert h.rule(w) == w[1]

        # identity x AND: the marker symbol survives every stage
        h2, _, _ = product_collapse(eca204, eca128, "0")
        marker = h2.alphabet.index("1_1")
        approx2 = limit_approximation(h2, 4)
        for stage in approx2.images:
            assert (marker,) in stage.language(1)
        fixed = PeriodicConfiguration((marker,))
        assert fixed.step(h2.rule) == fixed

        # surjectivity counterexample: orphan symbol, unchanged image
        g, _ = surjective_counterexample(eca170, "0")
        v = check_surjective(g)
        assert v.is_false and v.certificate["word"] == "b"
        imgB = image(g, SoficShift.full(g.alphabet))
        assert subshift_equal(imgB.with_alphabet(BINARY), SoficShift.full(BINARY))


def _random_rule(rng):
    m = rng.choice((2, 2, 3, 3))
    r = rng.choice((0, 1, 1, 2))
    alphabet = Alphabet(tuple(str(i) for i in range(m)))
    table = [rng.randrange(m) for _ in range(m ** (2 * r + 1))]
    return CellularAutomaton(LocalRule(alphabet, r, table))


def test_criterion_7_randomized_invariant_suite():
    with criterion(7, "randomized invariants over 200 rules", seconds=60):
        rng = random.Random(20250808)
        for index in range(200):
            ca = _random_rule(rng)
            m = ca.alphabet.size
            r = ca.radius

            # image chain decreases; exact inclusion on small graphs, the
            # length-4 language inclusion otherwise (factorial languages
            # make it subsume every shorter length)
            full = SoficShift.full(ca.alphabet)
            s1 = image(ca, full)
            s2 = image(ca, s1)
            for later, earlier in ((s1, full), (s2, s1)):
                if later.n_vertices * max(earlier.n_vertices, 1) <= 4096:
                    try:
                        assert separating_word(later, earlier, max_states=2000) is None
                        continue
                    except ShiftError:
                        pass
                assert later.language(4) <= earlier.language(4)

            # iterate composition agrees with staged sliding application
            n = 2 if (m, r) == (3, 2) else 3
            powered = ca.rule.power(n)
            span = 2 * n * r + 1 + rng.randint(0, 2)
            w = tuple(rng.randrange(m) for _ in range(span))
            staged = w
            for _ in range(n):
                staged = ca.rule.extend(staged)
            assert powered.extend(w) == staged

            # balance at lengths <= 4 is equivalent to the verdict
            verdict = check_surjective(ca)
            expected = m ** (2 * r)
            balanced = all(
                bool((preimage_counts(ca.rule, L) == expected).all())
                for L in (1, 2, 3, 4)
            )
            assert verdict.is_true == balanced, index
            assert verify_surjective_certificate(ca, verdict)

            # periodic points agree with the brute-force search
            steps = rng.choice((1, 2))
            pp = periodic_point_exists(ca, steps)
            brute = _brute_periodic(ca, steps, 4)
            if brute:
                assert pp.is_true
            if pp.is_false:
                assert not brute
            assert verify_periodic_point_certificate(ca, steps, pp)

            # spreading-state cylinder invariants
            if r >= 1:
                for s in spreading_states(ca):
                    basin = ClopenSet(ca.alphabet, 0, 1, {(s,)})
                    assert is_invariant_clopen(ca, basin).is_true
                    spread = is_spreading_clopen(ca, basin)
                    assert spread.is_true and spread.certificate["exponent"] == 1
                    report = omega_of_clopen(ca, basin)
                    assert report.exact and report.minimal
                    assert report.omega.language(1) == {(s,)}


def _brute_periodic(ca, steps, max_period):
    for p in range(1, max_period + 1):
        for word in ca.alphabet.all_words(p):
            x = PeriodicConfiguration(word)
            y = x
            for _ in range(steps):
                y = y.step(ca.rule)
            if y == x:
                return True
    return False

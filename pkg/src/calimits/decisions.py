"""Decidable checks and budgeted semi-decisions on the full shift.

Surjectivity, injectivity and the existence of periodic points are
decided exactly via image automata, pair graphs and de Bruijn fixed
point shifts.  The closing property is decided False exactly (a breach
of the diagonal in the pair graph refutes it) and certified True through
the finite window condition, whose least exponent is searched under a
budget.  Properties of the map restricted to the limit set are
undecidable in general; ``limit_property_semitest`` runs finite
surrogate tests against the best computed stage and only claims an
outcome when that stage is exact.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .alphabet import Alphabet
from .ca import image
from .configurations import EventuallyPeriodicConfiguration, PeriodicConfiguration
from .limits import limit_approximation
from .pairgraph import (
    asymptotic_pair_from_escape,
    equal_image_pair_graph,
    erasable_pair_from_path,
    find_diagonal_escape,
    find_finite_difference_path,
    find_marked_cycle,
    periodic_pair_from_cycle,
)
from .params import DEFAULT_STEP_BUDGET, DEFAULT_WINDOW
from .rules import LocalRule, encode_word, words_array
from .shifts import SFT, ShiftError, SoficShift, is_mixing, separating_word, subshift_equal
from .verdicts import Verdict


# ---------------------------------------------------------------------------
# surjectivity


def preimage_counts(rule, length):
    """Number of preimage words (of length ``length + 2r``) of every word
    of the given length, indexed by word code.  A rule is surjective iff
    all counts equal ``m ** 2r`` at every length."""
    m = rule.alphabet.size
    rows = words_array(m, length + 2 * rule.radius)
    outs = rule.extend_rows(rows)
    powers = m ** np.arange(length - 1, -1, -1, dtype=np.int64)
    codes = outs @ powers
    return np.bincount(codes, minlength=m**length)

def check_surjective(ca):
    """Exact surjectivity decision.

    Decided through pre-injectivity on the pair graph (the Garden of
    Eden theorem: the global map is onto iff no two configurations with
    a finite, nonempty difference share their image), which stays
    polynomial in the rule size.  A False verdict carries a shortest
    word with no preimage when the image automaton is small enough to
    determinize, and otherwise the erasable pair itself; True carries a
    balance audit (every short word has exactly ``m ** 2r`` preimages).
    """
    graph = equal_image_pair_graph(ca.rule)
    path = find_finite_difference_path(graph)
    if path is None:
        audit = []
        expected = ca.alphabet.size ** (2 * ca.radius)
        for length in (1, 2, 3):
            counts = preimage_counts(ca.rule, length)
            audit.append(
                {
                    "length": length,
                    "expected": int(expected),
                    "balanced": bool((counts == expected).all()),
                }
            )
        return Verdict.true(certificate={"kind": "balance_audit", "lengths": audit})
    # a shortest orphan word is the nicer certificate, but its search
    # determinizes the image automaton, which can blow up; cap it and
    # fall back to the erasable pair
    full = SoficShift.full(ca.alphabet)
    try:
        witness = separating_word(full, image(ca, full), max_states=4000)
    except ShiftError:
        witness = None
    if witness is not None:
        return Verdict.false(
            certificate={
                "kind": "orphan_word",
                "word": ca.alphabet.format_word(witness),
            }
        )
    x, y = erasable_pair_from_path(path)
    return Verdict.false(
        certificate={
            "kind": "erasable_pair",
            "first": x.to_json(ca.alphabet),
            "second": y.to_json(ca.alphabet),
        }
    )


def verify_surjective_certificate(ca, verdict, max_length=4):
    """Brute-force replay: an orphan word must have zero preimages; an
    erasable pair must differ on a finite window only, with equal
    images; a True audit must re-balance at every probed length."""
    if verdict.is_false:
        cert = verdict.certificate
        if cert["kind"] == "orphan_word":
            word = ca.alphabet.word(cert["word"])
            counts = preimage_counts(ca.rule, len(word))
            return int(counts[encode_word(word, ca.alphabet.size)]) == 0
        x = EventuallyPeriodicConfiguration.from_json(cert["first"], ca.alphabet)
        y = EventuallyPeriodicConfiguration.from_json(cert["second"], ca.alphabet)
        finite_difference = (
            x.left == y.left
            and x.right == y.right
            and x.mid_start == y.mid_start
            and x.mid_end == y.mid_end
        )
        return finite_difference and x != y and x.step(ca.rule) == y.step(ca.rule)
    if verdict.is_true:
        expected = ca.alphabet.size ** (2 * ca.radius)
        return all(
            bool((preimage_counts(ca.rule, n) == expected).all())
            for n in range(1, max_length + 1)
        )
    return False


# ---------------------------------------------------------------------------
# injectivity


def check_injective(ca):
    """Exact injectivity decision on the full shift via the pair graph:
    injective iff the essential pair graph carries no edge with two
    different neighborhoods.  A refutation is certified by two distinct
    periodic configurations with equal images, read off a marked cycle."""
    graph = equal_image_pair_graph(ca.rule)
    if not graph.has_marked_edge():
        return Verdict.true(
            certificate={
                "kind": "diagonal_pair_graph",
                "essential_pair_vertices": len(graph.vertices),
            }
        )
    cycle = find_marked_cycle(graph)
    if cycle is None:
        raise RuntimeError(
            "internal invariant violated: marked edge without marked cycle"
        )
    x, y = periodic_pair_from_cycle(cycle)
    return Verdict.false(
        certificate={
            "kind": "collapsed_pair",
            "first": x.to_json(ca.alphabet),
            "second": y.to_json(ca.alphabet),
        }
    )


def verify_injective_certificate(ca, verdict, max_spatial=4):
    """Replay: for False, the two configurations are distinct with equal
    images.  For True, no two distinct periodic configurations of small
    period may collide (necessary consequence, exhaustively checked)."""
    if verdict.is_false:
        cert = verdict.certificate
        x = PeriodicConfiguration.from_json(cert["first"], ca.alphabet)
        y = PeriodicConfiguration.from_json(cert["second"], ca.alphabet)
        return x != y and x.step(ca.rule) == y.step(ca.rule)
    if verdict.is_true:
        return brute_injective_on_periodic(ca, max_spatial)
    return False


def brute_injective_on_periodic(ca, max_spatial):
    """No collision among the periodic configurations with period up to
    the bound (exhaustive)."""
    image_of = {}
    for p in range(1, max_spatial + 1):
        for word in ca.alphabet.all_words(p):
            x = PeriodicConfiguration(word).canonical()
            key = (x.word, x.phase)
            if key in image_of:
                continue
            img = x.step(ca.rule).canonical()
            image_of[key] = (img.word, img.phase)
    source_of = {}
    for src, img in image_of.items():
        if img in source_of and source_of[img] != src:
            return False
        source_of[img] = src
    return True


# ---------------------------------------------------------------------------
# closing


def _mirror_rule(rule):
    m = rule.alphabet.size
    n = rule.neighborhood_size
    rows = words_array(m, n)
    powers = m ** np.arange(n - 1, -1, -1, dtype=np.int64)
    codes = rows[:, ::-1] @ powers
    return LocalRule(rule.alphabet, rule.radius, rule.table[codes].copy())


def closing_window_holds(rule, n, language=None):
    """Exact check of the window condition at exponent ``n``: whenever
    two points agree on an n-window and their images agree on the
    (2n+1)-window spanning it, they agree on the next cell to the right.

    ``language`` restricts the enumeration to a word set (default: all
    words, i.e. the full shift).
    """
    m = rule.alphabet.size
    r = rule.radius
    span = 2 * n + 2 * r + 1
    if language is None:
        rows = words_array(m, span)
    else:
        rows = np.array(sorted(language), dtype=np.int64)
        if rows.size == 0:
            return True
        if rows.shape[1] != span:
            raise ValueError(f"language words must have length {span}")
    outs = rule.extend_rows(rows)
    mid_powers = m ** np.arange(n - 1, -1, -1, dtype=np.int64)
    out_powers = m ** np.arange(outs.shape[1] - 1, -1, -1, dtype=np.int64)
    keys = (rows[:, r : r + n] @ mid_powers) * int(m ** outs.shape[1]) + outs @ out_powers
    disputed = rows[:, n + r]
    _, inverse = np.unique(keys, return_inverse=True)
    lo = np.full(inverse.max() + 1, m, dtype=np.int64)
    hi = np.full(inverse.max() + 1, -1, dtype=np.int64)
    np.minimum.at(lo, inverse, disputed)
    np.maximum.at(hi, inverse, disputed)
    return bool((lo == hi).all())


def check_closing(ca, side="right", budget=DEFAULT_STEP_BUDGET):
    """Closing on the full shift.

    False is exact: a path of the pair graph that leaves the diagonal
    (after a left-infinite diagonal history, for the right-closing case)
    unrolls into an asymptotic pair with equal images.  True is certified
    by the least window exponent found within budget; Unknown only when
    the map is closing but its exponent exceeds the budget.
    """
    if side not in ("right", "left"):
        raise ValueError("side must be 'right' or 'left'")
    rule = ca.rule if side == "right" else _mirror_rule(ca.rule)
    graph = equal_image_pair_graph(rule)
    escape = find_diagonal_escape(graph)
    if escape is not None:
        x, y = asymptotic_pair_from_escape(graph, escape)
        if side == "left":
            x, y = x.mirrored(), y.mirrored()
        return Verdict.false(
            certificate={
                "kind": "asymptotic_pair",
                "side": side,
                "first": x.to_json(ca.alphabet),
                "second": y.to_json(ca.alphabet),
            }
        )
    for n in range(1, budget + 1):
        if closing_window_holds(rule, n):
            return Verdict.true(
                budget_used=n,
                certificate={"kind": "closing_window", "side": side, "exponent": n},
            )
    return Verdict.unknown(budget_used=budget, certificate={"kind": "window_budget_exhausted"})


def verify_closing_certificate(ca, verdict):
    """Replay a closing certificate.

    True: the window condition must hold again at the recorded exponent.
    False: the two configurations must be distinct, asymptotic on the
    matching side, and have equal images under one step of the map.
    """
    cert = verdict.certificate
    if verdict.is_true:
        rule = ca.rule if cert["side"] == "right" else _mirror_rule(ca.rule)
        return closing_window_holds(rule, cert["exponent"])
    if verdict.is_false:
        x = EventuallyPeriodicConfiguration.from_json(cert["first"], ca.alphabet)
        y = EventuallyPeriodicConfiguration.from_json(cert["second"], ca.alphabet)
        if x == y:
            return False
        if cert["side"] == "right":
            asymptotic = x.left == y.left and x.mid_start == y.mid_start
        else:
            asymptotic = x.right == y.right and x.mid_end == y.mid_end
        return asymptotic and x.step(ca.rule) == y.step(ca.rule)
    return False


# ---------------------------------------------------------------------------
# periodic points


def temporally_periodic_sft(ca, n):
    """The shift of configurations fixed by the n-th iterate, as an SFT
    of order ``2nr + 1``."""
    g = ca.rule.power(n) if n > 1 else ca.rule
    m = ca.alphabet.size
    nr = g.radius
    rows = words_array(m, 2 * nr + 1)
    fixed = rows[g.table == rows[:, nr]]
    words = frozenset(map(tuple, fixed.tolist()))
    return SFT(ca.alphabet, 2 * nr + 1, words)


def periodic_point_exists(ca, n):
    """Exact decision: does some configuration return to itself after n
    steps?  True carries a spatially periodic witness found on a cycle
    of the fixed-point shift's de Bruijn graph."""
    if n < 1:
        raise ValueError("n must be >= 1")
    sft = temporally_periodic_sft(ca, n)
    sofic = sft.to_sofic()
    if sofic.is_empty:
        return Verdict.false(
            certificate={
                "kind": "empty_fixed_point_shift",
                "order": sft.length,
                "spatial_bound": ca.alphabet.size ** (sft.length - 1),
            }
        )
    word = _cycle_word(sofic)
    return Verdict.true(
        certificate={
            "kind": "temporally_periodic_point",
            "steps": n,
            "point": PeriodicConfiguration(word).to_json(ca.alphabet),
        }
    )


def _cycle_word(sofic):
    """Label word of the first cycle found by greedy forward walking."""
    v = 0
    path = []  # (vertex, label)
    pos = {v: 0}
    while True:
        lab, dst = sofic.adj[v][0]
        path.append(lab)
        if dst in pos:
            return tuple(path[pos[dst] :])
        pos[dst] = len(path)
        v = dst


def verify_periodic_point_certificate(ca, n, verdict, brute_period_cap=None):
    """Replay: a True witness must return to itself in n steps; a False
    outcome is re-checked by exhausting small spatial periods (up to the
    claimed pumping bound, capped to stay enumerable)."""
    cert = verdict.certificate
    if verdict.is_true:
        x = PeriodicConfiguration.from_json(cert["point"], ca.alphabet)
        y = x
        for _ in range(n):
            y = y.step(ca.rule)
        return y == x
    if verdict.is_false:
        if brute_period_cap is None:
            # keep the enumeration around 20k configurations
            brute_period_cap = max(4, int(math.log(20000, ca.alphabet.size)))
        bound = min(int(cert["spatial_bound"]), brute_period_cap)
        for p in range(1, bound + 1):
            for word in ca.alphabet.all_words(p):
                x = PeriodicConfiguration(word)
                y = x
                for _ in range(n):
                    y = y.step(ca.rule)
                if y == x:
                    return False
        return True
    return False


# ---------------------------------------------------------------------------
# the pair shift (simultaneous source/image tracking)


@dataclass(frozen=True)
class PairShift:
    """Order-(2m+1) approximation of the graph of the global map.

    The pair SFT runs over the product alphabet (source symbol, image
    symbol); its two coordinate projections are sofic: the first covers
    every source, the second is the forward image of the first.
    """

    window: int
    pair_alphabet: Alphabet
    sft: SFT
    proj_x: SoficShift
    proj_y: SoficShift


def pair_shift(ca, m):
    """Build the pair shift at window parameter ``m >= r``."""
    r = ca.radius
    if m < r:
        raise ValueError(f"window parameter must be at least the radius ({r})")
    alph = ca.alphabet
    k = 2 * m + 1
    names = [
        f"{alph.name(a)}|{alph.name(b)}" for a in range(alph.size) for b in range(alph.size)
    ]
    pair_alph = Alphabet(names)

    def pair_index(a, b):
        return a * alph.size + b

    rows = words_array(alph.size, k + 2 * r)
    outs = ca.rule.extend_rows(rows)
    words = set()
    for row, out in zip(rows.tolist(), outs.tolist()):
        u = row[r : r + k] if r else row
        words.add(tuple(pair_index(a, b) for a, b in zip(u, out)))
    sft = SFT(pair_alph, k, frozenset(words))
    sofic = sft.to_sofic()
    proj_x = sofic.relabel(alph, lambda pl: pl // alph.size)
    proj_y = sofic.relabel(alph, lambda pl: pl % alph.size)
    return PairShift(window=m, pair_alphabet=pair_alph, sft=sft, proj_x=proj_x, proj_y=proj_y)


# ---------------------------------------------------------------------------
# finite surrogate tests on the limit set approximation


def limit_property_semitest(ca, prop, k=None, budget=DEFAULT_STEP_BUDGET):
    """Run a finite surrogate test for a property of the map restricted
    to the limit set, against the best computed image stage.

    Properties: ``identity``, ``injective``, ``closing``, ``transitive``,
    ``expansive-window``.  Outcomes are True/False only when the stage is
    exact (the chain stabilized) and, for refutations that rely on word
    sets, the stage is itself the SFT of its tested order; otherwise the
    verdict is Unknown with the surrogate's outcome attached as evidence.
    """
    r = ca.radius
    if k is None:
        # word-enumeration surrogates stay cheap at the neighborhood size;
        # the mixing probe benefits from a longer window
        k = max(2 * r + 1, DEFAULT_WINDOW) if prop == "transitive" else 2 * r + 1
    if k < 2 * r + 1:
        raise ValueError(f"window must be at least the neighborhood size {2 * r + 1}")
    approx = limit_approximation(ca, budget)
    sigma = approx.limit_set
    exact = approx.exact
    stage = approx.stabilized_at if exact else len(approx.images) - 1

    if sigma.is_empty:
        raise RuntimeError("the limit set approximation cannot be empty")

    if prop == "identity":
        words = sorted(sigma.language(2 * r + 1))
        moved = next((w for w in words if ca.rule(w) != w[r]), None)
        sub = moved is None
        detail = {"moved_word": ca.alphabet.format_word(moved)} if moved else {}
        return _semitest_verdict(sub, exact, exact, stage, "identity", detail, budget)

    if prop == "injective":
        graph = equal_image_pair_graph(ca.rule, allowed=sigma.language(2 * r + 1))
        marked = next(graph.marked_edges(), None)
        sub = marked is None
        refutation_exact = exact and _is_own_sft(sigma, 2 * r + 1)
        detail = {}
        if marked is not None:
            detail = {
                "collapsed_words": [
                    ca.alphabet.format_word(marked[1][0]),
                    ca.alphabet.format_word(marked[1][1]),
                ]
            }
        return _semitest_verdict(sub, exact, refutation_exact, stage, "injective", detail, budget)

    if prop == "closing":
        sub, detail = _closing_surrogate(ca, sigma, budget)
        refutation_exact = exact and _is_own_sft(sigma, detail.get("pair_order", 2 * r + 1))
        return _semitest_verdict(sub, exact, refutation_exact, stage, "closing", detail, budget)

    if prop == "transitive":
        mixing = is_mixing(sigma.sft_approximation(k))
        onto = subshift_equal(image(ca, sigma), sigma)
        sub = mixing and onto
        detail = {"mixing_at_order": k, "mixing": mixing, "onto": onto}
        refutation_exact = exact and _is_own_sft(sigma, k)
        return _semitest_verdict(sub, exact, refutation_exact, stage, "transitive", detail, budget)

    if prop == "expansive-window":
        sub, detail = _expansive_window_surrogate(ca, sigma, k, budget)
        refutation_exact = exact
        return _semitest_verdict(
            sub, exact, refutation_exact, stage, "expansive-window", detail, budget
        )

    raise ValueError(f"unknown property {prop!r}")


def _is_own_sft(sigma, order):
    return subshift_equal(sigma, sigma.sft_approximation(order).to_sofic())


def _semitest_verdict(sub, true_exact, false_exact, stage, prop, detail, budget):
    detail = dict(detail)
    detail.update({"property": prop, "stage": stage})
    if sub is True and true_exact:
        return Verdict.true(budget_used=budget, certificate={"kind": "limit_surrogate", **detail})
    if sub is False and false_exact:
        return Verdict.false(budget_used=budget, certificate={"kind": "limit_surrogate", **detail})
    detail["evidence_outcome"] = {True: "true", False: "false", None: "unknown"}[sub]
    return Verdict.unknown(
        budget_used=budget,
        certificate={"kind": "evidence_only", **detail},
    )


def _closing_surrogate(ca, sigma, budget):
    # the restricted window check enumerates stage words of length
    # 2n + 2r + 1, so the exponent search is capped independently of the
    # stage budget
    r = ca.radius
    graph = equal_image_pair_graph(ca.rule, allowed=sigma.language(2 * r + 1))
    escape = find_diagonal_escape(graph)
    if escape is not None:
        return False, {"pair_order": 2 * r + 1, "escape_length": len(escape)}
    for n in range(1, min(budget, 4) + 1):
        lang = sigma.language(2 * n + 2 * r + 1)
        if closing_window_holds(ca.rule, n, language=lang):
            return True, {"exponent": n, "pair_order": 2 * r + 1}
    return None, {"pair_order": 2 * r + 1}


def _expansive_window_surrogate(ca, sigma, k, budget):
    """Window test for positive expansivity at radius k.

    The orbit columns over the central (2k+1)-window determine a point
    iff they determine the cells just outside, so the sufficient
    condition tested is: whenever two stage words produce equal columns
    for every step up to the horizon, they agree at positions
    ``+-(k+1)``.  A refutation needs a genuine pair whose whole orbit
    hides its differences; candidates are closed into periodic
    configurations and their orbits cycled.  Returns
    (True/False/None, detail)."""
    r = ca.radius
    steps = min(budget, 3)
    span = 2 * (k + steps * r) + 3
    words = sorted(sigma.language(span))
    if not words:
        return None, {"span": span}
    rows = np.array(words, dtype=np.int64)
    center = span // 2

    columns = []
    cur = rows
    for n in range(steps + 1):
        c = cur.shape[1] // 2
        columns.append(cur[:, c - k : c + k + 1])
        if n < steps:
            cur = ca.rule.extend_rows(cur)
    keys = np.hstack(columns)
    _, inverse = np.unique(keys, axis=0, return_inverse=True)
    disputed = rows[:, [center - (k + 1), center + (k + 1)]]
    determined = True
    for col in range(2):
        lo = np.full(inverse.max() + 1, ca.alphabet.size, dtype=np.int64)
        hi = np.full(inverse.max() + 1, -1, dtype=np.int64)
        np.minimum.at(lo, inverse, disputed[:, col])
        np.maximum.at(hi, inverse, disputed[:, col])
        if not bool((lo == hi).all()):
            determined = False
            break
    if determined:
        return True, {"span": span, "steps": steps}

    # look for a periodic pair that hides its differences forever
    groups = {}
    for idx in np.argsort(inverse, kind="stable"):
        groups.setdefault(int(inverse[idx]), []).append(int(idx))
    tried = 0
    for members in groups.values():
        for i in range(len(members)):
            for j in range(i + 1, len(members)):
                w1, w2 = words[members[i]], words[members[j]]
                if w1 == w2:
                    continue
                tried += 1
                if tried > 200:
                    return None, {"span": span, "column_collision": True}
                if _periodic_hidden_pair(ca, sigma, w1, w2, k):
                    return False, {"span": span, "hidden_pair": True}
    return None, {"span": span, "column_collision": True}


def _periodic_hidden_pair(ca, sigma, w1, w2, k):
    """Close two words into spatially periodic configurations of the
    shift and test that their orbits never differ on the central
    window; cycle detection makes the check conclusive."""
    x = PeriodicConfiguration(w1)
    y = PeriodicConfiguration(w2)
    if x == y:
        return False
    if not (sigma.contains_periodic(x) and sigma.contains_periodic(y)):
        return False
    seen = set()
    while (x.word, y.word) not in seen:
        seen.add((x.word, y.word))
        if x.window(-k, k + 1) != y.window(-k, k + 1):
            return False
        x = x.step(ca.rule)
        y = y.step(ca.rule)
    return True

"""Attractors of clopen invariant sets.

A clopen set U with F(U) inside U traps orbits; its attractor is the
set of configurations its late images accumulate on.  When U is
*spreading* (some iterate pushes U inside the intersection of U with
both its shift neighbors) the attractor is a subshift, and it can be
computed from below: an invariant SFT inside U has a decreasing sofic
image chain whose stabilization is exactly the attractor of U.

The inner SFT is built greedily: start from the SFT allowing exactly
U's window words, delete words some completion of which maps outside
the set, repeat to a fixpoint, and retry with a longer window when the
result is empty or not a mixing SFT.  Inclusion and invariance of the
result are audited rather than assumed; mixing is reported as found.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

import numpy as np

from .ca import image, spreading_states
from .clopen import ClopenSet
from .configurations import PeriodicConfiguration
from .params import DEFAULT_EXPONENT_BUDGET, DEFAULT_STEP_BUDGET
from .rules import words_array
from .shifts import SFT, SoficShift, is_mixing
from .verdicts import Verdict


class AttractorError(ValueError):
    pass


# ---------------------------------------------------------------------------
# invariance


def is_invariant_clopen(ca, u):
    """Exact decision of F(U) within U, enumerating every window word
    with all boundary completions.  Failure is certified by a periodic
    configuration through the offending completion."""
    if u.is_empty:
        raise AttractorError("invariance is checked on nonempty clopen sets")
    if ca.alphabet != u.alphabet:
        raise AttractorError("alphabet mismatch")
    r = ca.radius
    m = ca.alphabet.size
    checked = 0
    for w in sorted(u.words):
        for pre in product(range(m), repeat=r):
            for suf in product(range(m), repeat=r):
                completion = pre + w + suf
                checked += 1
                if ca.rule.extend(completion) not in u.words:
                    witness = PeriodicConfiguration(completion, u.start - r)
                    return Verdict.false(
                        certificate={
                            "kind": "escaping_configuration",
                            "point": witness.to_json(ca.alphabet),
                        }
                    )
    return Verdict.true(
        certificate={"kind": "invariance_audit", "windows_checked": checked}
    )


def verify_invariant_certificate(ca, u, verdict):
    """Replay: an escaping point must start inside U and step outside; a
    True audit re-checks the full enumeration."""
    if verdict.is_false:
        x = PeriodicConfiguration.from_json(verdict.certificate["point"], ca.alphabet)
        return u.contains(x) and not u.contains(x.step(ca.rule))
    if verdict.is_true:
        r = ca.radius
        m = ca.alphabet.size
        return all(
            ca.rule.extend(pre + w + suf) in u.words
            for w in u.words
            for pre in product(range(m), repeat=r)
            for suf in product(range(m), repeat=r)
        )
    return False


# ---------------------------------------------------------------------------
# spreading


def spreading_target(u):
    """The set a spreading U must fall into: U intersected with both of
    its shift neighbors."""
    return u.shift(1) & u & u.shift(-1)


def _iterate_maps_into(g, u, target):
    """Exact inclusion of g(U) in the clopen ``target``; vectorized over
    all boundary completions.  Returns None or an escaping window word."""
    m = u.alphabet.size
    kr = g.radius
    left = (u.start - target.start) + kr
    right = (target.end - u.end) + kr
    pres = words_array(m, left)
    sufs = words_array(m, right)
    L = u.length
    t_len = target.length
    powers = m ** np.arange(t_len - 1, -1, -1, dtype=np.int64)
    target_codes = np.array(
        sorted(w_code for w_code in (int(np.array(w) @ powers) for w in target.words)),
        dtype=np.int64,
    )
    for w in sorted(u.words):
        rows = np.empty((len(pres) * len(sufs), left + L + right), dtype=np.int64)
        rows[:, :left] = np.repeat(pres, len(sufs), axis=0)
        rows[:, left : left + L] = np.array(w, dtype=np.int64)
        rows[:, left + L :] = np.tile(sufs, (len(pres), 1))
        outs = g.extend_rows(rows)
        codes = outs @ powers
        bad = ~np.isin(codes, target_codes)
        if bad.any():
            idx = int(np.argmax(bad))
            return tuple(int(s) for s in rows[idx])
    return None


def is_spreading_clopen(ca, u, budget=DEFAULT_EXPONENT_BUDGET):
    """Search the least exponent k with the k-th image of U inside the
    intersection of U and its shift neighbors.  Unknown when the budget
    runs out: the set may spread with a larger exponent."""
    inv = is_invariant_clopen(ca, u)
    if not inv.is_true:
        raise AttractorError("spreading is only defined for invariant clopen sets")
    target = spreading_target(u)
    if target.is_empty:
        return Verdict.unknown(
            budget_used=0, certificate={"kind": "empty_spreading_target"}
        )
    for k in range(1, budget + 1):
        g = ca.rule.power(k)
        if _iterate_maps_into(g, u, target) is None:
            return Verdict.true(
                budget_used=k,
                certificate={"kind": "spreading_exponent", "exponent": k},
            )
    return Verdict.unknown(
        budget_used=budget, certificate={"kind": "exponent_budget_exhausted"}
    )


def verify_spreading_certificate(ca, u, verdict):
    """Replay a spreading exponent with a plain (non-vectorized)
    enumeration."""
    if not verdict.is_true:
        return False
    k = verdict.certificate["exponent"]
    g = ca.rule.power(k)
    target = spreading_target(u)
    m = ca.alphabet.size
    kr = g.radius
    left = (u.start - target.start) + kr
    right = (target.end - u.end) + kr
    for w in u.words:
        for pre in product(range(m), repeat=left):
            for suf in product(range(m), repeat=right):
                if g.extend(pre + w + suf) not in target.words:
                    return False
    return True


# ---------------------------------------------------------------------------
# inner invariant SFT and the attractor


@dataclass(frozen=True)
class InnerSFTReport:
    sft: SFT
    order: int
    mixing: bool
    contained_in_basin: bool
    invariant: bool


def inner_invariant_sft(ca, u, max_extra_orders=3):
    """Greedy invariant SFT inside the clopen set.

    At order L (the basin's window length) the candidate allowed-word
    set starts as U's window words; any word with a completion mapping
    to a word outside the candidate set is deleted, to a fixpoint.  If
    the fixpoint is empty or fails the mixing test, the order grows by
    one (window words re-expressed) and the search restarts.  The last
    fixpoint found is returned with its audit flags even when no mixing
    order was reached.
    """
    r = ca.radius
    m = ca.alphabet.size
    best = None
    for extra in range(max_extra_orders + 1):
        lo = u.start
        hi = u.end + extra
        words = frozenset(u.on_window(lo, hi))
        L = hi - lo
        current = set(words)
        changed = True
        while changed:
            changed = False
            for w in sorted(current):
                bad = False
                for pre in product(range(m), repeat=r):
                    for suf in product(range(m), repeat=r):
                        v = pre + w + suf
                        if all(
                            v[i : i + L] in current for i in range(2 * r + 1)
                        ) and ca.rule.extend(v) not in current:
                            bad = True
                            break
                    if bad:
                        break
                if bad:
                    current.discard(w)
                    changed = True
        sft = SFT(ca.alphabet, L, frozenset(current))
        sofic = sft.to_sofic()
        if sofic.is_empty:
            report = InnerSFTReport(sft, L, False, True, True)
        else:
            mixing = is_mixing(sft)
            report = InnerSFTReport(
                sft,
                L,
                mixing,
                contained_in_basin=_sft_inside_clopen(sft, u),
                invariant=_sft_invariant(ca, sft),
            )
            if mixing:
                return report
        if best is None or not best.sft.words:
            best = report
    return best


def _sft_inside_clopen(sft, u):
    """Every point of the SFT lies in the clopen set (window check)."""
    sofic = sft.to_sofic()
    for w in sofic.language(u.length):
        if w not in u.words:
            return False
    return True


def _sft_invariant(ca, sft):
    """F maps the SFT into itself: every completion of an allowed
    context maps to an allowed word."""
    sofic = sft.to_sofic()
    span = sft.length + 2 * ca.radius
    for v in sofic.language(span):
        if ca.rule.extend(v) not in sft.words:
            return False
    return True


@dataclass
class AttractorReport:
    """Everything the attractor computation established about a basin."""

    basin: ClopenSet
    invariance: Verdict
    spreading: Verdict
    inner: InnerSFTReport
    omega: SoficShift
    stabilized_at: int | None
    minimal: bool = False

    @property
    def exact(self):
        return self.stabilized_at is not None and self.inner.mixing

    def status(self):
        if self.stabilized_at is not None:
            return f"stabilized at step {self.stabilized_at}"
        return "budget exhausted (upper approximation)"

    def to_json_dict(self, alphabet):
        return {
            "basin": self.basin.to_json(),
            "invariant": self.invariance.to_json_dict(),
            "spreading": self.spreading.to_json_dict(),
            "inner_sft_order": self.inner.order,
            "inner_sft_mixing": self.inner.mixing,
            "omega_language_1": sorted(
                alphabet.format_word(w) for w in self.omega.language(1)
            ),
            "stabilized_at": self.stabilized_at,
            "exact": self.exact,
            "minimal": self.minimal,
        }


def omega_of_clopen(ca, u, budget=DEFAULT_STEP_BUDGET,
                    exponent_budget=DEFAULT_EXPONENT_BUDGET):
    """The subshift attractor of an invariant spreading clopen set.

    Verifies invariance (exactly) and spreading (within budget) first,
    then iterates the exact image operation on the greedy inner SFT.
    When the chain stabilizes the result is the attractor of the basin;
    otherwise the last stage is an upper approximation, reported as
    such.  The attractor is flagged minimal when the basin is a
    spreading-state cylinder, in which case it is a single constant
    configuration.
    """
    inv = is_invariant_clopen(ca, u)
    if not inv.is_true:
        raise AttractorError("basin is not invariant; no attractor is defined")
    spread = is_spreading_clopen(ca, u, budget=exponent_budget)
    if spread.is_false:
        raise AttractorError("basin is not spreading; its attractor is not a subshift")
    if spread.is_unknown:
        raise AttractorError(
            "spreading could not be verified within the exponent budget; "
            "raise exponent_budget to proceed"
        )
    inner = inner_invariant_sft(ca, u)
    if inner.sft.is_empty:
        raise AttractorError(
            "no nonempty invariant SFT found inside the basin within the order budget"
        )
    chain = [inner.sft.to_sofic().minimal_presentation()]
    stabilized_at = None
    for n in range(budget):
        nxt = image(ca, chain[-1]).minimal_presentation()
        if nxt == chain[-1]:
            stabilized_at = n
            break
        chain.append(nxt)
    omega = chain[-1]

    minimal = False
    if u.length == 1 and len(u.words) == 1:
        (sym,) = next(iter(u.words))
        minimal = ca.radius >= 1 and sym in spreading_states(ca)

    return AttractorReport(
        basin=u,
        invariance=inv,
        spreading=spread,
        inner=inner,
        omega=omega,
        stabilized_at=stabilized_at,
        minimal=minimal,
    )


# ---------------------------------------------------------------------------
# uniform reachability between clopen sets


def reach_clopen(ca, u, v, budget=DEFAULT_STEP_BUDGET):
    """Semi-decide that every point of U visits V within a uniform
    number of steps.

    For each horizon n the check is exact: every completion of U's
    window over a sufficient window either meets V at some step <= n or
    refutes that horizon.  True returns the least sufficient horizon;
    Unknown means no horizon up to the budget is uniform (the property
    may still hold with a larger one).
    """
    if u.is_empty or v.is_empty:
        raise AttractorError("reachability needs nonempty clopen sets")
    if u.alphabet != v.alphabet or ca.alphabet != u.alphabet:
        raise AttractorError("alphabet mismatch")
    m = ca.alphabet.size
    r = ca.radius
    for n in range(0, budget + 1):
        lo = min(u.start, v.start - n * r)
        hi = max(u.end, v.end + n * r)
        ok = True
        for w in sorted(u.words):
            for pre in product(range(m), repeat=u.start - lo):
                for suf in product(range(m), repeat=hi - u.end):
                    if not _trajectory_hits(ca, pre + w + suf, lo, v, n):
                        ok = False
                        break
                if not ok:
                    break
            if not ok:
                break
        if ok:
            return Verdict.true(
                budget_used=n, certificate={"kind": "uniform_horizon", "steps": n}
            )
    return Verdict.unknown(
        budget_used=budget, certificate={"kind": "horizon_budget_exhausted"}
    )


def _trajectory_hits(ca, row, lo, v, n):
    """Does the finite trajectory of the word ``row`` (anchored at
    ``lo``) enter the clopen set within n steps?  The word shrinks by r
    per side each step; the target window stays covered by choice of
    the enclosing window."""
    r = ca.radius
    word = row
    start = lo
    for step in range(n + 1):
        seg = word[v.start - start : v.end - start]
        if seg in v.words:
            return True
        if step == n:
            break
        word = ca.rule.extend(word)
        start += r
    return False

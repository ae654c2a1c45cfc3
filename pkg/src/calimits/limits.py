"""Limit-set approximation and the stability / nilpotency semi-decisions.

The limit set is the intersection of all forward images of the full
shift.  Each image is sofic and exactly computable, and the chain of
images is decreasing, so iterating gives a certified outer
approximation; if two consecutive stages coincide the chain has
stabilized and the limit set is known exactly.  Stability itself is
undecidable, hence ``check_stable`` never answers False: a chain that
is still strictly shrinking when the budget runs out proves nothing.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .ca import image
from .configurations import PeriodicConfiguration
from .params import (
    DEFAULT_SPATIAL_PERIOD,
    DEFAULT_STEP_BUDGET,
    DEFAULT_TEMPORAL_PERIOD,
)
from .rules import words_array
from .shifts import ShiftError, SoficShift, separating_word
from .verdicts import Verdict


@dataclass
class LimitApproximation:
    """The computed prefix of the decreasing image chain.

    ``images[n]`` presents the n-th forward image of the full shift
    (stage 0 is the full shift itself).  ``stabilized_at`` is the least
    n with ``images[n] == images[n+1]`` when that happened within
    budget, else None; in the stabilized case ``images[n]`` *is* the
    limit set and the automaton is stable.
    """

    ca: object
    images: list = field(default_factory=list)
    stabilized_at: int | None = None

    @property
    def exact(self):
        return self.stabilized_at is not None

    @property
    def last(self):
        return self.images[-1]

    @property
    def limit_set(self):
        """The limit set when known exactly, else the best outer bound."""
        if self.exact:
            return self.images[self.stabilized_at]
        return self.images[-1]

    def stage_languages(self, k):
        return [stage.language(k) for stage in self.images]


def limit_approximation(ca, budget=DEFAULT_STEP_BUDGET):
    """Iterate the exact image operation from the full shift.

    Stops early at the first repeated stage (the chain then stays
    constant forever); otherwise computes ``budget`` stages.  Stages are
    reduced to their minimal deterministic presentations so the chain
    does not blow up structurally.

    Rules whose stages defeat the determinization cap cannot be kept
    canonical; the error then names the stage that broke so the caller
    can lower the budget or work with raw images instead.
    """
    if budget < 1:
        raise ValueError("budget must be >= 1")
    stages = [SoficShift.full(ca.alphabet)]
    stabilized_at = None
    for n in range(budget):
        try:
            nxt = image(ca, stages[-1]).minimal_presentation()
            repeated = nxt == stages[-1]
        except ShiftError as exc:
            raise ShiftError(
                f"image stage {n + 1} has no tractable canonical presentation ({exc}); "
                "lower the budget or use image() directly"
            ) from exc
        if repeated:
            stabilized_at = n
            break
        stages.append(nxt)
    return LimitApproximation(ca=ca, images=stages, stabilized_at=stabilized_at)


@dataclass(frozen=True)
class LimitLanguageStatus:
    """How trustworthy a limit-language probe is.

    ``exact`` means the whole chain stabilized, so the words are exactly
    the length-k words of the limit set.  Otherwise the words are an
    upper bound; ``fixed_k_stable_since`` reports the first stage after
    which the length-k trace stopped shrinking (evidence only: deeper
    words may still be shrinking).
    """

    exact: bool
    stage: int
    fixed_k_stable_since: int | None


def limit_language(ca, k, budget=DEFAULT_STEP_BUDGET):
    """Length-k words of the best computed image stage.

    Always a superset of the limit set's length-k words; exact when the
    image chain stabilizes within budget.
    """
    if k < 1:
        raise ValueError("word length must be >= 1")
    approx = limit_approximation(ca, budget)
    langs = approx.stage_languages(k)
    stable_since = None
    for i in range(len(langs)):
        if all(langs[j] == langs[i] for j in range(i + 1, len(langs))):
            stable_since = i
            break
    if approx.exact:
        status = LimitLanguageStatus(True, approx.stabilized_at, stable_since)
    else:
        fixed = stable_since if (stable_since is not None and stable_since < len(langs) - 1) else None
        status = LimitLanguageStatus(False, len(langs) - 1, fixed)
    return langs[-1], status


def check_stable(ca, budget=DEFAULT_STEP_BUDGET):
    """Semi-decide stability (some forward image equals the limit set).

    True with the stabilization step as certificate.  Never False: a
    strictly decreasing computed chain is consistent with both answers,
    so budget exhaustion returns Unknown with the chain of separating
    words attached as evidence.
    """
    approx = limit_approximation(ca, budget)
    if approx.exact:
        n = approx.stabilized_at
        return Verdict.true(
            budget_used=n + 1,
            certificate={
                "kind": "stabilized",
                "step": n,
                "limit_vertices": approx.limit_set.n_vertices,
            },
        )
    fmt = ca.alphabet.format_word
    separators = []
    for i in range(len(approx.images) - 1):
        w = separating_word(approx.images[i], approx.images[i + 1])
        separators.append(fmt(w) if w is not None else None)
    return Verdict.unknown(
        budget_used=budget,
        certificate={
            "kind": "decreasing_chain_evidence",
            "stages_computed": len(approx.images),
            "stage_separating_words": separators,
        },
    )


def verify_stable_certificate(ca, verdict, probe_length=4):
    """Replay a stability certificate by brute force: at the claimed
    step n, the length-j words of stages n and n+1 must agree for small
    j (necessary consequence, checked independently of the sofic
    machinery)."""
    if not verdict.is_true:
        return False
    n = verdict.certificate["step"]
    for j in range(1, probe_length + 1):
        a = _brute_stage_language(ca, n, j)
        b = _brute_stage_language(ca, n + 1, j)
        if a != b:
            return False
    return True


def _brute_stage_language(ca, n, k):
    """Length-k words of the n-th image, by exhaustive preimage
    enumeration (independent of the graph machinery)."""
    if n == 0:
        return set(map(tuple, ca.alphabet.all_words(k)))
    rule = ca.rule
    m = ca.alphabet.size
    rows = words_array(m, k + 2 * n * ca.radius)
    for _ in range(n):
        rows = rule.extend_rows(rows)
    return set(map(tuple, rows.tolist()))


def find_f_periodic_points(ca, max_spatial=DEFAULT_SPATIAL_PERIOD,
                           max_temporal=DEFAULT_TEMPORAL_PERIOD, want=2):
    """Search spatially periodic configurations that return to themselves
    after at most ``max_temporal`` steps.  Spatial period ascends first,
    then the word order, so the first witnesses are deterministic."""
    found = []
    for p in range(1, max_spatial + 1):
        for word in ca.alphabet.all_words(p):
            start = PeriodicConfiguration(word)
            if any(start == other for other in found):
                continue
            x = start
            for _ in range(max_temporal):
                x = x.step(ca.rule)
                if x == start:
                    found.append(start)
                    break
            if len(found) >= want:
                return found
    return found


def check_nilpotent(ca, budget=DEFAULT_STEP_BUDGET,
                    max_spatial=DEFAULT_SPATIAL_PERIOD,
                    max_temporal=DEFAULT_TEMPORAL_PERIOD):
    """Semi-decide whether the limit set is a single configuration.

    False needs only two distinct periodic points of the global map
    (both always belong to the limit set); that search runs first and
    wins deterministically.  True needs the image chain to stabilize on
    a singleton, which is then fixed by both shift and map.  Unknown
    otherwise, with the budgets recorded.
    """
    witnesses = find_f_periodic_points(ca, max_spatial, max_temporal, want=2)
    fmt = ca.alphabet.format_word
    if len(witnesses) >= 2:
        return Verdict.false(
            budget_used=0,
            certificate={
                "kind": "two_periodic_points",
                "first": witnesses[0].to_json(ca.alphabet),
                "second": witnesses[1].to_json(ca.alphabet),
                "temporal_bound": max_temporal,
            },
        )
    approx = limit_approximation(ca, budget)
    if approx.exact:
        omega = approx.limit_set
        symbols = omega.language(1)
        if len(symbols) == 1:
            (a,) = next(iter(symbols))
            if ca.rule((a,) * ca.rule.neighborhood_size) == a:
                return Verdict.true(
                    budget_used=approx.stabilized_at + 1,
                    certificate={
                        "kind": "singleton_limit",
                        "step": approx.stabilized_at,
                        "symbol": ca.alphabet.name(a),
                    },
                )
    return Verdict.unknown(
        budget_used=budget,
        certificate={
            "kind": "budgets_exhausted",
            "steps": budget,
            "max_spatial_period": max_spatial,
            "max_temporal_period": max_temporal,
        },
    )


def verify_nilpotent_certificate(ca, verdict):
    """Independent replay of a nilpotency certificate.

    True: every word of length ``1 + 2nr`` must map to the claimed
    symbol under n sliding applications (this proves the n-th image is
    the single constant configuration).  False: both configurations must
    be distinct and genuinely periodic for the map.
    """
    cert = verdict.certificate
    if verdict.is_true:
        n = cert["step"]
        a = ca.alphabet.index(cert["symbol"])
        if ca.rule((a,) * ca.rule.neighborhood_size) != a:
            return False
        if n == 0:
            return ca.alphabet.size == 1
        lang = _brute_stage_language(ca, n, 1)
        return lang == {(a,)}
    if verdict.is_false:
        x = PeriodicConfiguration.from_json(cert["first"], ca.alphabet)
        y = PeriodicConfiguration.from_json(cert["second"], ca.alphabet)
        if x == y:
            return False
        return _returns_to_itself(ca, x, cert["temporal_bound"]) and _returns_to_itself(
            ca, y, cert["temporal_bound"]
        )
    return False


def _returns_to_itself(ca, config, max_temporal):
    x = config
    for _ in range(max_temporal):
        x = x.step(ca.rule)
        if x == config:
            return True
    return False

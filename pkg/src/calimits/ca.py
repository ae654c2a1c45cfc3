"""Cellular automata as global maps, and the exact image operation.

The image of a sofic shift under a radius-r automaton is computed on the
higher-block graph of the presentation: vertices are paths of ``2r``
edges, edges are paths of ``2r+1`` edges relabeled through the local
rule.  Bi-infinite paths of that graph correspond one-to-one to
bi-infinite paths of the original presentation, so the construction
presents exactly the forward image, for every sofic input.
"""

from __future__ import annotations

from .rules import LocalRule, RuleDescriptor, eca_rule, words_array
from .shifts import ShiftError, SoficShift


class CellularAutomaton:
    """A local rule together with its derived descriptor."""

    __slots__ = ("rule", "_descriptor")

    def __init__(self, rule):
        self.rule = rule
        self._descriptor = None

    @classmethod
    def eca(cls, number):
        return cls(eca_rule(number))

    @classmethod
    def load(cls, path):
        return cls(LocalRule.load(path))

    @property
    def alphabet(self):
        return self.rule.alphabet

    @property
    def radius(self):
        return self.rule.radius

    @property
    def descriptor(self):
        if self._descriptor is None:
            self._descriptor = RuleDescriptor.of(self.rule)
        return self._descriptor

    def full_shift(self):
        return SoficShift.full(self.alphabet)

    def step(self, config):
        """Apply the global map to a finitely described configuration."""
        return config.step(self.rule)

    def __repr__(self):
        return f"<CellularAutomaton #{self.descriptor.canonical_id} r={self.radius} |A|={self.alphabet.size}>"


def image(ca, shift):
    """The forward image of a sofic shift under the automaton's global map.

    Exact for every essential presentation; the result is essentialized
    by construction.
    """
    if ca.alphabet != shift.alphabet:
        raise ShiftError("automaton and shift have different alphabets")
    if shift.is_empty:
        return shift
    rule = ca.rule
    r = ca.radius
    if r == 0:
        return SoficShift(
            ca.alphabet,
            ((v, rule((lab,)), d) for v, lab, d in shift.edges()),
        )

    edges = list(shift.edges())
    out_of = {}
    for idx, (src, _, _) in enumerate(edges):
        out_of.setdefault(src, []).append(idx)

    # enumerate edge paths of length 2r+1
    paths = [(idx,) for idx in range(len(edges))]
    for _ in range(2 * r):
        paths = [
            p + (nxt,)
            for p in paths
            for nxt in out_of.get(edges[p[-1]][2], ())
        ]

    new_edges = (
        (p[:-1], rule(tuple(edges[i][1] for i in p)), p[1:]) for p in paths
    )
    return SoficShift(ca.alphabet, new_edges)


def spreading_states(ca):
    """Symbols that the rule outputs whenever they appear anywhere in the
    neighborhood; the cylinder of such a symbol is an invariant spreading
    set and its attractor is the constant configuration (radius >= 1)."""
    rule = ca.rule
    m = ca.alphabet.size
    rows = words_array(m, rule.neighborhood_size)
    out = []
    for s in range(m):
        mask = (rows == s).any(axis=1)
        if bool((rule.table[mask] == s).all()) and bool(mask.any()):
            out.append(s)
    return tuple(out)

"""Sofic shifts and shifts of finite type.

A :class:`SoficShift` is a finite labeled multigraph kept in *essential*
form (every vertex lies on a bi-infinite path); the presented subshift
is the set of label sequences of bi-infinite paths.  A :class:`SFT`
stores a uniform-length allowed-word set and converts to a sofic shift
through its de Bruijn graph.

Subshift equality is decided exactly: the factor language of an
essential presentation is regular (every vertex both initial and
final), and two subshifts over one alphabet are equal precisely when
their factor languages are.  Determinizing and minimizing that language
automaton gives a canonical object per subshift; :meth:`SoficShift.canonical_key`
exposes it and ``==`` compares it.  Subset queries run a product search
that also yields a shortest separating word, which the decision
procedures reuse as a certificate.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .alphabet import Alphabet
from .graphs import essential_vertices, graph_period, strongly_connected_components

MAX_DET_STATES = 100_000


class ShiftError(ValueError):
    pass


class SoficShift:
    """Labeled-graph presentation of a subshift, always essential.

    ``edges`` is an iterable of ``(src, label_index, dst)`` over
    arbitrary hashable vertices; duplicates collapse.  Vertices are
    renamed to ``0..n-1`` in first-seen order after essentialization.
    """

    __slots__ = ("alphabet", "adj", "_det", "_canon", "_bylab")

    def __init__(self, alphabet, edges):
        seen = set()
        ordered = []
        for e in edges:
            if e not in seen:
                seen.add(e)
                ordered.append(e)
        verts = []
        vseen = set()
        for src, _, dst in ordered:
            for v in (src, dst):
                if v not in vseen:
                    vseen.add(v)
                    verts.append(v)
        keep = essential_vertices(vseen, [(s, d) for s, _, d in ordered])
        rename = {}
        for v in verts:
            if v in keep:
                rename[v] = len(rename)
        buckets = [[] for _ in range(len(rename))]
        for src, lab, dst in ordered:
            if src in keep and dst in keep:
                buckets[rename[src]].append((lab, rename[dst]))
        self.alphabet = alphabet
        self.adj = tuple(tuple(sorted(b)) for b in buckets)
        self._det = None
        self._canon = None
        self._bylab = None

    # -- constructors ------------------------------------------------------

    @classmethod
    def full(cls, alphabet):
        """The full shift: one vertex, a self-loop per symbol."""
        return cls(alphabet, [(0, a, 0) for a in range(alphabet.size)])

    @classmethod
    def empty(cls, alphabet):
        return cls(alphabet, [])

    # -- basic structure ---------------------------------------------------

    @property
    def is_empty(self):
        return not self.adj

    @property
    def n_vertices(self):
        return len(self.adj)

    @property
    def n_edges(self):
        return sum(len(b) for b in self.adj)

    def edges(self):
        for v, bucket in enumerate(self.adj):
            for lab, dst in bucket:
                yield v, lab, dst

    def _per_label(self):
        if self._bylab is None:
            m = self.alphabet.size
            self._bylab = [
                tuple(frozenset(d for lab, d in bucket if lab == a) for a in range(m))
                for bucket in self.adj
            ]
        return self._bylab

    def __repr__(self):
        return (
            f"<SoficShift |A|={self.alphabet.size} "
            f"vertices={self.n_vertices} edges={self.n_edges}>"
        )

    # -- determinization and canonical form --------------------------------

    def determinized(self, max_states=None):
        """Subset construction on the factor-language automaton.

        Returns a list of transition rows, one per reachable state, each
        a tuple with the successor index per symbol or None when the
        word dies.  State 0 is the initial state (all vertices).  Empty
        shifts return an empty list.

        The subset automaton of a sofic presentation can be
        exponentially larger than the presentation; the construction
        aborts with :class:`ShiftError` past ``max_states`` (module
        default ``MAX_DET_STATES``) rather than thrash.
        """
        if self._det is not None:
            return self._det
        if self.is_empty:
            self._det = []
            return self._det
        cap = MAX_DET_STATES if max_states is None else max_states
        m = self.alphabet.size
        by_label = self._per_label()
        init = frozenset(range(len(self.adj)))
        index = {init: 0}
        queue = [init]
        pos = 0
        rows = []
        while pos < len(queue):
            state = queue[pos]
            pos += 1
            row = []
            for a in range(m):
                nxt = frozenset(d for v in state for d in by_label[v][a])
                if not nxt:
                    row.append(None)
                    continue
                if nxt not in index:
                    if len(index) >= cap:
                        raise ShiftError(f"determinization exceeded {cap} states")
                    index[nxt] = len(index)
                    queue.append(nxt)
                row.append(index[nxt])
            rows.append(tuple(row))
        self._det = rows
        return rows

    def canonical_key(self):
        """Minimal complete DFA of the factor language, canonically
        numbered; equal subshifts over one alphabet share this key."""
        if self._canon is not None:
            return self._canon
        if self.is_empty:
            self._canon = ("empty",)
            return self._canon
        rows = self.determinized()
        m = self.alphabet.size
        n = len(rows)
        has_dead = any(x is None for row in rows for x in row)
        dead = n if has_dead else None
        total = n + (1 if has_dead else 0)
        full_rows = [tuple(dead if x is None else x for x in row) for row in rows]
        if has_dead:
            full_rows.append(tuple(dead for _ in range(m)))
        accepting = [True] * n + ([False] if has_dead else [])

        classes = [0 if acc else 1 for acc in accepting]
        while True:
            sig = {}
            new = [0] * total
            for s in range(total):
                key = (classes[s], tuple(classes[full_rows[s][a]] for a in range(m)))
                if key not in sig:
                    sig[key] = len(sig)
                new[s] = sig[key]
            if new == classes:
                break
            classes = new

        # canonical numbering by BFS from the initial class
        order = {classes[0]: 0}
        queue = [0]
        tables = []
        acc_out = []
        while queue:
            s = queue.pop(0)
            row = []
            for a in range(m):
                t = full_rows[s][a]
                c = classes[t]
                if c not in order:
                    order[c] = len(order)
                    queue.append(t)
                row.append(order[c])
            tables.append(tuple(row))
            acc_out.append(accepting[s])
        self._canon = (tuple(acc_out), tuple(tables))
        return self._canon

    def minimal_presentation(self):
        """Smallest deterministic presentation derived from the canonical
        minimal DFA (dead state removed, then essentialized).  Presents
        the same subshift."""
        if self.is_empty:
            return self
        acc, tables = self.canonical_key()
        edges = []
        for s, row in enumerate(tables):
            if not acc[s]:
                continue
            for a, t in enumerate(row):
                if acc[t]:
                    edges.append((s, a, t))
        return SoficShift(self.alphabet, edges)

    # -- language ----------------------------------------------------------

    def language(self, n):
        """The set of length-n words occurring in the subshift.

        Computed by direct vertex-set propagation on the presentation
        (no determinization), so it stays polynomial in the graph and
        the language size even when the subset automaton would blow up.
        """
        if n == 0:
            return {()}
        if self.is_empty:
            return set()
        m = self.alphabet.size
        by_label = self._per_label()
        frontier = {(): frozenset(range(len(self.adj)))}
        for _ in range(n):
            nxt = {}
            for word, vset in frontier.items():
                for a in range(m):
                    dsts = frozenset(d for v in vset for d in by_label[v][a])
                    if dsts:
                        nxt[word + (a,)] = dsts
            frontier = nxt
        return set(frontier)

    def sft_approximation(self, k):
        """The SFT allowing exactly this shift's length-k words; an outer
        approximation that shrinks as k grows."""
        if k < 1:
            raise ShiftError("approximation order must be >= 1")
        return SFT(self.alphabet, k, frozenset(self.language(k)))

    def contains_periodic(self, config):
        """Exact membership test for a periodic configuration: the word
        must be readable around a cycle of the determinized automaton."""
        if self.is_empty:
            return False
        rows = self.determinized()
        word = config.word
        state = 0
        seen = {0}
        for _ in range(len(rows) + 1):
            for a in word:
                nxt = rows[state][a]
                if nxt is None:
                    return False
                state = nxt
            if state in seen:
                return True
            seen.add(state)
        return True

    # -- comparisons ---------------------------------------------------------

    def __eq__(self, other):
        if not isinstance(other, SoficShift):
            return NotImplemented
        return self.alphabet == other.alphabet and self.canonical_key() == other.canonical_key()

    def __hash__(self):
        return hash((self.alphabet, self.canonical_key()))

    def subset_of(self, other):
        return separating_word(self, other) is None

    # -- transforms ----------------------------------------------------------

    def relabel(self, new_alphabet, label_map):
        """Apply a map on edge labels (a factor on symbols)."""
        return SoficShift(
            new_alphabet, ((v, label_map(lab), d) for v, lab, d in self.edges())
        )

    def with_alphabet(self, new_alphabet):
        """Re-express over another alphabet containing (at least) the
        symbol names this shift's edges actually use."""
        cache = {}

        def remap(lab):
            if lab not in cache:
                cache[lab] = new_alphabet.index(self.alphabet.name(lab))
            return cache[lab]

        return self.relabel(new_alphabet, remap)

    def to_dot(self, name="shift"):
        lines = [f'digraph "{name}" {{', "  rankdir=LR;"]
        for v in range(self.n_vertices):
            lines.append(f'  v{v} [shape=circle label="{v}"];')
        for v, lab, dst in self.edges():
            lines.append(f'  v{v} -> v{dst} [label="{self.alphabet.name(lab)}"];')
        lines.append("}")
        return "\n".join(lines) + "\n"


def subshift_equal(a, b):
    """Exact equality of the presented subshifts (same alphabet required)."""
    _check_same_alphabet(a, b)
    return a == b


def subshift_subset(a, b):
    """Exact inclusion of the presented subshifts."""
    _check_same_alphabet(a, b)
    return a.subset_of(b)


def separating_word(a, b, max_states=None):
    """A shortest word in the language of ``a`` but not of ``b``;
    None when no such word exists (i.e. a is a subshift of b)."""
    _check_same_alphabet(a, b)
    if a.is_empty:
        return None
    rows_a = a.determinized(max_states)
    rows_b = b.determinized(max_states) if not b.is_empty else None
    m = a.alphabet.size
    start = (0, 0 if rows_b is not None else None)
    seen = {start}
    queue = [(start, ())]
    while queue:
        (sa, sb), word = queue.pop(0)
        for x in range(m):
            ta = rows_a[sa][x]
            if ta is None:
                continue
            tb = rows_b[sb][x] if (rows_b is not None and sb is not None) else None
            w = word + (x,)
            if tb is None:
                return w
            if (ta, tb) not in seen:
                seen.add((ta, tb))
                queue.append(((ta, tb), w))
    return None


def _check_same_alphabet(a, b):
    if a.alphabet != b.alphabet:
        raise ShiftError(
            f"alphabet mismatch: {a.alphabet.symbols} vs {b.alphabet.symbols}"
        )


@dataclass(frozen=True)
class SFT:
    """Shift of finite type given by the allowed words of one uniform
    length (its order bound)."""

    alphabet: Alphabet
    length: int
    words: frozenset = field(default_factory=frozenset)

    def __post_init__(self):
        if self.length < 1:
            raise ShiftError("SFT word length must be >= 1")
        for w in self.words:
            if len(w) != self.length:
                raise ShiftError(
                    f"allowed word {w!r} has length {len(w)}, expected {self.length}"
                )

    def to_sofic(self):
        """De Bruijn presentation: vertices are (length-1)-prefixes and
        -suffixes, one edge per allowed word, labeled by its last symbol."""
        k = self.length
        if k == 1:
            return SoficShift(self.alphabet, [((), w[0], ()) for w in sorted(self.words)])
        return SoficShift(
            self.alphabet, [(w[:-1], w[-1], w[1:]) for w in sorted(self.words)]
        )

    @property
    def is_empty(self):
        return self.to_sofic().is_empty

    @classmethod
    def full(cls, alphabet, length=1):
        return cls(alphabet, length, frozenset(alphabet.all_words(length)))

    @classmethod
    def forbidding(cls, alphabet, length, forbidden):
        """SFT over all length-``length`` words except the given ones."""
        bad = {tuple(w) for w in forbidden}
        return cls(
            alphabet,
            length,
            frozenset(w for w in alphabet.all_words(length) if w not in bad),
        )


def is_mixing(sft):
    """Exact mixing test for an SFT: its essential de Bruijn graph must
    be strongly connected with cycle-length gcd 1.

    Raises on the empty shift, where mixing is undefined.
    """
    sofic = sft.to_sofic()
    if sofic.is_empty:
        raise ShiftError("mixing is undefined for the empty shift")
    adj = {v: [d for _, d in bucket] for v, bucket in enumerate(sofic.adj)}
    comps = strongly_connected_components(adj)
    if len(comps) != 1:
        return False
    return graph_period(adj) == 1

"""Equal-image pair graphs.

The pair graph of a rule tracks two configurations simultaneously:
vertices are pairs of de Bruijn vertices (2r-words), and an edge exists
for every pair of neighborhoods with the same rule output.  Bi-infinite
paths of the essential pair graph are exactly the pairs ``(x, y)`` with
``F(x) = F(y)`` (windows restricted to an allowed word set when given).

Two facts drive the decision procedures built on top:

* the map is injective on the full shift iff the essential pair graph
  has no edge whose two neighborhoods differ ("marked" edge), and when
  a marked edge exists some marked edge lies on a cycle, which yields a
  pair of distinct spatially periodic configurations with equal images;

* the map is right-closing iff no marked edge is reachable from a
  diagonal vertex that has a left-infinite diagonal history; a breach
  unrolls into a left-asymptotic pair with equal images.
"""

from __future__ import annotations

from .configurations import EventuallyPeriodicConfiguration, PeriodicConfiguration
from .graphs import essential_vertices


class PairGraph:
    """Essentialized equal-image pair graph.

    ``edges`` maps each vertex (a pair of 2r-word tuples) to a list of
    ``((w1, w2), dst)`` entries; ``marked`` collects the edges whose two
    neighborhoods differ.
    """

    __slots__ = ("radius", "edges", "vertices")

    def __init__(self, radius, edges, vertices):
        self.radius = radius
        self.edges = edges
        self.vertices = vertices

    def marked_edges(self):
        for src, bucket in self.edges.items():
            for (w1, w2), dst in bucket:
                if w1 != w2:
                    yield src, (w1, w2), dst

    def has_marked_edge(self):
        return next(self.marked_edges(), None) is not None

    def diagonal_vertices(self):
        return [v for v in self.vertices if v[0] == v[1]]


def equal_image_pair_graph(rule, allowed=None):
    """Build the essential pair graph of ``rule``.

    ``allowed`` restricts the neighborhoods to a word set (defaults to
    every (2r+1)-word, i.e. the full shift).
    """
    r = rule.radius
    if allowed is None:
        allowed = list(rule.alphabet.all_words(2 * r + 1))
    else:
        allowed = sorted(allowed)
    by_output = {}
    for w in allowed:
        by_output.setdefault(rule(w), []).append(w)

    raw_edges = []
    for group in by_output.values():
        for w1 in group:
            for w2 in group:
                raw_edges.append(((w1[:-1] if r else (), w2[:-1] if r else ()),
                                  (w1, w2),
                                  (w1[1:] if r else (), w2[1:] if r else ())))
    verts = set()
    for src, _, dst in raw_edges:
        verts.add(src)
        verts.add(dst)
    keep = essential_vertices(verts, [(s, d) for s, _, d in raw_edges])
    edges = {v: [] for v in sorted(keep)}
    for src, pair, dst in raw_edges:
        if src in keep and dst in keep:
            edges[src].append((pair, dst))
    for bucket in edges.values():
        bucket.sort()
    return PairGraph(r, edges, sorted(keep))


def _bfs_edge_path(graph, sources, stop_edge_pred):
    """Shortest edge path from any source vertex up to (and including)
    the first edge satisfying the predicate; None if unreachable."""
    prev = {v: None for v in sources}
    queue = list(sources)
    while queue:
        v = queue.pop(0)
        for pair, dst in graph.edges.get(v, ()):
            if stop_edge_pred(pair):
                path = [(v, pair, dst)]
                back = v
                while prev[back] is not None:
                    edge = prev[back]
                    path.append(edge)
                    back = edge[0]
                path.reverse()
                return path
            if dst not in prev:
                prev[dst] = (v, pair, dst)
                queue.append(dst)
    return None


def _path_between(graph, start, goal):
    """Shortest edge path start -> goal (empty list when start == goal)."""
    if start == goal:
        return []
    prev = {start: None}
    queue = [start]
    while queue:
        v = queue.pop(0)
        for pair, dst in graph.edges.get(v, ()):
            if dst not in prev:
                prev[dst] = (v, pair, dst)
                if dst == goal:
                    path = []
                    back = dst
                    while prev[back] is not None:
                        edge = prev[back]
                        path.append(edge)
                        back = edge[0]
                    path.reverse()
                    return path
                queue.append(dst)
    return None


def find_marked_cycle(graph):
    """A cycle through a marked edge, as an edge list; None when the
    graph has no such cycle (in particular when it has no marked edge)."""
    for src, pair, dst in graph.marked_edges():
        back = _path_between(graph, dst, src)
        if back is not None:
            return [(src, pair, dst)] + back
    return None


def periodic_pair_from_cycle(cycle):
    """Unroll a pair-graph cycle into two spatially periodic
    configurations with equal images (distinct when the cycle passes a
    marked edge)."""
    xs = tuple(pair[0][-1] for _, pair, _ in cycle)
    ys = tuple(pair[1][-1] for _, pair, _ in cycle)
    return PeriodicConfiguration(xs), PeriodicConfiguration(ys)


def find_diagonal_escape(graph):
    """Shortest path from a diagonal vertex with diagonal history to a
    marked edge; None when no such breach exists.

    Sources are the diagonal vertices of the essential *diagonal*
    subgraph, i.e. those with a left-infinite all-diagonal past.
    """
    diag_edges = [
        (src, dst)
        for src, bucket in graph.edges.items()
        if src[0] == src[1]
        for (w1, w2), dst in bucket
        if w1 == w2 and dst[0] == dst[1]
    ]
    diag_vertices = essential_vertices(set(graph.diagonal_vertices()), diag_edges)
    if not diag_vertices:
        return None
    return _bfs_edge_path(graph, sorted(diag_vertices), lambda pair: pair[0] != pair[1])


def find_finite_difference_path(graph):
    """Shortest path that starts at a diagonal vertex with diagonal
    history, traverses at least one marked edge, and returns to a
    diagonal vertex with diagonal future; None when impossible.

    Unrolled, such a path is a pair of configurations that differ in
    finitely many cells yet share their image, i.e. a pre-injectivity
    (equivalently, by the Garden of Eden theorem, surjectivity)
    refutation.
    """
    diag_edges = [
        (src, dst)
        for src, bucket in graph.edges.items()
        if src[0] == src[1]
        for (w1, w2), dst in bucket
        if w1 == w2 and dst[0] == dst[1]
    ]
    diag_vertices = essential_vertices(set(graph.diagonal_vertices()), diag_edges)
    if not diag_vertices:
        return None
    sources = sorted(diag_vertices)
    prev = {(v, False): None for v in sources}
    queue = [(v, False) for v in sources]
    while queue:
        state = queue.pop(0)
        v, seen_marked = state
        for pair, dst in graph.edges.get(v, ()):
            nstate = (dst, seen_marked or pair[0] != pair[1])
            if nstate[1] and dst in diag_vertices:
                path = [(v, pair, dst)]
                back = state
                while prev[back] is not None:
                    edge, pstate = prev[back]
                    path.append(edge)
                    back = pstate
                path.reverse()
                return path
            if nstate not in prev:
                prev[nstate] = ((v, pair, dst), state)
                queue.append(nstate)
    return None


def erasable_pair_from_path(path):
    """Unroll a diagonal-to-diagonal marked path into two configurations
    differing exactly on the path's span, with equal images."""
    start = path[0][0]
    end = path[-1][2]
    left = start[0] if start[0] else (0,)
    right = end[0] if end[0] else (0,)
    x_mid = tuple(pair[0][-1] for _, pair, _ in path)
    y_mid = tuple(pair[1][-1] for _, pair, _ in path)
    x = EventuallyPeriodicConfiguration(left, x_mid, right, 0)
    y = EventuallyPeriodicConfiguration(left, y_mid, right, 0)
    return x, y


def asymptotic_pair_from_escape(graph, escape_path):
    """Extend an escape path into a left-asymptotic pair of eventually
    periodic configurations with equal images.

    The left tail repeats the starting diagonal word; the right tail is
    found by walking forward until a vertex repeats.
    """
    start = escape_path[0][0]
    d = start[0]
    left = d if d else (0,)

    # extend forward to a cycle
    walk = list(escape_path)
    seen = {}
    v = walk[-1][2]
    tail = []
    while v not in seen:
        seen[v] = len(tail)
        pair, dst = graph.edges[v][0]
        tail.append((v, pair, dst))
        v = dst
    cut = seen[v]
    mid_edges = walk + tail[:cut]
    cycle_edges = tail[cut:]

    x_mid = tuple(pair[0][-1] for _, pair, _ in mid_edges)
    y_mid = tuple(pair[1][-1] for _, pair, _ in mid_edges)
    x_right = tuple(pair[0][-1] for _, pair, _ in cycle_edges)
    y_right = tuple(pair[1][-1] for _, pair, _ in cycle_edges)
    x = EventuallyPeriodicConfiguration(left, x_mid, x_right, 0)
    y = EventuallyPeriodicConfiguration(left, y_mid, y_right, 0)
    return x, y

"""Directed-multigraph helpers shared by the shift and pair-graph code.

Graphs are represented as plain edge lists ``(src, dst)`` or adjacency
dicts ``{vertex: [successor, ...]}`` over hashable vertices.  Nothing in
this module knows about edge labels; callers keep their own label data
keyed by edge.
"""

from __future__ import annotations

from math import gcd


def essential_vertices(vertices, edges):
    """Vertices lying on some bi-infinite path.

    Repeatedly peels vertices with no incoming or no outgoing edge until
    a fixpoint is reached; what survives is exactly the set of vertices
    that can be extended forever in both directions.

    ``edges`` is an iterable of ``(src, dst)`` pairs (parallel edges are
    allowed and counted separately).
    """
    verts = set(vertices)
    out_deg = {v: 0 for v in verts}
    in_deg = {v: 0 for v in verts}
    preds = {v: [] for v in verts}
    succs = {v: [] for v in verts}
    for src, dst in edges:
        if src in verts and dst in verts:
            out_deg[src] += 1
            in_deg[dst] += 1
            preds[dst].append(src)
            succs[src].append(dst)

    removed = set()
    queue = [v for v in verts if out_deg[v] == 0 or in_deg[v] == 0]
    while queue:
        v = queue.pop()
        if v in removed:
            continue
        removed.add(v)
        for p in preds[v]:
            if p not in removed:
                out_deg[p] -= 1
                if out_deg[p] == 0:
                    queue.append(p)
        for s in succs[v]:
            if s not in removed:
                in_deg[s] -= 1
                if in_deg[s] == 0:
                    queue.append(s)
    return verts - removed


def strongly_connected_components(adj):
    """Kosaraju's algorithm, iterative.  ``adj`` maps vertex -> successors.

    Returns a list of vertex sets.  Every vertex of ``adj`` appears in
    exactly one component.
    """
    order = []
    seen = set()
    for root in adj:
        if root in seen:
            continue
        seen.add(root)
        stack = [(root, iter(adj.get(root, ())))]
        while stack:
            v, it = stack[-1]
            nxt = next((w for w in it if w not in seen), None)
            if nxt is None:
                order.append(v)
                stack.pop()
            else:
                seen.add(nxt)
                stack.append((nxt, iter(adj.get(nxt, ()))))

    radj = {v: [] for v in adj}
    for v, ws in adj.items():
        for w in ws:
            radj.setdefault(w, []).append(v)

    components = []
    assigned = set()
    for root in reversed(order):
        if root in assigned:
            continue
        comp = {root}
        assigned.add(root)
        stack = [root]
        while stack:
            v = stack.pop()
            for w in radj.get(v, ()):
                if w not in assigned:
                    assigned.add(w)
                    comp.add(w)
                    stack.append(w)
        components.append(comp)
    return components


def graph_period(adj):
    """gcd of all cycle lengths of a strongly connected graph.

    ``adj`` must be strongly connected and contain at least one edge.
    Computed from BFS potentials: every edge ``u -> w`` contributes
    ``|dist(u) + 1 - dist(w)|`` to the gcd.
    """
    root = next(iter(adj))
    dist = {root: 0}
    queue = [root]
    g = 0
    while queue:
        v = queue.pop(0)
        for w in adj[v]:
            if w not in dist:
                dist[w] = dist[v] + 1
                queue.append(w)
            else:
                g = gcd(g, abs(dist[v] + 1 - dist[w]))
    # a strongly connected graph with an edge always closes some cycle
    return g

"""Brute-force spanning tree enumeration.

Trees are produced by binary branching on the lowest-ordered undecided edge
(contract it / delete it). Bridges of the current minor are forced into the
tree before each branch, so the deletion branch never disconnects and every
leaf of the search is a spanning tree.
"""

from __future__ import annotations

from collections import Counter
from fractions import Fraction
from typing import Callable, Iterable, Mapping

from .errors import CapExceeded
from .multigraph import MultiGraph, is_connected, is_forest, _check_edges

DEFAULT_CAP = 10**6

TreeList = list  # list[frozenset of edge ids]


def _bridges(vertices, edges) -> set:
    """Ids of bridge edges; ``edges`` are ``(id, a, b)`` triples."""
    adj = {v: [] for v in vertices}
    for eid, a, b in edges:
        adj[a].append((b, eid))
        adj[b].append((a, eid))
    disc, low, out = {}, {}, set()
    counter = 0
    for root in vertices:
        if root in disc:
            continue
        disc[root] = low[root] = counter
        counter += 1
        stack = [(root, None, iter(adj[root]))]
        while stack:
            v, via, it = stack[-1]
            for w, eid in it:
                if eid == via:
                    continue
                if w in disc:
                    low[v] = min(low[v], disc[w])
                else:
                    disc[w] = low[w] = counter
                    counter += 1
                    stack.append((w, eid, iter(adj[w])))
                    break
            else:
                stack.pop()
                if stack:
                    parent = stack[-1][0]
                    low[parent] = min(low[parent], low[v])
                    if low[v] > disc[parent]:
                        out.add(via)
    return out


def _contract(vertices, edges, chosen_ids):
    """Contract the given edge ids; returns the new vertex set and edges."""
    parent = {v: v for v in vertices}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for eid, a, b in edges:
        if eid in chosen_ids:
            ra, rb = find(a), find(b)
            if ra != rb:
                parent[rb] = ra
    new_edges = []
    for eid, a, b in edges:
        if eid in chosen_ids:
            continue
        ra, rb = find(a), find(b)
        if ra != rb:
            new_edges.append((eid, ra, rb))
    return {find(v) for v in vertices}, new_edges


def _search(vertices, edges, chosen, out, cap):
    if len(vertices) == 1:
        out.append(frozenset(chosen))
        if len(out) > cap:
            raise CapExceeded(cap)
        return
    forced = _bridges(vertices, edges)
    if forced:
        vs, es = _contract(vertices, edges, forced)
        _search(vs, es, chosen + [eid for eid, _, _ in edges if eid in forced], out, cap)
        return
    eid = edges[0][0]
    vs, es = _contract(vertices, edges, {eid})
    _search(vs, es, chosen + [eid], out, cap)
    _search(vertices, edges[1:], chosen, out, cap)


def enumerate_constrained(G: MultiGraph, N=(), cap: int = DEFAULT_CAP) -> TreeList:
    """All spanning trees of G containing every edge of N.

    Raises CapExceeded rather than truncating when there are more than
    ``cap`` of them.
    """
    N = _check_edges(G, N)
    if G.order == 0 or not is_connected(G) or not is_forest(G, N):
        return []
    edges = [(e.id, e.u, e.v) for e in G.edges]
    vertices, edges = _contract(set(G.vertices), edges, N)
    out: list = []
    _search(vertices, edges, G.sort_edges(N), out, cap)
    return out


def enumerate_spanning_trees(G: MultiGraph, cap: int = DEFAULT_CAP) -> TreeList:
    return enumerate_constrained(G, (), cap)


def tree_degrees(G: MultiGraph, tree: Iterable) -> Counter:
    """|E_T(v)| for every vertex v (zero entries omitted)."""
    deg: Counter = Counter()
    for eid in tree:
        e = G.edge(eid)
        deg[e.u] += 1
        deg[e.v] += 1
    return deg


def sum_over_trees(G: MultiGraph, term: Callable[[frozenset], object], N=(),
                   cap: int = DEFAULT_CAP) -> Fraction:
    """Sum of ``term(T)`` over the spanning trees T of G containing N."""
    total = Fraction(0)
    for tree in enumerate_constrained(G, N, cap):
        total += term(tree)
    return total


def tree_sum_by_enumeration(G: MultiGraph, weights: Mapping | None = None, N=(),
                            cap: int = DEFAULT_CAP) -> Fraction:
    weights = weights or {}

    def product(tree):
        p = Fraction(1)
        for eid in tree:
            p *= Fraction(weights.get(eid, 1))
        return p

    return sum_over_trees(G, product, N, cap)

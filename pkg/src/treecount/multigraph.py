"""Loopless multigraphs with stable vertex and edge identities.

Every operation is a pure function returning a new graph. Edges keep their
id through deletion, contraction and every construction built on top of
them, so an edge set named in one graph can be looked up in any graph
derived from it.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from typing import Hashable, Iterable, Iterator, Mapping, Sequence

from .errors import SelfLoop, UnknownEdge, UnknownVertex, GraphError

Vertex = Hashable
EdgeId = Hashable


@dataclass(frozen=True)
class Edge:
    id: EdgeId
    u: Vertex
    v: Vertex
    label: str | None = None

    @property
    def ends(self) -> tuple[Vertex, Vertex]:
        return (self.u, self.v)

    def other(self, x: Vertex) -> Vertex:
        if x == self.u:
            return self.v
        if x == self.v:
            return self.u
        raise UnknownVertex(x)

    def joins(self, a: Vertex, b: Vertex) -> bool:
        return (self.u == a and self.v == b) or (self.u == b and self.v == a)

    @property
    def name(self) -> str:
        """The label if one was given, otherwise the id."""
        return self.label if self.label is not None else str(self.id)


class MultiGraph:
    """An immutable loopless multigraph.

    Vertices and edges are kept in insertion order; all iteration is in that
    order, which makes every derived result reproducible.
    """

    __slots__ = ("_vertices", "_vpos", "_edges", "_epos", "_inc")

    def __init__(self, vertices: Iterable[Vertex], edges: Iterable[Edge] = ()):
        self._vertices = tuple(vertices)
        self._vpos = {v: i for i, v in enumerate(self._vertices)}
        if len(self._vpos) != len(self._vertices):
            dup = [v for v, c in Counter(self._vertices).items() if c > 1]
            raise GraphError(f"duplicate vertices: {dup!r}")
        self._edges = tuple(edges)
        self._epos = {}
        self._inc = {v: [] for v in self._vertices}
        for i, e in enumerate(self._edges):
            if e.id in self._epos:
                raise GraphError(f"duplicate edge id: {e.id!r}")
            for x in e.ends:
                if x not in self._vpos:
                    raise UnknownVertex(x)
            if e.u == e.v:
                raise SelfLoop(e)
            self._epos[e.id] = i
            self._inc[e.u].append(e.id)
            self._inc[e.v].append(e.id)

    # -- basic queries -------------------------------------------------

    @property
    def vertices(self) -> tuple[Vertex, ...]:
        return self._vertices

    @property
    def edges(self) -> tuple[Edge, ...]:
        return self._edges

    @property
    def edge_ids(self) -> tuple[EdgeId, ...]:
        return tuple(e.id for e in self._edges)

    @property
    def order(self) -> int:
        return len(self._vertices)

    @property
    def size(self) -> int:
        return len(self._edges)

    def has_vertex(self, v) -> bool:
        return v in self._vpos

    def has_edge(self, e) -> bool:
        return e in self._epos

    def edge(self, eid: EdgeId) -> Edge:
        try:
            return self._edges[self._epos[eid]]
        except KeyError:
            raise UnknownEdge(eid) from None

    def vertex_index(self, v: Vertex) -> int:
        try:
            return self._vpos[v]
        except KeyError:
            raise UnknownVertex(v) from None

    def edge_index(self, eid: EdgeId) -> int:
        try:
            return self._epos[eid]
        except KeyError:
            raise UnknownEdge(eid) from None

    def incident(self, v: Vertex) -> tuple[EdgeId, ...]:
        """E_G(v): ids of the edges at ``v``."""
        try:
            return tuple(self._inc[v])
        except KeyError:
            raise UnknownVertex(v) from None

    def degree(self, v: Vertex) -> int:
        return len(self.incident(v))

    def neighbors(self, v: Vertex) -> frozenset:
        return frozenset(self.edge(e).other(v) for e in self.incident(v))

    def multiplicity(self, a: Vertex, b: Vertex) -> int:
        return sum(1 for e in self.incident(a) if self.edge(e).other(a) == b)

    def resolve(self, names: Iterable) -> frozenset:
        """Map edge ids or labels to a set of edge ids.

        A name matching an edge id wins; otherwise every edge carrying that
        label is selected.
        """
        by_label: dict = {}
        for e in self._edges:
            if e.label is not None:
                by_label.setdefault(e.label, []).append(e.id)
        out = set()
        for name in names:
            if name in self._epos:
                out.add(name)
            elif name in by_label:
                out.update(by_label[name])
            else:
                raise UnknownEdge(name)
        return frozenset(out)

    def sort_edges(self, ids: Iterable[EdgeId]) -> list[EdgeId]:
        return sorted(ids, key=self.edge_index)

    def sort_vertices(self, vs: Iterable[Vertex]) -> list[Vertex]:
        return sorted(vs, key=self.vertex_index)

    # -- comparison ----------------------------------------------------

    def __eq__(self, other):
        if not isinstance(other, MultiGraph):
            return NotImplemented
        return (set(self._vertices) == set(other._vertices)
                and {e.id: frozenset(e.ends) for e in self._edges}
                == {e.id: frozenset(e.ends) for e in other._edges})

    def __hash__(self):
        return hash((frozenset(self._vertices), len(self._edges)))

    def __repr__(self):
        return f"MultiGraph(order={self.order}, size={self.size})"


@dataclass(frozen=True)
class ContractionMap:
    """Where every vertex of the source graph went after a contraction."""

    vertex_map: Mapping[Vertex, Vertex]
    contracted: frozenset = field(default_factory=frozenset)
    dropped: frozenset = field(default_factory=frozenset)

    def __call__(self, v: Vertex) -> Vertex:
        try:
            return self.vertex_map[v]
        except KeyError:
            raise UnknownVertex(v) from None

    def then(self, later: "ContractionMap") -> "ContractionMap":
        """Compose with a contraction applied to the result of this one."""
        return ContractionMap(
            {v: later(w) for v, w in self.vertex_map.items()},
            self.contracted | later.contracted,
            self.dropped | later.dropped,
        )

    def classes(self) -> dict:
        out: dict = {}
        for v, w in self.vertex_map.items():
            out.setdefault(w, set()).add(v)
        return {w: frozenset(vs) for w, vs in out.items()}


class DisjointSet:
    """Union-find with path halving; ``find`` creates singletons on demand."""

    def __init__(self, items: Iterable = ()):
        self._parent = {x: x for x in items}

    def find(self, x):
        parent = self._parent
        if x not in parent:
            parent[x] = x
            return x
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(self, a, b) -> bool:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        self._parent[rb] = ra
        return True


# -- construction ------------------------------------------------------

def build(vertices: Iterable[Vertex], edge_list: Iterable[Sequence]) -> MultiGraph:
    """Build a graph; edges are ``(a, b)`` or ``(a, b, label)``.

    Edge ids are positional: ``e1, e2, ...`` in input order.
    """
    vertices = list(vertices)
    known = set(vertices)
    edges = []
    for i, rec in enumerate(edge_list, start=1):
        if len(rec) not in (2, 3):
            raise GraphError(f"edge record must be (a, b) or (a, b, label): {rec!r}")
        a, b = rec[0], rec[1]
        label = rec[2] if len(rec) == 3 else None
        for x in (a, b):
            if x not in known:
                raise UnknownVertex(x)
        if a == b:
            raise SelfLoop(tuple(rec))
        edges.append(Edge(f"e{i}", a, b, label))
    return MultiGraph(vertices, edges)


def complete_graph(n: int) -> MultiGraph:
    vs = list(range(n))
    return build(vs, [(i, j) for i in range(n) for j in range(i + 1, n)])


def cycle_graph(n: int) -> MultiGraph:
    return build(range(n), [(i, (i + 1) % n) for i in range(n)])


def path_graph(n: int) -> MultiGraph:
    return build(range(n), [(i, i + 1) for i in range(n - 1)])


def fresh_name(base, taken) -> str:
    """``base`` primed until it collides with nothing in ``taken``."""
    taken = {str(t) for t in taken}
    name = str(base)
    while name in taken:
        name += "'"
    return name


def fresh_ids(prefix: str, taken, count: int) -> list[str]:
    taken = {str(t) for t in taken}
    out, i = [], 1
    while len(out) < count:
        cand = f"{prefix}{i}"
        if cand not in taken:
            out.append(cand)
        i += 1
    return out


# -- edge-set operations -----------------------------------------------

def _check_edges(G: MultiGraph, E) -> frozenset:
    E = frozenset(E)
    for e in E:
        if not G.has_edge(e):
            raise UnknownEdge(e)
    return E


def _check_vertices(G: MultiGraph, V) -> frozenset:
    V = frozenset(V)
    for v in V:
        if not G.has_vertex(v):
            raise UnknownVertex(v)
    return V


def delete_edges(G: MultiGraph, E) -> MultiGraph:
    """G - E': same vertex set, the given edges removed."""
    E = _check_edges(G, E)
    return MultiGraph(G.vertices, [e for e in G.edges if e.id not in E])


def contract_edges(G: MultiGraph, E) -> tuple[MultiGraph, ContractionMap]:
    """G / E': each component of G<E'> becomes one vertex.

    The surviving vertex keeps the id of the first member (in vertex order)
    of its class. Edges that become loops are dropped; parallel edges stay.
    """
    E = _check_edges(G, E)
    ds = DisjointSet(G.vertices)
    for eid in G.sort_edges(E):
        e = G.edge(eid)
        ds.union(e.u, e.v)
    rep: dict = {}
    for v in G.vertices:
        rep.setdefault(ds.find(v), v)
    vmap = {v: rep[ds.find(v)] for v in G.vertices}
    new_vertices = [v for v in G.vertices if vmap[v] == v]
    edges, dropped = [], set()
    for e in G.edges:
        if e.id in E:
            continue
        a, b = vmap[e.u], vmap[e.v]
        if a == b:
            dropped.add(e.id)
        else:
            edges.append(Edge(e.id, a, b, e.label))
    return MultiGraph(new_vertices, edges), ContractionMap(vmap, E, frozenset(dropped))


def induced_subgraph(G: MultiGraph, V) -> MultiGraph:
    """G[V']."""
    V = _check_vertices(G, V)
    return MultiGraph([v for v in G.vertices if v in V],
                      [e for e in G.edges if e.u in V and e.v in V])


def edge_subgraph(G: MultiGraph, E) -> MultiGraph:
    """G[E']: the edges of E' and their endpoints only."""
    E = _check_edges(G, E)
    used = {x for e in E for x in G.edge(e).ends}
    return MultiGraph([v for v in G.vertices if v in used],
                      [e for e in G.edges if e.id in E])


def spanning_subgraph(G: MultiGraph, E) -> MultiGraph:
    """G<E'>: every vertex kept, only the edges of E'."""
    E = _check_edges(G, E)
    return MultiGraph(G.vertices, [e for e in G.edges if e.id in E])


def edges_between(G: MultiGraph, U1, U2) -> frozenset:
    """E_G(U1, U2): edges with one end in U1 and the other in U2."""
    U1, U2 = _check_vertices(G, U1), _check_vertices(G, U2)
    return frozenset(e.id for e in G.edges
                     if (e.u in U1 and e.v in U2) or (e.v in U1 and e.u in U2))


def boundary(G: MultiGraph, U) -> frozenset:
    """E_G(U) = E_G(U, V - U)."""
    U = _check_vertices(G, U)
    return frozenset(e.id for e in G.edges if (e.u in U) != (e.v in U))


def inner_edges(G: MultiGraph, U) -> frozenset:
    """E(G[U])."""
    U = _check_vertices(G, U)
    return frozenset(e.id for e in G.edges if e.u in U and e.v in U)


def closed_neighborhood(G: MultiGraph, V) -> frozenset:
    """N_G[V'] = V' together with every neighbour of V'."""
    V = _check_vertices(G, V)
    out = set(V)
    for v in V:
        out.update(G.neighbors(v))
    return frozenset(out)


# -- structural predicates ---------------------------------------------

def is_forest(G: MultiGraph, E) -> bool:
    """Whether the spanning subgraph G<E'> is acyclic."""
    E = _check_edges(G, E)
    ds = DisjointSet()
    for eid in E:
        e = G.edge(eid)
        if not ds.union(e.u, e.v):
            return False
    return True


def forest_rank(G: MultiGraph, E) -> int:
    """Number of edges in a spanning forest of G<E'>."""
    E = _check_edges(G, E)
    ds = DisjointSet()
    return sum(1 for eid in E if ds.union(*G.edge(eid).ends))


def components(G: MultiGraph) -> list[frozenset]:
    """Vertex sets of the connected components, ordered by first vertex."""
    ds = DisjointSet(G.vertices)
    for e in G.edges:
        ds.union(e.u, e.v)
    groups: dict = {}
    for v in G.vertices:
        groups.setdefault(ds.find(v), []).append(v)
    return [frozenset(g) for g in groups.values()]


def edge_components(G: MultiGraph, E) -> list[tuple[frozenset, frozenset]]:
    """Components of G[E'] as ``(vertices, edges)``, ordered by first edge."""
    E = _check_edges(G, E)
    ds = DisjointSet()
    ordered = G.sort_edges(E)
    for eid in ordered:
        ds.union(*G.edge(eid).ends)
    groups: dict = {}
    for eid in ordered:
        e = G.edge(eid)
        vs, es = groups.setdefault(ds.find(e.u), (set(), set()))
        vs.update(e.ends)
        es.add(eid)
    return [(frozenset(vs), frozenset(es)) for vs, es in groups.values()]


def is_connected(G: MultiGraph) -> bool:
    return len(components(G)) == 1


def is_clique(G: MultiGraph, U) -> bool:
    """G[U] is complete and simple: each pair joined by exactly one edge."""
    U = _check_vertices(G, U)
    pairs = Counter(frozenset(e.ends) for e in G.edges if e.u in U and e.v in U)
    n = len(U)
    return len(pairs) == n * (n - 1) // 2 and all(c == 1 for c in pairs.values())


def is_regular(G: MultiGraph) -> int | None:
    """The common degree if G is regular, else None."""
    degs = {G.degree(v) for v in G.vertices}
    return degs.pop() if len(degs) == 1 else None


def iter_pairs(items: Sequence) -> Iterator[tuple]:
    for i in range(len(items)):
        for j in range(i + 1, len(items)):
            yield items[i], items[j]

"""Graph operators used by the counting formulas.

Every construction keeps the ids of the edges it inherits, so constraint
sets are carried from a graph to its derived graphs by id. New vertices
and edges receive fresh ids that collide with nothing already present.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import NamedTuple

from .errors import (EmptyEdgeSet, HypothesisViolated, MNotContained, NotAForest,
                     NotAPartition, NotASubgraph, UnknownVertex)
from .kirchhoff import count_constrained
from .multigraph import (ContractionMap, Edge, MultiGraph, _check_edges, _check_vertices,
                         closed_neighborhood, contract_edges, delete_edges,
                         edge_components, edges_between, fresh_ids, fresh_name,
                         induced_subgraph, inner_edges, is_clique, is_connected, is_forest,
                         iter_pairs)


# -- partitions ----------------------------------------------------------

@dataclass(frozen=True)
class CliquePartition:
    """V0 plus cliques V1..Vk partitioning V(G).

    ``M`` holds every edge between two different parts; ``M_i[i]`` is
    E_G(V_{i+1}, V0) (cliques are indexed from zero here).
    """

    graph: MultiGraph
    V0: frozenset
    cliques: tuple

    @classmethod
    def from_cliques(cls, G: MultiGraph, cliques, V0=None) -> "CliquePartition":
        cliques = tuple(frozenset(c) for c in cliques)
        for c in cliques:
            _check_vertices(G, c)
        if V0 is None:
            covered = set().union(*cliques) if cliques else set()
            V0 = frozenset(v for v in G.vertices if v not in covered)
        return cls(G, _check_vertices(G, V0), cliques)

    @property
    def k(self) -> int:
        return len(self.cliques)

    @cached_property
    def U(self) -> frozenset:
        return frozenset().union(*self.cliques) if self.cliques else frozenset()

    @cached_property
    def part_of(self) -> dict:
        """Vertex -> 0 for V0, i+1 for clique i (first occurrence wins)."""
        out = {v: 0 for v in self.V0}
        for i, c in enumerate(self.cliques, start=1):
            for v in c:
                out.setdefault(v, i)
        return out

    @cached_property
    def M(self) -> frozenset:
        part = self.part_of
        return frozenset(e.id for e in self.graph.edges
                         if part.get(e.u) != part.get(e.v))

    @cached_property
    def M_i(self) -> tuple:
        G = self.graph
        return tuple(edges_between(G, c, self.V0) for c in self.cliques)

    @cached_property
    def inter_clique_edges(self) -> frozenset:
        part = self.part_of
        return frozenset(e.id for e in self.graph.edges
                         if part.get(e.u, 0) > 0 and part.get(e.v, 0) > 0
                         and part[e.u] != part[e.v])

    def conditions(self) -> dict:
        G = self.graph
        sizes = len(self.V0) + sum(len(c) for c in self.cliques)
        union = set(self.V0).union(*self.cliques) if self.cliques else set(self.V0)
        ok_partition = (sizes == len(union) == G.order
                        and all(self.cliques) and set(G.vertices) == union)
        report = {"partition": ok_partition}
        if not ok_partition:
            report.update(cliques=False, no_clique_edges=False, stars=False)
            return report
        report["cliques"] = all(is_clique(G, c) for c in self.cliques)
        report["no_clique_edges"] = not self.inter_clique_edges
        m_edges = self.M
        report["stars"] = all(
            sum(1 for e in G.incident(v) if e in m_edges) <= 1 for v in self.U)
        return report

    def validate(self, required=("partition", "cliques", "no_clique_edges", "stars")) -> dict:
        report = self.conditions()
        failed = [name for name in required if not report[name]]
        if failed:
            raise HypothesisViolated(failed)
        return report


@dataclass(frozen=True)
class CliqueCut:
    """A clique U with S1, S2 partitioning V - U and N[S1], N[S2] disjoint."""

    graph: MultiGraph
    U: frozenset
    S1: frozenset
    S2: frozenset
    W: frozenset = field(default_factory=frozenset)

    @classmethod
    def make(cls, G: MultiGraph, U, S1, S2, W=()) -> "CliqueCut":
        return cls(G, _check_vertices(G, U), _check_vertices(G, S1),
                   _check_vertices(G, S2), _check_edges(G, W))

    def side(self, i: int) -> MultiGraph:
        """G[U ∪ S_i] for i in (1, 2)."""
        return induced_subgraph(self.graph, self.U | (self.S1 if i == 1 else self.S2))

    def W_side(self, i: int) -> frozenset:
        return self.W & frozenset(self.side(i).edge_ids)

    @property
    def W1(self) -> frozenset:
        return self.W_side(1)

    @property
    def W2(self) -> frozenset:
        return self.W_side(2)

    def conditions(self) -> dict:
        G = self.graph
        parts_ok = (not (self.U & self.S1) and not (self.U & self.S2)
                    and not (self.S1 & self.S2)
                    and (self.U | self.S1 | self.S2) == frozenset(G.vertices))
        return {
            "partition": parts_ok,
            "clique": bool(self.U) and is_clique(G, self.U),
            "separated": not (closed_neighborhood(G, self.S1) & closed_neighborhood(G, self.S2)),
            "W_outside_U": not (self.W & inner_edges(G, self.U)),
            "connected": is_connected(G),
        }

    def validate(self) -> dict:
        report = self.conditions()
        failed = [k for k, ok in report.items() if not ok]
        if failed:
            raise HypothesisViolated(failed)
        return report


# -- helpers -------------------------------------------------------------

def _with(G: MultiGraph, vertices=(), edges=()) -> MultiGraph:
    return MultiGraph(list(G.vertices) + list(vertices), list(G.edges) + list(edges))


def _new_edge_ids(G: MultiGraph, count: int, prefix: str = "x") -> list[str]:
    return fresh_ids(prefix, G.edge_ids, count)


# -- G ⋆ W ---------------------------------------------------------------

class StarResult(NamedTuple):
    graph: MultiGraph
    new_edges: frozenset
    centers: dict  # center vertex -> vertex set of its component of G[W]


def star_graph(G: MultiGraph, W) -> StarResult:
    """Add one apex per component of G[W], joined to that component's vertices."""
    W = _check_edges(G, W)
    if not W:
        raise EmptyEdgeSet()
    comps = edge_components(G, W)
    names = fresh_ids("w", G.vertices, len(comps))
    total = sum(len(vs) for vs, _ in comps)
    ids = iter(_new_edge_ids(G, total, "s"))
    new_edges, centers = [], {}
    for w, (vs, _) in zip(names, comps):
        centers[w] = vs
        for v in G.sort_vertices(vs):
            new_edges.append(Edge(next(ids), w, v))
    H = _with(G, names, new_edges)
    return StarResult(H, frozenset(e.id for e in new_edges), centers)


# -- G ∙ U ---------------------------------------------------------------

def bullet_contract(G: MultiGraph, U) -> tuple[MultiGraph, ContractionMap]:
    """G/E(G[U]); each component of G[U] collapses to its own vertex."""
    return contract_edges(G, inner_edges(G, U))


# -- vertex splitting and G ⋄ G0 ----------------------------------------

class SplitResult(NamedTuple):
    graph: MultiGraph
    new_edge: str
    new_vertex: str


def vertex_split(G: MultiGraph, v, E0) -> SplitResult:
    """G_{v◁E0}: edges at v outside E0 move to a new vertex v', joined to v."""
    if not G.has_vertex(v):
        raise UnknownVertex(v)
    E0 = _check_edges(G, E0)
    at_v = set(G.incident(v))
    if not E0 <= at_v:
        raise NotASubgraph(f"edges {sorted(map(str, E0 - at_v))} are not incident with {v!r}")
    v2 = fresh_name(v, G.vertices)
    edges = []
    for e in G.edges:
        if e.id in at_v and e.id not in E0:
            a, b = (v2, e.v) if e.u == v else (e.u, v2)
            edges.append(Edge(e.id, a, b, e.label))
        else:
            edges.append(e)
    (eid,) = _new_edge_ids(G, 1, "d")
    edges.append(Edge(eid, v, v2))
    return SplitResult(MultiGraph(list(G.vertices) + [v2], edges), eid, v2)


def _diamond(G: MultiGraph, E0, V0, origin: dict):
    new = []
    H = G
    for v in G.sort_vertices(V0):
        keep = frozenset(e for e in E0 if v in G.edge(e).ends)
        if frozenset(H.incident(v)) != keep:
            H, eid, v2 = vertex_split(H, v, keep)
            origin[v2] = origin.get(v, v)
            new.append(eid)
    return H, frozenset(new)


def diamond_subgraph(G: MultiGraph, edges, vertices=None) -> tuple[MultiGraph, frozenset]:
    """G⋄G0 for the subgraph G0 = (vertices, edges).

    ``vertices`` defaults to the endpoints of ``edges``. Returns the graph and
    the set of new edges, which form a matching.
    """
    try:
        E0 = _check_edges(G, edges)
        ends = {x for e in E0 for x in G.edge(e).ends}
        V0 = _check_vertices(G, ends if vertices is None else vertices)
    except (UnknownVertex, Exception) as exc:
        if isinstance(exc, HypothesisViolated):
            raise
        raise NotASubgraph(str(exc)) from exc
    if not ends <= V0:
        raise NotASubgraph("edge endpoints missing from the vertex set")
    return _diamond(G, E0, V0, {})


class DiamondPartition(NamedTuple):
    graph: MultiGraph
    new_edges: frozenset
    quotient: MultiGraph
    part_vertices: tuple  # quotient vertex v'_j for each part
    centers: dict  # original vertex -> its star centre w_i (only split vertices)
    quotient_map: ContractionMap


def diamond_partition(G: MultiGraph, parts) -> DiamondPartition:
    """G⋄S for a partition S = (E1, ..., Ek) of E(G).

    Built as the sequence of ⋄-operations on G[E1], ..., G[Ek]. Also returns
    the bipartite quotient (G⋄S)/E(G).
    """
    parts = [frozenset(p) for p in parts]
    seen: set = set()
    for p in parts:
        if not p:
            raise NotAPartition("empty part")
        for e in p:
            if not G.has_edge(e):
                raise NotAPartition(f"unknown edge {e!r}")
        if seen & p:
            raise NotAPartition("parts overlap")
        seen |= p
    if seen != set(G.edge_ids):
        raise NotAPartition("parts do not cover E(G)")
    H, origin, new = G, {}, frozenset()
    for p in parts:
        ends = {x for e in p for x in H.edge(e).ends}
        H, added = _diamond(H, p, ends, origin)
        new |= added
    centers = {}
    for w, v in origin.items():
        if all(e in new for e in H.incident(w)):
            centers[v] = w
    Q, qmap = contract_edges(H, G.edge_ids)
    part_vertices = tuple(qmap(H.edge(next(iter(sorted(p, key=G.edge_index)))).u)
                          for p in parts)
    return DiamondPartition(H, new, Q, part_vertices, centers, qmap)


# -- G ∘_R U ---------------------------------------------------------------

def omega_weighting(P: CliquePartition, R=()) -> dict:
    """ω_R on E(G∙U): |V_i| on M_i∩R, |V_i|/(1+|V_i|) on M_i−R, 1 elsewhere."""
    R = frozenset(R)
    w = {}
    for c, Mi in zip(P.cliques, P.M_i):
        s = len(c)
        for e in Mi:
            w[e] = Fraction(s) if e in R else Fraction(s, s + 1)
    return w


class CircReduction(NamedTuple):
    graph: MultiGraph  # G ∘_R U
    weights: dict  # ω'_R
    bullet: MultiGraph  # G ∙ U
    bullet_weights: dict  # ω_R
    bullet_map: ContractionMap


def circ_reduce(P: CliquePartition, R=()) -> CircReduction:
    """Collapse each parallel class E(v_i, w)∩R and E(v_i, w)−R of G∙U to one edge.

    The kept edge is the lowest-ordered member; its weight absorbs the class
    size, so weighted tree sums are unchanged.
    """
    P.validate()
    R = _check_edges(P.graph, R)
    if not R <= P.M:
        raise HypothesisViolated(["R_subset_M"])
    G = P.graph
    B, bmap = bullet_contract(G, P.U)
    omega = omega_weighting(P, R)
    classes: dict = {}
    for i, Mi in enumerate(P.M_i):
        for eid in G.sort_edges(Mi):
            e = G.edge(eid)
            outside = e.u if e.u in P.V0 else e.v
            classes.setdefault((i, outside, eid in R), []).append(eid)
    weights = dict(omega)
    drop = set()
    for members in classes.values():
        keep, rest = members[0], members[1:]
        weights[keep] = omega[keep] * len(members)
        drop.update(rest)
    for e in drop:
        del weights[e]
    return CircReduction(delete_edges(B, drop), weights, B, omega, bmap)


# -- line, middle and subdivision graphs ---------------------------------

def line_graph_with_cliques(H: MultiGraph) -> tuple[MultiGraph, dict]:
    """L(H) plus, for each vertex u of H, the L-edges forming the clique on E_H(u).

    Two edges of H sharing both endpoints give two parallel L-edges, one per
    shared endpoint, so the cliques partition E(L(H)).
    """
    edges, owner = [], []
    for u in H.vertices:
        for a, b in iter_pairs(H.incident(u)):
            edges.append((a, b, str(u)))
            owner.append(u)
    L = _build_keep(list(H.edge_ids), edges)
    cliques: dict = {u: [] for u in H.vertices}
    for e, u in zip(L.edges, owner):
        cliques[u].append(e.id)
    return L, cliques


def line_graph(H: MultiGraph) -> MultiGraph:
    return line_graph_with_cliques(H)[0]


def _build_keep(vertices, edge_list) -> MultiGraph:
    return MultiGraph(vertices, [Edge(f"e{i}", a, b, lab)
                                 for i, (a, b, lab) in enumerate(edge_list, start=1)])


def _edge_vertices(H: MultiGraph) -> dict:
    """A vertex name for each edge of H, distinct from the vertices of H."""
    taken = set(map(str, H.vertices))
    out = {}
    for e in H.edges:
        name = fresh_name(e.id, taken)
        taken.add(name)
        out[e.id] = name
    return out


def middle_graph_with_cliques(H: MultiGraph) -> tuple[MultiGraph, dict, dict]:
    """M(H), the clique {u} ∪ E_H(u) edge sets, and the H-edge -> vertex map."""
    ev = _edge_vertices(H)
    edges, owner = [], []
    for u in H.vertices:
        inc = H.incident(u)
        for e in inc:
            edges.append((u, ev[e], str(u)))
            owner.append(u)
        for a, b in iter_pairs(inc):
            edges.append((ev[a], ev[b], str(u)))
            owner.append(u)
    Mg = _build_keep(list(H.vertices) + [ev[e] for e in H.edge_ids], edges)
    cliques: dict = {u: [] for u in H.vertices}
    for e, u in zip(Mg.edges, owner):
        cliques[u].append(e.id)
    return Mg, cliques, ev


def middle_graph(H: MultiGraph) -> MultiGraph:
    return middle_graph_with_cliques(H)[0]


def subdivision_with_map(H: MultiGraph) -> tuple[MultiGraph, dict]:
    """S(H) and the map from each edge of H to its subdivision vertex."""
    ev = _edge_vertices(H)
    edges = []
    for e in H.edges:
        edges.append((e.u, ev[e.id], e.name))
        edges.append((ev[e.id], e.v, e.name))
    S = _build_keep(list(H.vertices) + [ev[e] for e in H.edge_ids], edges)
    return S, ev


def subdivision(H: MultiGraph) -> MultiGraph:
    return subdivision_with_map(H)[0]


# -- reduction to a clique partition with stars ---------------------------

class SpecialCase(NamedTuple):
    graph: MultiGraph  # G' = G⋆W − M
    V0: frozenset  # V0 ∪ new centres
    W: frozenset  # W' = E(G⋆W) − E(G)
    partition: CliquePartition
    certificate: dict


def reduce_to_special_case(G: MultiGraph, cliques, W, verify: bool = True) -> SpecialCase:
    """Transform (G, V1..Vk, W ⊇ M) into an instance whose constrained edges are stars.

    The certificate records the structural checks on the result and, with
    ``verify``, the equality of the two constrained counts.
    """
    P = CliquePartition.from_cliques(G, cliques)
    report = P.conditions()
    failed = [k for k in ("partition", "cliques") if not report[k]]
    if failed:
        raise HypothesisViolated(failed)
    W = _check_edges(G, W)
    if not is_forest(G, W):
        raise NotAForest("G[W]")
    if not P.M <= W:
        raise MNotContained()
    star = star_graph(G, W)
    G2 = delete_edges(star.graph, P.M)
    V0 = P.V0 | frozenset(star.centers)
    P2 = CliquePartition(G2, V0, P.cliques)
    cond = P2.conditions()
    centre_set = frozenset(star.centers)
    stars_centred = all(
        (G2.edge(e).u in centre_set) != (G2.edge(e).v in centre_set) for e in star.new_edges)
    certificate = {
        "partition_and_cliques": cond["partition"] and cond["cliques"],
        "no_clique_edges": cond["no_clique_edges"],
        "stars_centred_in_new_vertices": stars_centred and cond["stars"],
    }
    if verify:
        lhs = count_constrained(G, W)
        rhs = count_constrained(G2, star.new_edges)
        certificate.update(tau_G_W=lhs, tau_G2_W2=rhs, counts_equal=lhs == rhs)
    return SpecialCase(G2, V0, star.new_edges, P2, certificate)

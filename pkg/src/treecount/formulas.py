"""Closed forms and tree-sum formulas for constrained spanning tree counts.

Each evaluator returns a :class:`FormulaResult`. Tree sums are evaluated in
one of two ways:

``method="matrix"``
    the sum is rewritten as a weighted tree sum and evaluated by a single
    rational Laplacian cofactor;
``method="enumerate"``
    the summand is evaluated literally on every enumerated tree.

Exponents such as ``|V_i| - 2 - |M_i|`` can be negative, so everything is
computed in exact rationals and integrality is only checked at the end.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

from .constructions import (CliqueCut, CliquePartition, bullet_contract, circ_reduce,
                            diamond_partition, line_graph, line_graph_with_cliques,
                            middle_graph, omega_weighting, subdivision_with_map)
from .enumerator import DEFAULT_CAP, sum_over_trees, tree_degrees
from .errors import (Disconnected, HypothesisViolated, NotAPartition, NotCliquePartition,
                     NotRegular, UnknownFormula, UnknownVertex)
from .kirchhoff import (count_constrained, count_spanning_trees, weighted_tree_sum,
                        weighted_tree_sum_constrained)
from .multigraph import (MultiGraph, _check_edges, closed_neighborhood, complete_graph,
                         contract_edges,
                         components, edge_components, edge_subgraph, induced_subgraph,
                         inner_edges, is_clique, is_connected, is_forest, is_regular,
                         spanning_subgraph)

METHODS = ("matrix", "enumerate")


@dataclass
class FormulaResult:
    formula: str
    value: Fraction
    report: dict = field(default_factory=dict)
    method: str = "matrix"
    details: dict = field(default_factory=dict)

    @property
    def integral(self) -> bool:
        return self.value.denominator == 1

    @property
    def count(self) -> int | None:
        """The value as an integer, or None when it is not integral."""
        return self.value.numerator if self.integral else None


def _require(report: dict, error=HypothesisViolated):
    failed = [k for k, ok in report.items() if not ok]
    if failed:
        if error is HypothesisViolated or error is NotCliquePartition:
            raise error(failed)
        raise error()
    return report


def _check_method(method):
    if method not in METHODS:
        raise ValueError(f"method must be one of {METHODS}, not {method!r}")


def _power(base, exp) -> Fraction:
    return Fraction(base) ** exp


# -- Moon / Cayley --------------------------------------------------------

def moon_count(n: int, M=()) -> FormulaResult:
    """τ_{K_n}(M) = n^{c-2} ∏ n_i over the c components of K_n⟨M⟩.

    ``M`` holds edge ids of :func:`complete_graph`; isolated vertices count
    as components of order one. A cyclic M gives 0.
    """
    K = complete_graph(n)
    M = _check_edges(K, M)
    if not is_forest(K, M):
        return FormulaResult("moon", Fraction(0), {"forest": False})
    comps = components(spanning_subgraph(K, M))
    value = _power(n, len(comps) - 2)
    for c in comps:
        value *= len(c)
    return FormulaResult("moon", value, {"forest": True}, details={"components": len(comps)})


# -- cliques joined by a matching -----------------------------------------

def _complement_sum(Gs: MultiGraph, c: dict, method: str, cap: int) -> Fraction:
    """Σ_T ∏_{e∉T} c(e) over spanning trees T of Gs."""
    if method == "enumerate":
        all_edges = Gs.edge_ids

        def term(tree):
            p = Fraction(1)
            for e in all_edges:
                if e not in tree:
                    p *= c[e]
            return p

        return sum_over_trees(Gs, term, cap=cap)
    total = Fraction(1)
    for e in Gs.edge_ids:
        total *= c[e]
    return total * weighted_tree_sum(Gs, {e: 1 / c[e] for e in Gs.edge_ids})


def matching_conditions(P: CliquePartition) -> dict:
    report = P.conditions()
    report.pop("stars")
    report.pop("no_clique_edges")
    report["V0_empty"] = not P.V0
    ends = [x for e in P.M for x in P.graph.edge(e).ends]
    report["M0_matching"] = len(ends) == len(set(ends))
    return report


def thm12_matching(G: MultiGraph, cliques, method="matrix", cap=DEFAULT_CAP) -> FormulaResult:
    """τ_G(M0) for cliques V_1..V_k covering V(G) and joined by the matching M0.

    The sum runs over spanning trees of G* = G/E0, the graph with each
    clique identified to one vertex.
    """
    _check_method(method)
    P = CliquePartition.from_cliques(G, cliques)
    report = _require(matching_conditions(P))
    E0 = frozenset().union(*(inner_edges(G, c) for c in P.cliques))
    Gs, cmap = contract_edges(G, E0)
    size = {cmap(next(iter(c))): len(c) for c in P.cliques}
    c = {e.id: Fraction(1, size[e.u]) + Fraction(1, size[e.v]) for e in Gs.edges}
    prefactor = Fraction(1)
    for s in size.values():
        prefactor *= _power(s, s - 2)
    return FormulaResult("thm12", prefactor * _complement_sum(Gs, c, method, cap), report, method)


def line_graph_formula(H: MultiGraph, method="matrix", cap=DEFAULT_CAP) -> FormulaResult:
    """τ of L(H) from the degrees and spanning trees of H."""
    _check_method(method)
    report = _require({"connected": is_connected(H), "has_edges": H.size > 0})
    d = {v: H.degree(v) for v in H.vertices}
    c = {e.id: Fraction(1, d[e.u]) + Fraction(1, d[e.v]) for e in H.edges}
    prefactor = Fraction(1)
    for k in d.values():
        prefactor *= _power(k, k - 2)
    return FormulaResult("cor11", prefactor * _complement_sum(H, c, method, cap), report, method)


def regular_line_graph(H: MultiGraph, r: int | None = None) -> FormulaResult:
    """τ of L(H) for connected r-regular H: 2^{m-n+1} r^{m-n-1} τ_H."""
    if not is_connected(H):
        raise Disconnected()
    deg = is_regular(H)
    if deg is None or (r is not None and deg != r) or deg == 0:
        raise NotRegular()
    n, m = H.order, H.size
    value = _power(2, m - n + 1) * _power(deg, m - n - 1) * count_spanning_trees(H)
    return FormulaResult("eq14", value, {"connected": True, "regular": True},
                         details={"r": deg})


# -- a clique with pendant forests / stars ---------------------------------

def prop31_count(G: MultiGraph, U) -> FormulaResult:
    """τ_G(W) for W = E - E(G[U]) when G[W] is a forest."""
    U = frozenset(U)
    for u in U:
        if not G.has_vertex(u):
            raise UnknownVertex(u)
    W = frozenset(G.edge_ids) - inner_edges(G, U)
    report = _require({
        "clique": bool(U) and is_clique(G, U),
        "connected": is_connected(G),
        "forest": is_forest(G, W),
    })
    comps = edge_components(G, W)
    sizes = [len(vs & U) for vs, _ in comps]
    value = _power(len(U), len(U) - 2 + len(comps) - sum(sizes))
    for s in sizes:
        value *= s
    return FormulaResult("prop31", value, report, details={"W": sorted(map(str, W))})


def _star_conditions(P: CliquePartition, N=(), R=None) -> dict:
    report = P.conditions()
    N = _check_edges(P.graph, N)
    report["N_outside_U"] = N <= inner_edges(P.graph, P.V0)
    if R is not None:
        report["R_subset_M"] = _check_edges(P.graph, R) <= P.M
    return report


def _bullet(P: CliquePartition):
    B, bmap = bullet_contract(P.graph, P.U)
    hubs = [bmap(next(iter(c))) for c in P.cliques]
    return B, hubs


def thm42_count(P: CliquePartition, N=(), method="matrix", cap=DEFAULT_CAP,
                formula="thm42") -> FormulaResult:
    """τ_G(M ∪ N) through a tree sum over G∙U."""
    _check_method(method)
    report = _require(_star_conditions(P, N))
    N = frozenset(N)
    B, hubs = _bullet(P)
    prefactor = Fraction(1)
    for c, Mi in zip(P.cliques, P.M_i):
        prefactor *= _power(len(c), len(c) - 2 - len(Mi))
    if method == "matrix":
        weights = {e: len(c) for c, Mi in zip(P.cliques, P.M_i) for e in Mi}
        total = weighted_tree_sum_constrained(B, weights, N)
    else:
        sizes = [len(c) for c in P.cliques]

        def term(tree):
            deg = tree_degrees(B, tree)
            p = Fraction(1)
            for s, h in zip(sizes, hubs):
                p *= _power(s, deg[h])
            return p

        total = sum_over_trees(B, term, N, cap)
    return FormulaResult(formula, prefactor * total, report, method)


def thm31_count(G: MultiGraph, U, N=(), method="matrix", cap=DEFAULT_CAP) -> FormulaResult:
    """The single-clique case: τ_G(E_G(U) ∪ N)."""
    U = frozenset(U)
    P = CliquePartition(G, frozenset(G.vertices) - U, (U,))
    return thm42_count(P, N, method, cap, formula="thm31")


def omega_prefactor(P: CliquePartition, R=()) -> Fraction:
    R = frozenset(R)
    out = Fraction(1)
    for c, Mi in zip(P.cliques, P.M_i):
        s = len(c)
        out *= _power(s, s - 2 - len(Mi)) * _power(s + 1, len(Mi - R))
    return out


def omega_tree_sum(P: CliquePartition, R=(), N=(), reduced=True) -> Fraction:
    """The ω-weighted sum over trees of G∙U (or of G∘_R U when ``reduced``)."""
    if reduced:
        red = circ_reduce(P, R)
        return weighted_tree_sum_constrained(red.graph, red.weights, N)
    B, _ = bullet_contract(P.graph, P.U)
    return weighted_tree_sum_constrained(B, omega_weighting(P, R), N)


def thm53_count(P: CliquePartition, R=(), N=(), method="matrix", cap=DEFAULT_CAP,
                formula="thm53") -> FormulaResult:
    """τ_G(R ∪ N) for R ⊆ M and N ⊆ E(G - U)."""
    _check_method(method)
    report = _require(_star_conditions(P, N, R))
    R, N = frozenset(R), frozenset(N)
    if method == "matrix":
        value = omega_prefactor(P, R) * omega_tree_sum(P, R, N, reduced=True)
        return FormulaResult(formula, value, report, method)
    B, _ = _bullet(P)
    prefactor = Fraction(1)
    for c in P.cliques:
        prefactor *= _power(len(c), len(c) - 2)
    parts = [(len(c), Mi, Mi - R) for c, Mi in zip(P.cliques, P.M_i)]

    def term(tree):
        p = Fraction(1)
        for s, Mi, free in parts:
            p *= _power(s, -len(Mi - tree)) * _power(1 + s, len(free - tree))
        return p

    return FormulaResult(formula, prefactor * sum_over_trees(B, term, N, cap), report, method)


def cor531_count(P: CliquePartition, N=(), method="matrix", cap=DEFAULT_CAP) -> FormulaResult:
    """The R = ∅ case: τ_G(N)."""
    return thm53_count(P, (), N, method, cap, formula="cor531")


# -- clique edge partitions -----------------------------------------------

def edge_partition_conditions(G: MultiGraph, parts) -> dict:
    report = {"connected": is_connected(G)}
    flat = [e for p in parts for e in p]
    report["partition"] = (len(flat) == len(set(flat)) == G.size
                           and set(flat) == set(G.edge_ids) and all(parts))
    report["cliques"] = report["partition"] and all(
        _is_complete_edge_set(G, p) for p in parts)
    return report


def _is_complete_edge_set(G: MultiGraph, part) -> bool:
    sub = edge_subgraph(G, part)
    return is_clique(sub, sub.vertices) and sub.size == len(part)


def thm54_count(G: MultiGraph, parts, method="matrix", cap=DEFAULT_CAP,
                formula="thm54") -> FormulaResult:
    """τ_G from a partition of E(G) into edge sets of complete subgraphs."""
    _check_method(method)
    parts = [frozenset(p) for p in parts]
    for p in parts:
        _check_edges(G, p)
    report = edge_partition_conditions(G, parts)
    if not report["partition"]:
        raise NotAPartition()
    _require(report, NotCliquePartition)
    if not parts:
        value = Fraction(1 if G.order == 1 else 0)
        return FormulaResult(formula, value, report, method)
    sizes, outer = [], []
    for p in parts:
        vs = {x for e in p for x in G.edge(e).ends}
        sizes.append(len(vs))
        outer.append(sum(1 for v in vs if not set(G.incident(v)) <= p))
    D = diamond_partition(G, parts)
    Q = D.quotient
    index = {v: j for j, v in enumerate(D.part_vertices)}
    prefactor = Fraction(1)
    for n, n2 in zip(sizes, outer):
        prefactor *= _power(n, n - 2 - n2)
    if method == "matrix":
        weights = {}
        for e in Q.edges:
            j = index[e.u] if e.u in index else index[e.v]
            weights[e.id] = sizes[j]
        total = weighted_tree_sum(Q, weights)
    else:
        def term(tree):
            deg = tree_degrees(Q, tree)
            p = Fraction(1)
            for v, j in index.items():
                p *= _power(sizes[j], deg[v])
            return p

        total = sum_over_trees(Q, term, cap=cap)
    details = {"n": sizes, "n_prime": outer, "quotient_order": Q.order}
    return FormulaResult(formula, prefactor * total, report, method, details)


def middle_graph_count(H: MultiGraph, method="matrix", cap=DEFAULT_CAP) -> FormulaResult:
    """τ of the middle graph M(H) as a sum over spanning trees of S(H)."""
    _check_method(method)
    if not is_connected(H):
        raise Disconnected()
    S, _ = subdivision_with_map(H)
    d = {u: H.degree(u) for u in H.vertices}
    if method == "matrix":
        prefactor = Fraction(1)
        for k in d.values():
            prefactor /= k + 1
        weights = {}
        for e in S.edges:
            u = e.u if e.u in d else e.v
            weights[e.id] = d[u] + 1
        value = prefactor * weighted_tree_sum(S, weights)
    else:
        def term(tree):
            deg = tree_degrees(S, tree)
            p = Fraction(1)
            for u, k in d.items():
                p *= _power(k + 1, deg[u] - 1)
            return p

        value = sum_over_trees(S, term, cap=cap)
    return FormulaResult("mid", value, {"connected": True}, method)


def line_graph_cliques(H: MultiGraph) -> tuple[MultiGraph, list]:
    """L(H) and its canonical clique partition, one non-empty clique per vertex of H."""
    L, cliques = line_graph_with_cliques(H)
    return L, [frozenset(c) for c in cliques.values() if c]


def line_graph_via_subdivision(H: MultiGraph, mode="corrected", method="matrix",
                               cap=DEFAULT_CAP) -> FormulaResult:
    """τ of L(H) as a degree-weighted sum over spanning trees of S(H).

    ``mode="corrected"`` multiplies by ∏ d(u)^{-2}, which is right whenever
    every vertex has degree at least 2; with a degree-1 vertex present the
    clique-partition count on L(H) is used instead. ``mode="printed"`` returns
    the bare sum with no prefactor; it does not count the trees of L(H).
    """
    _check_method(method)
    if mode not in ("corrected", "printed"):
        raise ValueError(f"mode must be 'corrected' or 'printed', not {mode!r}")
    if not is_connected(H):
        raise Disconnected()
    d = {u: H.degree(u) for u in H.vertices}
    report = {"connected": True, "min_degree_ge_1": min(d.values(), default=0) >= 1}
    _require(report)
    uniform = min(d.values()) >= 2
    if mode == "corrected" and not uniform:
        L, parts = line_graph_cliques(H)
        res = thm54_count(L, parts, method, cap, formula="lsub")
        res.report.update(report, uniform_prefactor=False)
        res.details["mode"] = mode
        return res
    S, _ = subdivision_with_map(H)
    if method == "matrix":
        weights = {}
        for e in S.edges:
            weights[e.id] = d[e.u] if e.u in d else d[e.v]
        total = weighted_tree_sum(S, weights)
    else:
        def term(tree):
            deg = tree_degrees(S, tree)
            p = Fraction(1)
            for u, k in d.items():
                p *= _power(k, deg[u])
            return p

        total = sum_over_trees(S, term, cap=cap)
    if mode == "corrected":
        for k in d.values():
            total /= k * k
    report["uniform_prefactor"] = mode == "corrected"
    return FormulaResult("lsub", total, report, method, {"mode": mode})


# -- clique cut-sets --------------------------------------------------------

def thm510_factorize(cut: CliqueCut, method="matrix", cap=DEFAULT_CAP) -> FormulaResult:
    """τ_G(W) = τ_{G[U∪S1]}(W1) τ_{G[U∪S2]}(W2) / |U|^{|U|-2}."""
    _check_method(method)
    report = cut.validate()
    if method == "matrix":
        count = count_constrained
    else:
        from .enumerator import enumerate_constrained

        def count(G, N):
            return len(enumerate_constrained(G, N, cap))
    t1 = count(cut.side(1), cut.W1)
    t2 = count(cut.side(2), cut.W2)
    n = len(cut.U)
    value = Fraction(t1 * t2) / _power(n, n - 2)
    direct = count(cut.graph, cut.W)
    return FormulaResult("thm510", value, report, method,
                         {"parts": [t1, t2], "product": t1 * t2, "direct": direct})


def pendant_clique_conditions(G: MultiGraph, U, w) -> dict:
    U = frozenset(U)
    rest = frozenset(G.vertices) - U - {w}
    return {
        "clique": bool(U) and is_clique(G, U),
        "w_outside_U": G.has_vertex(w) and w not in U,
        "separated": not (closed_neighborhood(G, {w}) & closed_neighborhood(G, rest)),
        "simple_at_w": all(G.multiplicity(w, x) <= 1 for x in G.neighbors(w)),
    }


def cor51_pendant_clique(G: MultiGraph, U, w) -> FormulaResult:
    """τ_G = τ_{G-w} d(w) (1 + 1/|U|)^{d(w)-1} for w attached only to the clique U."""
    if not G.has_vertex(w):
        raise UnknownVertex(w)
    report = _require(pendant_clique_conditions(G, U, w))
    d = G.degree(w)
    rest = count_spanning_trees(induced_subgraph(G, set(G.vertices) - {w}))
    value = rest * d * (1 + Fraction(1, len(frozenset(U)))) ** (d - 1)
    return FormulaResult("cor51", value, report, details={"tau_without_w": rest, "degree": d})


# -- registry used by the CLI and the campaign runner ---------------------

FORMULA_IDS = ("moon", "thm12", "cor11", "eq14", "prop31", "thm31", "thm42", "thm53",
               "cor531", "thm54", "mid", "lsub", "thm510", "cor51")


def _vertex(G: MultiGraph, x):
    if G.has_vertex(x):
        return x
    for v in G.vertices:
        if str(v) == str(x):
            return v
    raise UnknownVertex(x)


def _vertices(G, xs):
    return frozenset(_vertex(G, x) for x in xs or ())


def _edges(G, names):
    return G.resolve(names or ())


def partition_from_data(G: MultiGraph, data: dict) -> CliquePartition:
    cliques = [_vertices(G, c) for c in data.get("cliques", [])]
    V0 = _vertices(G, data["V0"]) if "V0" in data else None
    return CliquePartition.from_cliques(G, cliques, V0)


def cut_from_data(G: MultiGraph, data: dict) -> CliqueCut:
    return CliqueCut.make(G, _vertices(G, data.get("U")), _vertices(G, data.get("S1")),
                          _vertices(G, data.get("S2")), _edges(G, data.get("W")))


def _moon_from_graph(G: MultiGraph, data: dict, **kw):
    n = G.order
    if not (is_clique(G, G.vertices)):
        raise HypothesisViolated(["complete_graph"])
    K = complete_graph(n)
    # carry the constraint over to the canonical K_n by endpoint positions
    pos = {v: i for i, v in enumerate(G.vertices)}
    lookup = {frozenset(e.ends): e.id for e in K.edges}
    M = [lookup[frozenset(pos[x] for x in G.edge(e).ends)] for e in _edges(G, data.get("M"))]
    return moon_count(n, M)


def _parts_from_data(G, data):
    if "parts" in data:
        return [_edges(G, p) for p in data["parts"]]
    raise HypothesisViolated(["parts_given"], 'thm54 needs a "parts" list of edge lists')


_RUNNERS: dict[str, Callable] = {
    "moon": lambda G, d, **kw: _moon_from_graph(G, d),
    "thm12": lambda G, d, **kw: thm12_matching(G, [_vertices(G, c) for c in d.get("cliques", [])],
                                               **kw),
    "cor11": lambda G, d, **kw: line_graph_formula(G, **kw),
    "eq14": lambda G, d, **kw: regular_line_graph(G, d.get("r")),
    "prop31": lambda G, d, **kw: prop31_count(G, _vertices(G, d.get("U"))),
    "thm31": lambda G, d, **kw: thm31_count(G, _vertices(G, d.get("U")), _edges(G, d.get("N")),
                                            **kw),
    "thm42": lambda G, d, **kw: thm42_count(partition_from_data(G, d), _edges(G, d.get("N")),
                                            **kw),
    "thm53": lambda G, d, **kw: thm53_count(partition_from_data(G, d), _edges(G, d.get("R")),
                                            _edges(G, d.get("N")), **kw),
    "cor531": lambda G, d, **kw: cor531_count(partition_from_data(G, d), _edges(G, d.get("N")),
                                              **kw),
    "thm54": lambda G, d, **kw: thm54_count(G, _parts_from_data(G, d), **kw),
    "mid": lambda G, d, **kw: middle_graph_count(G, **kw),
    "lsub": None,  # needs the mode flag, handled in run_formula
    "thm510": lambda G, d, **kw: thm510_factorize(cut_from_data(G, d), **kw),
    "cor51": lambda G, d, **kw: cor51_pendant_clique(G, _vertices(G, d.get("U")),
                                                     _vertex(G, d.get("w"))),
}


def run_formula(formula: str, G: MultiGraph, data: dict | None = None, method="matrix",
                mode="corrected", cap=DEFAULT_CAP) -> FormulaResult:
    """Evaluate formula ``formula`` on G with constraint data as in partition files."""
    if formula not in _RUNNERS:
        raise UnknownFormula(formula)
    data = data or {}
    if formula == "lsub":
        return line_graph_via_subdivision(G, mode, method, cap)
    return _RUNNERS[formula](G, data, method=method, cap=cap)


def oracle_value(formula: str, G: MultiGraph, data: dict | None = None) -> int:
    """The Matrix-Tree count each formula is supposed to reproduce."""
    data = data or {}
    if formula not in _RUNNERS:
        raise UnknownFormula(formula)
    if formula in ("cor11", "eq14", "lsub"):
        return count_spanning_trees(line_graph(G))
    if formula == "mid":
        return count_spanning_trees(middle_graph(G))
    if formula in ("thm54", "cor51"):
        return count_spanning_trees(G)
    if formula == "thm12":
        P = CliquePartition.from_cliques(G, [_vertices(G, c) for c in data.get("cliques", [])])
        return count_constrained(G, P.M)
    if formula == "moon":
        return count_constrained(G, _edges(G, data.get("M")))
    if formula == "prop31":
        U = _vertices(G, data.get("U"))
        return count_constrained(G, frozenset(G.edge_ids) - inner_edges(G, U))
    if formula == "thm510":
        return count_constrained(G, _edges(G, data.get("W")))
    N = _edges(G, data.get("N"))
    if formula == "thm31":
        from .multigraph import boundary
        return count_constrained(G, boundary(G, _vertices(G, data.get("U"))) | N)
    P = partition_from_data(G, data)
    if formula == "thm42":
        return count_constrained(G, P.M | N)
    if formula == "thm53":
        return count_constrained(G, _edges(G, data.get("R")) | N)
    return count_constrained(G, N)  # cor531

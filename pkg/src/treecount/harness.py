"""Seeded instance generators and formula-versus-oracle campaigns.

Generators build each hypothesis in by construction instead of sampling
arbitrary graphs and rejecting; clique partitions with star-shaped M are
far too rare under any uniform model. Every generator is a pure function
of its seed.
"""

from __future__ import annotations

import random
import time
from dataclasses import asdict, dataclass, field
from fractions import Fraction

from .constructions import (CliqueCut, CliquePartition, diamond_partition,
                            reduce_to_special_case, star_graph)
from .enumerator import DEFAULT_CAP, enumerate_spanning_trees
from .errors import CapExceeded, UnknownFormula
from .formulas import FORMULA_IDS, omega_tree_sum, oracle_value, run_formula
from .graphio import graph_to_dict, rational_to_json
from .kirchhoff import count_constrained, count_spanning_trees
from .multigraph import (DisjointSet, MultiGraph, build, complete_graph, contract_edges,
                         delete_edges, inner_edges, is_connected, is_forest)


def trial_seed(seed: int, trial: int) -> int:
    """Independent, reproducible seed for one trial of a campaign."""
    return (seed * 1_000_003 + trial) & 0xFFFFFFFF


def _names(prefix: str, count: int, start: int = 0) -> list[str]:
    return [f"{prefix}{i}" for i in range(start, start + count)]


def _random_forest(rng: random.Random, G: MultiGraph, candidates, p: float = 0.5) -> list:
    ds = DisjointSet()
    chosen = []
    pool = list(candidates)
    rng.shuffle(pool)
    for eid in pool:
        if rng.random() < p:
            a, b = G.edge(eid).ends
            if ds.union(a, b):
                chosen.append(eid)
    return G.sort_edges(chosen)


def _connected_edges(rng, vertices, extra, multmax, forbid=frozenset()) -> list:
    """A random spanning tree on ``vertices`` plus up to ``extra`` more edges.

    Pairs in ``forbid`` (as frozensets) are never used; multiplicities stay
    at most ``multmax``.
    """
    vertices = list(vertices)
    edges = []
    mult: dict = {}
    for i in range(1, len(vertices)):
        a, b = vertices[i], vertices[rng.randrange(i)]
        edges.append((a, b))
        mult[frozenset((a, b))] = mult.get(frozenset((a, b)), 0) + 1
    if len(vertices) >= 2:
        for _ in range(extra):
            a, b = rng.sample(vertices, 2)
            key = frozenset((a, b))
            if key in forbid or mult.get(key, 0) >= multmax:
                continue
            mult[key] = mult.get(key, 0) + 1
            edges.append((a, b))
    return edges


# -- plain multigraphs ----------------------------------------------------

def gen_connected_multigraph(seed: int, nmax: int = 8, mmax: int = 14,
                             multmax: int = 3, nmin: int = 1) -> MultiGraph:
    """Connected loopless multigraph with nmin..nmax vertices and at most mmax edges."""
    rng = random.Random(seed)
    top = max(1, min(nmax, mmax + 1))
    n = rng.randint(min(nmin, top), top)
    vs = _names("v", n)
    m = rng.randint(n - 1, max(n - 1, mmax))
    edges = _connected_edges(rng, vs, m - (n - 1), multmax)
    rng.shuffle(edges)
    return build(vs, edges)


def gen_line_graph_source(seed: int, nmax: int = 7, mmax: int = 12,
                          multmax: int = 2) -> MultiGraph:
    """Connected H with at least one edge."""
    rng = random.Random(seed)
    while True:
        H = gen_connected_multigraph(rng.randrange(2**32), nmax, mmax, multmax)
        if H.size:
            return H


def gen_regular(seed: int, nmax: int = 7, mmax: int = 12, rmax: int = 4,
                multmax: int = 2) -> MultiGraph:
    """Connected r-regular multigraph from the configuration model (loops rejected)."""
    rng = random.Random(seed)
    options = [(n, r) for n in range(2, nmax + 1) for r in range(1, rmax + 1)
               if n * r % 2 == 0 and n * r // 2 <= mmax and (r >= 2 or n == 2)]
    while True:
        n, r = rng.choice(options)
        stubs = [i for i in range(n) for _ in range(r)]
        rng.shuffle(stubs)
        pairs = list(zip(stubs[::2], stubs[1::2]))
        if any(a == b for a, b in pairs):
            continue
        counts: dict = {}
        for a, b in pairs:
            counts[frozenset((a, b))] = counts.get(frozenset((a, b)), 0) + 1
        if max(counts.values()) > multmax:
            continue
        vs = _names("v", n)
        H = build(vs, [(vs[a], vs[b]) for a, b in pairs])
        if is_connected(H):
            return H


# -- clique partitions (star-shaped M) -----------------------------------

@dataclass
class PartitionBounds:
    k_min: int = 1
    k_max: int = 3
    clique_max: int = 4
    v0_max: int = 3
    v0_extra: int = 3
    multmax: int = 2
    attach_prob: float = 0.6
    parallel_bias: bool = False


def gen_clique_partition_instance(seed: int, bounds: PartitionBounds | None = None):
    """(G, partition, N, R) satisfying the clique-partition conditions.

    V0 carries a random connected multigraph; each clique vertex gets at most
    one edge to V0 and every clique gets at least one, so G is connected.
    N is a random forest in G[V0] and R a random subset of M. With
    ``parallel_bias`` clique vertices aim at few V0 vertices, so G∙U has
    parallel classes.
    """
    b = bounds or PartitionBounds()
    rng = random.Random(seed)
    k = rng.randint(b.k_min, b.k_max)
    n0 = rng.randint(1, b.v0_max)
    V0 = _names("w", n0)
    edges = _connected_edges(rng, V0, rng.randint(0, b.v0_extra), b.multmax)
    cliques = []
    for i in range(k):
        c = _names(f"c{i}_", rng.randint(1, b.clique_max))
        cliques.append(c)
        edges += [(c[x], c[y]) for x in range(len(c)) for y in range(x + 1, len(c))]
        targets = V0[:1] if b.parallel_bias and rng.random() < 0.7 else V0
        attached = [v for v in c if rng.random() < b.attach_prob]
        if not attached:
            attached = [rng.choice(c)]
        for v in attached:
            edges.append((v, rng.choice(targets)))
    vertices = V0 + [v for c in cliques for v in c]
    order = list(range(len(edges)))
    rng.shuffle(order)
    G = build(vertices, [edges[i] for i in order])
    P = CliquePartition(G, frozenset(V0), tuple(frozenset(c) for c in cliques))
    N = _random_forest(rng, G, inner_edges(G, V0), 0.4)
    R = sorted((e for e in P.M if rng.random() < 0.5), key=G.edge_index)
    return G, P, N, R


def gen_parallel_partition_instance(seed: int):
    """A clique-partition instance where G∙U has a parallel class for G∘_R U to collapse.

    Classes are split by membership in R, so two edges only count as parallel
    here when both lie in R or both lie outside it.
    """
    b = PartitionBounds(k_max=3, clique_max=4, v0_max=2, parallel_bias=True, attach_prob=0.8)
    rng = random.Random(seed)
    while True:
        G, P, N, R = gen_clique_partition_instance(rng.randrange(2**32), b)
        in_r = set(R)
        seen = set()
        for i, Mi in enumerate(P.M_i):
            for e in Mi:
                a, c = G.edge(e).ends
                key = (i, a if a in P.V0 else c, e in in_r)
                if key in seen:
                    return G, P, N, R
                seen.add(key)


def partition_data(P: CliquePartition, N=(), R=()) -> dict:
    G = P.graph
    return {
        "V0": G.sort_vertices(P.V0),
        "cliques": [G.sort_vertices(c) for c in P.cliques],
        "M": G.sort_edges(P.M),
        "N": list(N),
        "R": list(R),
    }


def gen_matching_instance(seed: int, k_max: int = 4, clique_max: int = 4):
    """Cliques covering V(G), joined into a connected graph by a matching."""
    rng = random.Random(seed)
    while True:
        k = rng.randint(1, k_max)
        cliques = [_names(f"c{i}_", rng.randint(1, clique_max)) for i in range(k)]
        free = [list(c) for c in cliques]
        for f in free:
            rng.shuffle(f)
        edges = [(c[x], c[y]) for c in cliques
                 for x in range(len(c)) for y in range(x + 1, len(c))]
        ok = True
        for j in range(1, k):
            hosts = [i for i in range(j) if free[i]]
            if not hosts or not free[j]:
                ok = False
                break
            i = rng.choice(hosts)
            edges.append((free[i].pop(), free[j].pop()))
        if not ok:
            continue
        for _ in range(rng.randint(0, k)):
            open_ = [i for i in range(k) if free[i]]
            if len(open_) < 2:
                break
            i, j = rng.sample(open_, 2)
            edges.append((free[i].pop(), free[j].pop()))
        rng.shuffle(edges)
        G = build([v for c in cliques for v in c], edges)
        return G, [frozenset(c) for c in cliques]


# -- clique edge partitions -----------------------------------------------

def gen_clique_edge_partition(seed: int, n_max: int = 7, parts_max: int = 6,
                              clique_max: int = 4):
    """A connected multigraph built as a union of complete graphs, with that partition."""
    rng = random.Random(seed)
    n = rng.randint(2, n_max)
    vs = _names("v", n)
    parts_v = []
    covered = [vs[0]]
    rest = vs[1:]
    rng.shuffle(rest)
    while rest:
        size = rng.randint(2, clique_max)
        new = [rest.pop() for _ in range(min(size - 1, len(rest)))]
        anchor = rng.sample(covered, min(len(covered), rng.randint(1, max(1, size - len(new)))))
        parts_v.append(anchor + new)
        covered += new
    for _ in range(rng.randint(0, max(0, parts_max - len(parts_v)))):
        parts_v.append(rng.sample(vs, rng.randint(2, min(clique_max, n))))
    edges, owner = [], []
    for j, c in enumerate(parts_v):
        for x in range(len(c)):
            for y in range(x + 1, len(c)):
                edges.append((c[x], c[y]))
                owner.append(j)
    G = build(vs, edges)
    parts = [[] for _ in parts_v]
    for e, j in zip(G.edges, owner):
        parts[j].append(e.id)
    rng.shuffle(parts)
    return G, [frozenset(p) for p in parts]


def gen_edge_partition(seed: int, G: MultiGraph, parts_max: int = 4) -> list:
    """Any partition of E(G) into non-empty parts."""
    rng = random.Random(seed)
    ids = list(G.edge_ids)
    rng.shuffle(ids)
    k = rng.randint(1, max(1, min(parts_max, len(ids))))
    parts = [[] for _ in range(k)]
    for i, e in enumerate(ids):
        parts[i if i < k else rng.randrange(k)].append(e)
    return [frozenset(p) for p in parts]


# -- clique cut-sets -------------------------------------------------------

@dataclass
class CutBounds:
    u_min: int = 2
    u_max: int = 4
    s_max: int = 3
    extra: int = 2
    multmax: int = 2
    max_edges: int | None = None
    pendant: bool = False


def gen_clique_cut_instance(seed: int, bounds: CutBounds | None = None):
    """(G, cut) with U a clique and N[S1], N[S2] disjoint.

    Each vertex of U is given to side 1, side 2 or neither; S_i only reaches
    the U-vertices of its own side. With ``pendant`` S1 is a single vertex
    joined by simple edges to U (the pendant-clique setting). W is a random
    forest outside E(G[U]).
    """
    b = bounds or CutBounds()
    rng = random.Random(seed)
    while True:
        u = rng.randint(max(2, b.u_min), max(2, b.u_max))
        U = _names("u", u)
        owner = [1, 2] + [rng.choice((0, 1, 2)) for _ in range(u - 2)]
        rng.shuffle(owner)
        edges = [(U[x], U[y]) for x in range(u) for y in range(x + 1, u)]
        sides = {}
        for i in (1, 2):
            size = 1 if (b.pendant and i == 1) else rng.randint(1, b.s_max)
            S = _names(f"s{i}_", size)
            sides[i] = S
            near = [U[x] for x in range(u) if owner[x] == i]
            edges += _connected_edges(rng, S, rng.randint(0, b.extra), b.multmax)
            if b.pendant and i == 1:
                for t in rng.sample(near, rng.randint(1, len(near))):
                    edges.append((S[0], t))
                continue
            edges.append((rng.choice(S), rng.choice(near)))
            for _ in range(rng.randint(0, b.extra)):
                edges.append((rng.choice(S), rng.choice(near)))
        if b.max_edges is not None and len(edges) > b.max_edges:
            continue
        rng.shuffle(edges)
        G = build(U + sides[1] + sides[2], edges)
        W = _random_forest(rng, G, set(G.edge_ids) - inner_edges(G, U), 0.3)
        return G, CliqueCut(G, frozenset(U), frozenset(sides[1]), frozenset(sides[2]),
                            frozenset(W))


def cut_data(cut: CliqueCut) -> dict:
    G = cut.graph
    return {"U": G.sort_vertices(cut.U), "S1": G.sort_vertices(cut.S1),
            "S2": G.sort_vertices(cut.S2), "W": G.sort_edges(cut.W)}


def gen_pendant_forest_instance(seed: int, u_max: int = 4, outside_max: int = 4):
    """A clique U with a forest hanging off it, every outside vertex reaching U."""
    rng = random.Random(seed)
    U = _names("u", rng.randint(1, u_max))
    X = _names("x", rng.randint(0, outside_max))
    edges = [(U[i], U[j]) for i in range(len(U)) for j in range(i + 1, len(U))]
    ds = DisjointSet(U + X)
    for u in U[1:]:
        ds.union(U[0], u)
    placed = list(U)
    for x in X:
        t = rng.choice(placed)
        edges.append((x, t))
        ds.union(x, t)
        placed.append(x)
    for _ in range(rng.randint(0, 3) if len(U) + len(X) >= 2 else 0):
        a, c = rng.sample(U + X, 2)
        if a in U and c in U:
            continue
        # extra edges must keep G[W] a forest; track W-components separately
        edges_w = [e for e in edges if not (e[0] in U and e[1] in U)]
        wds = DisjointSet()
        for p, q in edges_w:
            wds.union(p, q)
        if wds.find(a) != wds.find(c):
            edges.append((a, c))
    G = build(U + X, edges)
    return G, frozenset(U)


# -- reductions -----------------------------------------------------------

def gen_star_instance(seed: int):
    """(G, W, W0): a connected multigraph, a non-empty forest W and W0 ⊆ W."""
    rng = random.Random(seed)
    while True:
        G = gen_connected_multigraph(rng.randrange(2**32), 7, 11, 2)
        W = _random_forest(rng, G, G.edge_ids, 0.5)
        if W:
            W0 = [e for e in W if rng.random() < 0.5]
            return G, W, W0


def gen_reduction_instance(seed: int):
    """(G, cliques, W) with W ⊇ M a forest; M joins distinct parts."""
    rng = random.Random(seed)
    while True:
        b = PartitionBounds(k_max=3, clique_max=3, v0_max=3, v0_extra=2)
        k = rng.randint(1, b.k_max)
        V0 = _names("w", rng.randint(0, b.v0_max))
        cliques = [_names(f"c{i}_", rng.randint(1, b.clique_max)) for i in range(k)]
        edges = [(c[x], c[y]) for c in cliques
                 for x in range(len(c)) for y in range(x + 1, len(c))]
        parts = [[v] for v in V0] + cliques
        part_of = {v: i for i, p in enumerate(parts) for v in p}
        edges += _connected_edges(rng, V0, rng.randint(0, 2), 2) if V0 else []
        ds = DisjointSet()
        for _ in range(rng.randint(1, 6) if len(part_of) >= 2 else 0):
            a, c = rng.sample(list(part_of), 2)
            if part_of[a] == part_of[c] or (a in V0 and c in V0):
                continue
            if ds.union(a, c):
                edges.append((a, c))
        vertices = V0 + [v for c in cliques for v in c]
        G = build(vertices, edges)
        P = CliquePartition(G, frozenset(V0), tuple(frozenset(c) for c in cliques))
        others = [e for e in G.edge_ids if e not in P.M]
        W = set(P.M)
        rng.shuffle(others)
        for e in others:
            if rng.random() < 0.3 and is_forest(G, W | {e}):
                W.add(e)
        if W and is_forest(G, W):
            return G, [frozenset(c) for c in cliques], G.sort_edges(W)


# -- campaigns --------------------------------------------------------------

@dataclass
class VerificationReport:
    formula: str
    trials: int
    seed: int
    passed: int = 0
    failures: list = field(default_factory=list)
    elapsed: float = 0.0
    mode: str | None = None

    @property
    def ok(self) -> bool:
        return not self.failures

    def to_json(self, timing: bool = True) -> dict:
        out = asdict(self)
        out["ok"] = self.ok
        if not timing:
            out.pop("elapsed")
        if self.mode is None:
            out.pop("mode")
        return out


def _jsonable(data: dict) -> dict:
    def conv(x):
        if isinstance(x, (set, frozenset, list, tuple)):
            return [conv(y) for y in x]
        if isinstance(x, dict):
            return {k: conv(v) for k, v in x.items()}
        if isinstance(x, Fraction):
            return rational_to_json(x)
        return x if isinstance(x, (int, str, float, bool)) or x is None else str(x)
    return conv(data)


def formula_instance(formula: str, seed: int) -> tuple[MultiGraph, dict]:
    """A random (graph, constraint data) pair satisfying the formula's hypotheses."""
    rng = random.Random(seed)
    if formula == "moon":
        n = rng.randint(1, 6)
        K = complete_graph(n)
        return K, {"M": _random_forest(rng, K, K.edge_ids, 0.4)}
    if formula == "thm12":
        G, cliques = gen_matching_instance(seed)
        return G, {"cliques": [G.sort_vertices(c) for c in cliques]}
    if formula in ("cor11", "lsub"):
        return gen_line_graph_source(seed, 7, 12), {}
    if formula == "mid":
        return gen_line_graph_source(seed, 6, 9), {}
    if formula == "eq14":
        return gen_regular(seed), {}
    if formula == "prop31":
        G, U = gen_pendant_forest_instance(seed)
        return G, {"U": G.sort_vertices(U)}
    if formula in ("thm31", "thm42", "thm53", "cor531"):
        b = PartitionBounds(k_min=1, k_max=1 if formula == "thm31" else 3)
        G, P, N, R = gen_clique_partition_instance(seed, b)
        data = partition_data(P, N, R)
        if formula == "thm31":
            data = {"U": data["cliques"][0], "N": data["N"]}
        return G, data
    if formula == "thm54":
        G, parts = gen_clique_edge_partition(seed)
        return G, {"parts": [G.sort_edges(p) for p in parts]}
    if formula == "thm510":
        G, cut = gen_clique_cut_instance(seed)
        return G, cut_data(cut)
    if formula == "cor51":
        G, cut = gen_clique_cut_instance(seed, CutBounds(pendant=True))
        (w,) = cut.S1
        return G, {"U": G.sort_vertices(cut.U), "w": w}
    raise UnknownFormula(formula)


def _check_formula(formula: str, G: MultiGraph, data: dict, mode: str, cap: int) -> dict | None:
    """None on success, otherwise a description of the disagreement."""
    fast = run_formula(formula, G, data, "matrix", mode, cap)
    ref = run_formula(formula, G, data, "enumerate", mode, cap)
    oracle = oracle_value(formula, G, data)
    extra = ""
    if formula == "thm510":
        extra = "" if fast.details["direct"] == oracle else "direct count disagrees"
    if fast.value == ref.value == oracle and not extra:
        return None
    return {"matrix": rational_to_json(fast.value), "enumerate": rational_to_json(ref.value),
            "oracle": oracle, "note": extra}


def _check_oracle(seed: int, cap: int) -> dict | None:
    G = gen_connected_multigraph(seed, 8, 14, 3, nmin=2)
    tau = count_spanning_trees(G)
    trees = enumerate_spanning_trees(G, cap)
    bad = {}
    if len(trees) != tau:
        bad["enumerated"] = len(trees)
    for e in G.edge_ids:
        contracted, _ = contract_edges(G, [e])
        if tau != count_spanning_trees(delete_edges(G, [e])) + count_spanning_trees(contracted):
            bad["deletion_contraction"] = e
            break
    return ({"graph": graph_to_dict(G), "tau": tau, **bad} if bad else None)


def _check_star_graph(seed: int) -> dict | None:
    G, W, W0 = gen_star_instance(seed)
    star = star_graph(G, W)
    lhs = count_constrained(G, W)
    mid = count_constrained(star.graph, star.new_edges)
    rhs = count_constrained(delete_edges(star.graph, W0), star.new_edges)
    if lhs == mid == rhs:
        return None
    return {"graph": graph_to_dict(G), "W": W, "W0": W0, "values": [lhs, mid, rhs]}


def _check_reduction(seed: int) -> dict | None:
    G, cliques, W = gen_reduction_instance(seed)
    res = reduce_to_special_case(G, cliques, W)
    if all(v for k, v in res.certificate.items() if isinstance(v, bool)):
        return None
    return {"graph": graph_to_dict(G), "cliques": [G.sort_vertices(c) for c in cliques],
            "W": W, "certificate": _jsonable(res.certificate)}


def _check_diamond(seed: int) -> dict | None:
    rng = random.Random(seed)
    G = gen_connected_multigraph(rng.randrange(2**32), 7, 11, 2)
    if not G.size:
        return None
    parts = gen_edge_partition(rng.randrange(2**32), G)
    N = _random_forest(rng, G, G.edge_ids, 0.3)
    D = diamond_partition(G, parts)
    lhs = count_constrained(G, N)
    rhs = count_constrained(D.graph, D.new_edges | frozenset(N))
    if lhs == rhs:
        return None
    return {"graph": graph_to_dict(G), "parts": [G.sort_edges(p) for p in parts], "N": N,
            "values": [lhs, rhs]}


def _check_omega(seed: int) -> dict | None:
    G, P, N, R = gen_parallel_partition_instance(seed)
    plain = omega_tree_sum(P, R, N, reduced=False)
    reduced = omega_tree_sum(P, R, N, reduced=True)
    if plain == reduced:
        return None
    return {"graph": graph_to_dict(G), **_jsonable(partition_data(P, N, R)),
            "values": [rational_to_json(plain), rational_to_json(reduced)]}


def _check_tutte(seed: int) -> dict | None:
    from .tutte import evaluate, tutte_polynomial
    G = gen_connected_multigraph(seed, 7, 12, 2, nmin=3)
    T = tutte_polynomial(G)
    at11, at22 = evaluate(T, 1, 1), evaluate(T, 2, 2)
    if at11 == count_spanning_trees(G) and at22 == 2**G.size:
        return None
    return {"graph": graph_to_dict(G), "T11": rational_to_json(at11),
            "T22": rational_to_json(at22)}


CHECKS = {
    "oracle": lambda seed, cap: _check_oracle(seed, cap),
    "star-graph": lambda seed, cap: _check_star_graph(seed),
    "reduction": lambda seed, cap: _check_reduction(seed),
    "diamond": lambda seed, cap: _check_diamond(seed),
    "omega": lambda seed, cap: _check_omega(seed),
    "tutte": lambda seed, cap: _check_tutte(seed),
}

CAMPAIGNS = FORMULA_IDS + tuple(CHECKS)


def run_campaign(formula: str, trials: int = 100, seed: int = 0, mode: str = "corrected",
                 cap: int = DEFAULT_CAP, instances=None, max_regenerations: int = 20
                 ) -> VerificationReport:
    """Evaluate ``formula`` and its oracle on ``trials`` generated instances.

    ``instances`` replaces the generator with fixed (graph, data) pairs. An
    instance whose enumeration would exceed ``cap`` is regenerated under a
    fresh derived seed, at most ``max_regenerations`` times per trial.
    """
    if formula not in CAMPAIGNS:
        raise UnknownFormula(formula)
    report = VerificationReport(formula, trials if instances is None else len(instances), seed,
                                mode=mode if formula == "lsub" else None)
    start = time.perf_counter()
    if instances is not None:
        for G, data in instances:
            bad = _check_formula(formula, G, data, mode, cap)
            _record(report, bad, G, data)
    else:
        for t in range(trials):
            for attempt in range(max_regenerations + 1):
                s = trial_seed(seed, t) + attempt * 7919
                try:
                    if formula in CHECKS:
                        bad, G, data = CHECKS[formula](s, cap), None, None
                    else:
                        G, data = formula_instance(formula, s)
                        bad = _check_formula(formula, G, data, mode, cap)
                    break
                except CapExceeded:
                    continue
            else:
                raise CapExceeded(cap, "spanning trees on every regenerated instance")
            _record(report, bad, G, data)
    report.elapsed = time.perf_counter() - start
    return report


def _record(report: VerificationReport, bad, G, data):
    if bad is None:
        report.passed += 1
        return
    if G is not None:
        bad = {"graph": graph_to_dict(G), "data": _jsonable(data), **bad}
    report.failures.append(_jsonable(bad))

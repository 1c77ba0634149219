"""Tutte polynomials at desk scale, and the clique cut-set identity experiment.

The recursion runs on its own minor representation, a tuple of endpoint
pairs, because contraction inside the recurrence creates loops that the
:class:`MultiGraph` type refuses to hold.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable

from .constructions import CliqueCut
from .enumerator import _bridges
from .errors import CapExceeded
from .multigraph import DisjointSet, MultiGraph, complete_graph

DEFAULT_EDGE_CAP = 14

Poly = dict  # (i, j) -> coefficient of x^i y^j


def _mul_xy(p: Poly, a: int, b: int) -> Poly:
    return {(i + a, j + b): c for (i, j), c in p.items()}


def _add(p: Poly, q: Poly) -> Poly:
    out = dict(p)
    for k, c in q.items():
        out[k] = out.get(k, 0) + c
    return out


def _canonical(edges) -> tuple:
    names: dict = {}
    out = []
    for a, b in edges:
        a = names.setdefault(a, len(names))
        b = names.setdefault(b, len(names))
        out.append((a, b) if a <= b else (b, a))
    return tuple(sorted(out))


def _contract(edges, a, b):
    return tuple((a if x == b else x, a if y == b else y) for x, y in edges)


def _tutte(edges: tuple, memo: dict) -> Poly:
    if not edges:
        return {(0, 0): 1}
    hit = memo.get(edges)
    if hit is not None:
        return hit
    loops = sum(1 for a, b in edges if a == b)
    rest = tuple(e for e in edges if e[0] != e[1])
    vertices = {x for e in rest for x in e}
    labelled = [(i, a, b) for i, (a, b) in enumerate(rest)]
    bridges = _bridges(sorted(vertices), labelled)
    if bridges:
        # bridges form a forest, so contracting all of them at once is safe
        ds = DisjointSet()
        for i in bridges:
            ds.union(*rest[i])
        minor = tuple((ds.find(a), ds.find(b))
                      for i, (a, b) in enumerate(rest) if i not in bridges)
        result = _mul_xy(_tutte(_canonical(minor), memo), len(bridges), loops)
    elif loops:
        result = _mul_xy(_tutte(_canonical(rest), memo), 0, loops)
    else:
        (a, b), tail = rest[0], rest[1:]
        result = _add(_tutte(_canonical(tail), memo),
                      _tutte(_canonical(_contract(tail, a, b)), memo))
    memo[edges] = result
    return result


def tutte_polynomial(G: MultiGraph, cap: int = DEFAULT_EDGE_CAP) -> Poly:
    """T_G(x, y) as a sparse coefficient map; refuses graphs with more than ``cap`` edges."""
    if G.size > cap:
        raise CapExceeded(cap, "edges")
    return dict(_tutte(_canonical(e.ends for e in G.edges), {}))


def evaluate(poly: Poly, x, y) -> Fraction:
    x, y = Fraction(x), Fraction(y)
    return sum((c * x**i * y**j for (i, j), c in poly.items()), Fraction(0))


def format_poly(poly: Poly) -> str:
    terms = []
    for (i, j), c in sorted(poly.items(), reverse=True):
        mono = "".join(s for s in (
            "" if i == 0 else ("x" if i == 1 else f"x^{i}"),
            "" if j == 0 else ("y" if j == 1 else f"y^{j}")))
        terms.append(f"{c}{mono}" if c != 1 or not mono else mono)
    return " + ".join(terms) or "0"


def identity_610_check(cut: CliqueCut, point=(1, 1), cap: int = DEFAULT_EDGE_CAP) -> dict:
    """Compare T_G T_{K_|U|} with T_{G[U∪S1]} T_{G[U∪S2]} at one point."""
    cut.validate()
    x, y = (Fraction(t) for t in point)
    lhs = (evaluate(tutte_polynomial(cut.graph, cap), x, y)
           * evaluate(tutte_polynomial(complete_graph(len(cut.U)), cap), x, y))
    rhs = (evaluate(tutte_polynomial(cut.side(1), cap), x, y)
           * evaluate(tutte_polynomial(cut.side(2), cap), x, y))
    return {"lhs": lhs, "rhs": rhs, "equal": lhs == rhs}


def parse_point(text: str) -> tuple[Fraction, Fraction]:
    parts = [p.strip() for p in text.split(",")]
    if len(parts) != 2:
        raise ValueError(f"point must look like 'x,y', got {text!r}")
    return Fraction(parts[0]), Fraction(parts[1])


def problem61_experiment(seed: int = 0, trials: int = 100, point=(0, -1), bounds=None,
                         grid: Iterable = ()) -> dict:
    """Test the cut-set factorisation at ``point`` on random clique-cut instances.

    Failures are data: each is recorded with the full instance. ``grid`` adds
    extra points whose equality counts are reported alongside.
    """
    from .graphio import graph_to_dict, rational_to_json
    from .harness import CutBounds, gen_clique_cut_instance, trial_seed

    bounds = bounds or CutBounds(max_edges=DEFAULT_EDGE_CAP)
    point = tuple(Fraction(t) for t in point)
    grid = [tuple(Fraction(t) for t in p) for p in grid]
    equal = 0
    grid_equal = [0] * len(grid)
    counterexamples = []
    for t in range(trials):
        G, cut = gen_clique_cut_instance(trial_seed(seed, t), bounds)
        res = identity_610_check(cut, point)
        if res["equal"]:
            equal += 1
        else:
            counterexamples.append({
                "graph": graph_to_dict(G),
                "cut": {"U": sorted(map(str, cut.U)), "S1": sorted(map(str, cut.S1)),
                        "S2": sorted(map(str, cut.S2))},
                "lhs": rational_to_json(res["lhs"]),
                "rhs": rational_to_json(res["rhs"]),
            })
        for i, p in enumerate(grid):
            grid_equal[i] += identity_610_check(cut, p)["equal"]
    report = {
        "point": [rational_to_json(c) for c in point],
        "trials": trials,
        "equal_count": equal,
        "counterexamples": counterexamples,
    }
    if grid:
        report["grid"] = [{"point": [rational_to_json(c) for c in p], "equal_count": n}
                          for p, n in zip(grid, grid_equal)]
    return report

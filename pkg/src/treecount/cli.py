"""Command-line entry point.

Exit codes:
  0  success
  1  a verification campaign recorded failures
  2  unreadable input (graph, partition or arguments)
  3  a hypothesis of the requested construction or formula does not hold
  4  ``formula --check`` found the formula and the oracle disagree
  5  an enumeration or Tutte cap was exceeded
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path

from . import constructions as C
from .enumerator import DEFAULT_CAP, enumerate_constrained
from .errors import CapExceeded, GraphError, HypothesisViolated, ParseError
from .formulas import FORMULA_IDS, METHODS, oracle_value, run_formula
from .graphio import dump_text, load_graph, load_partition, rational_to_json
from .harness import CAMPAIGNS, run_campaign
from .kirchhoff import count_constrained, count_spanning_trees
from .tutte import (DEFAULT_EDGE_CAP, evaluate, format_poly, parse_point,
                    problem61_experiment, tutte_polynomial)

EXIT_OK, EXIT_FAILURES, EXIT_INPUT, EXIT_HYPOTHESIS, EXIT_MISMATCH, EXIT_CAP = range(6)

OPS = ("line", "middle", "subdivision", "star", "bullet", "split", "diamond",
       "diamond-partition", "reduce")


def _value_text(q) -> str:
    return str(rational_to_json(q))


def _json_args(text: str | None) -> dict:
    if not text:
        return {}
    path = Path(text)
    try:
        raw = path.read_text() if path.is_file() else text
        data = json.loads(raw)
    except (OSError, json.JSONDecodeError) as exc:
        raise ParseError(f"--args must be JSON or a JSON file: {exc}") from exc
    if not isinstance(data, dict):
        raise ParseError("--args must hold a JSON object")
    return data


def _names(G, data, key):
    return G.resolve(data.get(key) or ())


def _vertex(G, x):
    from .formulas import _vertex as lookup
    return lookup(G, x)


def _sorted_str(items):
    return " ".join(map(str, items))


# -- subcommands ----------------------------------------------------------

def cmd_count(args) -> int:
    G = load_graph(args.graph)
    tau = count_spanning_trees(G)
    print(json.dumps({"tau": tau}) if args.json else tau)
    return EXIT_OK


def cmd_count_constrained(args) -> int:
    G = load_graph(args.graph)
    names = [n for n in (args.edges or "").split(",") if n]
    if args.partition:
        data = load_partition(args.partition)
        names += list(data.get(args.key) or [])
    M = G.resolve(names)
    if args.enumerate:
        value = len(enumerate_constrained(G, M, args.cap))
    else:
        value = count_constrained(G, M)
    print(json.dumps({"tau": value, "M": G.sort_edges(M)}) if args.json else value)
    return EXIT_OK


def _construct(G, op: str, data: dict):
    """Return (graph, provenance comment lines)."""
    if op == "line":
        return C.line_graph(G), ["line graph; vertices are edge ids of the input"]
    if op == "middle":
        Mg, _, ev = C.middle_graph_with_cliques(G)
        return Mg, [f"middle graph; edge vertices: {_sorted_str(f'{e}->{v}' for e, v in ev.items())}"]
    if op == "subdivision":
        S, ev = C.subdivision_with_map(G)
        return S, [f"subdivision; edge vertices: {_sorted_str(f'{e}->{v}' for e, v in ev.items())}"]
    if op == "star":
        res = C.star_graph(G, _names(G, data, "W"))
        centres = [f"{w}:{{{','.join(map(str, G.sort_vertices(vs)))}}}"
                   for w, vs in res.centers.items()]
        return res.graph, [f"new edges: {_sorted_str(res.graph.sort_edges(res.new_edges))}",
                           f"centers: {_sorted_str(centres)}"]
    if op == "bullet":
        U = frozenset(_vertex(G, u) for u in data.get("U") or ())
        H, cmap = C.bullet_contract(G, U)
        return H, [f"vertex map: {_sorted_str(f'{a}->{b}' for a, b in cmap.vertex_map.items() if a != b)}"]
    if op == "split":
        res = C.vertex_split(G, _vertex(G, data.get("v")), _names(G, data, "E0"))
        return res.graph, [f"new vertex: {res.new_vertex}", f"new edge: {res.new_edge}"]
    if op == "diamond":
        vertices = data.get("vertices")
        if vertices is not None:
            vertices = [_vertex(G, v) for v in vertices]
        H, new = C.diamond_subgraph(G, _names(G, data, "edges"), vertices)
        return H, [f"new edges: {_sorted_str(H.sort_edges(new))}"]
    if op == "diamond-partition":
        parts = [G.resolve(p) for p in data.get("parts") or ()]
        res = C.diamond_partition(G, parts)
        graph = res.quotient if data.get("quotient") else res.graph
        return graph, [f"new edges: {_sorted_str(res.graph.sort_edges(res.new_edges))}",
                       f"part vertices: {_sorted_str(res.part_vertices)}"]
    if op == "reduce":
        cliques = [[_vertex(G, v) for v in c] for c in data.get("cliques") or ()]
        res = C.reduce_to_special_case(G, cliques, _names(G, data, "W"))
        cert = {k: (rational_to_json(v) if isinstance(v, (int, Fraction)) and not isinstance(v, bool)
                    else v) for k, v in res.certificate.items()}
        return res.graph, [f"V0: {_sorted_str(res.graph.sort_vertices(res.V0))}",
                           f"W: {_sorted_str(res.graph.sort_edges(res.W))}",
                           f"certificate: {json.dumps(cert, sort_keys=True)}"]
    raise ParseError(f"unknown construction {op!r}")


def cmd_construct(args) -> int:
    G = load_graph(args.graph)
    H, comments = _construct(G, args.op, _json_args(args.args))
    sys.stdout.write(dump_text(H, [f"op: {args.op}"] + comments))
    return EXIT_OK


def cmd_formula(args) -> int:
    G = load_graph(args.graph)
    data = load_partition(args.partition) if args.partition else {}
    try:
        res = run_formula(args.id, G, data, args.method, args.mode, args.cap)
    except HypothesisViolated as exc:
        if args.report_only:
            print(json.dumps({"formula": args.id, "ok": False, "failed": exc.failed}))
            return EXIT_OK
        raise
    out = {"formula": args.id, "value": rational_to_json(res.value),
           "integral": res.integral, "method": res.method, "hypotheses": res.report}
    if res.details:
        out["details"] = json.loads(json.dumps(res.details, default=str))
    if args.report_only:
        print(json.dumps({"formula": args.id, "ok": True, "hypotheses": res.report}))
        return EXIT_OK
    status = EXIT_OK
    if args.check:
        oracle = oracle_value(args.id, G, data)
        out["oracle"] = oracle
        out["match"] = res.value == oracle
        if not out["match"]:
            status = EXIT_MISMATCH
            print(f"mismatch: formula gives {_value_text(res.value)}, oracle gives {oracle}",
                  file=sys.stderr)
    print(json.dumps(out, sort_keys=True) if args.json else _value_text(res.value))
    return status


def cmd_verify(args) -> int:
    report = run_campaign(args.formula, args.trials, args.seed, args.mode, args.cap)
    print(json.dumps(report.to_json(timing=not args.no_timing), sort_keys=True))
    return EXIT_OK if report.ok else EXIT_FAILURES


def cmd_tutte(args) -> int:
    G = load_graph(args.graph)
    T = tutte_polynomial(G, args.edge_cap)
    if args.at:
        x, y = parse_point(args.at)
        print(_value_text(evaluate(T, x, y)))
    else:
        print(format_poly(T))
    return EXIT_OK


def cmd_tutte_experiment(args) -> int:
    grid = [parse_point(p) for p in args.grid.split(";") if p.strip()] if args.grid else []
    report = problem61_experiment(args.seed, args.trials, parse_point(args.point), grid=grid)
    print(json.dumps(report, sort_keys=True))
    return EXIT_OK


# -- parser -----------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="treecount",
                                description="Exact spanning tree counting and formula checks.")
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("count", help="print the number of spanning trees")
    c.add_argument("--graph", required=True)
    c.add_argument("--json", action="store_true")
    c.set_defaults(func=cmd_count)

    c = sub.add_parser("count-constrained", help="count spanning trees containing given edges")
    c.add_argument("--graph", required=True)
    c.add_argument("--edges", help="comma-separated edge ids or labels")
    c.add_argument("--partition", help="JSON file; the edges under --key are added")
    c.add_argument("--key", default="M")
    c.add_argument("--enumerate", action="store_true", help="count by brute force")
    c.add_argument("--cap", type=int, default=DEFAULT_CAP)
    c.add_argument("--json", action="store_true")
    c.set_defaults(func=cmd_count_constrained)

    c = sub.add_parser("construct", help="apply a graph construction")
    c.add_argument("--graph", required=True)
    c.add_argument("--op", required=True, choices=OPS)
    c.add_argument("--args", help="JSON object (inline or a file path)")
    c.set_defaults(func=cmd_construct)

    c = sub.add_parser("formula", help="evaluate one counting formula")
    c.add_argument("--id", required=True, choices=FORMULA_IDS)
    c.add_argument("--graph", required=True)
    c.add_argument("--partition")
    c.add_argument("--mode", choices=("corrected", "printed"), default="corrected")
    c.add_argument("--method", choices=METHODS, default="matrix")
    c.add_argument("--cap", type=int, default=DEFAULT_CAP)
    c.add_argument("--check", action="store_true", help="compare with the Matrix-Tree oracle")
    c.add_argument("--report-only", action="store_true", help="only report the hypothesis checks")
    c.add_argument("--json", action="store_true")
    c.set_defaults(func=cmd_formula)

    c = sub.add_parser("verify", help="run a seeded formula-versus-oracle campaign")
    c.add_argument("--formula", required=True, choices=CAMPAIGNS)
    c.add_argument("--trials", type=int, default=100)
    c.add_argument("--seed", type=int, default=0)
    c.add_argument("--mode", choices=("corrected", "printed"), default="corrected")
    c.add_argument("--cap", type=int, default=DEFAULT_CAP)
    c.add_argument("--no-timing", action="store_true", help="omit the elapsed field")
    c.set_defaults(func=cmd_verify)

    c = sub.add_parser("tutte", help="print the Tutte polynomial or its value at a point")
    c.add_argument("--graph", required=True)
    c.add_argument("--at", help="point 'x,y'")
    c.add_argument("--edge-cap", type=int, default=DEFAULT_EDGE_CAP)
    c.set_defaults(func=cmd_tutte)

    c = sub.add_parser("tutte-experiment", help="test the clique cut-set Tutte identity")
    c.add_argument("--trials", type=int, default=100)
    c.add_argument("--seed", type=int, default=0)
    c.add_argument("--point", default="0,-1")
    c.add_argument("--grid", help="extra points, e.g. '1,1;2,2'")
    c.set_defaults(func=cmd_tutte_experiment)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except HypothesisViolated as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_HYPOTHESIS
    except CapExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CAP
    except (GraphError, ValueError) as exc:
        # parse errors, unknown vertices/edges/formulas, malformed points
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())

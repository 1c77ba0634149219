"""Reading and writing graphs and partition files.

Text format, one record per line::

    # comment
    v a
    v b
    e a b [label]

JSON format: ``{"vertices": [...], "edges": [["a", "b", "label?"], ...]}``.
"""

from __future__ import annotations

import json
from fractions import Fraction
from pathlib import Path

from .errors import GraphError, ParseError
from .multigraph import MultiGraph, build


def parse_text(text: str) -> MultiGraph:
    vertices, edges = [], []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        kind = parts[0]
        if kind == "v" and len(parts) == 2:
            vertices.append(parts[1])
        elif kind == "e" and len(parts) in (3, 4):
            edges.append(tuple(parts[1:]))
        else:
            raise ParseError(f"line {lineno}: cannot parse {raw.strip()!r}")
    try:
        return build(vertices, edges)
    except GraphError as exc:
        raise ParseError(str(exc)) from exc


def parse_json(data) -> MultiGraph:
    if isinstance(data, str):
        try:
            data = json.loads(data)
        except json.JSONDecodeError as exc:
            raise ParseError(f"invalid JSON: {exc}") from exc
    if not isinstance(data, dict) or "vertices" not in data:
        raise ParseError('JSON graph needs a "vertices" list')
    edges = []
    for rec in data.get("edges", []):
        if not isinstance(rec, list) or len(rec) not in (2, 3):
            raise ParseError(f"bad edge record: {rec!r}")
        edges.append(tuple(rec))
    try:
        return build(data["vertices"], edges)
    except GraphError as exc:
        raise ParseError(str(exc)) from exc


def load_graph(path) -> MultiGraph:
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc}") from exc
    if path.suffix == ".json" or text.lstrip().startswith("{"):
        return parse_json(text)
    return parse_text(text)


def dump_text(G: MultiGraph, comments=()) -> str:
    """Serialise in the text format; each edge is written with its name."""
    lines = [f"# {c}" for c in comments]
    lines += [f"v {v}" for v in G.vertices]
    lines += [f"e {e.u} {e.v} {e.name}" for e in G.edges]
    return "\n".join(lines) + "\n"


def graph_to_dict(G: MultiGraph) -> dict:
    return {
        "vertices": [str(v) for v in G.vertices],
        "edges": [[str(e.u), str(e.v), e.name] for e in G.edges],
    }


def load_partition(path) -> dict:
    """Partition/constraint JSON, e.g. ``{"V0": [...], "cliques": [[...]], "N": [...]}``."""
    try:
        data = json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise ParseError(f"cannot read partition {path}: {exc}") from exc
    if not isinstance(data, dict):
        raise ParseError("partition file must hold a JSON object")
    return data


def rational_to_json(q):
    q = Fraction(q)
    return q.numerator if q.denominator == 1 else f"{q.numerator}/{q.denominator}"

from __future__ import annotations

import networkx as nx
import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from treecount.multigraph import MultiGraph, build

settings.register_profile("default", max_examples=60, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


@st.composite
def multigraphs(draw, min_vertices=1, max_vertices=6, max_edges=10, connected=False):
    """Loopless multigraphs on vertices 0..n-1; optionally forced connected."""
    n = draw(st.integers(min_vertices, max_vertices))
    edges = []
    if connected:
        for i in range(1, n):
            edges.append((i, draw(st.integers(0, i - 1))))
    if n >= 2:
        pair = st.tuples(st.integers(0, n - 1), st.integers(0, n - 1)).filter(
            lambda p: p[0] != p[1])
        budget = max(0, max_edges - len(edges))
        edges += draw(st.lists(pair, max_size=budget))
    return build(range(n), edges)


def to_nx(G: MultiGraph) -> nx.MultiGraph:
    H = nx.MultiGraph()
    H.add_nodes_from(G.vertices)
    H.add_edges_from((e.u, e.v) for e in G.edges)
    return H


def isomorphic(G: MultiGraph, H) -> bool:
    other = H if isinstance(H, nx.Graph) else to_nx(H)
    return nx.is_isomorphic(to_nx(G), other)


# -- acceptance summary ---------------------------------------------------

_ACCEPTANCE: dict = {}


@pytest.fixture
def acceptance():
    """Record one line per acceptance criterion; printed at the end of the run."""

    def record(number, label, ok, detail=""):
        _ACCEPTANCE[(number, label)] = (ok, detail)

    return record


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for (number, label), (ok, detail) in sorted(_ACCEPTANCE.items(), key=lambda kv: kv[0]):
        status = ok if isinstance(ok, str) else ("PASS" if ok else "FAIL")
        tail = f" ({detail})" if detail else ""
        terminalreporter.write_line(f"criterion {number:>2} [{status}] {label}{tail}")

import pytest
from hypothesis import given
from hypothesis import strategies as st

from treecount.enumerator import (enumerate_constrained, enumerate_spanning_trees,
                                  tree_degrees, tree_sum_by_enumeration)
from treecount.errors import CapExceeded
from treecount.multigraph import (build, complete_graph, cycle_graph, is_connected, is_forest,
                                  path_graph, spanning_subgraph)

from conftest import multigraphs


def test_small_families():
    assert len(enumerate_spanning_trees(complete_graph(3))) == 3
    assert len(enumerate_spanning_trees(complete_graph(4))) == 16
    assert len(enumerate_spanning_trees(cycle_graph(6))) == 6


def test_constrained_examples():
    assert len(enumerate_constrained(complete_graph(4), ["e1"])) == 8
    assert enumerate_constrained(complete_graph(3), ["e1", "e2", "e3"]) == []
    P = path_graph(4)
    assert enumerate_constrained(P, P.edge_ids) == [frozenset(P.edge_ids)]


def test_tree_sums_and_degrees():
    assert tree_sum_by_enumeration(build("ab", [("a", "b")])) == 1
    assert tree_sum_by_enumeration(build("ab", [("a", "b")] * 2), {"e1": 2, "e2": 3}) == 5
    assert tree_degrees(path_graph(3), ["e1", "e2"]) == {0: 1, 1: 2, 2: 1}


def test_cap_is_an_error_not_a_truncation():
    with pytest.raises(CapExceeded):
        enumerate_spanning_trees(complete_graph(5), cap=100)
    assert len(enumerate_spanning_trees(complete_graph(5), cap=125)) == 125


def test_order_is_deterministic():
    G = complete_graph(5)
    assert enumerate_spanning_trees(G) == enumerate_spanning_trees(G)


@given(multigraphs(max_edges=9))
def test_every_tree_is_a_spanning_tree(G):
    trees = enumerate_spanning_trees(G)
    assert len(set(trees)) == len(trees)
    for T in trees:
        assert len(T) == G.order - 1
        assert is_forest(G, T)
        assert is_connected(spanning_subgraph(G, T))


@given(multigraphs(max_edges=9), st.data())
def test_constrained_is_a_filter(G, data):
    N = data.draw(st.sets(st.sampled_from(G.edge_ids))) if G.size else set()
    expected = {T for T in enumerate_spanning_trees(G) if N <= T}
    assert set(enumerate_constrained(G, N)) == expected

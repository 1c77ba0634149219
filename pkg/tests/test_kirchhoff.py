from fractions import Fraction

from hypothesis import given
from hypothesis import strategies as st

from treecount.enumerator import enumerate_spanning_trees, tree_sum_by_enumeration
from treecount.kirchhoff import (bareiss_det, count_constrained, count_spanning_trees,
                                 laplacian, rational_det, weighted_tree_sum,
                                 weighted_tree_sum_constrained)
from treecount.multigraph import (build, complete_graph, contract_edges, delete_edges,
                                  is_connected, path_graph)

from conftest import multigraphs


def test_determinants():
    assert bareiss_det([]) == 1
    assert bareiss_det([[0, 1], [1, 0]]) == -1
    assert bareiss_det([[2, 0, 1], [1, 3, 2], [1, 1, 2]]) == 6
    assert bareiss_det([[1, 2], [2, 4]]) == 0
    assert rational_det([[Fraction(1, 2), 1], [1, 4]]) == 1


def test_laplacian_rows_sum_to_zero():
    L = laplacian(build("abc", [("a", "b"), ("a", "b"), ("b", "c")]))
    assert L[0] == [2, -2, 0]
    assert all(sum(row) == 0 for row in L)


def test_spanning_tree_counts():
    assert count_spanning_trees(complete_graph(4)) == 16
    assert count_spanning_trees(build("abcd", [("a", "b"), ("c", "d")])) == 0
    assert count_spanning_trees(build("ab", [("a", "b")] * 3)) == 3
    assert count_spanning_trees(build("a", [])) == 1


def test_constrained_counts():
    K4 = complete_graph(4)
    assert count_constrained(K4, ["e1"]) == 8
    assert count_constrained(complete_graph(3), ["e1", "e2", "e3"]) == 0
    P = path_graph(5)
    assert count_constrained(P, P.edge_ids) == 1
    assert count_constrained(K4, []) == 16


def test_weighted_sums():
    assert weighted_tree_sum(complete_graph(3)) == 3
    assert weighted_tree_sum(build("ab", [("a", "b"), ("a", "b")]), {"e1": 2, "e2": 3}) == 5
    assert weighted_tree_sum(complete_graph(3), {"e3": 2}) == 5
    assert weighted_tree_sum_constrained(complete_graph(3), None, ["e1"]) == 2
    assert weighted_tree_sum_constrained(complete_graph(3), None, ["e1", "e2", "e3"]) == 0
    assert weighted_tree_sum_constrained(build("ab", [("a", "b")]), {"e1": 7}, ["e1"]) == 7


weights = st.fractions(min_value=Fraction(1, 5), max_value=5, max_denominator=6)


@given(multigraphs(max_vertices=6, max_edges=9))
def test_matrix_tree_matches_enumeration(G):
    assert count_spanning_trees(G) == len(enumerate_spanning_trees(G))


@given(multigraphs(max_vertices=6, max_edges=9), st.data())
def test_weighted_matrix_tree_matches_enumeration(G, data):
    w = {e: data.draw(weights) for e in G.edge_ids}
    N = data.draw(st.sets(st.sampled_from(G.edge_ids))) if G.size else set()
    assert weighted_tree_sum_constrained(G, w, N) == tree_sum_by_enumeration(G, w, N)


@given(multigraphs(min_vertices=2, max_edges=9), st.data())
def test_deletion_contraction(G, data):
    if not G.size:
        return
    e = data.draw(st.sampled_from(G.edge_ids))
    minor, _ = contract_edges(G, [e])
    assert count_spanning_trees(G) == (count_spanning_trees(delete_edges(G, [e]))
                                       + count_spanning_trees(minor))


@given(multigraphs(connected=True), weights)
def test_uniform_scaling(G, c):
    w = {e: c for e in G.edge_ids}
    assert weighted_tree_sum(G, w) == c ** (G.order - 1) * count_spanning_trees(G)


@given(multigraphs())
def test_empty_constraint_is_plain_count(G):
    assert count_constrained(G, ()) == count_spanning_trees(G)
    assert (count_spanning_trees(G) == 0) == (not is_connected(G))

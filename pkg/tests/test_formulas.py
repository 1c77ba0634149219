from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from treecount.constructions import CliquePartition, CliqueCut, line_graph, middle_graph
from treecount.errors import (Disconnected, HypothesisViolated, NotAPartition,
                              NotCliquePartition, NotRegular, UnknownFormula)
from treecount.formulas import (FORMULA_IDS, cor51_pendant_clique, cor531_count,
                                line_graph_formula, line_graph_via_subdivision,
                                middle_graph_count, moon_count, oracle_value, prop31_count,
                                regular_line_graph, run_formula, thm12_matching, thm31_count,
                                thm42_count, thm53_count, thm54_count, thm510_factorize)
from treecount.harness import (PartitionBounds, formula_instance,
                               gen_clique_partition_instance, gen_line_graph_source)
from treecount.kirchhoff import count_constrained, count_spanning_trees
from treecount.multigraph import build, complete_graph, cycle_graph, path_graph

seeds = st.integers(min_value=0, max_value=2**32 - 1)

K4_LABELLED = build("abcd", [(x, y) for i, x in enumerate("abcd") for y in "abcd"[i + 1:]])
PRISM = build("abcxyz", [("a", "b"), ("b", "c"), ("a", "c"), ("x", "y"), ("y", "z"),
                         ("x", "z"), ("a", "x"), ("b", "y"), ("c", "z")])
BOWTIE = build("abcde", [("a", "b"), ("b", "c"), ("a", "c"), ("c", "d"), ("d", "e"),
                         ("c", "e")])


def test_moon_small_values():
    assert moon_count(4).value == 16
    assert moon_count(4, ["e1"]).value == 8
    assert moon_count(1).value == 1
    assert moon_count(3, ["e1", "e2", "e3"]).value == 0  # a cycle is never in a tree
    assert moon_count(5, ["e1", "e2"]).value == count_constrained(complete_graph(5), ["e1", "e2"])


def test_matching_count_on_the_prism():
    res = thm12_matching(PRISM, ["abc", "xyz"])
    M0 = PRISM.resolve(["e7", "e8", "e9"])
    assert res.value == count_constrained(PRISM, M0) == 12
    assert thm12_matching(PRISM, ["abc", "xyz"], method="enumerate").value == res.value


def test_matching_count_rejects_a_non_matching():
    G = build("abcd", [("a", "b"), ("c", "d"), ("a", "c"), ("a", "d")])
    with pytest.raises(HypothesisViolated) as info:
        thm12_matching(G, ["ab", "cd"])
    assert "M0_matching" in info.value.failed


def test_line_graph_formulas():
    assert line_graph_formula(complete_graph(4)).value == 384
    assert regular_line_graph(complete_graph(4)).value == 384
    assert regular_line_graph(cycle_graph(7), r=2).value == 7
    P = path_graph(5)
    assert line_graph_formula(P).value == count_spanning_trees(line_graph(P)) == 1
    with pytest.raises(NotRegular):
        regular_line_graph(P)
    with pytest.raises(NotRegular):
        regular_line_graph(cycle_graph(5), r=3)
    with pytest.raises(HypothesisViolated):
        line_graph_formula(build("ab", []))


def test_pendant_forest_on_k4():
    # a path a-x-y-b hangs off the clique, so the forest has one component meeting U twice
    G = build("abcdxy", [(e.u, e.v) for e in K4_LABELLED.edges]
              + [("a", "x"), ("x", "y"), ("b", "y")])
    res = prop31_count(G, "abcd")
    assert res.value == oracle_value("prop31", G, {"U": list("abcd")}) == 8
    bad = build("abcx", [("a", "b"), ("b", "c"), ("a", "x")])
    with pytest.raises(HypothesisViolated) as info:
        prop31_count(bad, "abc")
    assert "clique" in info.value.failed


def test_star_theorems_on_k4_with_one_outside_vertex():
    P = CliquePartition.from_cliques(K4_LABELLED, ["abc"], V0="d")
    assert thm42_count(P).value == count_constrained(K4_LABELLED, P.M) == 1
    assert cor531_count(P).value == 16
    assert thm53_count(P, R=P.M).value == thm42_count(P).value
    assert thm31_count(K4_LABELLED, "abc").value == thm42_count(P).value


def test_star_theorems_refuse_an_N_touching_the_clique():
    P = CliquePartition.from_cliques(K4_LABELLED, ["abc"], V0="d")
    inside = K4_LABELLED.resolve(["e1"])
    with pytest.raises(HypothesisViolated) as info:
        thm42_count(P, inside)
    assert "N_outside_U" in info.value.failed
    with pytest.raises(HypothesisViolated):
        thm53_count(P, R=inside)


def test_edge_partition_count_on_the_bowtie():
    parts = [BOWTIE.resolve(["e1", "e2", "e3"]), BOWTIE.resolve(["e4", "e5", "e6"])]
    assert thm54_count(BOWTIE, parts).value == 9
    assert thm54_count(BOWTIE, parts, method="enumerate").value == 9
    singletons = [[e] for e in BOWTIE.edge_ids]
    assert thm54_count(BOWTIE, singletons).value == 9
    with pytest.raises(NotAPartition):
        thm54_count(BOWTIE, parts[:1])
    with pytest.raises(NotCliquePartition):
        thm54_count(BOWTIE, [BOWTIE.resolve(["e1", "e2"]), BOWTIE.resolve(["e3", "e4", "e5", "e6"])])
    assert thm54_count(build("a", []), []).value == 1


def test_middle_graph():
    K3 = complete_graph(3)
    assert middle_graph_count(K3).value == 54 == count_spanning_trees(middle_graph(K3))
    assert middle_graph_count(K3, method="enumerate").value == 54
    with pytest.raises(Disconnected):
        middle_graph_count(build("abc", [("a", "b")]))


def test_line_graph_via_subdivision_modes():
    K4 = complete_graph(4)
    assert line_graph_via_subdivision(K4).value == 384
    assert line_graph_via_subdivision(path_graph(4)).value == 1  # degree-1 vertices present
    printed = line_graph_via_subdivision(complete_graph(3), mode="printed")
    assert printed.value == 192 != count_spanning_trees(line_graph(complete_graph(3)))
    with pytest.raises(ValueError):
        line_graph_via_subdivision(K4, mode="other")


def test_clique_cut_factorization():
    G = build(["u1", "u2", "u3", "a", "b"],
              [("u1", "u2"), ("u2", "u3"), ("u1", "u3"), ("a", "u1"), ("a", "u2"),
               ("b", "u3")])
    cut = CliqueCut.make(G, {"u1", "u2", "u3"}, {"a"}, {"b"}, frozenset())
    res = thm510_factorize(cut)
    assert res.value == res.details["direct"] == count_spanning_trees(G) == 8
    assert thm510_factorize(cut, method="enumerate").value == 8


def test_pendant_clique_and_its_extra_hypothesis():
    assert cor51_pendant_clique(K4_LABELLED, "abc", "d").value == 16
    doubled = build("abcd", [(e.u, e.v) for e in K4_LABELLED.edges] + [("a", "d")])
    with pytest.raises(HypothesisViolated) as info:
        cor51_pendant_clique(doubled, "abc", "d")
    assert info.value.failed == ["simple_at_w"]


def test_unknown_formula_and_method():
    with pytest.raises(UnknownFormula):
        run_formula("thm99", complete_graph(3))
    with pytest.raises(UnknownFormula):
        oracle_value("thm99", complete_graph(3))
    with pytest.raises(ValueError):
        line_graph_formula(complete_graph(3), method="guess")


@pytest.mark.parametrize("formula", FORMULA_IDS)
def test_registry_agrees_with_oracle_on_a_generated_instance(formula):
    for seed in range(3):
        G, data = formula_instance(formula, seed)
        res = run_formula(formula, G, data)
        assert res.value == oracle_value(formula, G, data)
        assert res.integral and res.count == res.value


def test_count_is_none_for_fractions():
    from treecount.formulas import FormulaResult
    assert FormulaResult("x", Fraction(1, 2)).count is None


@settings(max_examples=25)
@given(seeds)
def test_specialization_chain(seed):
    G, P, N, R = gen_clique_partition_instance(seed, PartitionBounds(k_min=1, k_max=3))
    full = thm42_count(P, N).value
    assert thm53_count(P, P.M, N).value == full
    assert thm53_count(P, (), N).value == cor531_count(P, N).value == count_constrained(G, N)
    if len(P.cliques) == 1:
        assert thm31_count(G, P.cliques[0], N).value == full


@settings(max_examples=25)
@given(seeds)
def test_matrix_and_enumeration_paths_agree(seed):
    G, P, N, R = gen_clique_partition_instance(seed, PartitionBounds(k_min=1, k_max=2))
    assert thm53_count(P, R, N).value == thm53_count(P, R, N, method="enumerate").value
    H = gen_line_graph_source(seed, 6, 9)
    assert line_graph_formula(H).value == line_graph_formula(H, method="enumerate").value

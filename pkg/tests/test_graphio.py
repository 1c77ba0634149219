import json

import pytest

from treecount.errors import ParseError
from treecount.graphio import (dump_text, graph_to_dict, load_graph, load_partition,
                               parse_json, parse_text, rational_to_json)
from treecount.multigraph import complete_graph

from fractions import Fraction


def test_text_round_trip(tmp_path):
    G = parse_text("# K3\nv a\nv b\nv c\ne a b x\ne b c\ne a c  # last\n")
    assert G.size == 3 and G.edge("e1").label == "x"
    again = parse_text(dump_text(G, ["copy"]))
    assert [e.ends for e in again.edges] == [e.ends for e in G.edges]
    assert again.edge("e2").label == "e2"  # names are written out as labels


def test_json_round_trip(tmp_path):
    G = complete_graph(3)
    path = tmp_path / "g.json"
    path.write_text(json.dumps(graph_to_dict(G)))
    H = load_graph(path)
    assert H.order == 3 and H.size == 3


@pytest.mark.parametrize("text", ["x a\n", "e a\n", "v a\ne a b\n", "v a\ne a a\n"])
def test_malformed_text(text):
    with pytest.raises(ParseError):
        parse_text(text)


def test_malformed_json_and_files(tmp_path):
    with pytest.raises(ParseError):
        parse_json("{not json")
    with pytest.raises(ParseError):
        parse_json({"edges": []})
    with pytest.raises(ParseError):
        load_graph(tmp_path / "missing.txt")
    bad = tmp_path / "p.json"
    bad.write_text("[1, 2]")
    with pytest.raises(ParseError):
        load_partition(bad)


def test_rational_to_json():
    assert rational_to_json(Fraction(4, 2)) == 2
    assert rational_to_json(Fraction(-3, 4)) == "-3/4"

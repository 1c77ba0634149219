"""Exact spanning tree counting on loopless multigraphs.

The Matrix-Tree determinant and brute-force enumeration serve as oracles
for a collection of closed-form and tree-sum formulas, graph constructions
and a Tutte polynomial engine.
"""

from .errors import (CapExceeded, GraphError, HypothesisViolated, ParseError, SelfLoop,
                     UnknownEdge, UnknownFormula, UnknownVertex)
from .kirchhoff import (count_constrained, count_spanning_trees, weighted_tree_sum,
                        weighted_tree_sum_constrained)
from .multigraph import Edge, MultiGraph, build, complete_graph, cycle_graph, path_graph

__all__ = [
    "CapExceeded", "Edge", "GraphError", "HypothesisViolated", "MultiGraph", "ParseError",
    "SelfLoop", "UnknownEdge", "UnknownFormula", "UnknownVertex", "build", "complete_graph",
    "count_constrained", "count_spanning_trees", "cycle_graph", "path_graph",
    "weighted_tree_sum", "weighted_tree_sum_constrained",
]
__version__ = "0.1.0"

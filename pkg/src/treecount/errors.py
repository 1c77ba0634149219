"""Exception types shared across the package."""

from __future__ import annotations


class GraphError(ValueError):
    """Base class for every error raised by treecount."""


class SelfLoop(GraphError):
    def __init__(self, edge):
        super().__init__(f"self-loop rejected: {edge!r}")
        self.edge = edge


class UnknownVertex(GraphError):
    def __init__(self, name):
        super().__init__(f"unknown vertex: {name!r}")
        self.name = name


class UnknownEdge(GraphError):
    def __init__(self, name):
        super().__init__(f"unknown edge: {name!r}")
        self.name = name


class ParseError(GraphError):
    pass


class CapExceeded(GraphError):
    def __init__(self, cap, what="spanning trees"):
        super().__init__(f"more than {cap} {what}; instance too large for brute force")
        self.cap = cap


class UnknownFormula(GraphError):
    def __init__(self, formula_id):
        super().__init__(f"unknown formula id: {formula_id!r}")
        self.formula_id = formula_id


class HypothesisViolated(GraphError):
    """A precondition of a construction or formula does not hold.

    ``failed`` names every condition that was checked and found false.
    """

    def __init__(self, failed, message=None):
        self.failed = list(failed)
        super().__init__(message or "hypothesis violated: " + ", ".join(self.failed))


class EmptyEdgeSet(HypothesisViolated):
    def __init__(self):
        super().__init__(["nonempty_edge_set"], "edge set must be nonempty")


class NotAForest(HypothesisViolated):
    def __init__(self, what="edge set"):
        super().__init__(["forest"], f"{what} contains a cycle")


class MNotContained(HypothesisViolated):
    def __init__(self):
        super().__init__(["M_subset_W"], "W must contain every edge between distinct parts")


class NotASubgraph(HypothesisViolated):
    def __init__(self, detail=""):
        super().__init__(["subgraph"], f"not a subgraph{': ' + detail if detail else ''}")


class NotAPartition(HypothesisViolated):
    def __init__(self, detail=""):
        super().__init__(["partition"], f"not a partition{': ' + detail if detail else ''}")


class NotCliquePartition(HypothesisViolated):
    pass


class NotRegular(HypothesisViolated):
    def __init__(self):
        super().__init__(["regular"], "graph is not regular")


class Disconnected(HypothesisViolated):
    def __init__(self):
        super().__init__(["connected"], "graph is disconnected")

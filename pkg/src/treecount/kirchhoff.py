"""Exact Matrix-Tree counting.

Counts are cofactors of the Laplacian with the row and column of the first
vertex removed. Integer matrices go through fraction-free (Bareiss)
elimination; rational ones are scaled row-wise to integers first.
"""

from __future__ import annotations

from fractions import Fraction
from math import lcm
from typing import Mapping

from .multigraph import MultiGraph, contract_edges, is_forest, _check_edges


def bareiss_det(matrix) -> int:
    """Determinant of a square integer matrix, exactly."""
    a = [list(row) for row in matrix]
    n = len(a)
    if n == 0:
        return 1
    sign, prev = 1, 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for r in range(k + 1, n):
                if a[r][k] != 0:
                    a[k], a[r] = a[r], a[k]
                    sign = -sign
                    break
            else:
                return 0
        pivot = a[k][k]
        row_k = a[k]
        for i in range(k + 1, n):
            row_i = a[i]
            aik = row_i[k]
            for j in range(k + 1, n):
                row_i[j] = (row_i[j] * pivot - aik * row_k[j]) // prev
            row_i[k] = 0
        prev = pivot
    return sign * a[n - 1][n - 1]


def rational_det(matrix) -> Fraction:
    """Determinant of a square rational matrix, exactly."""
    scale = Fraction(1)
    rows = []
    for row in matrix:
        row = [Fraction(x) for x in row]
        d = lcm(*(x.denominator for x in row)) if row else 1
        scale *= d
        rows.append([int(x * d) for x in row])
    return Fraction(bareiss_det(rows)) / scale


def laplacian(G: MultiGraph, weights: Mapping | None = None) -> list[list]:
    n = G.order
    L = [[0] * n for _ in range(n)]
    for e in G.edges:
        w = 1 if weights is None else weights.get(e.id, 1)
        i, j = G.vertex_index(e.u), G.vertex_index(e.v)
        L[i][i] += w
        L[j][j] += w
        L[i][j] -= w
        L[j][i] -= w
    return L


def _reduced(L):
    return [row[1:] for row in L[1:]]


def count_spanning_trees(G: MultiGraph) -> int:
    """tau_G; zero exactly when G is disconnected."""
    if G.order == 0:
        return 0
    return bareiss_det(_reduced(laplacian(G)))


def count_constrained(G: MultiGraph, M=()) -> int:
    """tau_G(M): spanning trees containing every edge of M."""
    M = _check_edges(G, M)
    if not is_forest(G, M):
        return 0
    H, _ = contract_edges(G, M)
    return count_spanning_trees(H)


def weighted_tree_sum(G: MultiGraph, weights: Mapping | None = None) -> Fraction:
    """Sum over spanning trees of the product of edge weights (default 1)."""
    if G.order == 0:
        return Fraction(0)
    return rational_det(_reduced(laplacian(G, weights or {})))


def weighted_tree_sum_constrained(G: MultiGraph, weights: Mapping | None, N=()) -> Fraction:
    """The weighted tree sum restricted to trees containing every edge of N."""
    N = _check_edges(G, N)
    if not is_forest(G, N):
        return Fraction(0)
    weights = weights or {}
    forced = Fraction(1)
    for e in N:
        forced *= Fraction(weights.get(e, 1))
    H, _ = contract_edges(G, N)
    return forced * weighted_tree_sum(H, weights)

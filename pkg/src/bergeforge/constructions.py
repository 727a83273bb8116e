"""Generators for the lower-bound constructions.

Each construction pairs with a freeness claim that the test suite checks
with the generic detectors: the triangle hypergraph of a graph without
odd cycles of a given length carries no Berge cycle of that length, and
the one-side doubling of a bipartite graph without short even cycles
carries no Berge cycle of those lengths.
"""

from __future__ import annotations

from .core import BipartiteGraph, Graph, TripleSystem, triangle_list

__all__ = ["triangle_hypergraph", "double_one_side", "blowup_c5"]


def triangle_hypergraph(g: Graph) -> TripleSystem:
    """The triple system whose hyperedges are exactly the triangles of g."""
    return TripleSystem.from_edges(g.n, triangle_list(g))


def double_one_side(b: BipartiteGraph) -> TripleSystem:
    """Clone every right-part vertex and turn each edge into a triple.

    Vertices: left a -> a, right j -> m + j, clone of right j -> m + n + j.
    Edge (a, j) becomes the hyperedge {a, m + j, m + n + j}, so the result
    has m + 2n vertices and exactly one hyperedge per input edge.
    """
    m, n = b.m, b.n
    triples = [(a, m + j, m + n + j) for a, j in b.edges]
    return TripleSystem.from_edges(m + 2 * n, triples)


def blowup_c5(n: int) -> Graph:
    """Balanced blow-up of the pentagon: five classes of size n/5, complete
    bipartite between cyclically consecutive classes.

    Triangle-free, and its number of 5-cycles is exactly (n/5)^5.
    """
    if n % 5 != 0:
        raise ValueError(f"blow-up size must be divisible by 5, got {n}")
    q = n // 5
    edges = []
    for c in range(5):
        d = (c + 1) % 5
        for i in range(q):
            for j in range(q):
                edges.append((c * q + i, d * q + j))
    return Graph.from_edges(n, edges)

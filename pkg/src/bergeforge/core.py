"""Immutable graphs, bipartite graphs, and 3-uniform triple systems.

Vertices are dense indices 0..n-1.  Graph adjacency is one Python int
bitmask per vertex, so neighborhood intersection (the hot operation in
triangle listing and cycle search) is word-parallel regardless of n.
Triple systems store their hyperedges as ascending 3-tuples in global
lexicographic order, which keeps edge indices stable across runs and
makes every serialized output canonical.

All types here are frozen dataclasses: safe to share between threads,
hashable, and usable as cache keys.
"""

from __future__ import annotations

from dataclasses import dataclass

__all__ = [
    "Graph",
    "BipartiteGraph",
    "TripleSystem",
    "BergeCycleWitness",
    "PairDegreeMap",
    "bits",
    "popcount",
    "pair_key",
    "shadow_pairs",
    "is_linear",
    "triangle_list",
]

# Unordered vertex pair -> number of hyperedges containing it; pairs with
# multiplicity 0 are absent.
PairDegreeMap = dict[tuple[int, int], int]


def bits(mask: int):
    """Yield the set bit positions of mask in ascending order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def popcount(mask: int) -> int:
    """Number of set bits (int.bit_count needs 3.11; this runs on 3.10)."""
    return bin(mask).count("1")


def pair_key(u: int, v: int) -> tuple[int, int]:
    """Canonical (min, max) form of an unordered vertex pair."""
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph; adj[v] is the neighbor bitmask of v."""

    n: int
    adj: tuple[int, ...]

    @classmethod
    def from_edges(cls, n: int, edges) -> "Graph":
        if n < 0:
            raise ValueError("vertex count must be nonnegative")
        masks = [0] * n
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u},{v}) out of range for n={n}")
            if u == v:
                raise ValueError(f"loop at vertex {u}")
            masks[u] |= 1 << v
            masks[v] |= 1 << u
        return cls(n, tuple(masks))

    def has_edge(self, u: int, v: int) -> bool:
        return bool((self.adj[u] >> v) & 1)

    def neighbors(self, v: int):
        return bits(self.adj[v])

    def degree(self, v: int) -> int:
        return popcount(self.adj[v])

    def edges(self) -> list[tuple[int, int]]:
        """All edges as (u, v) with u < v, lexicographically ascending."""
        out = []
        for u in range(self.n):
            higher = self.adj[u] >> (u + 1)
            for off in bits(higher):
                out.append((u, u + 1 + off))
        return out

    @property
    def edge_count(self) -> int:
        return sum(popcount(m) for m in self.adj) // 2

    def with_edges(self, extra) -> "Graph":
        return Graph.from_edges(self.n, self.edges() + list(extra))


@dataclass(frozen=True)
class BipartiteGraph:
    """Bipartite graph with parts of size m (left) and n (right).

    Edges are (left, right) index pairs; duplicates collapse.
    """

    m: int
    n: int
    edges: tuple[tuple[int, int], ...]

    @classmethod
    def from_edges(cls, m: int, n: int, edges) -> "BipartiteGraph":
        if m < 0 or n < 0:
            raise ValueError("part sizes must be nonnegative")
        canon = set()
        for a, b in edges:
            if not (0 <= a < m):
                raise ValueError(f"left index {a} out of range for m={m}")
            if not (0 <= b < n):
                raise ValueError(f"right index {b} out of range for n={n}")
            canon.add((a, b))
        return cls(m, n, tuple(sorted(canon)))

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    def to_graph(self) -> Graph:
        """Embed as a Graph on m + n vertices: left i -> i, right j -> m + j."""
        return Graph.from_edges(self.m + self.n, [(a, self.m + b) for a, b in self.edges])


@dataclass(frozen=True)
class TripleSystem:
    """3-uniform hypergraph; edges are ascending triples in global lex order."""

    n: int
    edges: tuple[tuple[int, int, int], ...]

    @classmethod
    def from_edges(cls, n: int, triples) -> "TripleSystem":
        if n < 0:
            raise ValueError("vertex count must be nonnegative")
        canon = set()
        for t in triples:
            s = tuple(sorted(t))
            if len(s) != 3 or len(set(s)) != 3:
                raise ValueError(f"hyperedge {tuple(t)!r} must have exactly 3 distinct vertices")
            if s[0] < 0 or s[2] >= n:
                raise ValueError(f"hyperedge {tuple(t)!r} out of range for n={n}")
            canon.add(s)
        return cls(n, tuple(sorted(canon)))

    @property
    def edge_count(self) -> int:
        return len(self.edges)


@dataclass(frozen=True)
class BergeCycleWitness:
    """Certificate of a Berge cycle: distinct core vertices v_0..v_{k-1} and
    distinct hyperedges H_0..H_{k-1} (indices into the host system) with
    {v_i, v_{i+1 mod k}} contained in H_i for every i."""

    core: tuple[int, ...]
    hyperedges: tuple[int, ...]

    def validate(self, host: TripleSystem) -> None:
        """Raise ValueError unless this witness certifies a Berge cycle in host."""
        k = len(self.core)
        if k < 2:
            raise ValueError("core must have at least 2 vertices")
        if len(self.hyperedges) != k:
            raise ValueError("core and hyperedge sequences must have equal length")
        if len(set(self.core)) != k:
            raise ValueError("core vertices must be pairwise distinct")
        if len(set(self.hyperedges)) != k:
            raise ValueError("hyperedge indices must be pairwise distinct")
        for i, e in enumerate(self.hyperedges):
            if not (0 <= e < host.edge_count):
                raise ValueError(f"hyperedge index {e} out of range")
            u, v = self.core[i], self.core[(i + 1) % k]
            if u not in host.edges[e] or v not in host.edges[e]:
                raise ValueError(
                    f"hyperedge {host.edges[e]} at position {i} misses core pair ({u},{v})"
                )


def shadow_pairs(h: TripleSystem) -> PairDegreeMap:
    """Multiplicity of every covered vertex pair of h.

    The multiplicities sum to 3 * |edges|; uncovered pairs are absent.
    """
    deg: PairDegreeMap = {}
    for a, b, c in h.edges:
        for p in ((a, b), (a, c), (b, c)):
            deg[p] = deg.get(p, 0) + 1
    return deg


def is_linear(h: TripleSystem) -> bool:
    """True iff every two hyperedges meet in at most one vertex."""
    seen = set()
    for a, b, c in h.edges:
        for p in ((a, b), (a, c), (b, c)):
            if p in seen:
                return False
            seen.add(p)
    return True


def triangle_list(g: Graph) -> list[tuple[int, int, int]]:
    """Vertex sets of all triangles of g, each once, as ascending triples."""
    out = []
    for u in range(g.n):
        au = g.adj[u]
        higher_u = au >> (u + 1)
        for off in bits(higher_u):
            v = u + 1 + off
            common = au & g.adj[v]
            ws = common >> (v + 1)
            for off2 in bits(ws):
                out.append((u, v, v + 1 + off2))
    return out

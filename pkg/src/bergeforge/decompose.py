"""Executable decompositions of triple systems and graphs.

The hyperedge pipeline classifies every hyperedge of a triple system by
how its vertex pairs are shared, then extracts guaranteed-size pieces:

  g2      graph of pairs covered at least twice
  h1      hyperedges owning a private pair (covered only by themselves)
  h2      the rest (all three pairs covered at least twice); h1 + h2 is
          a partition of the edge set
  h3      subset of h1 captured by a derandomized 2-coloring, at least a
          quarter of h1: the private pair is monochromatic and the third
          vertex has the opposite color
  h4/h5   split of h3 by whether the third vertex forms a pair of
          multiplicity >= 3 with a private-pair endpoint
  g4      graph of the private pairs of h4
  h6      greedy linear subfamily of h5, at least a third of h5

Both colorings use the method of conditional expectations with exact
integer scoring, so their guarantees are deterministic postconditions,
not expectations.  The quantities drive counting arguments of the form
|H| <= |h2| + 4|h4| + 12|h6|, which the test suite checks directly.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .core import Graph, TripleSystem, is_linear, pair_key, shadow_pairs, triangle_list
from .detect import find_cycle

__all__ = [
    "Decomposition",
    "Tripartition",
    "H1Split",
    "DerandomizationAlarm",
    "PipelinePreconditionError",
    "build_g2",
    "split_h1_h2",
    "two_color_h3",
    "split_h4_h5",
    "g4_graph",
    "greedy_linear",
    "decompose",
    "rainbow_tripartition",
    "check_triangle_lemma",
]


class DerandomizationAlarm(RuntimeError):
    """A derandomized guarantee failed; this indicates a bug, not bad input."""


class PipelinePreconditionError(ValueError):
    """An input does not come from the stage that was supposed to produce it."""


@dataclass(frozen=True)
class H1Split:
    """Partition of hyperedge indices into h1 (with private pairs) and h2."""

    h1: tuple[int, ...]
    h2: tuple[int, ...]
    private_pair: dict[int, tuple[int, int]]


@dataclass(frozen=True)
class Decomposition:
    """All pipeline artifacts for one source system."""

    source: TripleSystem
    g2: Graph
    h1: tuple[int, ...]
    h2: tuple[int, ...]
    private_pair: dict[int, tuple[int, int]]
    coloring: dict[int, int]
    h3: tuple[int, ...]
    h4: tuple[int, ...]
    h5: tuple[int, ...]
    h6: tuple[int, ...]
    g4: Graph

    def validate(self) -> None:
        """Check every structural invariant; raise ValueError on failure."""
        h = self.source
        deg = shadow_pairs(h)
        all_idx = set(range(h.edge_count))
        if set(self.h1) | set(self.h2) != all_idx or set(self.h1) & set(self.h2):
            raise ValueError("h1 and h2 must partition the edge set")
        for i in self.h2:
            a, b, c = h.edges[i]
            if min(deg[(a, b)], deg[(a, c)], deg[(b, c)]) < 2:
                raise ValueError(f"h2 edge {h.edges[i]} has a pair of multiplicity 1")
        for i in self.h1:
            p = self.private_pair[i]
            if deg[p] != 1:
                raise ValueError(f"private pair {p} of edge {h.edges[i]} is not private")
        if not set(self.h3) <= set(self.h1):
            raise ValueError("h3 must be a subset of h1")
        if set(self.h4) | set(self.h5) != set(self.h3) or set(self.h4) & set(self.h5):
            raise ValueError("h4 and h5 must partition h3")
        if not set(self.h6) <= set(self.h5):
            raise ValueError("h6 must be a subset of h5")
        sub = TripleSystem.from_edges(h.n, [h.edges[i] for i in self.h6])
        if not is_linear(sub):
            raise ValueError("h6 must be linear")
        if 4 * len(self.h3) < len(self.h1):
            raise ValueError("coloring guarantee violated: 4|h3| < |h1|")
        if 3 * len(self.h6) < len(self.h5):
            raise ValueError("greedy guarantee violated: 3|h6| < |h5|")


@dataclass(frozen=True)
class Tripartition:
    """Vertex 3-coloring with exact class sizes and its rainbow triangle count."""

    classes: dict[int, int]
    rainbow_count: int


def build_g2(h: TripleSystem) -> Graph:
    """Graph on the vertex set of h whose edges are pairs covered >= 2 times.

    If h has no Berge cycle of some length L, this graph has no cycle of
    length L either: each cycle edge has two candidate hyperedges and each
    hyperedge serves at most two cycle edges, so Hall's condition yields
    distinct representatives forming a Berge cycle.
    """
    deg = shadow_pairs(h)
    return Graph.from_edges(h.n, [p for p, c in deg.items() if c >= 2])


def split_h1_h2(h: TripleSystem) -> H1Split:
    """Classify hyperedges by private pairs.

    An edge goes to h1 when some of its pairs is covered only by itself;
    the lexicographically least such pair is recorded as its private pair.
    Edges with all three pairs covered at least twice go to h2.
    """
    deg = shadow_pairs(h)
    h1, h2, private = [], [], {}
    for i, (a, b, c) in enumerate(h.edges):
        free = [p for p in ((a, b), (a, c), (b, c)) if deg[p] == 1]
        if free:
            h1.append(i)
            private[i] = free[0]
        else:
            h2.append(i)
    return H1Split(tuple(h1), tuple(h2), private)


def _capture_score(colors: dict[int, int], u: int, v: int, w: int) -> int:
    """8 * P(edge captured | partial coloring) for private pair (u,v), apex w.

    Captured means color(u) == color(v) and color(w) is the opposite color;
    unassigned vertices are colored uniformly at random.
    """
    total = 0
    for c in (1, 2):
        unassigned = 0
        ok = True
        for vertex, want in ((u, c), (v, c), (w, 3 - c)):
            got = colors.get(vertex)
            if got is None:
                unassigned += 1
            elif got != want:
                ok = False
                break
        if ok:
            total += 1 << (3 - unassigned)
    return total


def two_color_h3(h: TripleSystem, split: H1Split) -> tuple[dict[int, int], tuple[int, ...]]:
    """Derandomized 2-coloring capturing at least a quarter of h1.

    Conditional expectations over vertices in ascending order: a uniformly
    random coloring captures each h1 edge with probability 1/4, and each
    greedy color choice keeps the conditional expectation from dropping,
    so the final capture count is at least ceil(|h1|/4).
    """
    shapes = []
    for i in split.h1:
        u, v = split.private_pair[i]
        w = next(x for x in h.edges[i] if x != u and x != v)
        shapes.append((i, u, v, w))
    colors: dict[int, int] = {}
    for vertex in range(h.n):
        best_color, best_score = 1, -1
        for c in (1, 2):
            colors[vertex] = c
            score = sum(_capture_score(colors, u, v, w) for _, u, v, w in shapes)
            if score > best_score:
                best_color, best_score = c, score
        colors[vertex] = best_color
    h3 = tuple(
        i for i, u, v, w in shapes
        if colors[u] == colors[v] and colors[w] == 3 - colors[u]
    )
    if 4 * len(h3) < len(split.h1):
        raise DerandomizationAlarm(
            f"2-coloring captured {len(h3)} of {len(split.h1)} private-pair edges"
        )
    return colors, h3


def split_h4_h5(h: TripleSystem, h3, coloring: dict[int, int],
                private_pair: dict[int, tuple[int, int]]) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """Split captured edges by apex pair multiplicity, measured in all of h.

    An edge {u,v,w} with private pair (u,v) goes to h4 when
    max(deg(w,u), deg(w,v)) >= 3, else to h5.
    """
    deg = shadow_pairs(h)
    h4, h5 = [], []
    for i in h3:
        u, v = private_pair[i]
        w = next(x for x in h.edges[i] if x != u and x != v)
        if max(deg[pair_key(w, u)], deg[pair_key(w, v)]) >= 3:
            h4.append(i)
        else:
            h5.append(i)
    return tuple(h4), tuple(h5)


def g4_graph(h: TripleSystem, h4, private_pair: dict[int, tuple[int, int]]) -> Graph:
    """Graph of the private pairs of the h4 edges."""
    return Graph.from_edges(h.n, [private_pair[i] for i in h4])


def greedy_linear(h: TripleSystem, h5) -> tuple[int, ...]:
    """Greedy linear subfamily of h5 with |h6| >= ceil(|h5|/3).

    Requires pipeline-produced input: in every h5 edge the private pair has
    multiplicity 1 and the two apex pairs have multiplicity <= 2, so each
    edge conflicts with at most two others and ascending greedy selection
    keeps at least a third.
    """
    deg = shadow_pairs(h)
    for i in h5:
        a, b, c = h.edges[i]
        mults = sorted(deg[p] for p in ((a, b), (a, c), (b, c)))
        if mults[0] != 1 or mults[-1] > 2:
            raise PipelinePreconditionError(
                f"edge {h.edges[i]} has pair multiplicities {mults}; "
                "h5 must come from the coloring pipeline"
            )
    used_pairs: set[tuple[int, int]] = set()
    kept = []
    for i in sorted(h5):
        a, b, c = h.edges[i]
        pairs = ((a, b), (a, c), (b, c))
        if any(p in used_pairs for p in pairs):
            continue
        kept.append(i)
        used_pairs.update(pairs)
    if 3 * len(kept) < len(h5):
        raise DerandomizationAlarm(f"greedy kept {len(kept)} of {len(h5)} edges")
    return tuple(kept)


def decompose(h: TripleSystem) -> Decomposition:
    """Run the whole pipeline on one system."""
    split = split_h1_h2(h)
    coloring, h3 = two_color_h3(h, split)
    h4, h5 = split_h4_h5(h, h3, coloring, split.private_pair)
    h6 = greedy_linear(h, h5)
    return Decomposition(
        source=h,
        g2=build_g2(h),
        h1=split.h1,
        h2=split.h2,
        private_pair=split.private_pair,
        coloring=coloring,
        h3=h3,
        h4=h4,
        h5=h5,
        h6=h6,
        g4=g4_graph(h, h4, split.private_pair),
    )


# ---------------------------------------------------------------------------
# Rainbow tripartition


def _class_sizes(n: int) -> tuple[int, int, int]:
    return ((n + 0) // 3, (n + 1) // 3, (n + 2) // 3)


def _rainbow_score(colors: list[int | None], tri: tuple[int, int, int],
                   caps: list[int], m: int, d1: int, d2: int) -> int:
    """Rainbow probability of one triangle, scaled by m*max(m-1,1)*max(m-2,1).

    m is the number of unassigned vertices and caps the remaining class
    capacities; the scaling makes scores exact integers comparable across
    the candidate colors of a single greedy step.
    """
    got = [colors[v] for v in tri]
    missing = [c for c in (1, 2, 3) if c not in got]
    unassigned = sum(1 for g in got if g is None)
    if unassigned == 0:
        return m * d1 * d2 if len(set(got)) == 3 else 0
    if len(set(g for g in got if g is not None)) != 3 - unassigned:
        return 0  # two assigned vertices share a color: never rainbow
    if unassigned == 1:
        return caps[missing[0] - 1] * d1 * d2
    if unassigned == 2:
        a, b = missing
        return 2 * caps[a - 1] * caps[b - 1] * d2
    return 6 * caps[0] * caps[1] * caps[2]


def rainbow_tripartition(g: Graph) -> Tripartition:
    """Partition vertices into classes of sizes floor((n+i-1)/3) so that at
    least 2/9 of all triangles get one vertex per class.

    Derandomization of the uniform random exact-size partition by
    conditional expectations: a triangle is rainbow with probability
    6*n1*n2*n3 / (n(n-1)(n-2)) >= 2/9, and each greedy assignment keeps
    the conditional mean from dropping.  Scores are exact integers, the
    final comparison is exact, and a violation (which would indicate a
    bug) raises DerandomizationAlarm.
    """
    n = g.n
    if n < 3:
        raise ValueError(f"tripartition needs n >= 3, got {n}")
    sizes = _class_sizes(n)
    caps = list(sizes)
    triangles = triangle_list(g)
    pending = list(triangles)
    colors: list[int | None] = [None] * n
    for vertex in range(n):
        m_after = n - vertex - 1
        d1, d2 = max(m_after - 1, 1), max(m_after - 2, 1)
        best_color, best_score = -1, -1
        for c in (1, 2, 3):
            if caps[c - 1] == 0:
                continue
            colors[vertex] = c
            caps[c - 1] -= 1
            score = sum(
                _rainbow_score(colors, tri, caps, m_after, d1, d2) for tri in pending
            )
            caps[c - 1] += 1
            if best_color == -1 or score > best_score:
                best_color, best_score = c, score
        colors[vertex] = best_color
        caps[best_color - 1] -= 1
        pending = [t for t in pending if any(colors[v] is None for v in t)]
    rainbow = sum(
        1 for a, b, c in triangles if {colors[a], colors[b], colors[c]} == {1, 2, 3}
    )
    if 9 * rainbow < 2 * len(triangles):
        raise DerandomizationAlarm(
            f"tripartition captured {rainbow} of {len(triangles)} triangles"
        )
    classes = {v: colors[v] for v in range(n)}
    got_sizes = tuple(sum(1 for c in classes.values() if c == i) for i in (1, 2, 3))
    if got_sizes != sizes:
        raise DerandomizationAlarm(f"class sizes {got_sizes} differ from {sizes}")
    return Tripartition(classes, rainbow)


def check_triangle_lemma(g: Graph, length: int) -> bool:
    """Exact check of 3*t(G) <= (length - 3)*e(G) for a C_length-free graph.

    Raises ValueError when g actually contains a cycle of that length;
    returns True otherwise (False would flag a bug, since the inequality
    is a theorem for such graphs).
    """
    if find_cycle(g, length) is not None:
        raise ValueError(f"graph contains a cycle of length {length}")
    return Fraction(3) * len(triangle_list(g)) <= Fraction(length - 3) * g.edge_count

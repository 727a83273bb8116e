"""Exact structure detectors with verifiable witnesses.

Each detector is a complete search at desk scale: a returned witness
always validates against its host, and None means the structure is
absent, not merely undiscovered.  All searches visit vertices and edges
in ascending canonical order, so the returned witness is deterministic.

Cycle search runs a DFS over simple paths anchored at the smallest
vertex of the sought cycle, pruned by BFS distance back to the anchor.
Berge-cycle search backtracks over the core vertex sequence while
keeping a system of distinct representatives for the consecutive pairs
via incremental bipartite matching; a partial core is abandoned as soon
as its pairs admit no matching into distinct hyperedges (the Hall
condition fails).
"""

from __future__ import annotations

from dataclasses import dataclass

from .core import (
    BergeCycleWitness,
    BipartiteGraph,
    Graph,
    TripleSystem,
    bits,
    pair_key,
    popcount,
    shadow_pairs,
)

__all__ = [
    "ForbiddenSpec",
    "ThetaWitness",
    "SPEC_KINDS",
    "cycles",
    "count_cycles",
    "find_cycle",
    "find_path",
    "find_path_dp",
    "find_theta_at_least",
    "find_berge_cycle",
    "is_free",
]

_INF = 10 ** 9

SPEC_KINDS = (
    "exact-cycle",
    "all-cycles-up-to",
    "path-on-k",
    "theta-at-least",
    "berge-cycle",
    "berge-cycles-up-to",
)

_HYPER_KINDS = frozenset({"berge-cycle", "berge-cycles-up-to"})


@dataclass(frozen=True)
class ForbiddenSpec:
    """A forbidden-substructure request: kind plus its size parameter."""

    kind: str
    parameter: int

    def __post_init__(self):
        if self.kind not in SPEC_KINDS:
            raise ValueError(f"unknown forbidden kind {self.kind!r}")
        if self.kind == "path-on-k":
            low = 2
        elif self.kind == "theta-at-least":
            low = 4
        else:
            low = 3
        if self.parameter < low:
            raise ValueError(f"{self.kind} needs parameter >= {low}, got {self.parameter}")

    @property
    def hyper(self) -> bool:
        """True when the spec applies to triple systems rather than graphs."""
        return self.kind in _HYPER_KINDS


@dataclass(frozen=True)
class ThetaWitness:
    """A cycle together with a chord joining two non-consecutive cycle vertices."""

    cycle: tuple[int, ...]
    chord: tuple[int, int]

    @property
    def order(self) -> int:
        return len(self.cycle)

    def validate(self, host: Graph) -> None:
        """Raise ValueError unless this is a theta subgraph of host."""
        k = len(self.cycle)
        if k < 4:
            raise ValueError("theta cycle needs at least 4 vertices")
        if len(set(self.cycle)) != k:
            raise ValueError("cycle vertices must be distinct")
        for i in range(k):
            u, v = self.cycle[i], self.cycle[(i + 1) % k]
            if not host.has_edge(u, v):
                raise ValueError(f"cycle edge ({u},{v}) missing from host")
        a, b = self.chord
        if not host.has_edge(a, b):
            raise ValueError(f"chord ({a},{b}) missing from host")
        ia, ib = self.cycle.index(a), self.cycle.index(b)
        gap = abs(ia - ib)
        if gap in (1, k - 1) or gap == 0:
            raise ValueError("chord endpoints must be non-consecutive on the cycle")


def _bfs_dist(adj, src: int, allowed: int) -> list[int]:
    """BFS distances from src inside the vertex set `allowed` (a bitmask)."""
    dist = [_INF] * len(adj)
    dist[src] = 0
    frontier = 1 << src
    seen = frontier
    d = 0
    while frontier:
        reach = 0
        for v in bits(frontier):
            reach |= adj[v]
        reach &= allowed & ~seen
        d += 1
        for v in bits(reach):
            dist[v] = d
        seen |= reach
        frontier = reach
    return dist


def cycles(g: Graph, length: int):
    """Iterate over all cycles of exactly `length` vertices, each once.

    Canonical form: the tuple starts at the smallest cycle vertex and its
    second entry is smaller than its last, fixing the orientation.
    """
    if length < 3:
        raise ValueError(f"cycle length must be >= 3, got {length}")
    return _cycles_iter(g, length)


def _cycles_iter(g: Graph, length: int):
    if length > g.n:
        return
    adj = g.adj
    full = (1 << g.n) - 1
    for s in range(g.n):
        if not adj[s]:
            continue
        allowed = full & ~((1 << s) - 1)  # s and everything above it
        dist = _bfs_dist(adj, s, allowed)
        path = [s]

        def extend(v: int, used: int):
            depth = len(path)
            if depth == length:
                if (adj[v] >> s) & 1 and path[1] < path[-1]:
                    yield tuple(path)
                return
            cand = adj[v] & allowed & ~used
            for w in bits(cand):
                if dist[w] <= length - depth:
                    path.append(w)
                    yield from extend(w, used | (1 << w))
                    path.pop()

        yield from extend(s, 1 << s)


def find_cycle(g: Graph, length: int) -> tuple[int, ...] | None:
    """First cycle of exactly `length` vertices in canonical order, if any."""
    return next(cycles(g, length), None)


def count_cycles(g: Graph, length: int) -> int:
    """Number of distinct cycles of exactly `length` vertices."""
    return sum(1 for _ in cycles(g, length))


def _component_masks(g: Graph) -> list[int]:
    masks = []
    seen = 0
    for s in range(g.n):
        if (seen >> s) & 1:
            continue
        comp = 1 << s
        frontier = comp
        while frontier:
            reach = 0
            for v in bits(frontier):
                reach |= g.adj[v]
            frontier = reach & ~comp
            comp |= frontier
        masks.append(comp)
        seen |= comp
    return masks


def find_path(g: Graph, k: int) -> tuple[int, ...] | None:
    """A simple path on exactly k vertices, or None.

    A path on more vertices contains one on k, so this is equivalent to
    asking for a path on at least k vertices.  DFS over simple paths with
    component-size pruning; exact but exponential in the worst case,
    which is fine at desk scale.
    """
    if k < 2:
        raise ValueError(f"path needs at least 2 vertices, got k={k}")
    if k > g.n:
        return None
    big_enough = 0
    for comp in _component_masks(g):
        if popcount(comp) >= k:
            big_enough |= comp
    if not big_enough:
        return None
    path: list[int] = []

    def extend(v: int, used: int) -> tuple[int, ...] | None:
        if len(path) == k:
            return tuple(path)
        for w in bits(g.adj[v] & ~used):
            path.append(w)
            got = extend(w, used | (1 << w))
            if got:
                return got
            path.pop()
        return None

    for s in range(g.n):
        if not (big_enough >> s) & 1:
            continue
        path.append(s)
        got = extend(s, 1 << s)
        if got:
            return got
        path.pop()
    return None


def find_path_dp(g: Graph, k: int) -> tuple[int, ...] | None:
    """Subset-DP path finder: level[size][mask] = endpoint bitmask.

    Exact alternative to find_path for cross-checking; limited to n <= 24
    (state space is the family of path vertex sets).
    """
    if k < 2:
        raise ValueError(f"path needs at least 2 vertices, got k={k}")
    if g.n > 24:
        raise ValueError("subset-DP path search is limited to n <= 24")
    if k > g.n:
        return None
    levels: list[dict[int, int]] = [{}, {1 << v: 1 << v for v in range(g.n)}]
    for size in range(2, k + 1):
        nxt: dict[int, int] = {}
        for mask, ends in levels[size - 1].items():
            for e in bits(ends):
                for w in bits(g.adj[e] & ~mask):
                    key = mask | (1 << w)
                    nxt[key] = nxt.get(key, 0) | (1 << w)
        if not nxt:
            return None
        levels.append(nxt)
    mask = min(levels[k])
    end = next(bits(levels[k][mask]))
    rev = [end]
    for size in range(k, 1, -1):
        prev_mask = mask & ~(1 << rev[-1])
        prev_ends = levels[size - 1][prev_mask] & g.adj[rev[-1]]
        rev.append(next(bits(prev_ends)))
        mask = prev_mask
    return tuple(reversed(rev))


def _first_chord(g: Graph, cycle: tuple[int, ...]) -> tuple[int, int] | None:
    k = len(cycle)
    for i in range(k):
        for j in range(i + 2, k):
            if i == 0 and j == k - 1:
                continue
            if g.has_edge(cycle[i], cycle[j]):
                return pair_key(cycle[i], cycle[j])
    return None


def find_theta_at_least(g: Graph, lmin: int) -> ThetaWitness | None:
    """A cycle of length >= lmin carrying a chord, or None.

    Cycle lengths are scanned in ascending order and each cycle is scanned
    for a chord; hosts are tiny, so plain enumeration is the trusted path.
    """
    if lmin < 4:
        raise ValueError(f"theta order must be >= 4, got {lmin}")
    for length in range(max(lmin, 4), g.n + 1):
        for cyc in cycles(g, length):
            chord = _first_chord(g, cyc)
            if chord is not None:
                return ThetaWitness(cyc, chord)
    return None


# ---------------------------------------------------------------------------
# Berge cycles


def _augment(pos: int, cands: list[list[int]], owner: dict[int, int],
             assign: list[int | None], visited: set[int]) -> bool:
    """Kuhn augmenting step: try to give pair `pos` its own hyperedge."""
    for e in cands[pos]:
        if e in visited:
            continue
        visited.add(e)
        holder = owner.get(e)
        if holder is None or _augment(holder, cands, owner, assign, visited):
            owner[e] = pos
            assign[pos] = e
            return True
    return False


def _berge_search(n: int, pair_edges: dict[tuple[int, int], list[int]],
                  sadj: list[int], length: int,
                  starts: list[tuple[int, int]] | None = None,
                  ) -> tuple[tuple[int, ...], tuple[int, ...]] | None:
    """Core Berge-cycle backtracking shared by detector and search pruning.

    Without `starts`, enumerates anchored canonical cores (v0 minimal,
    second entry smaller than last).  With `starts`, tries exactly the
    given (v0, v1) openings with no canonical restriction; used by the
    incremental search to look for cycles through a fresh hyperedge.
    """
    full = (1 << n) - 1

    def attempt(v0: int, v1: int, allowed: int, canonical: bool):
        first = pair_edges.get(pair_key(v0, v1))
        if not first:
            return None
        dist = _bfs_dist(sadj, v0, allowed | (1 << v0))
        cands: list[list[int]] = [first]
        owner: dict[int, int] = {}
        assign: list[int | None] = [None]
        if not _augment(0, cands, owner, assign, set()):
            return None
        core = [v0, v1]

        def dfs(used: int):
            depth = len(core)
            v = core[-1]
            if depth == length:
                closing = pair_edges.get(pair_key(v, v0))
                if not closing:
                    return None
                cands.append(closing)
                saved_owner = dict(owner)
                saved_assign = list(assign)
                assign.append(None)
                if _augment(length - 1, cands, owner, assign, set()):
                    result = (tuple(core), tuple(assign))  # type: ignore[arg-type]
                    owner.clear()
                    owner.update(saved_owner)
                    assign[:] = saved_assign
                    cands.pop()
                    return result
                owner.clear()
                owner.update(saved_owner)
                assign[:] = saved_assign
                cands.pop()
                return None
            for w in bits(sadj[v] & allowed & ~used):
                if dist[w] > length - depth:
                    continue
                if canonical and depth == length - 1 and w <= core[1]:
                    continue
                cands.append(pair_edges[pair_key(v, w)])
                saved_owner = dict(owner)
                saved_assign = list(assign)
                assign.append(None)
                if _augment(depth - 1, cands, owner, assign, set()):
                    core.append(w)
                    got = dfs(used | (1 << w))
                    if got:
                        return got
                    core.pop()
                owner.clear()
                owner.update(saved_owner)
                assign[:] = saved_assign
                cands.pop()
            return None

        return dfs((1 << v0) | (1 << v1))

    if starts is not None:
        for v0, v1 in starts:
            got = attempt(v0, v1, full, canonical=False)
            if got:
                return got
        return None

    for v0 in range(n):
        higher = full & ~((1 << v0) - 1)
        for v1 in bits(sadj[v0] & higher & ~(1 << v0)):
            got = attempt(v0, v1, higher, canonical=True)
            if got:
                return got
    return None


def _pair_edge_lists(h: TripleSystem) -> tuple[dict[tuple[int, int], list[int]], list[int]]:
    pair_edges: dict[tuple[int, int], list[int]] = {}
    sadj = [0] * h.n
    for i, (a, b, c) in enumerate(h.edges):
        for u, v in ((a, b), (a, c), (b, c)):
            pair_edges.setdefault((u, v), []).append(i)
            sadj[u] |= 1 << v
            sadj[v] |= 1 << u
    return pair_edges, sadj


def find_berge_cycle(h: TripleSystem, length: int) -> BergeCycleWitness | None:
    """A Berge cycle of exactly `length` distinct hyperedges, or None.

    Length 2 means two hyperedges sharing a vertex pair, the degenerate
    case admitted by the formal definition; lengths below 3 are rejected
    by ForbiddenSpec and the CLI but accepted here.
    """
    if length < 2:
        raise ValueError(f"Berge cycle length must be >= 2, got {length}")
    if h.edge_count < length:
        return None
    if length == 2:
        deg = shadow_pairs(h)
        for (u, v), c in sorted(deg.items()):
            if c >= 2:
                idxs = [i for i, e in enumerate(h.edges) if u in e and v in e]
                return BergeCycleWitness((u, v), tuple(idxs[:2]))
        return None
    pair_edges, sadj = _pair_edge_lists(h)
    got = _berge_search(h.n, pair_edges, sadj, length)
    if got is None:
        return None
    core, hyperedges = got
    witness = BergeCycleWitness(core, hyperedges)
    witness.validate(h)
    return witness


# ---------------------------------------------------------------------------
# Dispatch


def is_free(obj, spec: ForbiddenSpec) -> bool:
    """True iff obj contains no witness for the forbidden spec.

    Graph kinds accept Graph or BipartiteGraph hosts; Berge kinds require
    a TripleSystem.  Families ("...-up-to" kinds) check every length from
    3 up to the parameter.
    """
    if spec.hyper:
        if not isinstance(obj, TripleSystem):
            raise TypeError(f"{spec.kind} needs a TripleSystem host, got {type(obj).__name__}")
        if spec.kind == "berge-cycle":
            return find_berge_cycle(obj, spec.parameter) is None
        return all(
            find_berge_cycle(obj, length) is None
            for length in range(3, spec.parameter + 1)
        )
    if isinstance(obj, BipartiteGraph):
        g = obj.to_graph()
    elif isinstance(obj, Graph):
        g = obj
    else:
        raise TypeError(f"{spec.kind} needs a graph host, got {type(obj).__name__}")
    if spec.kind == "exact-cycle":
        return find_cycle(g, spec.parameter) is None
    if spec.kind == "all-cycles-up-to":
        return all(find_cycle(g, length) is None for length in range(3, spec.parameter + 1))
    if spec.kind == "path-on-k":
        return find_path(g, spec.parameter) is None
    return find_theta_at_least(g, spec.parameter) is None

"""Finite graph containers, degree/edge accounting, and cycle detection.

Graphs are loop-aware but loops live in a separate set: degrees, edge
counts and cycle searches all exclude them, which is the convention the
construction arithmetic needs.  ImplicitGraph wraps an on-the-fly neighbor
rule for instances too large to materialize.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field


class Graph:
    """Explicit undirected graph on vertices 0..n-1 with sorted adjacency.

    Adjacency must be symmetric and duplicate-free; loops are kept in
    their own set and never appear in adjacency lists.
    """

    def __init__(self, n, adjacency, loops=()):
        if len(adjacency) != n:
            raise ValueError("adjacency length != n")
        self.n = n
        self.adj = [sorted(neigh) for neigh in adjacency]
        self.loops = frozenset(loops)
        for v, neigh in enumerate(self.adj):
            if len(set(neigh)) != len(neigh):
                raise ValueError(f"duplicate neighbor at vertex {v}")
            if v in neigh:
                raise ValueError(f"loop {v} stored in adjacency")
        for v in self.loops:
            if not 0 <= v < n:
                raise ValueError(f"loop vertex {v} out of range")
        self._m = sum(len(a) for a in self.adj)
        if self._m % 2 != 0:
            raise ValueError("adjacency is not symmetric (odd degree sum)")
        self._m //= 2

    @classmethod
    def from_edges(cls, n, edges, loops=()):
        adjacency = [set() for _ in range(n)]
        for u, v in edges:
            if u == v:
                raise ValueError("loops must be passed separately")
            adjacency[u].add(v)
            adjacency[v].add(u)
        return cls(n, adjacency, loops)

    def check_symmetric(self):
        adjsets = [set(a) for a in self.adj]
        for v, neigh in enumerate(self.adj):
            for u in neigh:
                if v not in adjsets[u]:
                    raise ValueError(f"asymmetric edge ({v}, {u})")

    def edges(self):
        for u, neigh in enumerate(self.adj):
            for v in neigh:
                if u < v:
                    yield (u, v)

    def has_edge(self, u, v):
        a = self.adj[u]
        lo, hi = 0, len(a)
        while lo < hi:
            mid = (lo + hi) // 2
            if a[mid] < v:
                lo = mid + 1
            else:
                hi = mid
        return lo < len(a) and a[lo] == v


def degree(g: Graph, v: int) -> int:
    """Degree of v, loops excluded."""
    if not 0 <= v < g.n:
        raise ValueError(f"vertex {v} out of range")
    return len(g.adj[v])


def edge_count(g: Graph) -> int:
    """Number of non-loop edges."""
    return g._m


def loop_count(g: Graph) -> int:
    return len(g.loops)


def degree_multiset(g: Graph) -> dict[int, int]:
    out = {}
    for a in g.adj:
        out[len(a)] = out.get(len(a), 0) + 1
    return out


# ---------------------------------------------------------------------------
# implicit graphs
# ---------------------------------------------------------------------------

class ImplicitGraph:
    """Graph given by a neighbor-enumeration rule instead of stored lists.

    neighbors(v) must yield each neighbor of v exactly once, never v
    itself, and be symmetric as a relation.  Vertices are ints 0..n-1.
    """

    def __init__(self, n, neighbors, is_loop=None):
        self.n = n
        self.neighbors = neighbors
        self.is_loop = is_loop or (lambda v: False)


def materialize(ig: ImplicitGraph, limit: int) -> Graph:
    """Expand an implicit graph, asserting symmetry along the way."""
    if ig.n > limit:
        raise ValueError(f"{ig.n} vertices exceed materialization ceiling {limit}")
    adjacency = []
    for v in range(ig.n):
        neigh = sorted(ig.neighbors(v))
        adjacency.append(neigh)
    loops = [v for v in range(ig.n) if ig.is_loop(v)]
    g = Graph(ig.n, adjacency, loops)
    g.check_symmetric()
    return g


# ---------------------------------------------------------------------------
# partitions
# ---------------------------------------------------------------------------

@dataclass
class Partition:
    """Assignment of every vertex to one of r classes (all nonempty)."""

    class_of: list[int]
    r: int

    def __post_init__(self):
        seen = [False] * self.r
        for v, c in enumerate(self.class_of):
            if not 0 <= c < self.r:
                raise ValueError(f"vertex {v} assigned to invalid class {c}")
            seen[c] = True
        if not all(seen):
            missing = seen.index(False)
            raise ValueError(f"class {missing} is empty")

    def class_sizes(self):
        sizes = [0] * self.r
        for c in self.class_of:
            sizes[c] += 1
        return sizes


@dataclass
class PairEdgeMatrix:
    """Edge counts of a partitioned graph: between classes, within, loops."""

    r: int
    cross: list[list[int]]
    within: list[int]
    loops_within: list[int]

    def total_cross(self):
        return sum(self.cross[i][j] for i in range(self.r) for j in range(i + 1, self.r))

    def total_within(self):
        return sum(self.within)


def pair_edge_matrix(g: Graph, part: Partition) -> PairEdgeMatrix:
    """Single pass over the edges tallying cross/within/loop counts."""
    if len(part.class_of) != g.n:
        raise ValueError("partition does not cover the graph")
    r = part.r
    cls = part.class_of
    cross = [[0] * r for _ in range(r)]
    within = [0] * r
    for u, v in g.edges():
        cu, cv = cls[u], cls[v]
        if cu == cv:
            within[cu] += 1
        else:
            cross[cu][cv] += 1
            cross[cv][cu] += 1
    loops_within = [0] * r
    for v in g.loops:
        loops_within[cls[v]] += 1
    m = PairEdgeMatrix(r, cross, within, loops_within)
    assert m.total_cross() + m.total_within() == edge_count(g)
    return m


# ---------------------------------------------------------------------------
# cycles
# ---------------------------------------------------------------------------

def contains_C4(g: Graph):
    """4-cycle witness via common-neighbor counting, or None.

    A C4 exists iff some vertex pair has two common neighbors; scanning
    the length-2 paths through every middle vertex finds it.
    """
    seen = {}
    for mid in range(g.n):
        neigh = g.adj[mid]
        for i in range(len(neigh)):
            for j in range(i + 1, len(neigh)):
                pair = (neigh[i], neigh[j])
                other = seen.get(pair)
                if other is not None and other != mid:
                    return (pair[0], other, pair[1], mid)
                seen[pair] = mid
    return None


def find_even_cycle(g: Graph, k: int):
    """Witness cycle of length exactly 2k, or None.

    Meets in the middle: a 2k-cycle is two internally disjoint length-k
    paths between an antipodal vertex pair, so all simple length-k paths
    from each root are enumerated and grouped by endpoint.  Deterministic:
    roots ascend and neighbor lists are sorted, so the witness is stable.
    """
    if k < 2:
        raise ValueError("cycle length below 4")
    adj = g.adj
    for root in range(g.n):
        by_end = {}
        # iterative DFS over simple paths of length k starting at root
        stack = [(root, (root,))]
        while stack:
            v, path = stack.pop()
            if len(path) == k + 1:
                inner = path[1:-1]
                bucket = by_end.setdefault(v, [])
                for other in bucket:
                    if not set(inner) & set(other):
                        # other was recorded reversed-ready: both run root -> v
                        return path + tuple(reversed(other))
                bucket.append(inner)
                continue
            for u in reversed(adj[v]):
                if u not in path:
                    stack.append((u, path + (u,)))
    return None


def even_cycle_free_upto(g: Graph, kmax: int):
    """Shortest even-cycle witness of length <= 2*kmax, or None (exact)."""
    if kmax not in (2, 3, 4, 5):
        raise ValueError("kmax must be in 2..5")
    for k in range(2, kmax + 1):
        w = find_even_cycle(g, k)
        if w is not None:
            return w
    return None


def girth(g: Graph):
    """Length of the shortest cycle (loops excluded); math.inf for forests.

    BFS from every vertex; the first non-tree edge seen from root v closes
    a shortest cycle through v, and the minimum over roots is exact.
    """
    best = math.inf
    adj = g.adj
    for root in range(g.n):
        dist = {root: 0}
        parent = {root: -1}
        frontier = [root]
        while frontier:
            nxt = []
            stop = False
            for v in frontier:
                dv = dist[v]
                if 2 * dv + 1 >= best:
                    stop = True
                    break
                for u in adj[v]:
                    if u not in dist:
                        dist[u] = dv + 1
                        parent[u] = v
                        nxt.append(u)
                    elif u != parent[v] and dist[u] >= dv:
                        cand = dv + dist[u] + 1
                        if cand < best:
                            best = cand
            if stop:
                break
            frontier = nxt
    return best


# ---------------------------------------------------------------------------
# text formats
# ---------------------------------------------------------------------------

def write_edge_list(g: Graph) -> str:
    """Plain-text edge list: `n m loops`, then `u v` (u < v), then `L v`."""
    lines = [f"{g.n} {edge_count(g)} {loop_count(g)}"]
    for u, v in g.edges():
        lines.append(f"{u} {v}")
    for v in sorted(g.loops):
        lines.append(f"L {v}")
    return "\n".join(lines) + "\n"


def read_edge_list(text: str) -> Graph:
    lines = [ln for ln in text.splitlines() if ln.strip()]
    n, m, nloops = map(int, lines[0].split())
    edges = []
    loops = []
    for ln in lines[1:]:
        parts = ln.split()
        if parts[0] == "L":
            loops.append(int(parts[1]))
        else:
            edges.append((int(parts[0]), int(parts[1])))
    if len(edges) != m or len(loops) != nloops:
        raise ValueError("edge list header does not match body")
    return Graph.from_edges(n, edges, loops)


def write_partition(part: Partition) -> str:
    """One `vertex class` pair per line, vertices ascending."""
    lines = [f"{v} {c}" for v, c in enumerate(part.class_of)]
    return "\n".join(lines) + "\n"


def read_partition(text: str) -> Partition:
    pairs = {}
    for ln in text.splitlines():
        if ln.strip():
            v, c = map(int, ln.split())
            pairs[v] = c
    class_of = [pairs[v] for v in range(len(pairs))]
    return Partition(class_of, max(class_of) + 1)

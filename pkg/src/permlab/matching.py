"""Reduction from layered permutation graphs to bipartite matching instances.

Both sides copy the graph's vertex set; m/2 extra terminals per side attach to
the first half of the sources and sinks. A canonical matching pairs every
vertex with its own copy; augmenting paths of that matching correspond to
source-to-sink paths among the first m/2 positions. Hiding the identity gives
a perfect matching of n + m/2; hiding the cross permutation pins the maximum
at exactly n.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from collections import deque

from .gen import GenParams, gen_general, vertex_count
from .graphs import LayeredGraph
from .perms import Perm, identity


def sigma_eq(m: int) -> Perm:
    return identity(m)


def sigma_cross(m: int) -> Perm:
    """First half onto the second half and back: i <-> i + m/2."""
    if m % 2:
        raise ValueError("m must be even")
    half = m // 2
    return tuple(list(range(half + 1, m + 1)) + list(range(1, half + 1)))


@dataclass
class BipartiteInstance:
    n: int                      # graph vertices copied to each side
    half: int                   # extra terminals per side (m/2)
    adj: list[list[int]]        # left index -> right indices, 0-based
    canonical: list[tuple[int, int]]  # the n (v_left, v_right) copy pairs

    @property
    def side(self) -> int:
        return self.n + self.half

    @property
    def edge_count(self) -> int:
        return sum(len(a) for a in self.adj)


def bipartite_of(g: LayeredGraph, m: int) -> BipartiteInstance:
    if m % 2:
        raise ValueError("m must be even")
    half = m // 2
    if g.first_size() < half or g.last_size() < half:
        raise ValueError("boundary layers smaller than m/2")
    offsets = [0]
    for size in g.layers[:-1]:
        offsets.append(offsets[-1] + size)
    n = sum(g.layers)
    adj: list[list[int]] = [[] for _ in range(n + half)]
    for li, u, v in g.edges:
        adj[offsets[li - 1] + u - 1].append(offsets[li] + v - 1)
    for v in range(n):
        adj[v].append(v)  # canonical copy edge
    last_off = offsets[-1]
    for i in range(half):
        adj[n + i].append(i)                 # terminal to source copy
        adj[last_off + i].append(n + i)      # sink copy to terminal
    return BipartiteInstance(n, half, adj, [(v, v) for v in range(n)])


@dataclass
class MatchingResult:
    size: int
    match_left: list[int]    # left index -> right index or -1
    cover_left: list[int]
    cover_right: list[int]
    certified: bool


def max_matching(inst: BipartiteInstance, seed_canonical: bool = True) -> MatchingResult:
    """Exact maximum matching by shortest augmenting phases, certified by a
    minimum vertex cover of equal size read off the last search."""
    side = inst.side
    adj = inst.adj
    match_l = [-1] * side
    match_r = [-1] * side
    if seed_canonical:
        for l, r in inst.canonical:
            match_l[l] = r
            match_r[r] = l
    INF = side + 1
    dist = [INF] * side

    def bfs() -> bool:
        q = deque()
        for l in range(side):
            if match_l[l] == -1:
                dist[l] = 0
                q.append(l)
            else:
                dist[l] = INF
        found = False
        while q:
            l = q.popleft()
            for r in adj[l]:
                nxt = match_r[r]
                if nxt == -1:
                    found = True
                elif dist[nxt] == INF:
                    dist[nxt] = dist[l] + 1
                    q.append(nxt)
        return found

    def dfs(l: int) -> bool:
        for r in adj[l]:
            nxt = match_r[r]
            if nxt == -1 or (dist[nxt] == dist[l] + 1 and dfs(nxt)):
                match_l[l] = r
                match_r[r] = l
                return True
        dist[l] = INF
        return False

    import sys

    old_limit = sys.getrecursionlimit()
    sys.setrecursionlimit(max(old_limit, 2 * side + 100))
    try:
        while bfs():
            for l in range(side):
                if match_l[l] == -1:
                    dfs(l)
    finally:
        sys.setrecursionlimit(old_limit)

    size = sum(1 for l in range(side) if match_l[l] != -1)

    # Koenig cover from the final (augmenting-path-free) search: left vertices
    # unreached stay in the cover, reached right vertices join it.
    reach_l = [False] * side
    reach_r = [False] * side
    q = deque()
    for l in range(side):
        if match_l[l] == -1:
            reach_l[l] = True
            q.append(l)
    while q:
        l = q.popleft()
        for r in adj[l]:
            if not reach_r[r]:
                reach_r[r] = True
                nxt = match_r[r]
                if nxt != -1 and not reach_l[nxt]:
                    reach_l[nxt] = True
                    q.append(nxt)
    cover_left = [l for l in range(side) if not reach_l[l]]
    cover_right = [r for r in range(side) if reach_r[r]]
    in_cl = set(cover_left)
    in_cr = set(cover_right)
    certified = len(cover_left) + len(cover_right) == size and all(
        l in in_cl or r in in_cr for l in range(side) for r in adj[l]
    )
    return MatchingResult(size, match_l, cover_left, cover_right, certified)


@dataclass
class DichotomyReport:
    m: int
    n: int
    trials: int
    sizes_eq: list[int]
    sizes_cross: list[int]
    expected_eq: int
    expected_cross: int
    eps_implied: float   # 1 - n/(n + m/2), the relative matching-size gap
    eps_quarter: float   # the m/(4n) parameterization
    holds: bool


def dichotomy_check(params: GenParams, trials: int, rng: random.Random) -> DichotomyReport:
    m = params.m
    n = vertex_count(params, general=True)
    sizes_eq = []
    sizes_cross = []
    for sigma, sizes in ((sigma_eq(m), sizes_eq), (sigma_cross(m), sizes_cross)):
        for _ in range(trials):
            g = gen_general(sigma, params, rng)
            res = max_matching(bipartite_of(g, m))
            if not res.certified:
                raise RuntimeError("matching certificate failed")
            sizes.append(res.size)
    expected_eq = n + m // 2
    expected_cross = n
    holds = all(s == expected_eq for s in sizes_eq) and all(
        s == expected_cross for s in sizes_cross
    )
    if not holds:
        raise RuntimeError(
            f"dichotomy violated: eq sizes {sorted(set(sizes_eq))}, "
            f"cross sizes {sorted(set(sizes_cross))}, expected {expected_eq}/{expected_cross}"
        )
    return DichotomyReport(
        m=m,
        n=n,
        trials=trials,
        sizes_eq=sizes_eq,
        sizes_cross=sizes_cross,
        expected_eq=expected_eq,
        expected_cross=expected_cross,
        eps_implied=1 - n / (n + m / 2),
        eps_quarter=m / (4 * n),
        holds=holds,
    )


def instance_to_stream(inst: BipartiteInstance):
    """Undirected edge stream; right vertices numbered after the left side."""
    from .streams import EdgeStream

    side = inst.side
    edges = []
    for l in range(side):
        for r in inst.adj[l]:
            edges.append((l + 1, side + r + 1))
    return EdgeStream(n=2 * side, directed=False, edges=edges, tags=None)

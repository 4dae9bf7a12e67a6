"""The RS-product gadgets: encoded graphs, edge picking, blocks, multi-blocks.

A block sandwiches an encoded RS graph between two group-routing gadgets
chosen by the picked edges, giving a 6-layer permutation graph whose action on
the first (r/2)*b positions is determined by one row of the hidden permutation
matrix. A multi-block chains k of them. The p-pass variants replace the two
routing gadgets (and nothing else) with recursively sampled hiding graphs.

Provenance: encoded layers carry the owning player's tag, routing gadgets and
anything sampled recursively carry "referee", junctions stay "fixed".
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Callable, Sequence

from .graphs import GroupLayeredGraph, LayeredGraph, concat_all, permute_groups
from .perms import Perm, PermVector, compose, match_aligned
from .rs import RSGraph

PermMatrix = tuple[tuple[Perm, ...], ...]  # t rows, r columns, entries in S_b


@dataclass(frozen=True)
class EdgeTuple:
    ell: int                 # matching index in [t]
    edges: tuple[int, ...]   # r/2 distinct edge indices in [r]

    def validate(self, grs: RSGraph) -> None:
        if not 1 <= self.ell <= grs.t:
            raise ValueError(f"matching index {self.ell} outside [1,{grs.t}]")
        if len(set(self.edges)) != len(self.edges):
            raise ValueError("picked edge indices must be distinct")
        if any(not 1 <= e <= grs.r for e in self.edges):
            raise ValueError(f"edge index outside [1,{grs.r}]")


def check_perm_matrix(sig: PermMatrix, t: int, r: int, b: int) -> None:
    if len(sig) != t or any(len(row) != r for row in sig):
        raise ValueError(f"permutation matrix must be {t}x{r}")
    if any(len(p) != b for row in sig for p in row):
        raise ValueError(f"matrix entries must act on [{b}]")


def random_perm_matrix(t: int, r: int, b: int, rng: random.Random) -> PermMatrix:
    from .perms import random_perm

    return tuple(tuple(random_perm(b, rng) for _ in range(r)) for _ in range(t))


def encoded_rs(grs: RSGraph, sig: PermMatrix, b: int) -> GroupLayeredGraph:
    """Two group layers over the RS vertex sets; RS edge j of matching i becomes
    the group edge (left, right) twisted by sigma_{i,j}."""
    check_perm_matrix(sig, grs.t, grs.r, b)
    tuples = []
    for i in range(1, grs.t + 1):
        for j in range(1, grs.r + 1):
            tuples.append((1, grs.left(i, j), grs.right(i, j), sig[i - 1][j - 1]))
    return GroupLayeredGraph(grs.n_rs, 2, b, tuples)


def edge_pick(grs: RSGraph, e: EdgeTuple) -> tuple[Perm, Perm]:
    """Routing permutations aligning picked edges with the leading groups:
    sigma_L(i) = left endpoint of the i-th picked edge, and sigma_R sends each
    picked right endpoint back to its index."""
    e.validate(grs)
    m_l = [(i, grs.left(e.ell, ej)) for i, ej in enumerate(e.edges, start=1)]
    m_r = [(grs.right(e.ell, ej), i) for i, ej in enumerate(e.edges, start=1)]
    return match_aligned(m_l, grs.n_rs), match_aligned(m_r, grs.n_rs)


def block_rho(grs: RSGraph, sig: PermMatrix, e: EdgeTuple, b: int) -> Perm:
    """Closed form of what a block realizes on m = (r/2)*b positions."""
    out = []
    for i, ej in enumerate(e.edges):
        p = sig[e.ell - 1][ej - 1]
        out.extend(i * b + p[a] for a in range(b))
    return tuple(out)


def block(
    grs: RSGraph,
    sig: PermMatrix,
    e: EdgeTuple,
    b: int,
    player_tag: str = "player:1",
) -> LayeredGraph:
    """Six layers of n_rs*b vertices realizing block_rho on the first (r/2)*b."""
    sl, sr = edge_pick(grs, e)
    enc = encoded_rs(grs, sig, b).expand(tag=player_tag)
    left = permute_groups(sl, b).expand(tag="referee")
    right = permute_groups(sr, b).expand(tag="referee")
    return concat_all([right, enc, left])


Hypermatching = tuple[tuple[int, ...], ...]  # k rows of r/2 distinct indices


def check_hypermatching(M: Hypermatching, k: int, r: int) -> None:
    if len(M) != k:
        raise ValueError(f"hypermatching must have {k} rows")
    for a, row in enumerate(M, start=1):
        if len(row) != r // 2:
            raise ValueError(f"row {a} must pick r/2 = {r // 2} edges")
        if len(set(row)) != len(row) or any(not 1 <= x <= r for x in row):
            raise ValueError(f"row {a} is not a set of distinct indices in [{r}]")


def multi_block(
    grs: RSGraph,
    sigs: Sequence[PermMatrix],
    L: Sequence[int],
    M: Hypermatching,
    b: int,
) -> LayeredGraph:
    """Chain of k blocks, the k-th traversed first; realizes the fold of the
    per-block permutations (= join of the hidden gamma-star vector)."""
    k = len(sigs)
    check_hypermatching(M, k, grs.r)
    blocks = [
        block(grs, sigs[a], EdgeTuple(L[a], tuple(M[a])), b, player_tag=f"player:{a + 1}")
        for a in range(k)
    ]
    return concat_all(blocks)


def multi_block_rho(
    grs: RSGraph, sigs: Sequence[PermMatrix], L: Sequence[int], M: Hypermatching, b: int
) -> Perm:
    out = None
    for a in range(len(sigs)):
        rho = block_rho(grs, sigs[a], EdgeTuple(L[a], tuple(M[a])), b)
        out = rho if out is None else compose(out, rho)
    return out


# ---------------------------------------------------------------------------
# p-pass variants. hide(sigma, rng) must return a sampled permutation graph
# for sigma (the recursion is injected by the caller to keep this module free
# of generator parameters).

HideFn = Callable[[Perm, random.Random], LayeredGraph]


def p_block_sample(
    grs: RSGraph,
    sig: PermMatrix,
    e: EdgeTuple,
    b: int,
    p: int,
    rng: random.Random,
    hide: HideFn | None = None,
    player_tag: str = "player:1",
) -> LayeredGraph:
    """Block whose two routing gadgets are hidden recursively when p >= 2."""
    from .perms import extend

    if p < 1:
        raise ValueError("p must be at least 1")
    if p == 1:
        return block(grs, sig, e, b, player_tag=player_tag)
    if hide is None:
        raise ValueError("p >= 2 needs a hide sampler")
    sl, sr = edge_pick(grs, e)
    enc = encoded_rs(grs, sig, b).expand(tag=player_tag)
    left = hide(extend(sl, b), rng)
    right = hide(extend(sr, b), rng)
    return concat_all([right, enc, left])


def p_multi_block_sample(
    grs: RSGraph,
    sigs: Sequence[PermMatrix],
    L: Sequence[int],
    M: Hypermatching,
    b: int,
    p: int,
    rng: random.Random,
    hide: HideFn | None = None,
) -> LayeredGraph:
    k = len(sigs)
    check_hypermatching(M, k, grs.r)
    parts = [
        p_block_sample(
            grs,
            sigs[a],
            EdgeTuple(L[a], tuple(M[a])),
            b,
            p,
            rng,
            hide,
            player_tag=f"player:{a + 1}",
        )
        for a in range(k)
    ]
    return concat_all(parts)

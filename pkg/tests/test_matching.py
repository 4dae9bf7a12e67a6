import random

import pytest

from permlab.gen import default_params, gen_general
from permlab.graphs import basic
from permlab.matching import (
    BipartiteInstance,
    bipartite_of,
    dichotomy_check,
    max_matching,
    sigma_cross,
    sigma_eq,
)
from permlab.perms import identity


def brute_max_matching(inst):
    # exhaustive search over left-vertex assignments, fine for tiny instances
    best = 0
    adj = inst.adj

    def go(i, used, count):
        nonlocal best
        best = max(best, count)
        if i == len(adj):
            return
        # upper bound prune
        if count + (len(adj) - i) <= best:
            return
        go(i + 1, used, count)
        for v in adj[i]:
            if v not in used:
                used.add(v)
                go(i + 1, used, count + 1)
                used.remove(v)

    go(0, set(), 0)
    return best


def test_sigma_helpers():
    assert sigma_eq(4) == (1, 2, 3, 4)
    assert sigma_cross(4) == (3, 4, 1, 2)
    assert sigma_cross(6) == (4, 5, 6, 1, 2, 3)
    with pytest.raises(ValueError):
        sigma_cross(5)


def test_hand_instance_identity():
    # two-layer identity graph on 2 wires: n=4 internal vertices, m=2
    g = basic(identity(2))
    inst = bipartite_of(g, 2)
    assert inst.n == 4 and inst.half == 1
    assert inst.side == 5
    assert inst.edge_count == len(g.edges) + inst.n + 2
    res = max_matching(inst)
    assert res.certified
    assert res.size == inst.n + 1  # identity realizes sigma_eq at m=2
    assert res.size == brute_max_matching(inst)


def test_hand_instance_cross():
    g = basic((2, 1))
    inst = bipartite_of(g, 2)
    res = max_matching(inst)
    assert res.certified
    assert res.size == inst.n  # the swap is sigma_cross at m=2
    assert res.size == brute_max_matching(inst)


def test_k33_direct():
    inst = BipartiteInstance(
        n=3, half=0, adj=[[0, 1, 2], [0, 1, 2], [0, 1, 2]], canonical=[]
    )
    res = max_matching(inst, seed_canonical=False)
    assert res.certified and res.size == 3


def test_augmenting_needed():
    # greedy-style seeding can trap; HK must still reach the optimum
    inst = BipartiteInstance(
        n=4, half=0,
        adj=[[0, 1], [0], [1, 2], [2, 3]],
        canonical=[],
    )
    res = max_matching(inst, seed_canonical=False)
    assert res.certified and res.size == 4
    assert res.size == brute_max_matching(inst)


def test_cover_certifies_random_instances():
    rng = random.Random(0)
    for _ in range(50):
        side = rng.randrange(2, 9)
        adj = [
            sorted(rng.sample(range(side), rng.randrange(0, side)))
            for _ in range(side)
        ]
        inst = BipartiteInstance(n=side, half=0, adj=adj, canonical=[])
        res = max_matching(inst, seed_canonical=False)
        assert res.certified
        assert res.size == brute_max_matching(inst)


def test_generated_instances_match_oracle():
    params = default_params(4, 2, k=1, p=1)
    rng = random.Random(1)
    for sigma in (sigma_eq(4), sigma_cross(4)):
        g = gen_general(sigma, params, rng)
        inst = bipartite_of(g, 4)
        res = max_matching(inst)
        assert res.certified
        want = inst.n + 2 if sigma == sigma_eq(4) else inst.n
        assert res.size == want


def test_dichotomy_small():
    params = default_params(4, 2, k=2, p=1)
    rep = dichotomy_check(params, trials=3, rng=random.Random(2))
    assert rep.holds
    assert rep.n == 344
    assert rep.expected_eq == 346 and rep.expected_cross == 344
    assert set(rep.sizes_eq) == {346} and set(rep.sizes_cross) == {344}
    assert rep.eps_implied == pytest.approx(1 - 344 / 346)
    assert rep.eps_quarter == pytest.approx(4 / (4 * 344))


def test_matching_is_valid_matching():
    g = basic(identity(4))
    inst = bipartite_of(g, 4)
    res = max_matching(inst)
    rights = [v for v in res.match_left if v != -1]
    assert len(rights) == len(set(rights))
    for u, v in enumerate(res.match_left):
        if v != -1:
            assert v in inst.adj[u]

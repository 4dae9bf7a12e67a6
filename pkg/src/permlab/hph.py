"""The hidden-permutation communication game: sampling and the referee oracle.

k players each hold a t x r matrix of permutations on [b]. The referee holds a
row index per player, a hypermatching M (k rows of r/2 distinct column
indices), and a shift vector Gamma. Hyperedge a determines the hidden
composition gamma_star_a; the instance is built so that gamma_star_a o Gamma_a
hits the target tuple selected by the stored yes/no answer.
"""

from __future__ import annotations

import json
import math
import random
from dataclasses import dataclass
from itertools import product

from .blocks import Hypermatching, PermMatrix, check_hypermatching, check_perm_matrix, random_perm_matrix
from .perms import (
    PermVector,
    all_perms,
    compose,
    inverse,
    lehmer_rank,
    lehmer_unrank,
)

Targets = tuple[PermVector, PermVector]  # (yes tuple, no tuple), each length r/2


@dataclass(frozen=True)
class MultiHPHInstance:
    r: int
    t: int
    b: int
    k: int
    sigmas: tuple[PermMatrix, ...]   # one matrix per player
    L: tuple[int, ...]               # row index per player, in [t]
    M: Hypermatching
    gamma: PermVector                # referee shift, length r/2
    targets: Targets
    answer: str                      # "yes" or "no"
    seed: int | None = None


def sample_core(
    r: int, t: int, b: int, k: int, rng: random.Random
) -> tuple[tuple[PermMatrix, ...], tuple[int, ...], Hypermatching]:
    """Player matrices, row indices, and hypermatching, all uniform.

    Draw order is fixed (matrices, then rows, then matching) so that seeded
    samples line up across callers.
    """
    if r % 2:
        raise ValueError("r must be even")
    sigmas = tuple(random_perm_matrix(t, r, b, rng) for _ in range(k))
    L = tuple(rng.randrange(1, t + 1) for _ in range(k))
    M = tuple(tuple(rng.sample(range(1, r + 1), r // 2)) for _ in range(k))
    return sigmas, L, M


def recompute_gamma_star(
    sigmas: tuple[PermMatrix, ...], L: tuple[int, ...], M: Hypermatching
) -> PermVector:
    """gamma_star_a = sigma^(1)[L1][M[1][a]] o ... o sigma^(k)[Lk][M[k][a]]."""
    k = len(sigmas)
    half = len(M[0])
    out = []
    for a in range(half):
        g = sigmas[0][L[0] - 1][M[0][a] - 1]
        for i in range(1, k):
            g = compose(g, sigmas[i][L[i] - 1][M[i][a] - 1])
        out.append(g)
    return tuple(out)


def force_gamma(gamma_star: PermVector, target: PermVector) -> PermVector:
    """The unique shift with gamma_star_a o Gamma_a = target_a for every a."""
    return tuple(compose(inverse(g), t) for g, t in zip(gamma_star, target))


def sample_instance(
    r: int,
    t: int,
    b: int,
    k: int,
    targets: Targets,
    rng: random.Random,
    seed: int | None = None,
) -> MultiHPHInstance:
    if len(targets[0]) != r // 2 or len(targets[1]) != r // 2:
        raise ValueError("targets must hold r/2 permutations each")
    sigmas, L, M = sample_core(r, t, b, k, rng)
    answer = "yes" if rng.randrange(2) == 0 else "no"
    gstar = recompute_gamma_star(sigmas, L, M)
    gamma = force_gamma(gstar, targets[0] if answer == "yes" else targets[1])
    return MultiHPHInstance(r, t, b, k, sigmas, L, M, gamma, targets, answer, seed)


def referee_answer(inst: MultiHPHInstance) -> str:
    """Recompute the hidden composition with full information and compare."""
    gstar = recompute_gamma_star(inst.sigmas, inst.L, inst.M)
    shifted = tuple(compose(g, c) for g, c in zip(gstar, inst.gamma))
    hit_yes = shifted == tuple(inst.targets[0])
    hit_no = shifted == tuple(inst.targets[1])
    if hit_yes and hit_no:
        return "ambiguous"
    if hit_yes:
        return "yes"
    if hit_no:
        return "no"
    raise ValueError("shifted composition matches neither target (corrupt instance)")


def zero_info_guess(inst: MultiHPHInstance, rng: random.Random, cap: int = 10**6) -> str:
    """Best guess from (L, M, Gamma, targets) alone, Sigma unseen.

    Enumerates the relevant matrix cells per hyperedge (they are independent
    and uniform) to count assignments consistent with each answer, then picks
    the larger posterior, flipping a coin on ties.
    """
    b, k = inst.b, inst.k
    half = len(inst.gamma)
    perms = all_perms(b)
    if len(perms) ** k * half > cap:
        raise ValueError("enumeration over the relevant cells exceeds the cap")
    log_yes = 0.0
    log_no = 0.0
    for a in range(half):
        need_yes = compose(inst.targets[0][a], inverse(inst.gamma[a]))
        need_no = compose(inst.targets[1][a], inverse(inst.gamma[a]))
        c_yes = c_no = 0
        for combo in product(perms, repeat=k):
            g = combo[0]
            for x in combo[1:]:
                g = compose(g, x)
            if g == need_yes:
                c_yes += 1
            if g == need_no:
                c_no += 1
        if c_yes == 0 or c_no == 0:
            return "yes" if c_yes else "no"
        log_yes += math.log(c_yes)
        log_no += math.log(c_no)
    if abs(log_yes - log_no) < 1e-12:
        return "yes" if rng.randrange(2) == 0 else "no"
    return "yes" if log_yes > log_no else "no"


# ---------------------------------------------------------------------------
# serialization: permutations stored as Lehmer ranks

SCHEMA = "multi-hph-1"


def dump_instance(inst: MultiHPHInstance) -> str:
    def rank_vec(v):
        return [lehmer_rank(p) for p in v]

    payload = {
        "schema": SCHEMA,
        "r": inst.r,
        "t": inst.t,
        "b": inst.b,
        "k": inst.k,
        "sigmas": [[rank_vec(row) for row in mat] for mat in inst.sigmas],
        "L": list(inst.L),
        "M": [list(row) for row in inst.M],
        "gamma": rank_vec(inst.gamma),
        "targets": {"yes": rank_vec(inst.targets[0]), "no": rank_vec(inst.targets[1])},
        "answer": inst.answer,
        "seed": inst.seed,
    }
    return json.dumps(payload)


def parse_instance(text: str) -> MultiHPHInstance:
    d = json.loads(text)
    if d.get("schema") != SCHEMA:
        raise ValueError(f"unknown schema {d.get('schema')!r}")
    b = d["b"]

    def unrank_vec(v):
        return tuple(lehmer_unrank(x, b) for x in v)

    sigmas = tuple(
        tuple(unrank_vec(row) for row in mat) for mat in d["sigmas"]
    )
    for mat in sigmas:
        check_perm_matrix(mat, d["t"], d["r"], b)
    M = tuple(tuple(row) for row in d["M"])
    check_hypermatching(M, d["k"], d["r"])
    return MultiHPHInstance(
        d["r"],
        d["t"],
        b,
        d["k"],
        sigmas,
        tuple(d["L"]),
        M,
        unrank_vec(d["gamma"]),
        (unrank_vec(d["targets"]["yes"]), unrank_vec(d["targets"]["no"])),
        d["answer"],
        d.get("seed"),
    )

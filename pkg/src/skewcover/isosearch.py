"""Brute-force isomorphism search between two bound quiver algebras:
a vertex bijection, an endpoint-compatible arrow bijection, and per-arrow
scalars such that every relation of the source maps into the target ideal.
Together with equal dimensions this certifies an algebra isomorphism.

Intended for the double-skew round trip on desk-scale quivers; the search
space is tiny there (at most a few hundred bijections, scalars drawn from
the roots of unity in play).
"""

from __future__ import annotations

from itertools import permutations, product

import numpy as np

from .field import PrimeField
from .quiver import BoundAlgebra, PathWord, path_source, path_target


def roots_of_unity(F: PrimeField, n: int) -> list[int]:
    if (F.p - 1) % n != 0:
        return [1]
    z = F.primitive_root_of_unity(n)
    return sorted({pow(z, k, F.p) for k in range(n)})


def _degree_profile(alg: BoundAlgebra, v: int):
    q = alg.quiver
    return (q.indegree(v), q.outdegree(v),
            sum(1 for a in q.arrows if a.source == a.target == v))


def _relation_maps_to_zero(A: BoundAlgebra, B: BoundAlgebra, rel,
                           vmap, amap, scalars) -> bool:
    F = A.F
    img: dict[int, int] = {}
    for c, w in rel.terms:
        coeff = c % F.p
        arrows = []
        for a in w.arrows:
            coeff = coeff * scalars[a] % F.p
            arrows.append(amap[a])
        bw = PathWord(vmap[path_source(A.quiver, w)], tuple(arrows))
        nf = B.nf.get(bw)
        if nf is None:
            return False
        for k, ck in nf.items():
            img[k] = (img.get(k, 0) + coeff * ck) % F.p
    return all(v % F.p == 0 for v in img.values())


def find_algebra_isomorphism(A: BoundAlgebra, B: BoundAlgebra,
                             scalar_pool: list[int] | None = None,
                             max_scalar_combos: int = 200_000):
    """(vertex map, arrow map, scalars) realizing A = B, or None.

    The map sends arrow a to scalars[a] * amap[a]; relations of A must land
    in the ideal of B.  Scalars all 1 are tried before the pool.
    """
    if A.dim != B.dim:
        return None
    qa, qb = A.quiver, B.quiver
    if qa.n_vertices != qb.n_vertices or qa.n_arrows != qb.n_arrows:
        return None
    profs_b: dict[tuple, list[int]] = {}
    for v in range(qb.n_vertices):
        profs_b.setdefault(_degree_profile(B, v), []).append(v)
    by_prof: dict[tuple, list[int]] = {}
    for v in range(qa.n_vertices):
        by_prof.setdefault(_degree_profile(A, v), []).append(v)
    if {k: len(v) for k, v in by_prof.items()} != \
            {k: len(v) for k, v in profs_b.items()}:
        return None

    pools = [1] if scalar_pool is None else scalar_pool
    groups = sorted(by_prof.keys())

    def vertex_bijections():
        perms_per_group = [permutations(profs_b[g]) for g in groups]
        for combo in product(*perms_per_group):
            vmap = {}
            for g, perm in zip(groups, combo):
                for va, vb in zip(by_prof[g], perm):
                    vmap[va] = vb
            yield vmap

    for vmap in vertex_bijections():
        slots_a: dict[tuple[int, int], list[int]] = {}
        for i, a in enumerate(qa.arrows):
            slots_a.setdefault((a.source, a.target), []).append(i)
        ok = True
        slot_choices = []
        for (s, t), arrs in sorted(slots_a.items()):
            targets = [i for i, b in enumerate(qb.arrows)
                       if b.source == vmap[s] and b.target == vmap[t]]
            if len(targets) != len(arrs):
                ok = False
                break
            slot_choices.append((arrs, list(permutations(targets))))
        if not ok:
            continue
        for assignment in product(*[c for _, c in slot_choices]):
            amap = {}
            for (arrs, _), perm in zip(slot_choices, assignment):
                for a, b in zip(arrs, perm):
                    amap[a] = b
            # all-ones scalars first
            ones = {a: 1 for a in range(qa.n_arrows)}
            if all(_relation_maps_to_zero(A, B, r, vmap, amap, ones)
                   for r in A.relations):
                return vmap, amap, ones
            if scalar_pool and len(scalar_pool) > 1:
                free_arrows = sorted({a for r in A.relations
                                      for _, w in r.terms for a in w.arrows})
                combos = len(scalar_pool) ** len(free_arrows)
                if combos > max_scalar_combos:
                    continue
                for vals in product(scalar_pool, repeat=len(free_arrows)):
                    scal = dict(ones)
                    for a, c in zip(free_arrows, vals):
                        scal[a] = c
                    if all(_relation_maps_to_zero(A, B, r, vmap, amap, scal)
                           for r in A.relations):
                        return vmap, amap, scal
    return None

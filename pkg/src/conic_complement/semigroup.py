"""Numerical semigroup helpers for lead-degree bookkeeping.

Generators are positive integers.  Everything is exact and small; these
routines run on lead degrees of subalgebra bases, not on coefficients.
"""

from __future__ import annotations

import heapq
from functools import reduce
from math import gcd


def semigroup_gcd(gens):
    return reduce(gcd, gens, 0)


def factorization(target: int, gens) -> tuple[int, ...] | None:
    """An exponent vector ``e`` with ``sum(e[i] * gens[i]) == target``, or None.

    Deterministic: among factorizations reachable by the DP it prefers the
    one whose last used generator has the largest index, giving few factors
    when generators are listed in increasing order.
    """
    if target < 0:
        return None
    if target == 0:
        return (0,) * len(gens)
    g = semigroup_gcd(gens)
    if g == 0 or target % g:
        return None
    parent = [-1] * (target + 1)
    parent[0] = len(gens)
    for n in range(1, target + 1):
        for i in range(len(gens) - 1, -1, -1):
            d = gens[i]
            if d <= n and parent[n - d] != -1:
                parent[n] = i
                break
    if parent[target] == -1:
        return None
    exps = [0] * len(gens)
    n = target
    while n:
        i = parent[n]
        exps[i] += 1
        n -= gens[i]
    return tuple(exps)


def contains(target: int, gens) -> bool:
    return factorization(target, gens) is not None


def apery_set(gens, modulus_index: int = 0):
    """Apéry set of the semigroup with respect to ``gens[modulus_index]``.

    Requires ``gcd(gens) == 1``.  Returns a list indexed by residue class
    mod ``m = gens[modulus_index]``; entry ``r`` is ``(w, exps)`` where ``w``
    is the least element congruent to ``r`` and ``exps`` is a factorization
    of ``w`` that does not use the modulus generator.
    """
    m = gens[modulus_index]
    if semigroup_gcd(gens) != 1:
        raise ValueError("Apéry set needs generators with gcd 1")
    others = [i for i in range(len(gens)) if i != modulus_index]
    best = [None] * m
    best[0] = (0, (0,) * len(gens))
    heap = [(0, 0)]
    done = [False] * m
    while heap:
        w, r = heapq.heappop(heap)
        if done[r]:
            continue
        done[r] = True
        exps = best[r][1]
        for i in others:
            w2 = w + gens[i]
            r2 = w2 % m
            if best[r2] is None or w2 < best[r2][0]:
                e = list(exps)
                e[i] += 1
                best[r2] = (w2, tuple(e))
                heapq.heappush(heap, (w2, r2))
    return best


def presentation(gens):
    """Binomial relations generating the kernel of N^k -> N, e_i -> gens[i].

    Uses the Apéry presentation relative to the smallest generator: for each
    other generator ``i`` and each Apéry element ``w``, the monomial
    ``x^{e(w)} * x_i`` is rewritten as ``x^{e(w')} * x_min^c``.  Repeated
    rewriting brings any monomial to a normal form that depends only on its
    degree, so these relations generate the congruence.

    Generators are divided by their gcd first.  Each relation is a pair of
    distinct exponent vectors of equal weighted degree; trivial identities
    are dropped.
    """
    g = semigroup_gcd(gens)
    if g == 0:
        return []
    scaled = [d // g for d in gens]
    k = min(range(len(scaled)), key=lambda i: (scaled[i], i))
    m = scaled[k]
    ap = apery_set(scaled, k)
    rels = []
    seen = set()
    for i in range(len(scaled)):
        if i == k:
            continue
        for w, ew in ap:
            total = w + scaled[i]
            lhs = list(ew)
            lhs[i] += 1
            w2, ew2 = ap[total % m]
            c = (total - w2) // m
            rhs = list(ew2)
            rhs[k] += c
            lhs, rhs = tuple(lhs), tuple(rhs)
            if lhs == rhs:
                continue
            key = (min(lhs, rhs), max(lhs, rhs))
            if key in seen:
                continue
            seen.add(key)
            rels.append((lhs, rhs, total * g))
    rels.sort(key=lambda r: (r[2], r[0], r[1]))
    return rels

"""Dense small-matrix helpers over a FieldSpec (raw elements, lists of rows)."""

from __future__ import annotations

from functools import reduce

import gmpy2
from gmpy2 import mpq


def mat_mul(f, A, B):
    n, m, k = len(A), len(B), len(B[0])
    out = []
    for i in range(n):
        row = []
        for j in range(k):
            acc = f.zero
            for r in range(m):
                acc = acc + A[i][r] * B[r][j]
            row.append(acc % f.p if f.p else acc)
        out.append(row)
    return out


def mat_vec(f, A, v):
    out = []
    for row in A:
        acc = f.zero
        for a, b in zip(row, v):
            acc = acc + a * b
        out.append(acc % f.p if f.p else acc)
    return out


def identity(f, n):
    return [[f.one if i == j else f.zero for j in range(n)] for i in range(n)]


def det(f, A):
    """Determinant by Gaussian elimination over the field."""
    A = [list(r) for r in A]
    n = len(A)
    d = f.one
    for col in range(n):
        piv = next((r for r in range(col, n) if A[r][col]), None)
        if piv is None:
            return f.zero
        if piv != col:
            A[col], A[piv] = A[piv], A[col]
            d = f.neg(d)
        d = f.mul(d, A[col][col])
        inv = f.inv(A[col][col])
        for r in range(col + 1, n):
            if A[r][col]:
                k = f.mul(A[r][col], inv)
                A[r] = [f.sub(a, f.mul(k, b)) for a, b in zip(A[r], A[col])]
    return d


def inverse(f, A):
    n = len(A)
    aug = [list(A[i]) + identity(f, n)[i] for i in range(n)]
    for col in range(n):
        piv = next((r for r in range(col, n) if aug[r][col]), None)
        if piv is None:
            raise ZeroDivisionError("singular matrix")
        aug[col], aug[piv] = aug[piv], aug[col]
        inv = f.inv(aug[col][col])
        aug[col] = [f.mul(a, inv) for a in aug[col]]
        for r in range(n):
            if r != col and aug[r][col]:
                k = aug[r][col]
                aug[r] = [f.sub(a, f.mul(k, b)) for a, b in zip(aug[r], aug[col])]
    return [row[n:] for row in aug]


def transpose(A):
    return [list(r) for r in zip(*A)]


def scale_mat(f, A, c):
    return [[f.mul(a, c) for a in row] for row in A]


def cross(f, u, v):
    return [
        f.sub(f.mul(u[1], v[2]), f.mul(u[2], v[1])),
        f.sub(f.mul(u[2], v[0]), f.mul(u[0], v[2])),
        f.sub(f.mul(u[0], v[1]), f.mul(u[1], v[0])),
    ]


def primitive_vector(f, v):
    """Canonical projective representative of a nonzero vector.

    Over Q: coprime integers with first nonzero entry positive.
    Over F_p: first nonzero entry equal to 1.
    """
    v = list(v)
    first = next((a for a in v if a), None)
    if first is None:
        raise ValueError("zero vector has no projective representative")
    if f.p:
        inv = f.inv(first)
        return tuple(f.mul(a, inv) for a in v)
    den = reduce(gmpy2.lcm, (a.denominator for a in v), gmpy2.mpz(1))
    ints = [a.numerator * (den // a.denominator) for a in v]
    g = reduce(gmpy2.gcd, ints, gmpy2.mpz(0))
    sign = 1 if first > 0 else -1
    return tuple(mpq(sign * a // g) for a in ints)


def proportional(f, u, v) -> bool:
    """Whether two vectors agree up to a nonzero scalar (both nonzero)."""
    u, v = list(u), list(v)
    if not any(u) or not any(v):
        return False
    for i in range(len(u)):
        for j in range(i + 1, len(u)):
            if f.sub(f.mul(u[i], v[j]), f.mul(u[j], v[i])):
                return False
    return all(bool(a) == bool(b) for a, b in zip(u, v))

"""The conic Q0 = {xz + y^2 = 0}, points and lines of the plane, the pencil
spanned by Q0 and twice its tangent at p0 = [0:0:1], and normalization of
a smooth conic with a rational point to (Q0, p0).

Conics are stored by their six polynomial coefficients; the Gram matrix
has the cross coefficients halved, so characteristic 2 is refused.
"""

from __future__ import annotations

from dataclasses import dataclass

from .fields import FieldError, FieldSpec, RATIONALS, Scalar
from . import linalg

INFINITY = "INFINITY"

# order of the six coefficients in the text/JSON format
MONOMIALS = ("xx", "xy", "xz", "yy", "yz", "zz")
_INDEX = {"xx": (0, 0), "xy": (0, 1), "xz": (0, 2), "yy": (1, 1), "yz": (1, 2), "zz": (2, 2)}


class ConicError(ValueError):
    pass


def _require_odd(field: FieldSpec):
    if field.p == 2:
        raise FieldError("characteristic 2 is not supported for conics")


@dataclass(frozen=True)
class ProjPoint:
    field: FieldSpec
    coords: tuple

    @classmethod
    def of(cls, field: FieldSpec, coords) -> ProjPoint:
        raw = [field.coerce(c) for c in coords]
        if len(raw) != 3:
            raise ValueError("a plane point needs three coordinates")
        return cls(field, linalg.primitive_vector(field, raw))

    def __str__(self):
        return "[" + ":".join(self.field.to_str(c) for c in self.coords) + "]"

    def to_json(self):
        return [self.field.to_str(c) for c in self.coords]


@dataclass(frozen=True)
class ProjLine:
    """The line a*x + b*y + c*z = 0."""

    field: FieldSpec
    coeffs: tuple

    @classmethod
    def of(cls, field: FieldSpec, coeffs) -> ProjLine:
        raw = [field.coerce(c) for c in coeffs]
        return cls(field, linalg.primitive_vector(field, raw))

    def contains(self, P: ProjPoint) -> bool:
        f = self.field
        return not f.add(f.add(f.mul(self.coeffs[0], P.coords[0]), f.mul(self.coeffs[1], P.coords[1])),
                         f.mul(self.coeffs[2], P.coords[2]))

    def __str__(self):
        f = self.field
        terms = [f"{f.to_str(c)}*{v}" for c, v in zip(self.coeffs, "xyz") if c]
        return " + ".join(terms) + " = 0"

    def to_json(self):
        return [self.field.to_str(c) for c in self.coeffs]


@dataclass(frozen=True)
class Conic:
    """Quadratic form sum a_m * m over MONOMIALS, up to scale."""

    field: FieldSpec
    coeffs: tuple

    @classmethod
    def of(cls, field: FieldSpec, coeffs) -> Conic:
        _require_odd(field)
        raw = [field.coerce(c) for c in coeffs]
        if len(raw) != 6:
            raise ValueError("a conic needs six coefficients")
        if not any(raw):
            raise ConicError("zero quadratic form")
        return cls(field, linalg.primitive_vector(field, raw))

    @classmethod
    def from_gram(cls, field: FieldSpec, G) -> Conic:
        f = field
        two = f.coerce(2)
        coeffs = []
        for m in MONOMIALS:
            i, j = _INDEX[m]
            coeffs.append(G[i][j] if i == j else f.mul(two, G[i][j]))
        return cls.of(field, coeffs)

    @property
    def gram(self):
        f = self.field
        half = f.inv(f.coerce(2))
        G = [[f.zero] * 3 for _ in range(3)]
        for m, c in zip(MONOMIALS, self.coeffs):
            i, j = _INDEX[m]
            if i == j:
                G[i][i] = c
            else:
                G[i][j] = G[j][i] = f.mul(c, half)
        return G

    def value(self, v):
        f = self.field
        acc = f.zero
        for m, c in zip(MONOMIALS, self.coeffs):
            i, j = _INDEX[m]
            acc = f.add(acc, f.mul(c, f.mul(v[i], v[j])))
        return acc

    def bilinear(self, u, v):
        return linalg.mat_vec(self.field, [list(u)], linalg.mat_vec(self.field, self.gram, v))[0]

    def determinant(self):
        return linalg.det(self.field, self.gram)

    def is_smooth(self) -> bool:
        return bool(self.determinant())

    @property
    def is_degenerate(self) -> bool:
        return not self.is_smooth()

    def __str__(self):
        f = self.field
        terms = [f"{f.to_str(c)}*{m[0]}*{m[1]}" for m, c in zip(MONOMIALS, self.coeffs) if c]
        return " + ".join(terms) + " = 0"

    def to_json(self):
        return [self.field.to_str(c) for c in self.coeffs]


def q0_conic(field: FieldSpec = RATIONALS) -> Conic:
    return Conic.of(field, (0, 0, 1, 1, 0, 0))


def p0_point(field: FieldSpec = RATIONALS) -> ProjPoint:
    return ProjPoint.of(field, (0, 0, 1))


def on_conic(C: Conic, P: ProjPoint) -> bool:
    if C.field != P.field:
        raise FieldError("field mismatch")
    return not C.value(P.coords)


def tangent_line(C: Conic, P: ProjPoint) -> ProjLine:
    if not on_conic(C, P):
        raise ConicError(f"point {P} is not on the conic")
    if not C.is_smooth():
        raise ConicError("conic is singular")
    return ProjLine.of(C.field, linalg.mat_vec(C.field, C.gram, P.coords))


def pencil_member(t0, field: FieldSpec = RATIONALS) -> Conic:
    """The member x^2 - t0*q0 of the pencil; Q0 itself at INFINITY.

    t0 = 0 gives the double tangent line x^2 = 0, which is degenerate.
    """
    _require_odd(field)
    if t0 == INFINITY:
        return q0_conic(field)
    c = field.neg(field.coerce(t0.value if isinstance(t0, Scalar) else t0))
    return Conic.of(field, (1, 0, c, c, 0, 0))


def normalize_conic(C: Conic, P: ProjPoint):
    """A matrix M with (form of C) o M^{-1} = lambda*q0 and M.P ~ p0.

    M.P is proportional to p0 and M maps the tangent line at P to {x = 0}.
    Over Q the free sign is fixed by det M > 0.
    """
    f = C.field
    _require_odd(f)
    if P.field != f:
        raise FieldError("field mismatch")
    if not C.is_smooth():
        raise ConicError("conic is singular")
    if not on_conic(C, P):
        raise ConicError(f"point {P} is not on the conic")
    G = C.gram
    p = list(P.coords)
    gp = linalg.mat_vec(f, G, p)
    # a basis vector Q with B(P, Q) != 0 exists because G is nondegenerate
    k = next(i for i in range(3) if gp[i])
    q = [f.one if i == k else f.zero for i in range(3)]
    beta = gp[k]
    fq = C.value(q)
    shift = f.div(fq, f.mul(f.coerce(2), beta))
    q1 = [f.sub(a, f.mul(shift, b)) for a, b in zip(q, p)]
    w = list(linalg.primitive_vector(f, linalg.cross(f, gp, linalg.mat_vec(f, G, q1))))
    delta = C.value(w)
    a = f.div(delta, f.mul(f.coerce(2), beta))
    for sign in (1, -1):
        ws = w if sign == 1 else [f.neg(c) for c in w]
        N = linalg.transpose([[f.mul(a, c) for c in q1], ws, p])
        M = linalg.inverse(f, N)
        if f.p or linalg.det(f, M) > 0:
            return M
    return M


def check_normalization(C: Conic, P: ProjPoint, M) -> bool:
    """Exact check that M carries (C, P) to (Q0, p0)."""
    from .poly import TriPoly, q0_form

    f = C.field
    Ninv = linalg.inverse(f, M)
    terms = {}
    for m, c in zip(MONOMIALS, C.coeffs):
        e = [0, 0, 0]
        for ch in m:
            e["xyz".index(ch)] += 1
        terms[tuple(e)] = c
    pulled = TriPoly(f, terms).linear_substitute(Ninv)
    q0 = q0_form(f)
    lead = q0.terms[(1, 0, 1)]
    lam = f.div(pulled.terms.get((1, 0, 1), f.zero), lead)
    if not lam:
        return False
    scaled = TriPoly(f, {e: f.mul(c, lam) for e, c in q0.terms.items()})
    image = linalg.mat_vec(f, M, P.coords)
    return pulled == scaled and not image[0] and not image[1] and bool(image[2])

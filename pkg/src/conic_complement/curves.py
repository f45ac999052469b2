"""Polynomial parametrizations t -> [x(t) : y(t) : z(t)] of curves in S0."""

from __future__ import annotations

from dataclasses import dataclass

from .fields import FieldError, FieldSpec, NEG_INF
from .poly import UniPoly, parse_poly, q0_form


class CurveError(ValueError):
    """Invalid parametrization; ``code`` is a stable machine-readable reason."""

    def __init__(self, code, message):
        super().__init__(f"{code}: {message}")
        self.code = code


IMAGE_MEETS_Q0 = "IMAGE_MEETS_Q0"
CONSTANT_MAP = "CONSTANT_MAP"
ZERO_TRIPLE = "ZERO_TRIPLE"


def q0_of(x: UniPoly, y: UniPoly, z: UniPoly) -> UniPoly:
    return x * z + y * y


@dataclass(frozen=True)
class CurveParam:
    """Validated parametrization with q0(x, y, z) = c, a nonzero constant.

    ``c`` is a raw field element.  Use :func:`validate` to build one.
    """

    x: UniPoly
    y: UniPoly
    z: UniPoly
    c: object

    @property
    def field(self) -> FieldSpec:
        return self.x.field

    @property
    def components(self):
        return (self.x, self.y, self.z)

    @property
    def degrees(self):
        return tuple(p.degree for p in self.components)

    @property
    def max_degree(self) -> int:
        return max(d for d in self.degrees if d is not NEG_INF)

    @property
    def parity(self) -> str:
        return "odd" if self.max_degree % 2 else "even"

    def scaled(self, lam) -> CurveParam:
        """Same curve with coordinates multiplied by the raw scalar ``lam``."""
        f = self.field
        return CurveParam(self.x.scale(lam), self.y.scale(lam), self.z.scale(lam), f.mul(self.c, f.mul(lam, lam)))

    def reparametrize(self, ell: UniPoly) -> CurveParam:
        return CurveParam(self.x.compose(ell), self.y.compose(ell), self.z.compose(ell), self.c)

    def same_map(self, other: CurveParam) -> bool:
        """Whether both define the same map to the plane (equal up to a scalar)."""
        a, b = self.components, other.components
        for i in range(3):
            for j in range(i + 1, 3):
                if a[i] * b[j] != a[j] * b[i]:
                    return False
        return all(p.is_zero() == q.is_zero() for p, q in zip(a, b))

    def to_json(self):
        f = self.field
        return {
            "x": self.x.to_str(),
            "y": self.y.to_str(),
            "z": self.z.to_str(),
            "field": f.tag,
            "c": f.to_str(self.c),
        }

    def __str__(self):
        return f"[{self.x} : {self.y} : {self.z}]"


def validate(x: UniPoly, y: UniPoly, z: UniPoly) -> CurveParam:
    f = x.field
    if y.field != f or z.field != f:
        raise FieldError("components over different fields")
    if x.is_zero() and y.is_zero() and z.is_zero():
        raise CurveError(ZERO_TRIPLE, "all three components vanish")
    if x.is_constant() and y.is_constant() and z.is_constant():
        raise CurveError(CONSTANT_MAP, "parametrization is constant")
    q = q0_of(x, y, z)
    if q.is_zero():
        raise CurveError(IMAGE_MEETS_Q0, "q0 vanishes identically along the curve")
    if not q.is_constant():
        raise CurveError(IMAGE_MEETS_Q0, f"q0 along the curve is {q}, not a constant")
    # q0 = c != 0 forces gcd(x, y, z) to be a unit, so the triple is primitive
    return CurveParam(x, y, z, q.lc)


def curve_from_strings(x: str, y: str, z: str, field: FieldSpec) -> CurveParam:
    return validate(parse_poly(x, field), parse_poly(y, field), parse_poly(z, field))


def curve_from_json(obj, default_field: FieldSpec | None = None) -> CurveParam:
    from .fields import field_of

    if "field" in obj:
        f = field_of(obj["field"])
    elif default_field is not None:
        f = default_field
    else:
        raise ValueError("curve JSON needs a 'field' entry")
    for key in ("x", "y", "z"):
        if key not in obj:
            raise ValueError(f"curve JSON missing component {key!r}")
    j = curve_from_strings(str(obj["x"]), str(obj["y"]), str(obj["z"]), f)
    if "c" in obj and obj["c"] is not None:
        if f.coerce(str(obj["c"])) != j.c:
            raise CurveError("C_MISMATCH", f"stored c = {obj['c']} but q0 along the curve is {f.to_str(j.c)}")
    return j


def line_L0(field: FieldSpec) -> CurveParam:
    """t -> [0 : 1 : t], the tangent line at p0 minus p0."""
    t = UniPoly.t(field)
    return validate(UniPoly.zero(field), UniPoly.constant(field, 1), t)


def line_L1(field: FieldSpec) -> CurveParam:
    """t -> [1 : t : 1 - t^2], the fiber x^2 = q0 of the fibration."""
    t = UniPoly.t(field)
    one = UniPoly.constant(field, 1)
    return validate(one, t, one - t * t)


def q0_along(j: CurveParam) -> UniPoly:
    return q0_form(j.field).evaluate(*j.components)

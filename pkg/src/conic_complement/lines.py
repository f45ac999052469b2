"""Affine lines in S0: embedding certificates, degree conditions, rectification
to L0 = [0 : 1 : t] or L1 = [1 : t : 1 - t^2], and the characteristic-p
family that escapes both orbits.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field as dc_field
from typing import Optional

import gmpy2

from .curves import CurveParam, validate
from .fields import FieldSpec, NEG_INF
from .group import (
    FiberedLetter,
    GroupWord,
    MoebiusLetter,
    apply_letter_curve,
    apply_word_curve,
)
from .poly import UniPoly
from .subalgebra import MEMBER, NOT_MEMBER, UNDECIDED, MembershipResult, subalgebra_membership

log = logging.getLogger(__name__)

ODD = "OddLine"
EVEN = "EvenLine"
FAILED = "Failed"


class ChartError(ValueError):
    pass


# ---------------------------------------------------------------------------
# embedding test


def coordinate_pullbacks(j: CurveParam):
    """x^2/c, xy/c, xz/c, y^2/c, yz/c, z^2/c along the curve."""
    f = j.field
    inv = f.inv(j.c)
    x, y, z = j.components
    return [(a * b).scale(inv) for a, b in ((x, x), (x, y), (x, z), (y, y), (y, z), (z, z))]


def antipodal_collision(j: CurveParam):
    """Certificate that j(t) = j(-t) for some t != 0 over the algebraic closure.

    For each sign e in {+1, -1}, the common roots of the three polynomials
    x_i(t) - e x_i(-t), other than t = 0, are parameters where the map
    identifies t with -t.  Returns (sign, polynomial whose roots collide)
    or None.  A zero polynomial means every t collides with -t.
    """
    f = j.field
    if f.p == 2:
        return None
    minus_t = UniPoly._make(f, (f.zero, f.neg(f.one)))
    for sign in (1, -1):
        g = UniPoly.zero(f)
        for p in j.components:
            d = p - p.compose(minus_t).scale(f.coerce(sign))
            g = g.gcd(d) if (g or d) else g
        if g.is_zero():
            return sign, g
        while g.degree > 0 and not g.coeff(0):
            g = UniPoly._make(f, g.coeffs[1:])
        if g.degree > 0:
            return sign, g
    return None


@dataclass
class EmbeddingVerdict:
    status: str  # "true", "false" or "undecided_at_cap"
    membership: Optional[MembershipResult] = None
    collision: Optional[tuple] = None

    @property
    def value(self):
        return {"true": True, "false": False}.get(self.status)

    def to_json(self):
        out = {"verdict": self.status}
        if self.membership is not None:
            m = self.membership
            if m.member:
                out["witness"] = m.witness.to_json()
            elif m.obstruction_degree is not None:
                out["obstruction_degree"] = m.obstruction_degree
            out["subalgebra_status"] = m.status
            out["lead_degrees"] = list(m.lead_degrees)
        if self.collision is not None:
            sign, g = self.collision
            out["double_point"] = {
                "relation": "j(-t) = j(t)" if sign == 1 else "j(-t) = -j(t)",
                "parameters": "all t" if g.is_zero() else f"roots of {g}",
            }
        return out


def is_closed_embedding(j: CurveParam, cap: Optional[int] = None) -> EmbeddingVerdict:
    """Decide whether t lies in the algebra generated by the pulled-back
    coordinate functions of S0.

    Subduction decides when completion finishes below ``cap``; if it stalls
    undecided, a t <-> -t double point is looked for as a second, exact
    certificate of non-injectivity.
    """
    gens = coordinate_pullbacks(j)
    t = UniPoly.t(j.field)
    res = subalgebra_membership(gens, t, cap=cap)
    if res.status == MEMBER:
        return EmbeddingVerdict("true", res)
    if res.status == NOT_MEMBER:
        return EmbeddingVerdict("false", res)
    col = antipodal_collision(j)
    if col is not None:
        return EmbeddingVerdict("false", res, col)
    return EmbeddingVerdict(UNDECIDED, res)


# ---------------------------------------------------------------------------
# degree conditions


def _divides(a, b) -> bool:
    if b is NEG_INF:
        return True
    return b % a == 0


def profile_conditions(degs):
    """(ordered, divisible) for a degree profile (dx, dy, dz).

    dx = NEG_INF or dx = 0 leaves divisibility vacuous.
    """
    dx, dy, dz = degs
    ordered = dx < dy < dz
    if dx is NEG_INF or dx == 0:
        divisible = True
    else:
        divisible = _divides(dx, dy) and _divides(dx, dz)
    return ordered, divisible


def point_at_infinity(j: CurveParam):
    """Raw coefficient vector of the top power of t."""
    D = j.max_degree
    return [p.coeff(D) for p in j.components]


def to_p0_letter(j: CurveParam) -> Optional[MoebiusLetter]:
    """A Moebius letter moving the curve's point at infinity to p0 (None if already there)."""
    f = j.field
    a, b, _ = point_at_infinity(j)
    if not a:
        if b:
            raise AssertionError("point at infinity off Q0")
        return None
    s = f.div(b, a)
    return MoebiusLetter.of(f, ((s, f.one), (f.one, f.zero)))


def involution_letter(field):
    return MoebiusLetter.involution(field)


@dataclass
class DegreeReport:
    passes: bool
    after_involution: bool
    orientations: dict

    def to_json(self):
        return {
            "passes": self.passes,
            "after_involution": self.after_involution,
            "orientations": {
                k: {"profile": [_deg(d) for d in v["profile"]], "ordered": v["ordered"], "divisible": v["divisible"]}
                for k, v in self.orientations.items()
            },
        }


def _deg(d):
    return "-inf" if d is NEG_INF else d


def degree_conditions(j: CurveParam) -> DegreeReport:
    """Check ordering and divisibility of the degree profile.

    Orientations examined: as given, after [z : -y : x], and after a
    Moebius letter moving the point at infinity to p0.
    """
    f = j.field
    views = {"given": j, "involution": apply_letter_curve(involution_letter(f), j)}
    m = to_p0_letter(j)
    views["p0_at_infinity"] = j if m is None else apply_letter_curve(m, j)
    orientations = {}
    for name, v in views.items():
        ordered, divisible = profile_conditions(v.degrees)
        orientations[name] = {"profile": v.degrees, "ordered": ordered, "divisible": divisible}
    ok = {k: o["ordered"] and o["divisible"] for k, o in orientations.items()}
    return DegreeReport(any(ok.values()), ok["involution"], orientations)


# ---------------------------------------------------------------------------
# report


@dataclass
class EmbeddingReport:
    valid_in_S0: bool
    c: object
    closed_embedding: Optional[EmbeddingVerdict]
    degree_profile: tuple
    closure_degree: int
    parity: str
    degree_conditions: Optional[DegreeReport] = None
    field: Optional[FieldSpec] = None

    def to_json(self):
        f = self.field
        return {
            "valid_in_S0": self.valid_in_S0,
            "c": f.to_str(self.c),
            "closed_embedding": self.closed_embedding.to_json() if self.closed_embedding else None,
            "degree_profile": [_deg(d) for d in self.degree_profile],
            "closure_degree": self.closure_degree,
            "parity": self.parity,
            "degree_conditions": self.degree_conditions.to_json() if self.degree_conditions else None,
        }


def embedding_report(j: CurveParam, cap: Optional[int] = None) -> EmbeddingReport:
    verdict = is_closed_embedding(j, cap=cap)
    return EmbeddingReport(
        True, j.c, verdict, j.degrees, j.max_degree, j.parity, degree_conditions(j), j.field
    )


# ---------------------------------------------------------------------------
# rectification


@dataclass
class RectifyResult:
    outcome: str
    witness: GroupWord
    diagnostics: dict = dc_field(default_factory=dict)
    image: Optional[CurveParam] = None

    def to_json(self):
        out = {
            "outcome": self.outcome,
            "witness": self.witness.to_json(),
            "letters": len(self.witness),
            "diagnostics": self.diagnostics,
            "classification_contingent_on_embedding": True,
        }
        if self.image is not None:
            out["image"] = self.image.to_json()
        return out


def matches_L0(j: CurveParam) -> bool:
    x, y, z = j.components
    return x.is_zero() and y.degree == 0 and z.degree == 1


def matches_L1(j: CurveParam) -> bool:
    """j = kappa * (1, l, 1 - l^2) for a scalar kappa and degree-1 l."""
    f = j.field
    x, y, z = j.components
    if x.degree != 0 or y.degree != 1:
        return False
    kappa = x.lc
    ell = y.scale(f.inv(kappa))
    one = UniPoly.constant(f, f.one)
    return z == (one - ell * ell).scale(kappa)


def rectify(j: CurveParam, budget: int = 500) -> RectifyResult:
    """Greedy degree reduction to L0 or L1.

    Each round moves the point at infinity to p0, then strips the top of y
    with one fibered letter while deg y is an odd multiple of deg x.
    ``budget`` caps the number of letters in the witness.
    """
    if budget < 1:
        raise ValueError("budget must be at least 1")
    f = j.field
    letters: list = []
    cur = j

    def push(letter):
        nonlocal cur
        letters.append(letter)
        cur = apply_letter_curve(letter, cur)

    def failed(reason, **extra):
        diag = {"reason": reason, "state_profile": [_deg(d) for d in cur.degrees]}
        diag.update(extra)
        return RectifyResult(FAILED, GroupWord(f, tuple(letters)), diag)

    while True:
        if len(letters) >= budget:
            return failed("budget_exhausted", budget=budget)
        m = to_p0_letter(cur)
        if m is not None:
            push(m)
            continue
        x, y, z = cur.components
        dx, dy, dz = cur.degrees
        if x.is_zero():
            if dz == 1:
                return _finish(j, letters, ODD)
            return failed("not_injective", detail="x = 0 and deg z > 1")
        if dx == 0:
            if dy != 1:
                return failed("not_injective", detail="x constant and deg y != 1")
            root = f.sqrt(cur.c)
            if root is None:
                return failed("square_class", detail=f"c = {f.to_str(cur.c)} is not a square; L0 and L1 both have c = 1")
            lam = f.div(root, x.lc)
            if lam != f.one:
                push(MoebiusLetter.diagonal(f, lam))
            return _finish(j, letters, EVEN)
        # dx >= 1 and the point at infinity is p0, so dx < dy < dz
        s = _fibered_reduction(cur)
        if s.is_zero():
            return failed(
                "degree_conditions",
                detail=f"deg y = {dy} is not an odd multiple of deg x = {dx}",
                certificate=degree_conditions(cur).to_json(),
            )
        push(FiberedLetter(s))


def _fibered_reduction(j: CurveParam) -> UniPoly:
    """Accumulate s so that Psi_s lowers deg y below every odd multiple of deg x it can."""
    f = j.field
    x, y = j.x, j.y
    dx = x.degree
    inv_c = f.inv(j.c)
    u = (x * x).scale(inv_c)
    terms = {}
    lcx = x.lc
    while y and y.degree > dx:
        q, r = divmod(y.degree, dx)
        if r or q % 2 == 0:
            break
        k = (q - 1) // 2
        a = f.neg(f.div(y.lc, f.mul(f.pow(lcx, 2 * k + 1), f.pow(inv_c, k))))
        terms[k] = f.add(terms.get(k, f.zero), a)
        y = y + (u**k * x).scale(a)
    if not terms:
        return UniPoly.zero(f)
    dense = [terms.get(k, f.zero) for k in range(max(terms) + 1)]
    return UniPoly._make(f, dense)


def _finish(j, letters, outcome) -> RectifyResult:
    f = j.field
    w = GroupWord(f, tuple(letters))
    image = apply_word_curve(w, j)
    ok = matches_L0(image) if outcome == ODD else matches_L1(image)
    if not ok:
        return RectifyResult(FAILED, w, {"reason": "verification_failed", "claimed": outcome}, image)
    return RectifyResult(outcome, w, {"verified": True}, image)


# ---------------------------------------------------------------------------
# the exotic family


def exotic_line(p: int) -> CurveParam:
    """[t^{p^2} : t^{p^2} v + 1 : -t^{p^2} v^2 - 2 v] with v = t^{p^2+p} + t over F_p."""
    if not gmpy2.is_prime(p):
        raise ValueError(f"NOT_PRIME: {p} is not prime")
    if p < 3:
        raise ValueError(f"exotic lines need p >= 3, got {p}")
    f = FieldSpec(p)
    t = UniPoly.t(f)
    v = t ** (p * p + p) + t
    x = t ** (p * p)
    xv = x * v
    y = xv + UniPoly.constant(f, 1)
    z = -(xv * v) - v.scale(f.coerce(2))
    return validate(x, y, z)


def double_cover_chart(j: CurveParam):
    """(x, v) with v = (1 - y)/x = z/(y + 1), for a curve with c = 1."""
    f = j.field
    if j.c != f.one:
        raise ChartError(f"chart needs c = 1, got {f.to_str(j.c)}")
    x, y, z = j.components
    one = UniPoly.constant(f, f.one)
    v1 = v2 = None
    if x and x.divides(one - y):
        v1 = (one - y).exact_div(x)
    yp = y + one
    if yp and yp.divides(z):
        v2 = z.exact_div(yp)
    if v1 is None and v2 is None:
        raise ChartError("curve leaves the chart: x does not divide 1 - y and y + 1 does not divide z")
    if v1 is not None and v2 is not None and v1 != v2:
        raise AssertionError("chart expressions disagree")
    return x, (v1 if v1 is not None else v2)


def lift_embedding(j: CurveParam, cap: Optional[int] = None) -> MembershipResult:
    """Membership of t in k[x, v] for the double-cover chart of a c = 1 curve.

    The default cap also admits the relation x^{deg v} = v^{deg x}.
    """
    x, v = double_cover_chart(j)
    if cap is None:
        dx = max(x.degree, 1) if x else 1
        dv = max(v.degree, 1) if v else 1
        cap = max(4 * max(dx, dv), dx * dv)
    return subalgebra_membership([x, v], UniPoly.t(j.field), cap=cap)

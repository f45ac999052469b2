"""Automorphisms of S0 as words in two generator families.

Moebius letters are 2x2 matrices acting on the plane through ``gamma``;
fibered letters ``Psi_s`` act by
    [x : y + s(u) x : z - 2 s(u) y - s(u)^2 x],   u = x^2 / q0.

A word is applied left to right: its first letter acts first.

The p0-stabilizer inside the Moebius family is the lower-triangular
matrices [[a, 0], [c, d]] under ``gamma``.  Such a matrix acts as the
fibration-preserving map with alpha = a/d and constant sigma = -c/d, where
the general fibration-preserving map (alpha, sigma) is
    x -> alpha x,  y -> y + sigma(u) x,  z -> (z - 2 sigma(u) y - sigma(u)^2 x) / alpha.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Union

from .curves import CurveParam
from .fields import FieldError, FieldSpec
from .linalg import mat_vec, primitive_vector
from .poly import TriPoly, UniPoly, parse_poly, q0_form


class GroupError(ValueError):
    pass


class PointOnConic(GroupError):
    pass


# ---------------------------------------------------------------------------
# letters


@dataclass(frozen=True)
class MoebiusLetter:
    """Element of PGL2; ``m`` is a primitive 2x2 representative (tuple of rows)."""

    field: FieldSpec
    m: tuple

    @classmethod
    def of(cls, field: FieldSpec, rows) -> MoebiusLetter:
        flat = [field.coerce(v) for row in rows for v in row]
        if len(flat) != 4:
            raise GroupError("a Moebius letter needs a 2x2 matrix")
        a, b, c, d = flat
        if not field.sub(field.mul(a, d), field.mul(b, c)):
            raise GroupError("singular 2x2 matrix")
        a, b, c, d = primitive_vector(field, flat)
        return cls(field, ((a, b), (c, d)))

    @classmethod
    def diagonal(cls, field, a) -> MoebiusLetter:
        """Generator x -> a x, z -> z / a."""
        return cls.of(field, ((a, 0), (0, 1)))

    @classmethod
    def involution(cls, field) -> MoebiusLetter:
        """Generator [x : y : z] -> [z : -y : x]."""
        return cls.of(field, ((0, 1), (1, 0)))

    @classmethod
    def shear(cls, field, b) -> MoebiusLetter:
        """Generator [x : y + b x : z - 2 b y - b^2 x]."""
        return cls.of(field, ((1, 0), (field.neg(field.coerce(b)), 1)))

    @property
    def det(self):
        f = self.field
        (a, b), (c, d) = self.m
        return f.sub(f.mul(a, d), f.mul(b, c))

    def inverse(self) -> MoebiusLetter:
        f = self.field
        (a, b), (c, d) = self.m
        return MoebiusLetter.of(f, ((d, f.neg(b)), (f.neg(c), a)))

    def fixes_p0(self) -> bool:
        return not self.m[0][1]

    def to_json(self):
        f = self.field
        return {"moebius": [[f.to_str(v) for v in row] for row in self.m]}

    def __str__(self):
        f = self.field
        return "M[" + "; ".join(" ".join(f.to_str(v) for v in row) for row in self.m) + "]"


@dataclass(frozen=True)
class FiberedLetter:
    s: UniPoly

    @property
    def field(self) -> FieldSpec:
        return self.s.field

    def inverse(self) -> FiberedLetter:
        return FiberedLetter(-self.s)

    def fixes_p0(self) -> bool:
        return self.s.is_constant()

    def to_json(self):
        return {"fibered": self.s.to_str()}

    def __str__(self):
        return f"Psi[{self.s}]"


Letter = Union[MoebiusLetter, FiberedLetter]


def gamma(letter: MoebiusLetter):
    """3x3 matrix of the letter acting on column vectors (x, y, z).

    (1/(ad - bc)) [[a^2, -2ab, -b^2], [-ac, ad + bc, bd], [-c^2, 2cd, d^2]];
    it preserves q0 exactly and has determinant 1.
    """
    f = letter.field
    (a, b), (c, d) = letter.m
    inv = f.inv(letter.det)
    two = f.coerce(2)
    rows = [
        [f.mul(a, a), f.neg(f.mul(two, f.mul(a, b))), f.neg(f.mul(b, b))],
        [f.neg(f.mul(a, c)), f.add(f.mul(a, d), f.mul(b, c)), f.mul(b, d)],
        [f.neg(f.mul(c, c)), f.mul(two, f.mul(c, d)), f.mul(d, d)],
    ]
    return [[f.mul(v, inv) for v in row] for row in rows]


def gamma_of_matrix(field: FieldSpec, rows):
    return gamma(MoebiusLetter.of(field, rows))


# ---------------------------------------------------------------------------
# words


@dataclass(frozen=True)
class GroupWord:
    field: FieldSpec
    letters: tuple = ()

    def __len__(self):
        return len(self.letters)

    def __iter__(self):
        return iter(self.letters)

    def __add__(self, other: GroupWord) -> GroupWord:
        if other.field != self.field:
            raise FieldError("field mismatch")
        return GroupWord(self.field, self.letters + other.letters)

    def to_json(self):
        return [l.to_json() for l in self.letters]

    def __str__(self):
        return " . ".join(str(l) for l in self.letters) or "id"


def letter_from_json(obj, field: FieldSpec) -> Letter:
    if not isinstance(obj, dict) or len(obj) != 1:
        raise GroupError(f"letter must be an object with one key, got {obj!r}")
    (kind, val), = obj.items()
    if kind == "moebius":
        return MoebiusLetter.of(field, [[str(v) for v in row] for row in val])
    if kind == "fibered":
        return FiberedLetter(parse_poly(str(val), field))
    raise GroupError(f"unknown letter kind {kind!r}")


def word_from_json(arr, field: FieldSpec) -> GroupWord:
    if not isinstance(arr, list):
        raise GroupError("a word is a JSON array of letters")
    return GroupWord(field, tuple(letter_from_json(o, field) for o in arr))


def invert_word(w: GroupWord) -> GroupWord:
    return GroupWord(w.field, tuple(l.inverse() for l in reversed(w.letters)))


# ---------------------------------------------------------------------------
# actions


def apply_letter_point(letter: Letter, point):
    """Image of a point of S0 given as a raw coordinate triple or ProjPoint."""
    from .conic import ProjPoint

    f = letter.field
    v = list(point.coords) if isinstance(point, ProjPoint) else [f.coerce(c) for c in point]
    q = f.add(f.mul(v[0], v[2]), f.mul(v[1], v[1]))
    if not q:
        raise PointOnConic("point lies on Q0")
    if isinstance(letter, MoebiusLetter):
        out = mat_vec(f, gamma(letter), v)
    else:
        x, y, z = v
        sig = letter.s.evaluate_raw(f.div(f.mul(x, x), q))
        out = [
            x,
            f.add(y, f.mul(sig, x)),
            f.sub(f.sub(z, f.mul(f.coerce(2), f.mul(sig, y))), f.mul(f.mul(sig, sig), x)),
        ]
    return ProjPoint(f, primitive_vector(f, out))


def apply_word_point(w: GroupWord, point):
    from .conic import ProjPoint

    P = point if isinstance(point, ProjPoint) else ProjPoint.of(w.field, point)
    for letter in w.letters:
        P = apply_letter_point(letter, P)
    return P


def apply_letter_curve(letter: Letter, j: CurveParam) -> CurveParam:
    f = j.field
    if letter.field != f:
        raise FieldError("field mismatch between letter and curve")
    x, y, z = j.components
    if isinstance(letter, MoebiusLetter):
        G = gamma(letter)
        comps = []
        for row in G:
            acc = UniPoly.zero(f)
            for coef, p in zip(row, (x, y, z)):
                if coef:
                    acc = acc + p.scale(coef)
            comps.append(acc)
        return CurveParam(comps[0], comps[1], comps[2], j.c)
    u = (x * x).scale(f.inv(j.c))
    sig = letter.s.compose(u)
    sx = sig * x
    y2 = y + sx
    z2 = z - (sig * y).scale(f.coerce(2)) - sig * sx
    return CurveParam(x, y2, z2, j.c)


def apply_word_curve(w: GroupWord, j: CurveParam) -> CurveParam:
    for letter in w.letters:
        j = apply_letter_curve(letter, j)
    return j


# ---------------------------------------------------------------------------
# symbolic invariance


def fibered_cleared_map(s: UniPoly):
    """The fibered map with denominators cleared: three TriPolys.

    With n = deg s and S = q0^n s(x^2/q0) (a form of degree 2n), the map is
    (q0^{2n} x, q0^{2n} y + q0^n S x, q0^{2n} z - 2 q0^n S y - S^2 x).
    """
    f = s.field
    q0 = q0_form(f)
    n = s.degree if s else 0
    X, Y, Z = (TriPoly.var(f, i) for i in range(3))
    x2 = X * X
    S = TriPoly.constant(f, 0)
    for k, coef in enumerate(s.coeffs):
        if coef:
            S = S + TriPoly.constant(f, coef) * x2**k * q0 ** (n - k)
    qn = q0**n
    q2n = qn * qn
    two = TriPoly.constant(f, 2)
    return (q2n * X, q2n * Y + qn * S * X, q2n * Z - two * qn * S * Y - S * S * X), q2n


def letter_preserves_q0(letter: Letter) -> bool:
    f = letter.field
    q0 = q0_form(f)
    if isinstance(letter, MoebiusLetter):
        return q0.linear_substitute(gamma(letter)) == q0
    images, clear = fibered_cleared_map(letter.s)
    return q0.substitute(images) == q0 * clear * clear


def q0_pullback_check(w: GroupWord) -> bool:
    """Every letter pulls q0 back to q0 times the square of its clearing factor.

    Pullbacks compose, so this certifies the whole word.
    """
    return all(letter_preserves_q0(l) for l in w.letters)


# ---------------------------------------------------------------------------
# the fibration-preserving subgroup


@dataclass(frozen=True)
class FiberMap:
    """(alpha, sigma): x -> alpha x, y -> y + sigma(u) x, u = x^2/q0."""

    alpha: object
    sigma: UniPoly

    @property
    def field(self):
        return self.sigma.field

    @classmethod
    def identity(cls, field):
        return cls(field.one, UniPoly.zero(field))

    @classmethod
    def from_letter(cls, letter: Letter) -> FiberMap:
        f = letter.field
        if isinstance(letter, FiberedLetter):
            return cls(f.one, letter.s)
        if not letter.fixes_p0():
            raise GroupError(f"{letter} does not preserve the fibration")
        (a, _), (c, d) = letter.m
        return cls(f.div(a, d), UniPoly.constant(f, f.neg(f.div(c, d))))

    def then(self, other: FiberMap) -> FiberMap:
        """Apply self, then other."""
        f = self.field
        a1 = self.alpha
        rescaled = _rescale_variable(other.sigma, f.mul(a1, a1))
        return FiberMap(f.mul(a1, other.alpha), self.sigma + rescaled.scale(a1))

    def split(self):
        """self = head then Psi_r with head constant and r(0) = 0."""
        f = self.field
        s0 = self.sigma.constant_term()
        head = FiberMap(self.alpha, UniPoly.constant(f, s0))
        inv_a = f.inv(self.alpha)
        r = _rescale_variable(self.sigma - UniPoly.constant(f, s0), f.mul(inv_a, inv_a)).scale(inv_a)
        return head, r

    def is_identity(self):
        return self.alpha == self.field.one and self.sigma.is_zero()

    def to_matrix(self):
        """Lower-triangular matrix of a constant-sigma element."""
        f = self.field
        if not self.sigma.is_constant():
            raise GroupError("only constant sigma lies in the Moebius family")
        return ((self.alpha, f.zero), (f.neg(self.sigma.constant_term()), f.one))


def _rescale_variable(p: UniPoly, lam) -> UniPoly:
    """p(lam * t)."""
    f = p.field
    out = []
    pw = f.one
    for c in p.coeffs:
        out.append(f.mul(c, pw))
        pw = f.mul(pw, lam)
    return UniPoly._make(f, out)


def scaling_character(w: GroupWord):
    """The factor by which the word rescales the fiber coordinate x^2/q0."""
    f = w.field
    total = f.one
    for letter in w.letters:
        g = FiberMap.from_letter(letter)
        total = f.mul(total, f.mul(g.alpha, g.alpha))
    return total


# ---------------------------------------------------------------------------
# normal form in the amalgamated product


def _mat2_mul(f, A, B):
    return (
        (f.add(f.mul(A[0][0], B[0][0]), f.mul(A[0][1], B[1][0])), f.add(f.mul(A[0][0], B[0][1]), f.mul(A[0][1], B[1][1]))),
        (f.add(f.mul(A[1][0], B[0][0]), f.mul(A[1][1], B[1][0])), f.add(f.mul(A[1][0], B[0][1]), f.mul(A[1][1], B[1][1]))),
    )


def moebius_rep(field, s):
    """Coset representative sending p0 to [1 : s : -s^2]."""
    return ((field.zero, field.one), (field.one, field.neg(s)))


def _split_moebius(f, M):
    """M (apply-order element of PGL2) = head then rep; returns (FiberMap head, s or None)."""
    (a, b), (c, d) = M
    if not b:
        return FiberMap(f.div(a, d), UniPoly.constant(f, f.neg(f.div(c, d)))), None
    s = f.neg(f.div(d, b))
    # head = M then rep^{-1}; as a matrix rep^{-1} . M with rep^{-1} = [[s, 1], [1, 0]]
    H = _mat2_mul(f, ((s, f.one), (f.one, f.zero)), M)
    (ha, hb), (hc, hd) = H
    assert not hb
    return FiberMap(f.div(ha, hd), UniPoly.constant(f, f.neg(f.div(hc, hd)))), s


@dataclass(frozen=True)
class NormalWord:
    """head (in the intersection) followed by alternating coset representatives.

    Body entries are ("A", s) for the Moebius representative [[0, 1], [1, -s]]
    or ("B", r) for Psi_r with r nonconstant and r(0) = 0.
    """

    field: FieldSpec
    head: FiberMap
    body: tuple

    def is_identity(self) -> bool:
        return self.head.is_identity() and not self.body

    def to_word(self) -> GroupWord:
        f = self.field
        letters = []
        if not self.head.is_identity():
            letters.append(MoebiusLetter.of(f, self.head.to_matrix()))
        for kind, val in self.body:
            if kind == "A":
                letters.append(MoebiusLetter.of(f, moebius_rep(f, val)))
            else:
                letters.append(FiberedLetter(val))
        return GroupWord(f, tuple(letters))

    def to_json(self):
        f = self.field
        head = MoebiusLetter.of(f, self.head.to_matrix())
        body = []
        for kind, val in self.body:
            if kind == "A":
                body.append({"moebius": MoebiusLetter.of(f, moebius_rep(f, val)).to_json()["moebius"]})
            else:
                body.append({"fibered": val.to_str()})
        return {"head": head.to_json(), "body": body, "identity": self.is_identity()}


def normal_form(w: GroupWord) -> NormalWord:
    f = w.field
    head = FiberMap.identity(f)
    body: list = []
    for letter in reversed(w.letters):
        if isinstance(letter, MoebiusLetter):
            # apply letter, then head: matrix head . letter
            g = _mat2_mul(f, head.to_matrix(), letter.m)
            if body and body[0][0] == "A":
                g = _mat2_mul(f, moebius_rep(f, body[0][1]), g)
                body.pop(0)
            head, s = _split_moebius(f, g)
            if s is not None:
                body.insert(0, ("A", s))
        else:
            g = FiberMap.from_letter(letter).then(head)
            if body and body[0][0] == "B":
                g = g.then(FiberMap(f.one, body[0][1]))
                body.pop(0)
            head, r = g.split()
            if r:
                body.insert(0, ("B", r))
    return NormalWord(f, head, tuple(body))

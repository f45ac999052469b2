"""Univariate and trivariate polynomials over a :class:`FieldSpec`.

``UniPoly`` stores a dense coefficient tuple (lowest degree first) with no
trailing zeros.  ``TriPoly`` is a sparse map from exponent triples to
nonzero coefficients.  Both are immutable.
"""

from __future__ import annotations

import re
from functools import reduce

import gmpy2
from gmpy2 import mpq

from .fields import NEG_INF, FieldError, FieldSpec, RATIONALS, Scalar

# Below this many coefficient products, schoolbook multiplication wins.
_KRONECKER_THRESHOLD = 400


class PolyError(ArithmeticError):
    """Inexact division, field mismatch and similar failures."""


def _trim(coeffs):
    n = len(coeffs)
    while n and not coeffs[n - 1]:
        n -= 1
    return tuple(coeffs[:n])


def _pack_le(coeffs, width):
    return int.from_bytes(b"".join(int(c).to_bytes(width, "little") for c in coeffs), "little")


def _unpack(value, width, count):
    raw = value.to_bytes(width * count, "little")
    return [int.from_bytes(raw[i * width : (i + 1) * width], "little") for i in range(count)]


def _kronecker_nonneg(a, b):
    """Product of two nonnegative integer coefficient lists."""
    if not a or not b:
        return [0] * max(len(a) + len(b) - 1, 0)
    bound = max(a) * max(b) * min(len(a), len(b))
    width = max(1, (int(bound).bit_length() + 8) // 8)
    prod = _pack_le(a, width) * _pack_le(b, width)
    return _unpack(prod, width, len(a) + len(b) - 1)


def int_poly_mul(a, b):
    """Product of integer coefficient lists via Kronecker substitution."""
    ap = [c if c > 0 else 0 for c in a]
    an = [-c if c < 0 else 0 for c in a]
    bp = [c if c > 0 else 0 for c in b]
    bn = [-c if c < 0 else 0 for c in b]
    n = len(a) + len(b) - 1
    out = [0] * n
    if any(ap) and any(bp):
        for i, c in enumerate(_kronecker_nonneg(ap, bp)):
            out[i] += c
    if any(an) and any(bn):
        for i, c in enumerate(_kronecker_nonneg(an, bn)):
            out[i] += c
    if any(ap) and any(bn):
        for i, c in enumerate(_kronecker_nonneg(ap, bn)):
            out[i] -= c
    if any(an) and any(bp):
        for i, c in enumerate(_kronecker_nonneg(an, bp)):
            out[i] -= c
    return out


def _schoolbook(field, a, b):
    out = [field.zero] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if not ai:
            continue
        for j, bj in enumerate(b):
            out[i + j] += ai * bj
    if field.p:
        out = [c % field.p for c in out]
    return out


def _mul_coeffs(field, a, b):
    if not a or not b:
        return ()
    if len(a) * len(b) < _KRONECKER_THRESHOLD:
        return _trim(_schoolbook(field, a, b))
    if field.p:
        return _trim([c % field.p for c in _kronecker_nonneg(list(a), list(b))])
    da = reduce(gmpy2.lcm, (c.denominator for c in a), gmpy2.mpz(1))
    db = reduce(gmpy2.lcm, (c.denominator for c in b), gmpy2.mpz(1))
    ia = [int(c * da) for c in a]
    ib = [int(c * db) for c in b]
    den = da * db
    return _trim([mpq(c, den) for c in int_poly_mul(ia, ib)])


class UniPoly:
    """Dense univariate polynomial in ``t`` with canonical coefficients."""

    __slots__ = ("field", "coeffs", "_hash")

    def __init__(self, field: FieldSpec, coeffs=(), *, _raw=False):
        self.field = field
        if _raw:
            self.coeffs = coeffs
        else:
            self.coeffs = _trim([field.coerce(c) for c in coeffs])
        self._hash = None

    # construction -----------------------------------------------------------

    @classmethod
    def _make(cls, field, coeffs):
        return cls(field, _trim(coeffs), _raw=True)

    @classmethod
    def zero(cls, field: FieldSpec) -> UniPoly:
        return cls(field, (), _raw=True)

    @classmethod
    def constant(cls, field: FieldSpec, value) -> UniPoly:
        return cls(field, (value,))

    @classmethod
    def monomial(cls, field: FieldSpec, degree: int, coeff=1) -> UniPoly:
        c = field.coerce(coeff)
        return cls._make(field, (field.zero,) * degree + (c,))

    @classmethod
    def t(cls, field: FieldSpec) -> UniPoly:
        return cls.monomial(field, 1)

    @classmethod
    def parse(cls, text: str, field: FieldSpec = RATIONALS) -> UniPoly:
        return parse_poly(text, field)

    # basic queries ----------------------------------------------------------

    @property
    def degree(self):
        return len(self.coeffs) - 1 if self.coeffs else NEG_INF

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_constant(self) -> bool:
        return len(self.coeffs) <= 1

    @property
    def lc(self):
        """Raw leading coefficient (field zero for the zero polynomial)."""
        return self.coeffs[-1] if self.coeffs else self.field.zero

    def leading_coefficient(self) -> Scalar:
        return Scalar(self.field, self.lc)

    def coeff(self, k: int):
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else self.field.zero

    def constant_term(self):
        return self.coeff(0)

    def __len__(self):
        return len(self.coeffs)

    def __bool__(self):
        return bool(self.coeffs)

    def __eq__(self, other):
        if isinstance(other, UniPoly):
            return self.field == other.field and self.coeffs == other.coeffs
        if isinstance(other, (int, Scalar)):
            return self == self._lift(other)
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.field, self.coeffs))
        return self._hash

    # arithmetic -------------------------------------------------------------

    def _check(self, other: UniPoly):
        if other.field != self.field:
            raise FieldError(f"field mismatch: {self.field} vs {other.field}")

    def _lift(self, other):
        if isinstance(other, UniPoly):
            self._check(other)
            return other
        return UniPoly(self.field, (self.field.coerce(other),))

    def __add__(self, other):
        other = self._lift(other)
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] = out[i] + c
        if self.field.p:
            out = [c % self.field.p for c in out]
        return UniPoly._make(self.field, out)

    __radd__ = __add__

    def __neg__(self):
        return UniPoly._make(self.field, [self.field.neg(c) for c in self.coeffs])

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        if isinstance(other, UniPoly):
            self._check(other)
            return UniPoly._make(self.field, _mul_coeffs(self.field, self.coeffs, other.coeffs))
        return self.scale(self.field.coerce(other) if not isinstance(other, Scalar) else other.value)

    __rmul__ = __mul__

    def scale(self, c) -> UniPoly:
        """Multiply by a raw field element."""
        f = self.field
        if not c:
            return UniPoly.zero(f)
        return UniPoly._make(f, [f.mul(a, c) for a in self.coeffs])

    def __pow__(self, n: int):
        if n < 0:
            raise PolyError("negative power of a polynomial")
        result = UniPoly(self.field, (self.field.one,), _raw=True)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def shift(self, k: int) -> UniPoly:
        """Multiply by t**k."""
        if not self.coeffs:
            return self
        return UniPoly._make(self.field, (self.field.zero,) * k + self.coeffs)

    def divmod(self, other: UniPoly):
        self._check(other)
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        f = self.field
        rem = list(self.coeffs)
        db = len(other.coeffs) - 1
        inv_lc = f.inv(other.lc)
        if len(rem) - 1 < db:
            return UniPoly.zero(f), self
        quot = [f.zero] * (len(rem) - db)
        bc = other.coeffs
        for k in range(len(rem) - 1 - db, -1, -1):
            c = rem[k + db]
            if not c:
                continue
            q = f.mul(c, inv_lc)
            quot[k] = q
            for i, b in enumerate(bc):
                rem[k + i] = f.sub(rem[k + i], f.mul(q, b))
        return UniPoly._make(f, quot), UniPoly._make(f, rem[:db])

    def __floordiv__(self, other):
        return self.divmod(other)[0]

    def __mod__(self, other):
        return self.divmod(other)[1]

    def exact_div(self, other: UniPoly) -> UniPoly:
        q, r = self.divmod(other)
        if r:
            raise PolyError("inexact division requested as exact")
        return q

    def divides(self, other: UniPoly) -> bool:
        if self.is_zero():
            return other.is_zero()
        return not (other % self)

    def monic(self) -> UniPoly:
        if self.is_zero():
            return self
        return self.scale(self.field.inv(self.lc))

    def gcd(self, other: UniPoly) -> UniPoly:
        a, b = self, self._lift(other)
        while b:
            a, b = b, a % b
        return a.monic()

    def compose(self, inner: UniPoly) -> UniPoly:
        """``self(inner(t))`` by Horner's rule."""
        self._check(inner)
        result = UniPoly.zero(self.field)
        for c in reversed(self.coeffs):
            result = result * inner + UniPoly(self.field, (c,), _raw=True)
        return result

    def __call__(self, value):
        if isinstance(value, UniPoly):
            return self.compose(value)
        raw = value.value if isinstance(value, Scalar) else self.field.coerce(value)
        return Scalar(self.field, self.evaluate_raw(raw))

    def evaluate_raw(self, x):
        f = self.field
        acc = f.zero
        for c in reversed(self.coeffs):
            acc = acc * x + c
            if f.p:
                acc %= f.p
        return acc

    def derivative(self) -> UniPoly:
        f = self.field
        return UniPoly._make(f, [f.mul(c, f.coerce(i)) for i, c in enumerate(self.coeffs)][1:])

    # text -------------------------------------------------------------------

    def to_str(self, var: str = "t") -> str:
        if not self.coeffs:
            return "0"
        f = self.field
        parts = []
        for k in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[k]
            if not c:
                continue
            neg = False
            if not f.p and c < 0:
                neg, c = True, -c
            cs = f.to_str(c)
            if k == 0:
                body = cs
            else:
                mono = var if k == 1 else f"{var}^{k}"
                body = mono if cs == "1" else f"{cs}*{mono}"
            if not parts:
                parts.append(("-" if neg else "") + body)
            else:
                parts.append(("- " if neg else "+ ") + body)
        return " ".join(parts)

    def __str__(self):
        return self.to_str()

    def __repr__(self):
        return f"UniPoly({self.field.tag}, {self.to_str()!r})"


_TERM_RE = re.compile(
    r"""\s*(?P<sign>[+-])?\s*
        (?:
          (?P<coef>\d+(?:\s*/\s*\d+)?)\s*(?:\*\s*)?(?P<v1>[a-z])(?:\s*\^\s*(?P<e1>\d+))?
        | (?P<v2>[a-z])(?:\s*\^\s*(?P<e2>\d+))?
        | (?P<const>\d+(?:\s*/\s*\d+)?)
        )\s*""",
    re.VERBOSE,
)


def parse_poly(text: str, field: FieldSpec = RATIONALS, var: str = "t") -> UniPoly:
    """Parse a sparse ``coeff*t^k`` sum such as ``"t^12 + t"`` or ``"1 - 3/2*t^2"``."""
    src = text.replace("−", "-").replace("**", "^").strip()
    if not src:
        raise PolyError("empty polynomial text")
    coeffs: dict[int, object] = {}
    pos = 0
    first = True
    while pos < len(src):
        m = _TERM_RE.match(src, pos)
        if not m or m.end() == pos:
            raise PolyError(f"cannot parse polynomial at column {pos}: {text!r}")
        if not first and m.group("sign") is None:
            raise PolyError(f"missing '+' or '-' at column {pos}: {text!r}")
        first = False
        v = m.group("v1") or m.group("v2")
        if v is not None and v != var:
            raise PolyError(f"unexpected variable {v!r} at column {pos}: {text!r}")
        if m.group("const") is not None:
            coef, exp = m.group("const"), 0
        elif m.group("v1") is not None:
            coef, exp = m.group("coef"), int(m.group("e1") or 1)
        else:
            coef, exp = "1", int(m.group("e2") or 1)
        c = field.coerce(coef.replace(" ", ""))
        if m.group("sign") == "-":
            c = field.neg(c)
        coeffs[exp] = field.add(coeffs.get(exp, field.zero), c)
        pos = m.end()
    dense = [field.zero] * (max(coeffs) + 1)
    for k, c in coeffs.items():
        dense[k] = c
    return UniPoly._make(field, dense)


# ---------------------------------------------------------------------------
# trivariate


class TriPoly:
    """Sparse polynomial in x, y, z; exponent triple -> nonzero raw coefficient."""

    __slots__ = ("field", "terms")

    def __init__(self, field: FieldSpec, terms=None):
        self.field = field
        clean = {}
        for e, c in (terms or {}).items():
            c = field.coerce(c)
            if c:
                clean[tuple(e)] = c
        self.terms = clean

    @classmethod
    def _make(cls, field, terms):
        obj = cls.__new__(cls)
        obj.field = field
        obj.terms = terms
        return obj

    @classmethod
    def var(cls, field: FieldSpec, index: int) -> TriPoly:
        e = [0, 0, 0]
        e[index] = 1
        return cls._make(field, {tuple(e): field.one})

    @classmethod
    def constant(cls, field: FieldSpec, value) -> TriPoly:
        c = field.coerce(value)
        return cls._make(field, {(0, 0, 0): c} if c else {})

    def is_zero(self) -> bool:
        return not self.terms

    def degree(self):
        return max((sum(e) for e in self.terms), default=NEG_INF)

    def homogeneous_degree(self):
        """Common total degree of all terms, or None if not homogeneous."""
        degs = {sum(e) for e in self.terms}
        if len(degs) == 1:
            return degs.pop()
        return None if degs else NEG_INF

    def __eq__(self, other):
        if not isinstance(other, TriPoly):
            return NotImplemented
        return self.field == other.field and self.terms == other.terms

    def __hash__(self):
        return hash((self.field, frozenset(self.terms.items())))

    def _check(self, other):
        if not isinstance(other, TriPoly):
            other = TriPoly.constant(self.field, other)
        if other.field != self.field:
            raise FieldError("field mismatch")
        return other

    def __add__(self, other):
        other = self._check(other)
        f = self.field
        out = dict(self.terms)
        for e, c in other.terms.items():
            v = f.add(out.get(e, f.zero), c)
            if v:
                out[e] = v
            else:
                out.pop(e, None)
        return TriPoly._make(f, out)

    __radd__ = __add__

    def __neg__(self):
        f = self.field
        return TriPoly._make(f, {e: f.neg(c) for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._check(other))

    def __mul__(self, other):
        other = self._check(other)
        f = self.field
        out: dict = {}
        for (a1, b1, c1), u in self.terms.items():
            for (a2, b2, c2), v in other.terms.items():
                e = (a1 + a2, b1 + b2, c1 + c2)
                out[e] = out.get(e, f.zero) + u * v
        if f.p:
            out = {e: c % f.p for e, c in out.items()}
        return TriPoly._make(f, {e: c for e, c in out.items() if c})

    __rmul__ = __mul__

    def __pow__(self, n: int):
        result = TriPoly.constant(self.field, 1)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def substitute(self, images) -> TriPoly:
        """Compose with three TriPolys (x, y, z) -> images."""
        X, Y, Z = images
        cache = [{0: TriPoly.constant(self.field, 1)} for _ in range(3)]

        def power(i, base, n):
            if n not in cache[i]:
                cache[i][n] = base**n
            return cache[i][n]

        result = TriPoly._make(self.field, {})
        for (a, b, c), coef in self.terms.items():
            term = power(0, X, a) * power(1, Y, b) * power(2, Z, c)
            result = result + TriPoly._make(self.field, {e: self.field.mul(v, coef) for e, v in term.terms.items()})
        return result

    def linear_substitute(self, matrix) -> TriPoly:
        """Substitute (x, y, z) -> matrix . (x, y, z) for a 3x3 raw-entry matrix."""
        f = self.field
        rows = []
        for row in matrix:
            units = ((1, 0, 0), (0, 1, 0), (0, 0, 1))
            rows.append(TriPoly(f, dict(zip(units, row))))
        return self.substitute(rows)

    def evaluate(self, x, y, z) -> UniPoly:
        """Substitute three UniPolys for x, y, z."""
        f = self.field
        for p in (x, y, z):
            if p.field != f:
                raise FieldError("field mismatch in tri_eval")
        pw = [{0: UniPoly(f, (f.one,), _raw=True)} for _ in range(3)]
        base = (x, y, z)

        def power(i, n):
            if n not in pw[i]:
                pw[i][n] = base[i] ** n
            return pw[i][n]

        result = UniPoly.zero(f)
        for (a, b, c), coef in self.terms.items():
            result = result + (power(0, a) * power(1, b) * power(2, c)).scale(coef)
        return result

    def evaluate_point(self, point):
        f = self.field
        acc = f.zero
        for (a, b, c), coef in self.terms.items():
            acc = acc + coef * point[0] ** a * point[1] ** b * point[2] ** c
        return acc % f.p if f.p else acc

    def __str__(self):
        if not self.terms:
            return "0"
        f = self.field
        parts = []
        for e in sorted(self.terms, reverse=True):
            mono = "*".join(f"{v}^{k}" if k > 1 else v for v, k in zip("xyz", e) if k)
            cs = f.to_str(self.terms[e])
            parts.append(mono if (cs == "1" and mono) else (f"{cs}*{mono}" if mono else cs))
        return " + ".join(parts)

    def __repr__(self):
        return f"TriPoly({self.field.tag}, {self})"


def tri_eval(f: TriPoly, x: UniPoly, y: UniPoly, z: UniPoly) -> UniPoly:
    return f.evaluate(x, y, z)


def q0_form(field: FieldSpec) -> TriPoly:
    """The quadratic form xz + y^2 defining the conic Q0."""
    return TriPoly(field, {(1, 0, 1): 1, (0, 2, 0): 1})

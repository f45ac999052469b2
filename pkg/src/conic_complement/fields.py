"""Coefficient fields: the rationals and prime fields F_p.

Raw field elements are ``gmpy2.mpq`` for the rationals and Python ``int``
residues in ``[0, p)`` for prime fields.  Polynomial code works on raw
elements for speed; :class:`Scalar` wraps one element together with its
field for the public surface.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from functools import total_ordering

import gmpy2
from gmpy2 import mpq, mpz


class FieldError(ValueError):
    """Raised for invalid field specifications or mixed-field operations."""


@total_ordering
class _NegInf:
    """Degree of the zero polynomial; compares below every integer."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "NEG_INF"

    def __str__(self):
        return "-inf"

    def __eq__(self, other):
        return other is self

    def __lt__(self, other):
        return other is not self

    def __hash__(self):
        return hash("NEG_INF")

    def __add__(self, other):
        return self

    __radd__ = __add__

    def __reduce__(self):
        return (_NegInf, ())


NEG_INF = _NegInf()

_RATIONAL_RE = re.compile(r"^\s*([+-]?\d+)\s*(?:/\s*(\d+))?\s*$")


@dataclass(frozen=True)
class FieldSpec:
    """Either the rationals (``p == 0``) or the prime field F_p."""

    p: int = 0

    def __post_init__(self):
        if self.p < 0 or self.p == 1:
            raise FieldError(f"invalid characteristic {self.p}")
        if self.p and not gmpy2.is_prime(self.p):
            raise FieldError(f"NOT_PRIME: {self.p} is not prime")

    @classmethod
    def parse(cls, tag: str) -> FieldSpec:
        tag = tag.strip()
        if tag in ("Q", "QQ"):
            return RATIONALS
        m = re.fullmatch(r"(?:F|GF)\(?(\d+)\)?", tag)
        if not m:
            raise FieldError(f"unknown field tag {tag!r}")
        return cls(int(m.group(1)))

    @property
    def tag(self) -> str:
        return f"F{self.p}" if self.p else "Q"

    @property
    def characteristic(self) -> int:
        return self.p

    @property
    def is_rational(self) -> bool:
        return self.p == 0

    def __str__(self):
        return self.tag

    # raw element operations -------------------------------------------------

    @property
    def zero(self):
        return 0 if self.p else mpq(0)

    @property
    def one(self):
        return 1 if self.p else mpq(1)

    def coerce(self, value):
        """Convert ints, Fractions, mpq, numeric strings or Scalars to a raw element."""
        if isinstance(value, Scalar):
            if value.field != self:
                raise FieldError(f"scalar over {value.field} used in {self}")
            return value.value
        if isinstance(value, str):
            m = _RATIONAL_RE.match(value.replace("−", "-"))
            if not m:
                raise FieldError(f"cannot parse field element {value!r}")
            num = int(m.group(1))
            den = int(m.group(2)) if m.group(2) else 1
            value = Fraction(num, den)
        if self.p:
            if isinstance(value, (int, mpz)):
                return int(value) % self.p
            if isinstance(value, (Fraction, mpq)):
                num, den = int(value.numerator), int(value.denominator)
                if den % self.p == 0:
                    raise ZeroDivisionError(f"denominator {den} vanishes in F{self.p}")
                return num * pow(den, -1, self.p) % self.p
            raise FieldError(f"cannot coerce {value!r} into {self}")
        if isinstance(value, (int, Fraction, mpz, mpq)):
            if isinstance(value, Fraction):
                return mpq(value.numerator, value.denominator)
            return mpq(value)
        raise FieldError(f"cannot coerce {value!r} into {self}")

    def add(self, a, b):
        return (a + b) % self.p if self.p else a + b

    def sub(self, a, b):
        return (a - b) % self.p if self.p else a - b

    def mul(self, a, b):
        return a * b % self.p if self.p else a * b

    def neg(self, a):
        return -a % self.p if self.p else -a

    def inv(self, a):
        if not a:
            raise ZeroDivisionError("inverse of zero")
        return pow(a, -1, self.p) if self.p else 1 / a

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def pow(self, a, n: int):
        if n < 0:
            return self.pow(self.inv(a), -n)
        return pow(a, n, self.p) if self.p else a**n

    def is_square(self, a) -> bool:
        return self.sqrt(a) is not None

    def sqrt(self, a):
        """A square root of ``a`` in the field, or None."""
        if not a:
            return self.zero
        if self.p:
            if self.p == 2:
                return a
            if pow(a, (self.p - 1) // 2, self.p) != 1:
                return None
            from sympy.ntheory.residue_ntheory import sqrt_mod

            return min(sqrt_mod(a, self.p, all_roots=True))
        num, den = a.numerator, a.denominator
        if num < 0 or not gmpy2.is_square(num) or not gmpy2.is_square(den):
            return None
        return mpq(gmpy2.isqrt(num), gmpy2.isqrt(den))

    def to_str(self, a) -> str:
        if self.p:
            return str(int(a))
        if a.denominator == 1:
            return str(a.numerator)
        return f"{a.numerator}/{a.denominator}"


RATIONALS = FieldSpec(0)


def field_of(tag_or_spec) -> FieldSpec:
    if isinstance(tag_or_spec, FieldSpec):
        return tag_or_spec
    if isinstance(tag_or_spec, int):
        return FieldSpec(tag_or_spec)
    return FieldSpec.parse(tag_or_spec)


@dataclass(frozen=True)
class Scalar:
    """A field element in canonical form, tagged with its field."""

    field: FieldSpec
    value: object

    @classmethod
    def of(cls, field: FieldSpec, value) -> Scalar:
        return cls(field, field.coerce(value))

    def _other(self, other):
        if isinstance(other, Scalar):
            if other.field != self.field:
                raise FieldError(f"field mismatch: {self.field} vs {other.field}")
            return other.value
        return self.field.coerce(other)

    def __add__(self, other):
        return Scalar(self.field, self.field.add(self.value, self._other(other)))

    __radd__ = __add__

    def __sub__(self, other):
        return Scalar(self.field, self.field.sub(self.value, self._other(other)))

    def __rsub__(self, other):
        return Scalar(self.field, self.field.sub(self._other(other), self.value))

    def __mul__(self, other):
        return Scalar(self.field, self.field.mul(self.value, self._other(other)))

    __rmul__ = __mul__

    def __truediv__(self, other):
        return Scalar(self.field, self.field.div(self.value, self._other(other)))

    def __neg__(self):
        return Scalar(self.field, self.field.neg(self.value))

    def __pow__(self, n):
        return Scalar(self.field, self.field.pow(self.value, n))

    def __bool__(self):
        return bool(self.value)

    def __eq__(self, other):
        if isinstance(other, Scalar):
            return self.field == other.field and self.value == other.value
        try:
            return self.value == self.field.coerce(other)
        except (FieldError, ZeroDivisionError):
            return NotImplemented

    def __hash__(self):
        return hash((self.field, self.value))

    def inverse(self) -> Scalar:
        return Scalar(self.field, self.field.inv(self.value))

    def __str__(self):
        return self.field.to_str(self.value)

    def __repr__(self):
        return f"Scalar({self.field.tag}, {self})"

"""Membership in subalgebras k[g_1, ..., g_n] of k[t] by subduction.

The basis is completed SAGBI-style: lead degrees form a numerical
semigroup, its Apéry presentation yields the binomial relations whose
tête-à-têtes must subduce to zero, and nonzero remainders join the basis.
A target that subduces to zero is a member, with a straight-line witness.
A target that stalls is a certified non-member only if completion finished
below the degree cap; otherwise the verdict is undecided.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from typing import Optional

from .fields import FieldError, FieldSpec
from .poly import UniPoly
from .semigroup import presentation

MEMBER = "member"
NOT_MEMBER = "not_member"
UNDECIDED = "undecided_at_cap"


class SubalgebraError(ValueError):
    pass


class Expr:
    """Formal polynomial in named symbols with raw field coefficients.

    Monomials are tuples of ``(symbol, power)`` sorted by symbol.
    """

    __slots__ = ("field", "terms")

    def __init__(self, field: FieldSpec, terms=None):
        self.field = field
        self.terms = dict(terms or {})

    @classmethod
    def symbol(cls, field, name):
        return cls(field, {((name, 1),): field.one})

    def add_term(self, mono, coeff):
        f = self.field
        v = f.add(self.terms.get(mono, f.zero), coeff)
        if v:
            self.terms[mono] = v
        else:
            self.terms.pop(mono, None)

    def evaluate(self, env) -> UniPoly:
        f = self.field
        total = UniPoly.zero(f)
        for mono, c in self.terms.items():
            term = UniPoly(f, (c,), _raw=True)
            for name, k in mono:
                term = term * env[name] ** k
            total = total + term
        return total

    def to_str(self) -> str:
        if not self.terms:
            return "0"
        f = self.field
        parts = []
        for mono in sorted(self.terms, key=lambda m: (-sum(k for _, k in m), m)):
            c = f.to_str(self.terms[mono])
            body = "*".join(n if k == 1 else f"{n}^{k}" for n, k in mono)
            if not body:
                parts.append(c)
            elif c == "1":
                parts.append(body)
            elif c == "-1":
                parts.append("-" + body)
            else:
                parts.append(f"{c}*{body}")
        return " + ".join(parts).replace("+ -", "- ")

    def __str__(self):
        return self.to_str()

    def __repr__(self):
        return f"Expr({self.to_str()!r})"


def _mono_key(exps, names):
    return tuple((names[i], e) for i, e in enumerate(exps) if e)


@dataclass
class Witness:
    """Straight-line program: each definition uses only earlier names.

    Inputs are ``g0, g1, ...``; derived basis elements are ``b0, b1, ...``.
    """

    field: FieldSpec
    generators: list
    definitions: list = dc_field(default_factory=list)
    expression: Optional[Expr] = None

    def evaluate(self) -> UniPoly:
        env = {f"g{i}": g for i, g in enumerate(self.generators)}
        for name, expr in self.definitions:
            env[name] = expr.evaluate(env)
        return self.expression.evaluate(env)

    def to_json(self):
        return {
            "generators": [g.to_str() for g in self.generators],
            "definitions": [[n, e.to_str()] for n, e in self.definitions],
            "target": self.expression.to_str() if self.expression is not None else None,
        }


@dataclass
class MembershipResult:
    status: str
    witness: Optional[Witness] = None
    obstruction_degree: Optional[int] = None
    lead_degrees: tuple = ()
    completed: bool = False

    @property
    def member(self):
        return self.status == MEMBER

    def to_json(self):
        out = {"status": self.status, "member": self.member}
        if self.witness is not None:
            out["witness"] = self.witness.to_json()
        if self.obstruction_degree is not None:
            out["obstruction_degree"] = self.obstruction_degree
        out["lead_degrees"] = list(self.lead_degrees)
        out["basis_complete"] = self.completed
        return out


class _Basis:
    """Monic basis elements with zero constant term, plus their definitions."""

    def __init__(self, field, gens):
        self.field = field
        self.gens = list(gens)
        self.polys: list[UniPoly] = []
        self.names: list[str] = []
        self.definitions: list = []
        self._powers: list[dict] = []
        self._monos: dict = {}
        self._table = None
        seen = set()
        for i, g in enumerate(gens):
            if g.is_constant():
                continue
            e = Expr.symbol(field, f"g{i}")
            e.add_term((), field.neg(g.constant_term()))
            self._add(g - g.constant_term(), e, dedupe=seen)

    def _add(self, poly, expr, dedupe=None):
        f = self.field
        inv = f.inv(poly.lc)
        poly = poly.scale(inv)
        if dedupe is not None:
            if poly in dedupe:
                return
            dedupe.add(poly)
        scaled = Expr(f, {m: f.mul(c, inv) for m, c in expr.terms.items()})
        name = f"b{len(self.polys)}"
        self.polys.append(poly)
        self.names.append(name)
        self.definitions.append((name, scaled))
        self._powers.append({0: UniPoly(f, (f.one,), _raw=True), 1: poly})
        self._table = None

    @property
    def degrees(self):
        return [p.degree for p in self.polys]

    def _ensure_table(self, n):
        if self._table is not None and len(self._table) > n:
            return
        degs = self.degrees
        size = max(n + 1, 2 * len(self._table) if self._table else 64)
        parent = [-1] * size
        parent[0] = len(degs)
        for m in range(1, size):
            for i in range(len(degs) - 1, -1, -1):
                d = degs[i]
                if d <= m and parent[m - d] != -1:
                    parent[m] = i
                    break
        self._table = parent

    def factor(self, d):
        self._ensure_table(d)
        if self._table[d] == -1:
            return None
        degs = self.degrees
        exps = [0] * len(degs)
        while d:
            i = self._table[d]
            exps[i] += 1
            d -= degs[i]
        return tuple(exps)

    def power(self, i, k):
        cache = self._powers[i]
        if k not in cache:
            cache[k] = self.power(i, k // 2) * self.power(i, k - k // 2)
        return cache[k]

    def monomial(self, exps) -> UniPoly:
        key = tuple(exps)
        while key and not key[-1]:
            key = key[:-1]
        if key not in self._monos:
            out = UniPoly(self.field, (self.field.one,), _raw=True)
            for i, k in enumerate(key):
                if k:
                    out = out * self.power(i, k)
            self._monos[key] = out
        return self._monos[key]

    def subduce(self, f: UniPoly, expr: Expr):
        """Reduce ``f`` in place of ``expr``; ``f - (value of expr)`` is invariant.

        Returns the remainder: zero, or a polynomial whose lead degree is
        not in the lead-degree semigroup.
        """
        fld = self.field
        while f:
            d = f.degree
            if d == 0:
                expr.add_term((), f.lc)
                return UniPoly.zero(fld)
            exps = self.factor(d)
            if exps is None:
                return f
            c = f.lc
            f = f - self.monomial(exps).scale(c)
            expr.add_term(_mono_key(exps, self.names), c)
        return f


def subalgebra_membership(gens, target: UniPoly, cap: Optional[int] = None) -> MembershipResult:
    """Decide ``target in k[gens]``.

    ``cap`` bounds the lead degree of tête-à-têtes examined during basis
    completion; it defaults to four times the largest input degree.
    """
    gens = list(gens)
    fld = target.field
    for g in gens:
        if g.field != fld:
            raise FieldError(f"field mismatch: {g.field} vs {fld}")
    if not gens and not target.is_constant():
        raise SubalgebraError("empty generator list with nonconstant target")
    if cap is None:
        cap = 4 * max([g.degree for g in gens if g] + [target.degree if target else 0, 1])

    basis = _Basis(fld, gens)
    done_pairs: set = set()

    def attempt():
        expr = Expr(fld)
        rem = basis.subduce(target, expr)
        return rem, expr

    rem, expr = attempt()
    completed = False
    while rem:
        degs = basis.degrees
        if not degs:
            completed = True
            break
        new_found = False
        truncated = False
        for lhs, rhs, total in presentation(degs):
            key = (_trimmed(lhs), _trimmed(rhs))
            if key in done_pairs:
                continue
            if total > cap:
                truncated = True
                continue
            done_pairs.add(key)
            diff = basis.monomial(lhs) - basis.monomial(rhs)
            e = Expr(fld)
            e.add_term(_mono_key(lhs, basis.names), fld.one)
            e.add_term(_mono_key(rhs, basis.names), fld.neg(fld.one))
            r = basis.subduce(diff, _negate_into(e, fld))
            if r:
                # r = diff - value(reduction); the definition is diff minus reductions
                basis._add(r, e)
                new_found = True
                break
        if new_found:
            rem, expr = attempt()
            continue
        completed = not truncated
        break

    if not rem:
        w = Witness(fld, gens, list(basis.definitions), expr)
        return MembershipResult(MEMBER, witness=w, lead_degrees=tuple(basis.degrees), completed=completed)
    status = NOT_MEMBER if completed else UNDECIDED
    return MembershipResult(
        status, obstruction_degree=rem.degree, lead_degrees=tuple(basis.degrees), completed=completed
    )


def _trimmed(exps):
    exps = tuple(exps)
    while exps and not exps[-1]:
        exps = exps[:-1]
    return exps


class _negate_into:
    """Expression sink for tête-à-tête reduction.

    ``subduce`` adds each cancelled monomial to its sink; for a tête-à-tête
    the remainder equals the difference *minus* those monomials, so the
    sink records them negated into the defining expression.
    """

    def __init__(self, expr, fld):
        self.expr = expr
        self.fld = fld

    def add_term(self, mono, coeff):
        self.expr.add_term(mono, self.fld.neg(coeff))


def span_contains(gens, target: UniPoly, max_product_degree: int) -> bool:
    """Brute force: is ``target`` a linear combination of products of at most
    ``max_product_degree`` generators (including the empty product 1)?"""
    from itertools import combinations_with_replacement

    fld = target.field
    one = UniPoly(fld, (fld.one,), _raw=True)
    vectors = [one]
    for k in range(1, max_product_degree + 1):
        for combo in combinations_with_replacement(range(len(gens)), k):
            p = one
            for i in combo:
                p = p * gens[i]
            vectors.append(p)
    return _in_span(fld, vectors, target)


def _in_span(fld, vectors, target) -> bool:
    pivots: dict[int, list] = {}

    def reduce(coeffs):
        coeffs = list(coeffs)
        while True:
            top = len(coeffs) - 1
            while top >= 0 and not coeffs[top]:
                top -= 1
            if top < 0:
                return None, coeffs
            if top not in pivots:
                return top, coeffs
            row = pivots[top]
            c = coeffs[top]
            for i, r in enumerate(row):
                coeffs[i] = fld.sub(coeffs[i], fld.mul(c, r))

    for v in vectors:
        top, red = reduce(v.coeffs)
        if top is None:
            continue
        inv = fld.inv(red[top])
        pivots[top] = [fld.mul(c, inv) for c in red[: top + 1]]
    top, _ = reduce(target.coeffs)
    return top is None

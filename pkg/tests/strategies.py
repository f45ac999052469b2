"""Hypothesis strategies shared by the test modules."""
from hypothesis import strategies as st

from conic_complement.fields import FieldSpec, RATIONALS
from conic_complement.group import FiberedLetter, GroupWord, MoebiusLetter
from conic_complement.poly import UniPoly

fields = st.sampled_from([RATIONALS, FieldSpec(3), FieldSpec(5), FieldSpec(7)])
small_ints = st.integers(min_value=-9, max_value=9)
rationals = st.fractions(min_value=-20, max_value=20, max_denominator=7)


def polys(field, max_degree=6):
    elems = rationals if field.is_rational else st.integers(0, field.p - 1)
    return st.lists(elems, max_size=max_degree + 1).map(lambda cs: UniPoly(field, cs))


@st.composite
def field_and_polys(draw, count=3, max_degree=6):
    f = draw(fields)
    return f, [draw(polys(f, max_degree)) for _ in range(count)]


def matrices(field=RATIONALS, height=10):
    entries = st.lists(st.integers(-height, height), min_size=4, max_size=4)
    return entries.filter(lambda e: e[0] * e[3] - e[1] * e[2]).map(lambda e: [e[:2], e[2:]])


@st.composite
def letters(draw, field=RATIONALS):
    if draw(st.booleans()):
        return MoebiusLetter.of(field, draw(matrices(field, 5)))
    coeffs = draw(st.lists(st.integers(-4, 4), min_size=1, max_size=4))
    return FiberedLetter(UniPoly(field, coeffs))


@st.composite
def words(draw, field=RATIONALS, max_length=5):
    n = draw(st.integers(0, max_length))
    return GroupWord(field, tuple(draw(letters(field)) for _ in range(n)))

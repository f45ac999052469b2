import random

import pytest
from hypothesis import given, settings, strategies as st

from conic_complement.corpus import WordSampler, random_word, round_trip_corpus
from conic_complement.curves import (
    CONSTANT_MAP,
    IMAGE_MEETS_Q0,
    ZERO_TRIPLE,
    CurveError,
    curve_from_json,
    curve_from_strings,
    line_L0,
    line_L1,
    validate,
)
from conic_complement.fields import NEG_INF, RATIONALS as Q, FieldSpec
from conic_complement.group import (
    GroupWord,
    MoebiusLetter,
    apply_word_curve,
    invert_word,
)
from conic_complement.lines import (
    EVEN,
    FAILED,
    ODD,
    ChartError,
    antipodal_collision,
    coordinate_pullbacks,
    degree_conditions,
    double_cover_chart,
    embedding_report,
    exotic_line,
    is_closed_embedding,
    profile_conditions,
    lift_embedding,
    rectify,
)
from conic_complement.poly import parse_poly
from conic_complement.subalgebra import NOT_MEMBER, span_contains

from .strategies import words

P = parse_poly


# validation -----------------------------------------------------------------


def test_validate_examples():
    assert line_L0(Q).c == 1
    assert line_L1(Q).c == 1
    with pytest.raises(CurveError) as e:
        curve_from_strings("1", "t", "-t^2", Q)
    assert e.value.code == IMAGE_MEETS_Q0
    with pytest.raises(CurveError) as e:
        curve_from_strings("1", "t", "1", Q)
    assert e.value.code == IMAGE_MEETS_Q0
    with pytest.raises(CurveError) as e:
        curve_from_strings("1", "2", "3", Q)
    assert e.value.code == CONSTANT_MAP
    with pytest.raises(CurveError) as e:
        curve_from_strings("0", "0", "0", Q)
    assert e.value.code == ZERO_TRIPLE


def test_curve_json_checks_stored_c():
    obj = {"x": "1", "y": "t", "z": "1-t^2", "field": "Q", "c": "1"}
    assert curve_from_json(obj) == line_L1(Q)
    with pytest.raises(CurveError, match="stored c"):
        curve_from_json(dict(obj, c="2"))


# embeddings -----------------------------------------------------------------


def test_L0_L1_are_embeddings():
    for j in (line_L0(Q), line_L1(Q)):
        v = is_closed_embedding(j)
        assert v.status == "true"
        assert v.membership.witness.evaluate() == P("t")


def test_even_square_is_not_an_embedding():
    j = curve_from_strings("1", "t^2", "1-t^4", Q)
    v = is_closed_embedding(j)
    assert v.status == "false"
    assert v.membership.status == NOT_MEMBER
    assert v.membership.obstruction_degree == 1
    assert not span_contains(coordinate_pullbacks(j), P("t"), 3)


def test_antipodal_collision():
    assert antipodal_collision(line_L1(Q)) is None
    sign, g = antipodal_collision(curve_from_strings("1", "t^2", "1-t^4", Q))
    assert sign == 1 and g.is_zero()


def test_exotic_line_three():
    j = exotic_line(3)
    assert j.c == 1 and j.degrees == (9, 21, 33)
    # t and -t collide where t^10 = -1
    sign, g = antipodal_collision(j)
    F3 = FieldSpec(3)
    assert sign == -1 and g == P("t^10+1", F3)
    v = is_closed_embedding(j)
    assert v.status == "false"


def test_exotic_line_errors_and_degrees():
    assert exotic_line(5).degrees == (25, 55, 85)
    with pytest.raises(ValueError, match="p >= 3"):
        exotic_line(2)
    with pytest.raises(ValueError, match="NOT_PRIME"):
        exotic_line(9)


def test_embedding_report_json():
    rep = embedding_report(line_L1(Q)).to_json()
    assert rep["valid_in_S0"] and rep["parity"] == "even" and rep["closure_degree"] == 2
    assert rep["degree_profile"] == [0, 1, 2]


# degree conditions ----------------------------------------------------------


def test_profile_conditions():
    assert profile_conditions((NEG_INF, 0, 1)) == (True, True)
    assert profile_conditions((0, 1, 2)) == (True, True)
    assert profile_conditions((9, 21, 33)) == (True, False)
    assert profile_conditions((2, 6, 10)) == (True, True)


def test_degree_conditions_examples():
    assert degree_conditions(line_L0(Q)).passes
    assert degree_conditions(line_L1(Q)).passes
    for p in (3, 5):
        rep = degree_conditions(exotic_line(p))
        assert not rep.passes and not rep.after_involution
        assert rep.orientations["given"]["profile"] == (p * p, 2 * p * p + p, 3 * p * p + 2 * p)


@given(words(max_length=4), st.sampled_from(["L0", "L1"]))
@settings(max_examples=40)
def test_degree_conditions_hold_on_orbits(w, base):
    j = line_L0(Q) if base == "L0" else line_L1(Q)
    assert degree_conditions(apply_word_curve(w, j)).passes


# rectify --------------------------------------------------------------------


def test_rectify_base_lines():
    res = rectify(line_L0(Q))
    assert res.outcome == ODD and len(res.witness) == 0
    res = rectify(line_L1(Q))
    assert res.outcome == EVEN


def test_rectify_exotic_fails_with_certificate():
    res = rectify(exotic_line(3))
    assert res.outcome == FAILED
    assert res.diagnostics["reason"] == "degree_conditions"
    assert res.diagnostics["certificate"]["passes"] is False


def test_rectify_square_class():
    # c modulo squares is an orbit invariant, and L0, L1 have c = 1
    j = validate(P("1"), P("t"), P("2-t^2"))
    assert j.c == 2
    res = rectify(j)
    assert res.outcome == FAILED and res.diagnostics["reason"] == "square_class"


def test_rectify_budget():
    rng = random.Random(3)
    w = random_word(rng, WordSampler(min_length=4))
    j = apply_word_curve(w, line_L1(Q))
    full = rectify(j)
    assert len(full.witness) > 1
    short = rectify(j, budget=1)
    assert short.outcome == FAILED and short.diagnostics["reason"] == "budget_exhausted"
    with pytest.raises(ValueError):
        rectify(j, budget=0)


def test_round_trip_corpus_small():
    odd, even = round_trip_corpus(11, 10)
    for (w, j), outcome in [(pair, ODD) for pair in odd] + [(pair, EVEN) for pair in even]:
        res = rectify(j)
        assert res.outcome == outcome
        assert res.diagnostics["verified"]


@given(words(max_length=3))
@settings(max_examples=30)
def test_rectify_witness_composes_into_stabilizer(w):
    """w followed by the witness fixes L1 as a curve (up to reparametrization)."""
    j = apply_word_curve(w, line_L1(Q))
    res = rectify(j)
    assert res.outcome == EVEN
    img = apply_word_curve(w + res.witness, line_L1(Q))
    assert img == res.image
    ell = img.y.scale(Q.inv(img.x.lc))
    assert img.same_map(line_L1(Q).reparametrize(ell))


def test_rectify_over_finite_field():
    F7 = FieldSpec(7)
    w = GroupWord(F7, (MoebiusLetter.of(F7, [[1, 2], [3, 5]]),))
    j = apply_word_curve(w, line_L0(F7))
    assert rectify(j).outcome == ODD


# the double-cover chart -----------------------------------------------------


def test_chart_examples():
    F3 = FieldSpec(3)
    x, v = double_cover_chart(exotic_line(3))
    assert x == P("t^9", F3)
    assert v == -P("t^12+t", F3)
    x, v = double_cover_chart(line_L1(Q))
    assert x == P("1") and v == P("1-t")
    # L0 sits inside the chart through its second expression z / (y + 1)
    x, v = double_cover_chart(line_L0(Q))
    assert x.is_zero() and v == P("1/2*t")
    with pytest.raises(ChartError):
        double_cover_chart(validate(P("1"), P("t"), P("2-t^2")))


@pytest.mark.parametrize("p", [3, 5])
def test_lift_membership_identity(p):
    F = FieldSpec(p)
    j = exotic_line(p)
    x, v = double_cover_chart(j)
    res = lift_embedding(j)
    assert res.member and res.witness.evaluate() == P("t", F)
    w = -v
    assert w - x * (w**p - x ** (p + 1)) == P("t", F)


# orbit invariants -----------------------------------------------------------


@given(words(max_length=3))
@settings(max_examples=30)
def test_embedding_is_orbit_invariant(w):
    j = apply_word_curve(w, line_L0(Q))
    assert is_closed_embedding(j).status == "true"
    bad = apply_word_curve(w, curve_from_strings("1", "t^2", "1-t^4", Q))
    assert is_closed_embedding(bad).status == "false"
    back = apply_word_curve(invert_word(w), j)
    assert back.same_map(line_L0(Q))

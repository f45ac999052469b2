import random

import pytest
from hypothesis import given, strategies as st

from conic_complement.conic import ProjPoint
from conic_complement.corpus import WordSampler, random_point, random_word
from conic_complement.curves import curve_from_strings, line_L0, line_L1
from conic_complement.fields import RATIONALS as Q, FieldSpec
from conic_complement.group import (
    FiberedLetter,
    GroupError,
    GroupWord,
    MoebiusLetter,
    PointOnConic,
    apply_letter_curve,
    apply_word_curve,
    apply_word_point,
    gamma,
    gamma_of_matrix,
    invert_word,
    letter_preserves_q0,
    normal_form,
    q0_pullback_check,
    scaling_character,
    word_from_json,
)
from conic_complement.linalg import det, mat_mul, proportional
from conic_complement.poly import UniPoly, parse_poly, q0_form

from .strategies import letters, matrices, words

P = parse_poly
INV = MoebiusLetter.involution(Q)


def W(*letters):
    return GroupWord(Q, tuple(letters))


def psi(text):
    return FiberedLetter(P(text))


def same_action(w1, w2, n=20, seed=0):
    rng = random.Random(seed)
    for _ in range(n):
        pt = random_point(rng, Q)
        if apply_word_point(w1, pt) != apply_word_point(w2, pt):
            return False
    return True


# gamma ----------------------------------------------------------------------


def test_gamma_generators():
    a = Q.coerce(3)
    assert gamma_of_matrix(Q, [[3, 0], [0, 1]]) == [[3, 0, 0], [0, 1, 0], [0, 0, Q.inv(a)]]
    assert gamma_of_matrix(Q, [[0, 1], [1, 0]]) == [[0, 0, 1], [0, -1, 0], [1, 0, 0]]
    assert gamma_of_matrix(Q, [[1, 0], [0, 1]]) == [[1, 0, 0], [0, 1, 0], [0, 0, 1]]


def test_shear_is_generator_a():
    b = Q.coerce(2)
    G = gamma(MoebiusLetter.shear(Q, b))
    # [x : y + b x : z - 2 b y - b^2 x]
    assert G == [[1, 0, 0], [b, 1, 0], [-b * b, -2 * b, 1]]


def test_singular_matrix_rejected():
    with pytest.raises(GroupError):
        MoebiusLetter.of(Q, [[1, 2], [2, 4]])


@given(matrices(), matrices())
def test_gamma_homomorphism(m1, m2):
    A, B = MoebiusLetter.of(Q, m1), MoebiusLetter.of(Q, m2)
    AB = MoebiusLetter.of(Q, mat_mul(Q, [list(r) for r in A.m], [list(r) for r in B.m]))
    assert proportional(Q, sum(gamma(AB), []), sum(mat_mul(Q, gamma(A), gamma(B)), []))
    assert det(Q, gamma(A)) == 1
    assert q0_form(Q).linear_substitute(gamma(A)) == q0_form(Q)


# points ---------------------------------------------------------------------


def test_point_examples():
    assert apply_word_point(W(INV), [0, 1, 1]) == ProjPoint.of(Q, (1, -1, 0))
    with pytest.raises(PointOnConic):
        apply_word_point(W(INV), [0, 0, 1])
    with pytest.raises(PointOnConic):
        apply_word_point(W(psi("t")), [1, 1, -1])
    img = apply_word_point(W(MoebiusLetter.shear(Q, 1)), [1, 0, 1])
    x, y, z = img.coords
    assert x * z + y * y != 0


# curves ---------------------------------------------------------------------


def test_curve_examples():
    L0 = line_L0(Q)
    b = Q.coerce(5)
    img = apply_letter_curve(FiberedLetter(UniPoly.constant(Q, b)), L0)
    assert img.components == (P("0"), P("1"), P("t-10"))
    img = apply_letter_curve(INV, L0)
    assert img.same_map(curve_from_strings("t", "-1", "0", Q))
    j = curve_from_strings("1-t^2", "-t", "1", Q)
    img = apply_letter_curve(psi("t"), j)
    u = P("1-t^2")
    assert img.components == (u, P("-t") + u**3, P("1") + P("2*t") * u**2 - u**5)
    assert img.max_degree == 10 and img.c == 1


def test_word_examples():
    L1 = line_L1(Q)
    assert apply_word_curve(W(), L1) == L1
    assert apply_word_curve(W(INV, INV), L1).same_map(L1)
    j = curve_from_strings("1-t^2", "-t", "1", Q)
    assert apply_word_curve(W(psi("t"), psi("-t")), j) == j


@given(letters(), st.sampled_from(["L0", "L1"]))
def test_letters_keep_c_and_parity(letter, base):
    j = line_L0(Q) if base == "L0" else line_L1(Q)
    img = apply_letter_curve(letter, j)
    assert img.c == j.c
    assert img.parity == j.parity


@given(words())
def test_invert_word_undoes_action(w):
    j = line_L1(Q)
    back = apply_word_curve(invert_word(w), apply_word_curve(w, j))
    assert back.same_map(j)


def test_invert_examples():
    assert invert_word(W()) == W()
    assert invert_word(W(psi("t^2-3"))) == W(psi("-t^2+3"))
    assert invert_word(W(MoebiusLetter.shear(Q, 4))) == W(MoebiusLetter.shear(Q, -4))
    w = W(psi("t^2-3"))
    assert same_action(w + invert_word(w), W())


# q0 invariance --------------------------------------------------------------


@given(st.lists(st.integers(-4, 4), min_size=1, max_size=5))
def test_fibered_letters_preserve_q0(coeffs):
    assert letter_preserves_q0(FiberedLetter(UniPoly(Q, coeffs)))


@given(words())
def test_q0_pullback_check(w):
    assert q0_pullback_check(w)


def test_finite_field_words():
    F5 = FieldSpec(5)
    w = word_from_json([{"moebius": [[1, 2], [3, 2]]}, {"fibered": "t^2+1"}], F5)
    assert q0_pullback_check(w)
    j = apply_word_curve(w, line_L0(F5))
    assert apply_word_curve(invert_word(w), j).same_map(line_L0(F5))


# scaling character ----------------------------------------------------------


def test_scaling_character():
    assert scaling_character(W()) == 1
    assert scaling_character(W(MoebiusLetter.diagonal(Q, 3))) == 9
    assert scaling_character(W(psi("t^3+t"))) == 1
    w = W(MoebiusLetter.diagonal(Q, 3), psi("t"), MoebiusLetter.of(Q, [[2, 0], [5, 1]]))
    assert scaling_character(w) == 36
    with pytest.raises(GroupError):
        scaling_character(W(INV))


# normal form ----------------------------------------------------------------


def _alternates(nf):
    kinds = [k for k, _ in nf.body]
    return all(a != b for a, b in zip(kinds, kinds[1:]))


def _body_letters_outside_intersection(nf):
    for kind, val in nf.body:
        if kind == "B" and (val.is_constant() or val.constant_term()):
            return False
    return True


def test_normal_form_examples():
    assert normal_form(W(psi("7"))).body == ()
    assert normal_form(W(INV, INV)).is_identity()
    assert normal_form(W()).is_identity()
    w = W(psi("t"), INV, psi("t"), INV.inverse(), psi("-t"))
    nf = normal_form(w)
    assert [k for k, _ in nf.body] == ["B", "A", "B", "A", "B"]
    assert same_action(nf.to_word(), w)


@given(words(max_length=6))
def test_normal_form_sound(w):
    nf = normal_form(w)
    assert _alternates(nf) and _body_letters_outside_intersection(nf)
    assert same_action(nf.to_word(), w, n=5)
    assert normal_form(w + invert_word(w)).is_identity()


@given(words(max_length=4), words(max_length=2))
def test_normal_form_ignores_inserted_pairs(w, v):
    k = len(w) // 2
    padded = GroupWord(Q, w.letters[:k]) + v + invert_word(v) + GroupWord(Q, w.letters[k:])
    assert normal_form(padded) == normal_form(w)


def test_normal_form_is_idempotent():
    rng = random.Random(7)
    for _ in range(30):
        w = random_word(rng, WordSampler(max_length=6))
        nf = normal_form(w)
        assert normal_form(nf.to_word()) == nf

import random

import pytest
from hypothesis import given, strategies as st

from conic_complement import chains
from conic_complement.chains import (
    DOWN,
    INNER,
    LEFT,
    NEG_DEFINITE,
    OUTER,
    RIGHT,
    STANDARD,
    ZERO_CHAIN,
    ZERO_CURVE,
    ChainError,
    ChainMove,
    CapExhausted,
    HodgeIndexError,
    NegativeDefiniteChain,
    all_moves,
    apply_move,
    dg_invariant,
    inertia,
    inverse_move,
    is_negative_definite,
    is_standard,
    reachable,
    replay,
    to_standard_form,
)

chain_lists = st.lists(st.integers(-5, 3), min_size=1, max_size=6)


def test_definiteness_examples():
    assert is_negative_definite([-2, -2, -2])
    assert not is_negative_definite([0])
    assert is_negative_definite([-1, -2])
    assert chains.leading_minors([-1, -2]) == [-1, 1]


def test_move_examples():
    assert apply_move([0, -1], ChainMove(INNER, 0)) == (-1, -1, -2)
    assert apply_move([-1, -1, -2], ChainMove(DOWN, 1)) == (0, -1)
    assert apply_move([0, -1, -2, -2, -2], ChainMove(OUTER, RIGHT)) == (0, -1, -2, -2, -3, -1)
    assert apply_move([3], ChainMove(OUTER, LEFT)) == (-1, 2)
    with pytest.raises(ChainError):
        apply_move([-1], ChainMove(INNER, 0))
    with pytest.raises(ChainError):
        apply_move([0, -2], ChainMove(DOWN, 1))
    with pytest.raises(ChainError):
        ChainMove.from_json({"kind": OUTER, "pos": 3})


@given(chain_lists, st.data())
def test_blowdown_undoes_blowup(c, data):
    ups = [m for m in all_moves(c) if m.kind != DOWN]
    m = data.draw(st.sampled_from(ups))
    bigger = apply_move(c, m)
    assert apply_move(bigger, inverse_move(c, m)) == tuple(c)


@given(chain_lists, st.data())
def test_moves_preserve_inertia(c, data):
    m = data.draw(st.sampled_from(all_moves(c)))
    before, after = inertia(c), inertia(apply_move(c, m))
    assert before[:2] == after[:2]


def test_inertia_matches_minors_for_definite_chains():
    for c in ([-2, -2, -2], [-1, -2], [-3, -1, -3]):
        assert is_negative_definite(c)
        assert inertia(c) == (0, 0, len(c))
    assert inertia([-1, -1]) == (0, 1, 1)
    assert inertia([0]) == (0, 1, 0)
    assert inertia([2, -1, -2]) == (1, 0, 2)


def test_standard_form_examples():
    sf = to_standard_form([2, -1, -2], m=1)
    assert sf.kind == STANDARD and sf.chain == (0, -1, -2, -2, -2)
    assert replay([2, -1, -2], sf.moves) == sf.chain
    sf = to_standard_form([0, -1, -2, -2, -2], m=1)
    assert sf.chain == (0, -1, -2, -2, -2) and sf.moves == []
    sf = to_standard_form([0, 0], m=0)
    assert sf.chain == (0, 0) and sf.tail == ()


def test_exceptional_outcomes():
    assert to_standard_form([0]).kind == ZERO_CURVE
    sf = to_standard_form([1])
    assert sf.kind == STANDARD and sf.chain == (0, 0)
    sf = to_standard_form([0, 0, 0])
    assert sf.kind == ZERO_CHAIN and sf.chain == (0, 0, 0)


def test_standard_form_errors():
    with pytest.raises(NegativeDefiniteChain):
        to_standard_form([-2, -2, -2])
    with pytest.raises(HodgeIndexError):
        to_standard_form([1, 2])
    with pytest.raises(HodgeIndexError):
        to_standard_form([0, 0, 0, -2])
    with pytest.raises(CapExhausted):
        to_standard_form([-2, 3, -2, -2], cap=4)


@given(chain_lists, st.integers(0, 3))
def test_standard_form_replays(c, m):
    if is_negative_definite(c) or inertia(c)[0] >= 2:
        return
    sf = to_standard_form(c, m, cap=len(c) + 20)
    assert replay(c, sf.moves) == sf.chain
    if sf.kind == STANDARD:
        assert is_standard(sf.chain, m)


def test_dg_invariant_examples():
    assert dg_invariant([0, -1, -2, -2, -2]) == (-2, -2, -2)
    assert dg_invariant([0, -3]) == ()
    assert dg_invariant([-2, -2]) == NEG_DEFINITE
    assert dg_invariant([-2, 1, -2]) != (-2, -2, -2)
    assert dg_invariant([-2, -3, 0, -5]) == dg_invariant([-5, 0, -3, -2])


def test_dg_invariant_of_minus_two_chains():
    want = {0: (-4,), 1: (-3, -3), 2: (-3, -2, -3), 3: (-3, -2, -2, -3)}
    for a, tail in want.items():
        assert dg_invariant([-2, a, -2]) == tail


def test_invariant_stable_under_random_moves():
    rng = random.Random(5)
    base = (0, -1, -2, -2, -2)
    for _ in range(50):
        c = base
        for _ in range(rng.randint(1, 6)):
            c = apply_move(c, rng.choice(all_moves(c)))
        assert dg_invariant(c, cap=len(c) + 12) == (-2, -2, -2)


def test_reachable_examples():
    res = reachable([2, -1, -2], [0, -1, -2, -2, -2])
    assert res.found and replay([2, -1, -2], res.moves) == (0, -1, -2, -2, -2)
    assert not reachable([-2, -2, -2], [0], 7, 8).found
    assert not reachable([-2, 0, -2], [0, -1, -2, -2, -2], 8, 10).found
    assert reachable([1], [1]).moves == []

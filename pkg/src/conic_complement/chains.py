"""Weighted rational chains: intersection forms, blow-up/blow-down moves,
m-standard forms and the tail invariant.

A chain is a tuple of self-intersection numbers read left to right.
Moves preserve the inertia (n+, n0) of the intersection form, which is how
impossible targets are told apart from search failures.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Optional

NEG_DEFINITE = "NEG_DEFINITE"
ZERO_CURVE = "zero_curve"
ZERO_CHAIN = "zero_chain"  # the [0, 0, 0] outcome
STANDARD = "standard"

INNER = "inner_blowup"
OUTER = "outer_blowup"
DOWN = "blowdown"
LEFT, RIGHT = "left", "right"


class ChainError(ValueError):
    pass


class NegativeDefiniteChain(ChainError):
    pass


class HodgeIndexError(ChainError):
    """The form has two or more positive squares; no standard form exists."""


class CapExhausted(ChainError):
    pass


@dataclass(frozen=True)
class ChainMove:
    kind: str
    pos: object  # int index, or LEFT / RIGHT for outer blow-ups

    def to_json(self):
        return {"kind": self.kind, "pos": self.pos}

    @classmethod
    def from_json(cls, obj) -> ChainMove:
        kind, pos = obj["kind"], obj["pos"]
        if kind not in (INNER, OUTER, DOWN):
            raise ChainError(f"unknown move kind {kind!r}")
        if kind == OUTER and pos not in (LEFT, RIGHT):
            raise ChainError("outer blow-up position must be 'left' or 'right'")
        if kind != OUTER and not isinstance(pos, int):
            raise ChainError("move position must be an integer index")
        return cls(kind, pos)

    def __str__(self):
        return f"{self.kind}({self.pos})"


def as_chain(weights) -> tuple:
    c = tuple(int(w) for w in weights)
    if not c:
        raise ChainError("a chain needs at least one component")
    return c


# ---------------------------------------------------------------------------
# intersection form


def intersection_matrix(c):
    n = len(c)
    return [[c[i] if i == j else (1 if abs(i - j) == 1 else 0) for j in range(n)] for i in range(n)]


def leading_minors(c):
    """Leading principal minors D_1..D_n by the continuant recurrence."""
    out = []
    prev2, prev = 1, c[0]
    out.append(prev)
    for w in c[1:]:
        prev2, prev = prev, w * prev - prev2
        out.append(prev)
    return out


def determinant(c) -> int:
    return leading_minors(c)[-1]


def is_negative_definite(c) -> bool:
    return all((-1) ** (k + 1) * d > 0 for k, d in enumerate(leading_minors(c)))


def _charpoly(c):
    """Coefficients (low to high) of det(M - lambda I)."""

    def mul_lin(p, a):
        # (a - lambda) * p
        out = [0] * (len(p) + 1)
        for i, v in enumerate(p):
            out[i] += a * v
            out[i + 1] -= v
        return out

    prev2, prev = [1], mul_lin([1], c[0])
    for w in c[1:]:
        cur = mul_lin(prev, w)
        for i, v in enumerate(prev2):
            cur[i] -= v
        prev2, prev = prev, cur
    return prev


def _sign_changes(coeffs):
    signs = [1 if v > 0 else -1 for v in coeffs if v]
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def inertia(c):
    """(n_plus, n_zero, n_minus) of the intersection form.

    The characteristic polynomial is real-rooted, so Descartes' rule of
    signs counts positive and negative roots exactly.
    """
    p = _charpoly(c)
    n0 = next(i for i, v in enumerate(p) if v)
    p = p[n0:]
    n_plus = _sign_changes(p)
    n_minus = _sign_changes([v if i % 2 == 0 else -v for i, v in enumerate(p)])
    return n_plus, n0, n_minus


# ---------------------------------------------------------------------------
# moves


def applicable(c, m: ChainMove) -> bool:
    n = len(c)
    if m.kind == INNER:
        return isinstance(m.pos, int) and 0 <= m.pos < n - 1
    if m.kind == OUTER:
        return m.pos in (LEFT, RIGHT)
    if m.kind == DOWN:
        return isinstance(m.pos, int) and 0 <= m.pos < n and c[m.pos] == -1 and n > 1
    return False


def apply_move(c, m: ChainMove) -> tuple:
    c = tuple(c)
    if not applicable(c, m):
        raise ChainError(f"move {m} not applicable to {list(c)}")
    i = m.pos
    if m.kind == INNER:
        return c[:i] + (c[i] - 1, -1, c[i + 1] - 1) + c[i + 2 :]
    if m.kind == OUTER:
        if i == RIGHT:
            return c[:-1] + (c[-1] - 1, -1)
        return (-1, c[0] - 1) + c[1:]
    out = list(c)
    if i > 0:
        out[i - 1] += 1
    if i < len(c) - 1:
        out[i + 1] += 1
    del out[i]
    return tuple(out)


def replay(c, moves):
    c = tuple(c)
    for m in moves:
        c = apply_move(c, m)
    return c


def inverse_move(c, m: ChainMove) -> ChainMove:
    """The blow-down undoing a blow-up applied to ``c``."""
    if m.kind == INNER:
        return ChainMove(DOWN, m.pos + 1)
    if m.kind == OUTER:
        return ChainMove(DOWN, 0 if m.pos == LEFT else len(c))
    raise ChainError("only blow-ups have a canonical inverse")


def all_moves(c):
    n = len(c)
    moves = [ChainMove(INNER, i) for i in range(n - 1)]
    moves += [ChainMove(OUTER, LEFT), ChainMove(OUTER, RIGHT)]
    moves += [ChainMove(DOWN, i) for i in range(n) if c[i] == -1 and n > 1]
    return moves


# ---------------------------------------------------------------------------
# standard forms


@dataclass
class StandardForm:
    kind: str
    chain: tuple
    moves: list
    m: Optional[int] = None

    @property
    def tail(self) -> tuple:
        return self.chain[2:] if self.kind == STANDARD else ()

    def to_json(self):
        return {
            "kind": self.kind,
            "chain": list(self.chain),
            "m": self.m,
            "tail": list(self.tail),
            "moves": [mv.to_json() for mv in self.moves],
        }


class _Run:
    def __init__(self, c, cap):
        self.c = tuple(c)
        self.moves: list = []
        self.cap = cap

    def do(self, kind, pos):
        mv = ChainMove(kind, pos)
        self.c = apply_move(self.c, mv)
        self.moves.append(mv)
        if len(self.c) > self.cap:
            raise CapExhausted(f"component cap {self.cap} exceeded at {list(self.c)}")

    def blow_down_all(self, start=0):
        while len(self.c) > 1:
            i = next((k for k in range(start, len(self.c)) if self.c[k] == -1), None)
            if i is None:
                return
            self.do(DOWN, i)

    def step_zero(self, i, up: bool):
        """Zero at i: change the left neighbour by +1 (up) or -1, moving the
        difference onto the right side."""
        n = len(self.c)
        if up:
            if i == n - 1:
                self.do(OUTER, RIGHT)
            else:
                self.do(INNER, i)
            self.do(DOWN, i)
        else:
            self.do(INNER, i - 1)
            self.do(DOWN, i + 1)

    def shift_first_neighbour(self, up: bool):
        """Chain [0, b, ...] -> [0, b + 1, ...] (up) or [0, b - 1, ...]."""
        if up:
            self.do(OUTER, LEFT)
            self.do(DOWN, 1)
        else:
            self.do(INNER, 0)
            self.do(DOWN, 0)


def to_standard_form(c, m: int = 0, cap: Optional[int] = None) -> StandardForm:
    """Transform a chain whose form is not negative definite to m-standard form.

    The exceptional outcomes [0] and [0, 0, 0] are returned tagged.
    ``cap`` bounds the number of components along the way (default len + 8).
    """
    c = as_chain(c)
    if is_negative_definite(c):
        raise NegativeDefiniteChain(f"{list(c)} has a negative definite intersection form")
    n_plus, _, _ = inertia(c)
    if n_plus >= 2:
        raise HodgeIndexError(f"{list(c)} has {n_plus} positive squares")
    run = _Run(c, cap if cap is not None else len(c) + 8)
    if is_standard(c):
        return _finish_standard(run, m)

    run.blow_down_all()
    i = next(k for k, w in enumerate(run.c) if w >= 0)
    w = run.c[i]
    if w > 0:
        if i == 0:
            if len(run.c) == 1:
                run.do(OUTER, RIGHT)
                w -= 1
            for _ in range(w):
                run.do(INNER, 0)
        else:
            for k in range(w):
                run.do(INNER, i - 1 + k)
            i += w
    # slide the zero at i to the left end
    while i > 0:
        while run.c[i - 1] != 0:
            run.step_zero(i, up=run.c[i - 1] < 0)
        i -= 1
    if len(run.c) == 1:
        return StandardForm(ZERO_CURVE, run.c, run.moves)
    run.blow_down_all(start=2)
    if len(run.c) == 1:
        return StandardForm(ZERO_CURVE, run.c, run.moves)
    if run.c[2:] == (0,):
        while run.c[1] != 0:
            run.shift_first_neighbour(up=run.c[1] < 0)
        return StandardForm(ZERO_CHAIN, run.c, run.moves)
    return _finish_standard(run, m)


def _finish_standard(run: _Run, m: int) -> StandardForm:
    while run.c[1] != -m:
        run.shift_first_neighbour(up=run.c[1] < -m)
    sf = StandardForm(STANDARD, run.c, run.moves, m)
    if not is_standard(sf.chain, m):
        raise AssertionError(f"internal: {list(sf.chain)} is not {m}-standard")
    return sf


def is_standard(c, m: Optional[int] = None) -> bool:
    c = tuple(c)
    if len(c) < 2 or c[0] != 0:
        return False
    if m is not None and c[1] != -m:
        return False
    return all(w <= -2 for w in c[2:])


def canonical_tail(tail) -> tuple:
    tail = tuple(tail)
    return min(tail, tail[::-1])


def dg_invariant(c, cap: Optional[int] = None):
    """Tail of a standard form up to reversal, NEG_DEFINITE, or the tag of an
    exceptional outcome."""
    c = as_chain(c)
    if is_negative_definite(c):
        return NEG_DEFINITE
    sf = to_standard_form(c, 0, cap)
    if sf.kind != STANDARD:
        return sf.kind
    return canonical_tail(sf.tail)


# ---------------------------------------------------------------------------
# bounded search


@dataclass
class ReachResult:
    found: bool
    moves: Optional[list] = None
    explored: int = 0

    def to_json(self):
        out = {"found": self.found, "explored": self.explored}
        if self.moves is not None:
            out["moves"] = [m.to_json() for m in self.moves]
        return out


def reachable(c1, c2, max_components: int = 10, max_depth: int = 14) -> ReachResult:
    """Breadth-first search over moves; 'not found' only speaks for the caps."""
    start, goal = as_chain(c1), as_chain(c2)
    if start == goal:
        return ReachResult(True, [], 1)
    parent = {start: None}
    frontier = deque([(start, 0)])
    while frontier:
        cur, d = frontier.popleft()
        if d >= max_depth:
            continue
        for mv in all_moves(cur):
            nxt = apply_move(cur, mv)
            if len(nxt) > max_components or nxt in parent:
                continue
            parent[nxt] = (cur, mv)
            if nxt == goal:
                path = []
                node = nxt
                while parent[node] is not None:
                    node, m = parent[node]
                    path.append(m)
                return ReachResult(True, path[::-1], len(parent))
            frontier.append((nxt, d + 1))
    return ReachResult(False, None, len(parent))

"""Seeded random objects for property checks and the acceptance suite.

All sampling goes through ``random.Random(seed)`` (Python's Mersenne
Twister), so a seed pins every corpus exactly.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .curves import CurveParam, line_L0, line_L1
from .fields import FieldSpec, RATIONALS
from .group import FiberedLetter, GroupWord, MoebiusLetter, apply_word_curve
from .poly import UniPoly


@dataclass(frozen=True)
class WordSampler:
    field: FieldSpec = RATIONALS
    max_length: int = 4
    max_s_degree: int = 3
    height: int = 5
    min_length: int = 1


def random_scalar(rng: random.Random, field: FieldSpec, height: int):
    return field.coerce(rng.randint(-height, height))


def random_matrix(rng: random.Random, field: FieldSpec, height: int):
    while True:
        m = [[random_scalar(rng, field, height) for _ in range(2)] for _ in range(2)]
        if field.sub(field.mul(m[0][0], m[1][1]), field.mul(m[0][1], m[1][0])):
            return m


def random_poly(rng: random.Random, field: FieldSpec, max_degree: int, height: int) -> UniPoly:
    deg = rng.randint(0, max_degree)
    coeffs = [random_scalar(rng, field, height) for _ in range(deg + 1)]
    while not coeffs[-1]:
        coeffs[-1] = random_scalar(rng, field, height)
    return UniPoly(field, coeffs)


def random_letter(rng: random.Random, cfg: WordSampler):
    if rng.random() < 0.5:
        return MoebiusLetter.of(cfg.field, random_matrix(rng, cfg.field, cfg.height))
    return FiberedLetter(random_poly(rng, cfg.field, cfg.max_s_degree, cfg.height))


def random_word(rng: random.Random, cfg: WordSampler) -> GroupWord:
    n = rng.randint(cfg.min_length, cfg.max_length)
    return GroupWord(cfg.field, tuple(random_letter(rng, cfg) for _ in range(n)))


def random_point(rng: random.Random, field: FieldSpec, height: int = 20):
    """Raw coordinates of a point of S0."""
    while True:
        v = [random_scalar(rng, field, height) for _ in range(3)]
        if any(v) and field.add(field.mul(v[0], v[2]), field.mul(v[1], v[1])):
            return v


def round_trip_corpus(seed: int, count: int, cfg: WordSampler = WordSampler()):
    """``count`` pairs (word, image of L0) and ``count`` pairs (word, image of L1)."""
    rng = random.Random(seed)
    L0, L1 = line_L0(cfg.field), line_L1(cfg.field)
    odd, even = [], []
    for _ in range(count):
        w = random_word(rng, cfg)
        odd.append((w, apply_word_curve(w, L0)))
    for _ in range(count):
        w = random_word(rng, cfg)
        even.append((w, apply_word_curve(w, L1)))
    return odd, even


def random_curve(rng: random.Random, cfg: WordSampler) -> CurveParam:
    base = line_L0(cfg.field) if rng.random() < 0.5 else line_L1(cfg.field)
    return apply_word_curve(random_word(rng, cfg), base)

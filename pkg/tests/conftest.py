"""Shared corpus generators for the test suite (all deterministic, seeded)."""

import random
from fractions import Fraction

import pytest

from trisep import Trinomial


def random_trinomial(rng: random.Random, max_exp: int = 500,
                     max_coeff: int = 10 ** 6) -> Trinomial:
    exps = sorted(rng.sample(range(0, max_exp + 1), 3))
    coeffs = []
    for _ in range(3):
        c = rng.randint(1, max_coeff) * rng.choice((-1, 1))
        coeffs.append(c)
    a, b, c = coeffs
    return Trinomial(a, b, c, exps[0], exps[1], exps[2])


def random_stripped_trinomial(rng: random.Random, max_exp: int = 500,
                              max_coeff: int = 10 ** 6) -> Trinomial:
    f = random_trinomial(rng, max_exp, max_coeff)
    return Trinomial(f.a, f.b, f.c, 0, f.beta - f.alpha, f.gamma - f.alpha)


def random_fraction(rng: random.Random, max_num: int = 10 ** 6,
                    positive: bool = False) -> Fraction:
    num = rng.randint(1, max_num) * (1 if positive else rng.choice((-1, 1)))
    den = rng.randint(1, max_num)
    return Fraction(num, den)


@pytest.fixture(scope="session")
def rng():
    return random.Random(0xC0FFEE)

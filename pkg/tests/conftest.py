"""Shared randomized generators for the test suite.

Generators are deterministic given the Random instance; tests seed their
own rngs so failures reproduce.  Coefficients are kept small on purpose:
the algorithms are exact, so the content of the checks does not depend on
coefficient size, only the runtime does.
"""

from __future__ import annotations

import random

import pytest

from orecalc import (
    FieldElem,
    OpMatrix,
    OrePoly,
    dieudonne,
    matrix_gcd,
    degree,
)
from orecalc.poly import Poly


def rand_poly(rng: random.Random, deg_x: int = 2, deg_t: int = 0,
              terms: int = 2, span: int = 3) -> Poly:
    out = {}
    for _ in range(terms):
        out[(rng.randrange(deg_x + 1), rng.randrange(deg_t + 1))] = \
            rng.randrange(-span, span + 1)
    return Poly.from_terms(out)


def rand_field(rng: random.Random, deg_x: int = 2, deg_t: int = 0,
               denominators: bool = False) -> FieldElem:
    num = rand_poly(rng, deg_x, deg_t)
    if num.is_zero:
        num = Poly.const(rng.randrange(1, 3))
    if denominators and rng.random() < 0.5:
        den = rand_poly(rng, 1, deg_t and 1, terms=2, span=2)
        if den.is_zero:
            den = Poly.const(1)
        return FieldElem(num, den)
    return FieldElem(num)


def rand_field_nonzero(rng: random.Random, **kw) -> FieldElem:
    while True:
        f = rand_field(rng, **kw)
        if not f.is_zero:
            return f


def rand_ore(rng: random.Random, order: int, deg_x: int = 1,
             deg_t: int = 0, denominators: bool = False) -> OrePoly:
    coeffs = [rand_field(rng, deg_x, deg_t, denominators)
              for _ in range(order)]
    coeffs.append(rand_field_nonzero(rng, deg_x=deg_x, deg_t=deg_t))
    return OrePoly.from_coeffs(coeffs)


def rand_matrix(rng: random.Random, size: int, order: int,
                deg_x: int = 1, deg_t: int = 0) -> OpMatrix:
    return OpMatrix.from_rows([
        [rand_ore(rng, rng.randrange(order + 1), deg_x, deg_t)
         for _ in range(size)]
        for _ in range(size)])


def rand_nondeg(rng: random.Random, size: int, order: int,
                deg_x: int = 1, deg_t: int = 0) -> OpMatrix:
    while True:
        m = rand_matrix(rng, size, order, deg_x, deg_t)
        if not dieudonne(m).degenerate:
            return m


def rand_coprime_pair(rng: random.Random, size: int, order: int,
                      side: str = "right"):
    """Two non-degenerate matrices with trivial one-sided gcd."""
    while True:
        a = rand_nondeg(rng, size, order)
        b = rand_nondeg(rng, size, order)
        if degree(matrix_gcd(a, b, side).g) == 0:
            return a, b


@pytest.fixture
def rng() -> random.Random:
    return random.Random(20240801)

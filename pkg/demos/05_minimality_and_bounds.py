"""Certifying minimality of a rational expression.

An expression is minimal when its singular degree equals its weight, i.e.
no cancellation hides between its formal inverses.  The certificate is
the vanishing of two witness spaces: solutions of the zero relation
threaded through the expression and through its reversed adjoint.  Their
dimensions also give a two-sided enclosure of the singular degree that
collapses to the exact value whenever either space vanishes.
"""

import random

from orecalc import (
    D,
    OpMatrix,
    OrePoly,
    RationalExpression,
    adjoint_witness_nullity,
    degree,
    dieudonne,
    is_minimal,
    matrix_gcd,
    sdeg_bounds,
    singular_degree,
    witness_nullity,
)
from orecalc.field import FieldElem
from orecalc.poly import Poly

rng = random.Random(11)


def rand_field():
    p = Poly.from_terms({(rng.randrange(2), 0): rng.randrange(-2, 3)
                         for _ in range(2)})
    return FieldElem(p if not p.is_zero else Poly.const(1))


def rand_op(order):
    return OrePoly.from_coeffs(
        [rand_field() for _ in range(order)] + [FieldElem(1)])


def rand_nondeg(order):
    while True:
        m = OpMatrix.from_rows([[rand_op(rng.randrange(order + 1))]])
        if not dieudonne(m).degenerate:
            return m


print("=== a sandwich with coprime junctions is minimal ===")
while True:
    a = rand_nondeg(1)
    b = rand_nondeg(2)
    c = rand_nondeg(1)
    if degree(matrix_gcd(a, b, "right").g) != 0:
        continue
    if degree(matrix_gcd(b, c, "left").g) != 0:
        continue
    break
expr = RationalExpression([[(a, b), (c, OpMatrix.identity(1))]])
print("expression:", expr)
print("weight:", expr.weight(), "  singular degree:", singular_degree(expr))
print("witness nullity:", witness_nullity(expr),
      "  adjoint witness nullity:", adjoint_witness_nullity(expr))
print("minimal?", is_minimal(expr))

print()
print("=== a hidden common factor breaks minimality ===")
d = rand_nondeg(1)
expr2 = RationalExpression([[(a @ d, b @ d)]])
print("expression:", expr2)
print("weight:", expr2.weight(), "  singular degree:", singular_degree(expr2))
print("bounds:", sdeg_bounds(expr2))
print("minimal?", is_minimal(expr2))

"""The determinant degree of a matrix of differential operators.

Matrices over the skew ring carry a multiplicative determinant whose
degree part behaves like a noncommutative order: it is a nonnegative
integer for matrices of operators, additive on products, and zero exactly
for the invertible matrices.
"""

import random

from orecalc import D, F_X, OpMatrix, OrePoly, degree, dieudonne
from orecalc.field import FieldElem
from orecalc.poly import Poly

x = F_X

print("=== triangular matrices read off directly ===")
m = OpMatrix.from_rows([[D * D + OrePoly.from_field(x) * D, 1], [0, D + 1]])
info = dieudonne(m)
print("matrix:", m)
print("degree:", info.deg, "   leading unit:", info.det1)

print()
print("=== degenerate matrices have no degree ===")
m2 = OpMatrix.from_rows([[D, D], [D, D]])
print("matrix:", m2)
print("degenerate:", dieudonne(m2).degenerate)

print()
print("=== additivity on products ===")
rng = random.Random(7)


def rand_field():
    p = Poly.from_terms({(rng.randrange(2), 0): rng.randrange(-2, 3)
                         for _ in range(2)})
    return FieldElem(p if not p.is_zero else Poly.const(1))


def rand_op(order):
    return OrePoly.from_coeffs(
        [rand_field() for _ in range(order)] + [FieldElem(1)])


def rand_nondeg():
    while True:
        m = OpMatrix.from_rows([
            [rand_op(rng.randrange(3)) for _ in range(2)] for _ in range(2)])
        if not dieudonne(m).degenerate:
            return m


for k in range(5):
    a, b = rand_nondeg(), rand_nondeg()
    print(f"deg(A)={degree(a)}  deg(B)={degree(b)}  "
          f"deg(AB)={degree(a @ b)}")

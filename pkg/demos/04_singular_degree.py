"""The singular degree: a noncommutative count of poles.

A rational operator usually arrives as an expression with several formal
inverses.  Collapsing it to a single fraction and reducing to lowest
terms reveals its singular degree -- which can be strictly smaller than
the total degree of the denominators you started from, even when every
summand is already reduced and the denominators are coprime.
"""

from orecalc import (
    D,
    F_T,
    OpFraction,
    OpMatrix,
    OrePoly,
    RationalExpression,
    collapse_expression,
    degree,
    is_minimal,
    minimal_fraction,
    sdeg_bounds,
    singular_degree,
)

t = F_T


def scalar(v):
    return OpMatrix.from_rows([[v]])


one = OpMatrix.identity(1)
expr = RationalExpression([
    [(scalar(OrePoly.from_field(t.inverse())), scalar(D))],
    [(one, scalar(D + 1))],
])

print("expression:", expr)
print("weight (sum of denominator degrees):", expr.weight())

f = collapse_expression(expr)
print()
print("collapsed over a common denominator:")
print("  numerator :", f.a)
print("  denominator:", f.b, "  (degree", degree(f.b), ")")

m = minimal_fraction(f)
print()
print("in lowest terms:")
print("  numerator :", m.a)
print("  denominator:", m.b, "  (degree", degree(m.b), ")")

print()
print("singular degree:", singular_degree(expr))
print("minimal expression?", is_minimal(expr))

u = 1 + t.inverse()
expected = OpFraction(scalar(OrePoly.from_field(u)),
                      scalar(D + OrePoly.from_field(u.inverse())))
print("agrees with the closed form (1 + 1/t) * inv(d + 1/(1 + 1/t)):",
      m.equivalent(expected))

print()
print("two-sided enclosure from the witness spaces:")
print(" ", sdeg_bounds(expr))

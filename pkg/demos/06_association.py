"""Associating vector pairs through a rational expression.

Since the inverses in a rational operator are formal, "apply H to xi" is
replaced by a relation: (xi, p) are associated when witness vectors can
be threaded through every factor of the expression.  On a fraction in
lowest terms the witness is a single vector; the transport machinery then
carries it into any other expression for the same operator.
"""

from orecalc import (
    D,
    F_T,
    OpMatrix,
    OrePoly,
    RationalExpression,
    collapse_expression,
    minimal_fraction,
    solve_association,
    transport_witness,
    verify,
)
from orecalc.matrix import exact_left_quotient

t = F_T


def scalar(v):
    return OpMatrix.from_rows([[v]])


one = OpMatrix.identity(1)
expr = RationalExpression([
    [(scalar(OrePoly.from_field(t.inverse())), scalar(D))],
    [(one, scalar(D + 1))],
])
print("expression:", expr)

f_min = minimal_fraction(collapse_expression(expr))
print("lowest-terms fraction: a =", f_min.a, ", b =", f_min.b)

# choose the seed vector through the comparison factor, so that a
# rational witness for the full expression is guaranteed to exist
comparison = exact_left_quotient(f_min.b, collapse_expression(expr).b)
z0 = [t / (t + 1)]
fvec = comparison.apply(z0)
xi = f_min.b.apply(fvec)
p = f_min.a.apply(fvec)
print()
print("xi =", xi[0])
print("p  =", p[0])

sol = solve_association(f_min, xi)
print()
print("solve on the reduced fraction:", "found" if sol else "not found")

w = transport_witness(expr, f_min, fvec, xi, p)
print("transported witness:")
for key, vec in sorted(w.to_json().items()):
    print(f"  F^{key} =", vec[0])
print("verifies exactly:", verify(expr, xi, p, w))

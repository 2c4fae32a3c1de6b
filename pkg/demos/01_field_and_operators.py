"""A tour of the coefficient field and scalar differential operators.

The field is Q(x) optionally extended by a symbol t with derivative t
itself, so t plays the role of exp(x).  Operators are polynomials in the
symbol d with the skew product rule  d * f = f * d + f'.
"""

from orecalc import D, F_T, F_X, FieldElem, OrePoly, divide, ore_gcd, ore_lcm

x = F_X
t = F_T

print("=== the coefficient field ===")
print("x * (1/x)            =", x * x.inverse())
print("1/x - 1/(x+1)        =", x.inverse() - (x + 1).inverse())
print("derivative of x^2    =", (x * x).derivative())
print("derivative of t      =", t.derivative(), "   (t behaves like exp(x))")
print("derivative of t/(t+1)=", (t / (t + 1)).derivative())
print("is 7/3 constant?     ", FieldElem(7) .is_constant())
print("is t/t constant?     ", (t / t).is_constant())

print()
print("=== the skew product rule ===")
fx = OrePoly.from_field(x)
print("d * x      =", D * fx)
print("d * (1/x)  =", D * OrePoly.from_field(x.inverse()))

a = D + OrePoly.from_field(x.inverse())
b = D - OrePoly.from_field(x.inverse())
print("(d + 1/x) * (d - 1/x) =", a * b)

print()
print("=== division, gcd, lcm ===")
q, r = divide(D * D, b, "right")
print("d^2 divided on the right by (d - 1/x): q =", q, ", r =", r)
print("right gcd(d^2, d - 1/x)  =", ore_gcd(D * D, b, "right"))
print("right lcm(d, d + 1/x)    =", ore_lcm(D, a, "right"))
print()
print("The degree law: order(right lcm) + order(left gcd)")
print("               = order(a) + order(b) for any nonzero pair.")

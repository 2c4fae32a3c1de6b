"""Least common multiples and the surprise of strong coprimeness.

Three order-one operators can be pairwise coprime and still share a
common right multiple of order two: the multiple of the family is then
smaller than the sum of the orders, and the family fails the stronger
degree test.  The same degree test is exactly what makes the descent of
solutions through the lcm cofactors possible.
"""

from orecalc import (
    D,
    F_X,
    OpMatrix,
    OrePoly,
    as_field,
    degree,
    descend,
    multi_lcm,
    strongly_coprime,
)

x = F_X


def scalar(v):
    return OpMatrix.from_rows([[v]])


b1 = scalar(D)
b2 = scalar(D + OrePoly.from_field(x.inverse()))
b3 = scalar(D + OrePoly.from_field((x + 1).inverse()))

print("=== the family d, d + 1/x, d + 1/(x+1) ===")
m, cofs = multi_lcm([b1, b2, b3], "right")
print("right lcm:", m, "   degree:", degree(m), "(< 1 + 1 + 1)")
for i, c in enumerate(cofs, start=1):
    print(f"  cofactor {i}:", c)

print()
print("pairwise strongly coprime?",
      all(strongly_coprime([u, v], "left")
          for u, v in ((b1, b2), (b1, b3), (b2, b3))))
print("family strongly coprime?  ",
      strongly_coprime([b1, b2, b3], "left"))

print()
print("=== descent through the cofactors ===")
f1 = [as_field(1)]
f2 = [x.inverse()]
print("b1(1) =", b1.apply(f1)[0], "  b2(1/x) =", b2.apply(f2)[0])
f = descend([b1, b2], [f1, f2])
print("the common source F with c1(F) = 1, c2(F) = 1/x is:", f[0])
c3 = scalar(D - OrePoly.from_field((x + 1).inverse()))
print("c3(F) =", c3.apply(f)[0],
      "  -- so only the kernel vector 2/(x+1) of b3 is compatible")

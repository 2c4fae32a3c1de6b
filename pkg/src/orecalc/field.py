"""Exact arithmetic in the differential fields Q(x) and Q(x)(t).

A :class:`FieldElem` is a reduced quotient of two polynomials in ``x`` and
``t`` (see :mod:`orecalc.poly`): numerator and denominator are coprime and
the denominator is monic under the graded-lex order, so equal values have
equal representations and hashing is exact.  Zero is ``0/1``.

The derivation is d(x) = 1 and d(t) = t; with it ``t`` plays the role of
``exp(x)`` and ``1/t`` the role of ``exp(-x)``.  The constants -- elements
with zero derivative -- are exactly the rationals.

Values are immutable and every operation is a pure function, so they can be
shared freely across threads.
"""

from __future__ import annotations

from fractions import Fraction

from .poly import P_ONE, P_T, P_X, P_ZERO, Poly, poly_gcd


def _coerce_poly(v) -> Poly:
    if isinstance(v, Poly):
        return v
    return Poly.const(Fraction(v))


class FieldElem:
    """An element of Q(x)(t) in canonical reduced form."""

    __slots__ = ("num", "den", "_hash")

    def __init__(self, num, den=P_ONE):
        num = _coerce_poly(num)
        den = _coerce_poly(den)
        if den.is_zero:
            raise ZeroDivisionError("zero denominator")
        if num.is_zero:
            num, den = P_ZERO, P_ONE
        elif den != P_ONE:
            g = poly_gcd(num, den)
            if not g.is_constant() or g.lc != 1:
                num = num.exact_div(g)
                den = den.exact_div(g)
            c = den.lc
            if c != 1:
                num = num * (1 / c)
                den = den * (1 / c)
        self.num = num
        self.den = den
        self._hash: int | None = None

    # -- constructors --------------------------------------------------

    @staticmethod
    def from_fraction(c) -> "FieldElem":
        return FieldElem(Poly.const(c))

    @staticmethod
    def x() -> "FieldElem":
        return FieldElem(P_X)

    @staticmethod
    def t() -> "FieldElem":
        return FieldElem(P_T)

    # -- predicates ------------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return self.num.is_zero

    @property
    def is_one(self) -> bool:
        return self.den == P_ONE and self.num == P_ONE

    def __bool__(self) -> bool:
        return not self.num.is_zero

    def is_constant(self) -> bool:
        """True iff the derivative vanishes; here, membership in Q."""
        if self.den == P_ONE and self.num.is_constant():
            return True
        return self.derivative().is_zero

    def as_rational(self) -> Fraction:
        if self.den != P_ONE or not self.num.is_constant():
            raise ValueError("field element is not a rational constant")
        return self.num.as_fraction()

    def uses_t(self) -> bool:
        return self.num.deg_t() > 0 or self.den.deg_t() > 0

    # -- arithmetic --------------------------------------------------------

    def __eq__(self, other) -> bool:
        other = as_field(other, strict=False)
        if other is None:
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.num, self.den))
        return self._hash

    @staticmethod
    def _raw(num: Poly, den: Poly) -> "FieldElem":
        """Wrap an already-reduced pair (coprime, monic denominator)."""
        out = FieldElem.__new__(FieldElem)
        out.num = num
        out.den = den
        out._hash = None
        return out

    def __neg__(self) -> "FieldElem":
        return FieldElem._raw(-self.num, self.den)

    def _add_sub(self, other: "FieldElem", sign: int) -> "FieldElem":
        # denominators are monic and coprime to their numerators, so the
        # usual cross-cancellation keeps every gcd call small
        n1, d1 = self.num, self.den
        n2, d2 = other.num, other.den
        if sign < 0:
            n2 = -n2
        if d1 == P_ONE and d2 == P_ONE:
            return FieldElem._raw(n1 + n2, P_ONE)
        g = poly_gcd(d1, d2)
        if g == P_ONE:
            num = n1 * d2 + n2 * d1
            if num.is_zero:
                return FieldElem._raw(P_ZERO, P_ONE)
            return FieldElem._raw(num, d1 * d2)
        t = n1 * d2.exact_div(g) + n2 * d1.exact_div(g)
        if t.is_zero:
            return FieldElem._raw(P_ZERO, P_ONE)
        h = poly_gcd(t, g)
        if h == P_ONE:
            return FieldElem._raw(t, d1 * d2.exact_div(g))
        return FieldElem._raw(t.exact_div(h), d1.exact_div(h) * d2.exact_div(g))

    def __add__(self, other) -> "FieldElem":
        other = as_field(other, strict=False)
        if other is None:
            return NotImplemented
        return self._add_sub(other, 1)

    __radd__ = __add__

    def __sub__(self, other) -> "FieldElem":
        other = as_field(other, strict=False)
        if other is None:
            return NotImplemented
        return self._add_sub(other, -1)

    def __rsub__(self, other) -> "FieldElem":
        return as_field(other)._add_sub(self, -1)

    def __mul__(self, other) -> "FieldElem":
        other = as_field(other, strict=False)
        if other is None:
            return NotImplemented
        n1, d1 = self.num, self.den
        n2, d2 = other.num, other.den
        if n1.is_zero or n2.is_zero:
            return FieldElem._raw(P_ZERO, P_ONE)
        g1 = poly_gcd(n1, d2) if d2 != P_ONE else P_ONE
        g2 = poly_gcd(n2, d1) if d1 != P_ONE else P_ONE
        if g1 != P_ONE:
            n1 = n1.exact_div(g1)
            d2 = d2.exact_div(g1)
        if g2 != P_ONE:
            n2 = n2.exact_div(g2)
            d1 = d1.exact_div(g2)
        return FieldElem._raw(n1 * n2, d1 * d2)

    __rmul__ = __mul__

    def __truediv__(self, other) -> "FieldElem":
        other = as_field(other, strict=False)
        if other is None:
            return NotImplemented
        if other.is_zero:
            raise ZeroDivisionError("division by zero field element")
        return self * other.inverse()

    def __rtruediv__(self, other) -> "FieldElem":
        return as_field(other) / self

    def inverse(self) -> "FieldElem":
        if self.is_zero:
            raise ZeroDivisionError("inverse of zero")
        num, den = self.den, self.num
        c = den.lc
        if c != 1:
            ci = 1 / c
            num = num * ci
            den = den * ci
        return FieldElem._raw(num, den)

    def __pow__(self, k: int) -> "FieldElem":
        if k < 0:
            return self.inverse() ** (-k)
        if k == 0:
            return FieldElem._raw(P_ONE, P_ONE)
        return FieldElem._raw(self.num ** k, self.den ** k)

    def derivative(self) -> "FieldElem":
        """Derivation with d(x) = 1, d(t) = t (Leibniz + quotient rule)."""
        if self.den == P_ONE:
            return FieldElem._raw(self.num.derivative(), P_ONE)
        num = self.num.derivative() * self.den - self.num * self.den.derivative()
        if num.is_zero:
            return FieldElem._raw(P_ZERO, P_ONE)
        den = self.den * self.den
        g = poly_gcd(num, den)
        if g != P_ONE:
            num = num.exact_div(g)
            den = den.exact_div(g)
        return FieldElem._raw(num, den)

    # -- rendering -----------------------------------------------------

    def render(self) -> str:
        if self.den == P_ONE:
            return self.num.render()
        return f"({self.num.render()})/({self.den.render()})"

    def __str__(self) -> str:
        return self.render()

    def __repr__(self) -> str:
        return f"FieldElem({self.render()})"


def as_field(v, strict: bool = True) -> FieldElem | None:
    """Coerce ints, Fractions and Polys to FieldElem."""
    if isinstance(v, FieldElem):
        return v
    if isinstance(v, (int, Fraction, Poly)):
        return FieldElem(v)
    if strict:
        raise TypeError(f"cannot interpret {v!r} as a field element")
    return None


F_ZERO = FieldElem(0)
F_ONE = FieldElem(1)
F_X = FieldElem.x()
F_T = FieldElem.t()

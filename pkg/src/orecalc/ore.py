"""Scalar differential operators over Q(x)(t).

An :class:`OrePoly` is a polynomial ``sum c_k d^k`` in the symbol ``d`` with
left coefficients in the field, multiplied by the skew rule

    d * f  =  f * d + f'

(so ``d`` differentiates everything to its right).  Coefficients are stored
ascending as a tuple ``(c_0, ..., c_n)`` with nonzero ``c_n``; the zero
operator is the empty tuple and its order is ``None``.

Both one-sided Euclidean divisions exist and are unique, which gives monic
one-sided gcds, least common multiples with cofactor certificates, and the
usual degree law  order(right lcm) + order(left gcd) = order(a) + order(b).

A "right" multiple of ``a`` is ``a*q`` (cofactor on the right); a "right"
divisor of ``a`` is ``g`` with ``a = q*g``.  Left notions mirror these.

Values are immutable and operations pure.
"""

from __future__ import annotations

from fractions import Fraction
from math import comb

from .field import F_ONE, F_ZERO, FieldElem, as_field


def _coerce(v) -> "OrePoly | None":
    if isinstance(v, OrePoly):
        return v
    f = as_field(v, strict=False)
    if f is None:
        return None
    return OrePoly.from_field(f)


class OrePoly:
    """A differential operator with rational-function coefficients."""

    __slots__ = ("coeffs", "_hash")

    def __init__(self, coeffs: tuple[FieldElem, ...]):
        # callers must strip trailing zeros; use from_coeffs otherwise
        self.coeffs = coeffs
        self._hash: int | None = None

    # -- constructors ----------------------------------------------------

    @staticmethod
    def from_coeffs(seq) -> "OrePoly":
        cs = [as_field(c) for c in seq]
        while cs and cs[-1].is_zero:
            cs.pop()
        return OrePoly(tuple(cs))

    @staticmethod
    def from_field(f) -> "OrePoly":
        f = as_field(f)
        return OrePoly((f,)) if not f.is_zero else OrePoly(())

    @staticmethod
    def zero() -> "OrePoly":
        return OrePoly(())

    @staticmethod
    def one() -> "OrePoly":
        return OrePoly((F_ONE,))

    @staticmethod
    def d() -> "OrePoly":
        return OrePoly((F_ZERO, F_ONE))

    @staticmethod
    def monomial(c, k: int) -> "OrePoly":
        c = as_field(c)
        if c.is_zero:
            return OrePoly(())
        return OrePoly((F_ZERO,) * k + (c,))

    # -- queries ------------------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    @property
    def order(self) -> int | None:
        return len(self.coeffs) - 1 if self.coeffs else None

    @property
    def lc(self) -> FieldElem:
        if not self.coeffs:
            raise ValueError("zero operator has no leading coefficient")
        return self.coeffs[-1]

    @property
    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1].is_one

    def coeff(self, k: int) -> FieldElem:
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else F_ZERO

    def is_unit(self) -> bool:
        """Invertible in the operator ring: nonzero of order 0."""
        return len(self.coeffs) == 1

    # -- ring structure ---------------------------------------------------

    def __eq__(self, other) -> bool:
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(self.coeffs)
        return self._hash

    def __neg__(self) -> "OrePoly":
        return OrePoly(tuple(-c for c in self.coeffs))

    def __add__(self, other) -> "OrePoly":
        other = _coerce(other)
        if other is None:
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for k, c in enumerate(b):
            out[k] = out[k] + c
        while out and out[-1].is_zero:
            out.pop()
        return OrePoly(tuple(out))

    __radd__ = __add__

    def __sub__(self, other) -> "OrePoly":
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> "OrePoly":
        return _coerce(other) - self

    def __mul__(self, other) -> "OrePoly":
        """Operator composition self o other."""
        other = _coerce(other)
        if other is None:
            return NotImplemented
        if not self.coeffs or not other.coeffs:
            return OrePoly(())
        out = [F_ZERO] * (len(self.coeffs) + len(other.coeffs) - 1)
        cur = list(other.coeffs)  # d^k applied to `other`, expanded
        for k, ak in enumerate(self.coeffs):
            if not ak.is_zero:
                for j, cj in enumerate(cur):
                    if not cj.is_zero:
                        out[j] = out[j] + ak * cj
            if k + 1 < len(self.coeffs):
                # multiply by d on the left: shift up and differentiate
                nxt = [F_ZERO] * (len(cur) + 1)
                for j, cj in enumerate(cur):
                    if not cj.is_zero:
                        nxt[j + 1] = nxt[j + 1] + cj
                        dc = cj.derivative()
                        if not dc.is_zero:
                            nxt[j] = nxt[j] + dc
                cur = nxt
        while out and out[-1].is_zero:
            out.pop()
        return OrePoly(tuple(out))

    def __rmul__(self, other) -> "OrePoly":
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return other * self

    def scale(self, c) -> "OrePoly":
        """Left multiplication by a field element (coefficient scaling)."""
        c = as_field(c)
        if c.is_zero:
            return OrePoly(())
        return OrePoly(tuple(c * v for v in self.coeffs))

    def monic(self) -> "OrePoly":
        if not self.coeffs:
            return self
        if self.coeffs[-1].is_one:
            return self
        return self.scale(self.coeffs[-1].inverse())

    def __pow__(self, k: int) -> "OrePoly":
        if k < 0:
            raise ValueError("negative power of an operator")
        out = OrePoly.one()
        for _ in range(k):
            out = out * self
        return out

    # -- actions -----------------------------------------------------------

    def apply(self, f) -> FieldElem:
        """Apply the operator to a field element."""
        f = as_field(f)
        out = F_ZERO
        cur = f
        for k, c in enumerate(self.coeffs):
            if not c.is_zero:
                out = out + c * cur
            if k + 1 < len(self.coeffs):
                cur = cur.derivative()
        return out

    def adjoint(self) -> "OrePoly":
        """Formal adjoint: (c d^k)* = (-d)^k c; an anti-automorphism."""
        out = OrePoly(())
        for k, c in enumerate(self.coeffs):
            if c.is_zero:
                continue
            # (-1)^k d^k o c  =  (-1)^k sum_n C(k, n) c^(n) d^(k-n)
            sign = -1 if k % 2 else 1
            term = [F_ZERO] * (k + 1)
            der = c
            for n in range(k + 1):
                term[k - n] = as_field(sign * comb(k, n)) * der
                if n < k:
                    der = der.derivative()
            out = out + OrePoly.from_coeffs(term)
        return out

    # -- Euclidean structure -----------------------------------------------

    def divmod_right(self, b: "OrePoly") -> tuple["OrePoly", "OrePoly"]:
        """q, r with  self = q*b + r  and order(r) < order(b)."""
        if b.is_zero:
            raise ZeroDivisionError("division by the zero operator")
        q = OrePoly(())
        r = self
        while r.coeffs and len(r.coeffs) >= len(b.coeffs):
            k = len(r.coeffs) - len(b.coeffs)
            m = OrePoly.monomial(r.lc / b.lc, k)
            q = q + m
            r = r - m * b
        return q, r

    def divmod_left(self, b: "OrePoly") -> tuple["OrePoly", "OrePoly"]:
        """q, r with  self = b*q + r  and order(r) < order(b)."""
        if b.is_zero:
            raise ZeroDivisionError("division by the zero operator")
        q = OrePoly(())
        r = self
        while r.coeffs and len(r.coeffs) >= len(b.coeffs):
            k = len(r.coeffs) - len(b.coeffs)
            m = OrePoly.monomial(r.lc / b.lc, k)
            q = q + m
            r = r - b * m
        return q, r

    # -- rendering -----------------------------------------------------

    def render(self) -> str:
        if not self.coeffs:
            return "0"
        parts: list[str] = []
        for k in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[k]
            if c.is_zero:
                continue
            txt = _coeff_term(c, k)
            if not parts:
                parts.append(txt)
            elif txt.startswith("-"):
                parts.append(" - " + txt[1:])
            else:
                parts.append(" + " + txt)
        return "".join(parts)

    def __str__(self) -> str:
        return self.render()

    def __repr__(self) -> str:
        return f"OrePoly({self.render()})"


def _coeff_term(c: FieldElem, k: int) -> str:
    dpart = "" if k == 0 else ("d" if k == 1 else f"d^{k}")
    if k > 0 and c.is_one:
        return dpart
    if k > 0 and c == as_field(-1):
        return "-" + dpart
    text = c.render()
    simple = (
        c.den.is_constant()
        and len(c.num.terms) == 1
        and c.num.lc > 0
    )
    if not simple:
        text = f"({text})"
    return text if k == 0 else f"{text}*{dpart}"


def divide(a: OrePoly, b: OrePoly, side: str = "right") -> tuple[OrePoly, OrePoly]:
    """One-sided Euclidean division; side names where the quotient sits
    relative to the divisor: right -> a = q*b + r, left -> a = b*q + r."""
    if side == "right":
        return a.divmod_right(b)
    if side == "left":
        return a.divmod_left(b)
    raise ValueError(f"side must be 'left' or 'right', not {side!r}")


def gcd(a: OrePoly, b: OrePoly, side: str = "right") -> OrePoly:
    """Monic greatest common one-sided divisor.

    side='right': g with a = a0*g, b = b0*g, maximal order.
    """
    if a.is_zero and b.is_zero:
        raise ValueError("gcd of two zero operators is undefined")
    if side not in ("left", "right"):
        raise ValueError(f"side must be 'left' or 'right', not {side!r}")
    while not b.is_zero:
        if side == "right":
            _, r = a.divmod_right(b)
        else:
            _, r = a.divmod_left(b)
        a, b = b, r
    return a.monic()


def extended_gcd(a: OrePoly, b: OrePoly, side: str = "right"):
    """Extended Euclidean algorithm.

    side='right' uses right division and tracks left cofactors:
    returns (g, s, t, s0, t0) with  g = s*a + t*b  and  0 = s0*a + t0*b,
    where (s0*a) is the LEFT least common multiple of a and b (up to units).

    side='left' mirrors: g = a*s + b*t, 0 = a*s0 + b*t0, and a*s0 is the
    RIGHT least common multiple (up to units).
    """
    if a.is_zero or b.is_zero:
        raise ValueError("extended gcd needs nonzero operators")
    one, zero = OrePoly.one(), OrePoly.zero()
    r0, s0, t0 = a, one, zero
    r1, s1, t1 = b, zero, one
    while not r1.is_zero:
        if side == "right":
            q, r2 = r0.divmod_right(r1)
            s2, t2 = s0 - q * s1, t0 - q * t1
        else:
            q, r2 = r0.divmod_left(r1)
            s2, t2 = s0 - s1 * q, t0 - t1 * q
        r0, s0, t0 = r1, s1, t1
        r1, s1, t1 = r2, s2, t2
    return r0, s0, t0, s1, t1


def lcm_cofactors(a: OrePoly, b: OrePoly, side: str = "right"):
    """Least common multiple with certificates.

    side='right': (m, ca, cb) with m = a*ca = b*cb, monic, minimal order.
    side='left' : (m, ca, cb) with m = ca*a = cb*b, monic, minimal order.
    """
    if a.is_zero or b.is_zero:
        raise ValueError("lcm of a zero operator is undefined")
    if side == "right":
        # right multiples come from the left-division Euclid
        _, _, _, s, t = extended_gcd(a, b, side="left")
        m = a * s
        # unique monic generator of the right ideal: compose with 1/lc
        w = OrePoly.from_field(m.lc.inverse())
        return m * w, s * w, (-t) * w
    if side == "left":
        _, _, _, s, t = extended_gcd(a, b, side="right")
        m = s * a
        w = OrePoly.from_field(m.lc.inverse())
        return w * m, w * s, w * (-t)
    raise ValueError(f"side must be 'left' or 'right', not {side!r}")


def lcm(a: OrePoly, b: OrePoly, side: str = "right") -> OrePoly:
    return lcm_cofactors(a, b, side)[0]


D = OrePoly.d()

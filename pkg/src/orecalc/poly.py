"""Sparse exact polynomials in the symbols ``x`` and ``t`` over Q.

A :class:`Poly` is stored as a primitive integer polynomial times one
rational scale: ``terms`` maps monomials ``(i, j)`` -- standing for
``x^i t^j`` -- to integers with content one and positive leading
coefficient under the graded-lex order, and ``scale`` is a Fraction
carrying the content and the sign.  The zero polynomial has empty terms
and scale one.  This keeps coefficient arithmetic in plain integers and
makes rescaling (including monic normalization) constant time.

The derivation used throughout the package acts on polynomials by
``d(x) = 1`` and ``d(t) = t``, so ``t`` behaves like an exponential of x.

GCDs run over the integers: a probe modulo a word-size prime certifies
coprime inputs cheaply, a verified heuristic gcd (evaluate, integer gcd,
reconstruct, check by division) handles most of the rest, and a
subresultant polynomial remainder sequence with content/primitive-part
splitting is the general fallback; contents recurse from Z[t][x] through
Z[t] to Z.  ``poly_gcd`` returns the monic gcd.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd as _int_gcd

Mono = tuple[int, int]

_F0 = Fraction(0)
_F1 = Fraction(1)


def grlex_key(mono: Mono) -> tuple[int, Mono]:
    return (mono[0] + mono[1], mono)


def _normalize(terms: dict[Mono, int], scale: Fraction):
    """Canonical (terms, scale): primitive terms, positive leading int."""
    if not terms:
        return {}, _F1
    g = 0
    for v in terms.values():
        g = _int_gcd(g, v)
    lead = terms[max(terms, key=grlex_key)]
    if lead < 0:
        g = -g
    if g != 1:
        terms = {m: v // g for m, v in terms.items()}
        scale = scale * g
    return terms, scale


class Poly:
    """Immutable sparse polynomial in Q[x, t]."""

    __slots__ = ("terms", "scale", "_hash")

    def __init__(self, terms: dict[Mono, int], scale: Fraction):
        # inputs must already be canonical; use the constructors below
        self.terms = terms
        self.scale = scale
        self._hash: int | None = None

    # -- constructors ------------------------------------------------------

    @staticmethod
    def _make(terms: dict[Mono, int], scale: Fraction) -> "Poly":
        terms, scale = _normalize(terms, scale)
        return Poly(terms, scale)

    @staticmethod
    def from_terms(items) -> "Poly":
        """Build from a mapping of monomials to rational coefficients."""
        den = 1
        fracs: dict[Mono, Fraction] = {}
        for mono, c in dict(items).items():
            c = Fraction(c)
            if c:
                fracs[(int(mono[0]), int(mono[1]))] = c
                den = den * c.denominator // _int_gcd(den, c.denominator)
        ints = {m: int(c * den) for m, c in fracs.items()}
        return Poly._make(ints, Fraction(1, den))

    @staticmethod
    def const(c) -> "Poly":
        c = Fraction(c)
        if not c:
            return Poly({}, _F1)
        return Poly({(0, 0): 1}, c)

    @staticmethod
    def monomial(i: int, j: int, c=1) -> "Poly":
        c = Fraction(c)
        if not c:
            return Poly({}, _F1)
        return Poly({(i, j): 1}, c)

    # -- basic queries -----------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def lead(self) -> tuple[Mono, Fraction]:
        mono = max(self.terms, key=grlex_key)
        return mono, self.terms[mono] * self.scale

    @property
    def lc(self) -> Fraction:
        return self.lead()[1] if self.terms else _F0

    def coeff(self, mono: Mono) -> Fraction:
        v = self.terms.get(mono)
        return v * self.scale if v else _F0

    def deg_x(self) -> int:
        return max((m[0] for m in self.terms), default=-1)

    def deg_t(self) -> int:
        return max((m[1] for m in self.terms), default=-1)

    def total_degree(self) -> int:
        return max((m[0] + m[1] for m in self.terms), default=-1)

    def is_constant(self) -> bool:
        return all(m == (0, 0) for m in self.terms)

    def as_fraction(self) -> Fraction:
        if not self.is_constant():
            raise ValueError("polynomial is not constant")
        return self.coeff((0, 0))

    # -- arithmetic --------------------------------------------------------

    def __eq__(self, other) -> bool:
        if not isinstance(other, Poly):
            return NotImplemented
        return self.scale == other.scale and self.terms == other.terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.scale, frozenset(self.terms.items())))
        return self._hash

    def __neg__(self) -> "Poly":
        if not self.terms:
            return self
        return Poly(self.terms, -self.scale)

    def _combine(self, other: "Poly", sign: int) -> "Poly":
        if not other.terms:
            return self if sign > 0 else self
        if not self.terms:
            return other if sign > 0 else -other
        s1, s2 = self.scale, other.scale
        if sign < 0:
            s2 = -s2
        # common scale: gcd of numerators over lcm of denominators
        gn = _int_gcd(s1.numerator, s2.numerator)
        ld = s1.denominator * s2.denominator \
            // _int_gcd(s1.denominator, s2.denominator)
        s = Fraction(gn, ld)
        m1 = int(s1 / s)
        m2 = int(s2 / s)
        out = {m: v * m1 for m, v in self.terms.items()}
        for m, v in other.terms.items():
            w = out.get(m, 0) + v * m2
            if w:
                out[m] = w
            else:
                out.pop(m, None)
        return Poly._make(out, s)

    def __add__(self, other: "Poly") -> "Poly":
        return self._combine(other, 1)

    def __sub__(self, other: "Poly") -> "Poly":
        return self._combine(other, -1)

    def __mul__(self, other) -> "Poly":
        if isinstance(other, (int, Fraction)):
            c = Fraction(other)
            if not c or not self.terms:
                return P_ZERO
            return Poly(self.terms, self.scale * c)
        if not isinstance(other, Poly):
            return NotImplemented
        if not self.terms or not other.terms:
            return P_ZERO
        out: dict[Mono, int] = {}
        for (i1, j1), c1 in self.terms.items():
            for (i2, j2), c2 in other.terms.items():
                m = (i1 + i2, j1 + j2)
                v = out.get(m, 0) + c1 * c2
                if v:
                    out[m] = v
                else:
                    out.pop(m, None)
        return Poly._make(out, self.scale * other.scale)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "Poly":
        if k < 0:
            raise ValueError("negative power of a polynomial")
        out = P_ONE
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def derivative(self) -> "Poly":
        """Apply the derivation d(x) = 1, d(t) = t."""
        out: dict[Mono, int] = {}
        for (i, j), c in self.terms.items():
            if i:
                m = (i - 1, j)
                v = out.get(m, 0) + i * c
                if v:
                    out[m] = v
                else:
                    out.pop(m, None)
            if j:
                m = (i, j)
                v = out.get(m, 0) + j * c
                if v:
                    out[m] = v
                else:
                    out.pop(m, None)
        return Poly._make(out, self.scale)

    def exact_div(self, q: "Poly") -> "Poly":
        """Exact quotient self / q; raises ValueError if not divisible."""
        if q.is_zero:
            raise ZeroDivisionError("polynomial division by zero")
        if self.is_zero:
            return P_ZERO
        out = _int_exquo_flat(self.terms, q.terms)
        if out is None:
            raise ValueError("inexact polynomial division")
        return Poly._make(out, self.scale / q.scale)

    def monic(self) -> "Poly":
        if not self.terms:
            return self
        lead = self.terms[max(self.terms, key=grlex_key)]
        return Poly(self.terms, Fraction(1, lead))

    # -- rendering ---------------------------------------------------------

    def render(self) -> str:
        """Deterministic text form, parseable by the expression grammar."""
        if not self.terms:
            return "0"
        parts: list[str] = []
        for mono in sorted(self.terms, key=grlex_key, reverse=True):
            c = self.terms[mono] * self.scale
            neg = c < 0
            c = -c if neg else c
            factors = []
            i, j = mono
            if c != 1 or (i == 0 and j == 0):
                factors.append(str(c))
            if i == 1:
                factors.append("x")
            elif i > 1:
                factors.append(f"x^{i}")
            if j == 1:
                factors.append("t")
            elif j > 1:
                factors.append(f"t^{j}")
            text = "*".join(factors)
            if not parts:
                parts.append(("-" if neg else "") + text)
            else:
                parts.append((" - " if neg else " + ") + text)
        return "".join(parts)

    def __str__(self) -> str:
        return self.render()

    def __repr__(self) -> str:
        return f"Poly({self.render()})"


P_ZERO = Poly({}, _F1)
P_ONE = Poly({(0, 0): 1}, _F1)
P_X = Poly({(1, 0): 1}, _F1)
P_T = Poly({(0, 1): 1}, _F1)


# ---------------------------------------------------------------------------
# Integer-level gcd machinery.
#
# A flat integer polynomial is a dict {(i, j): int} with nonzero values.
# For the remainder sequence it is viewed recursively: a dict {x-exponent:
# coefficient} whose coefficients live in a ring R.  Two rings are used:
# plain integers, and integer polynomials in t (dict {t-exponent: int}).
# Ring element zero-ness coincides with falsiness (0, {}).
# ---------------------------------------------------------------------------


class _IntRing:
    one = 1

    @staticmethod
    def mul(a, b):
        return a * b

    @staticmethod
    def add(a, b):
        return a + b

    @staticmethod
    def neg(a):
        return -a

    @staticmethod
    def exquo(a, b):
        q, r = divmod(a, b)
        if r:
            raise ArithmeticError("inexact integer division in gcd kernel")
        return q

    @staticmethod
    def gcd(a, b):
        return _int_gcd(a, b)

    @staticmethod
    def const(n):
        return n

    @staticmethod
    def is_neg(a):
        return a < 0


def _t_mul(a, b):
    if not a or not b:
        return {}
    out: dict[int, int] = {}
    for e1, c1 in a.items():
        for e2, c2 in b.items():
            e = e1 + e2
            v = out.get(e, 0) + c1 * c2
            if v:
                out[e] = v
            else:
                out.pop(e, None)
    return out


def _t_add(a, b):
    out = dict(a)
    for e, c in b.items():
        v = out.get(e, 0) + c
        if v:
            out[e] = v
        else:
            out.pop(e, None)
    return out


class _TPolyRing:
    one = {0: 1}

    mul = staticmethod(_t_mul)
    add = staticmethod(_t_add)

    @staticmethod
    def neg(a):
        return {e: -c for e, c in a.items()}

    @staticmethod
    def exquo(a, b):
        if not b:
            raise ZeroDivisionError
        if not a:
            return {}
        db = max(b)
        lb = b[db]
        rem = dict(a)
        out: dict[int, int] = {}
        while rem:
            dr = max(rem)
            if dr < db:
                raise ArithmeticError("inexact division in Z[t]")
            q, r = divmod(rem[dr], lb)
            if r:
                raise ArithmeticError("inexact division in Z[t]")
            out[dr - db] = q
            for e, c in b.items():
                ee = e + dr - db
                v = rem.get(ee, 0) - q * c
                if v:
                    rem[ee] = v
                else:
                    rem.pop(ee, None)
        return out

    @staticmethod
    def gcd(a, b):
        return _gcd_uni_int(a, b)

    @staticmethod
    def const(n):
        return {0: n} if n else {}

    @staticmethod
    def is_neg(a):
        return a[max(a)] < 0


def _rpow(v, k: int, R):
    out = R.one
    for _ in range(k):
        out = R.mul(out, v)
    return out


def _u_scale(p, c, R):
    if not c:
        return {}
    return {e: R.mul(v, c) for e, v in p.items()}


def _u_div_ground(p, c, R):
    return {e: R.exquo(v, c) for e, v in p.items()}


def _u_prem(f, g, R):
    """Pseudo remainder of f by g (univariate, coefficients in R)."""
    df = max(f)
    dg = max(g)
    if df < dg:
        return dict(f)
    n = df - dg + 1
    lg = g[dg]
    rem = dict(f)
    while rem:
        dr = max(rem)
        if dr < dg:
            break
        lr = rem[dr]
        n -= 1
        # rem := lg*rem - lr * u^(dr-dg) * g
        new = {e: R.mul(lg, v) for e, v in rem.items()}
        for e, c in g.items():
            ee = e + dr - dg
            w = R.neg(R.mul(lr, c))
            if ee in new:
                v = R.add(new[ee], w)
                if v:
                    new[ee] = v
                else:
                    del new[ee]
            elif w:
                new[ee] = w
        rem = new
    if n > 0:
        rem = _u_scale(rem, _rpow(lg, n, R), R)
    return rem


def _u_content(p, R):
    it = iter(p.values())
    c = next(it)
    if R.is_neg(c):
        c = R.neg(c)
    for v in it:
        c = R.gcd(c, v)
    return c


def _u_gcd(f, g, R):
    """Gcd of univariate polynomials over ring R (subresultant PRS).

    Result is primitive with non-negative leading sign.
    """
    if not f and not g:
        return {}
    if not f:
        f, g = g, f
    if not g:
        out = _u_div_ground(f, _u_content(f, R), R)
        if R.is_neg(out[max(out)]):
            out = {e: R.neg(c) for e, c in out.items()}
        return out
    cf = _u_content(f, R)
    cg = _u_content(g, R)
    cont = R.gcd(cf, cg)
    f = _u_div_ground(f, cf, R)
    g = _u_div_ground(g, cg, R)
    if max(f) < max(g):
        f, g = g, f
    if max(g) == 0:
        # primitive parts are coprime in the main variable
        return {0: cont}
    if max(f) + max(g) >= 8 and _probe_coprime(f, g, R is _TPolyRing):
        return {0: cont}
    n, m = max(f), max(g)
    d = n - m
    b = R.const((-1) ** (d + 1))
    h = _u_prem(f, g, R)
    h = _u_scale(h, b, R)
    lc = g[m]
    c = R.neg(_rpow(lc, d, R))
    last = g
    while h:
        k = max(h)
        last = h
        f, g, m, d = g, h, k, m - k
        b = R.neg(R.mul(lc, _rpow(c, d, R)))
        h = _u_prem(f, g, R)
        h = _u_div_ground(h, b, R)
        lc = g[max(g)]
        if d > 1:
            c = R.exquo(_rpow(R.neg(lc), d, R), _rpow(c, d - 1, R))
        else:
            c = R.neg(lc)
    if max(last) == 0:
        return {0: cont}
    out = _u_div_ground(last, _u_content(last, R), R)
    out = _u_scale(out, cont, R)
    if R.is_neg(out[max(out)]):
        out = {e: R.neg(c2) for e, c2 in out.items()}
    return out


# -- modular coprimality probe ------------------------------------------
#
# Before running a remainder sequence we try to certify that the primitive
# parts are coprime in the main variable: reduce modulo a word-size prime
# (specializing t to a small integer in the bivariate case) and take a fast
# GF(p) gcd.  If the image gcd is constant and the image of one leading
# coefficient is nonzero, every common divisor has degree zero in the main
# variable -- so the expensive sequence can be skipped.  A failed probe
# proves nothing and merely falls through.

_PROBE_PRIMES = (2147483647, 2147483629, 998244353)
_PROBE_POINTS = (2, 3, 5, -2, 7)


def _gfp_gcd_is_const(fm: list[int], gm: list[int], p: int) -> bool:
    while gm:
        # reduce fm mod gm over GF(p)
        dg = len(gm) - 1
        inv = pow(gm[-1], -1, p)
        fm = fm[:]
        while len(fm) - 1 >= dg and fm:
            c = fm[-1] * inv % p
            k = len(fm) - 1 - dg
            for i, gc in enumerate(gm):
                fm[k + i] = (fm[k + i] - c * gc) % p
            while fm and fm[-1] == 0:
                fm.pop()
        fm, gm = gm, fm
    return len(fm) == 1


def _probe_coprime(f, g, biv: bool) -> bool:
    """True only when f, g (primitive, main-variable views) are provably
    coprime in the main variable."""
    df, dg = max(f), max(g)

    def image(poly, t0, p):
        out = [0] * (max(poly) + 1)
        for e, c in poly.items():
            if biv:
                v = 0
                for et, ci in c.items():
                    v = (v + ci * pow(t0, et, p)) % p
            else:
                v = c % p
            out[e] = v
        while out and out[-1] == 0:
            out.pop()
        return out

    for p in _PROBE_PRIMES:
        for t0 in _PROBE_POINTS if biv else (0,):
            fm = image(f, t0, p)
            gm = image(g, t0, p)
            if not fm or not gm:
                continue
            # a common divisor keeps its degree when the corresponding
            # leading coefficient image is nonzero
            if len(fm) - 1 != df and len(gm) - 1 != dg:
                continue
            return _gfp_gcd_is_const(fm, gm, p)
    return False


def _int_content(p: dict[int, int]) -> int:
    g = 0
    for v in p.values():
        g = _int_gcd(g, v)
    return g


def _int_uni_exquo(f: dict[int, int], g: dict[int, int]):
    """Exact quotient of integer univariate polys, or None if inexact."""
    if not g:
        return None
    if not f:
        return {}
    dg = max(g)
    lg = g[dg]
    rem = dict(f)
    out: dict[int, int] = {}
    while rem:
        dr = max(rem)
        if dr < dg:
            return None
        q, r = divmod(rem[dr], lg)
        if r:
            return None
        out[dr - dg] = q
        for e, c in g.items():
            ee = e + dr - dg
            v = rem.get(ee, 0) - q * c
            if v:
                rem[ee] = v
            else:
                rem.pop(ee, None)
    return out


def _heu_gcd_uni(f: dict[int, int], g: dict[int, int]):
    """Heuristic gcd of primitive integer univariate polys.

    Evaluates at a large integer, takes the integer gcd, reconstructs a
    candidate from balanced digits, and accepts it only when it divides
    both inputs exactly -- which makes the result rigorous.  Returns None
    when the heuristic fails to verify (caller falls back to the
    remainder sequence).
    """
    mf = max(abs(c) for c in f.values())
    mg = max(abs(c) for c in g.values())
    xi = 2 * min(mf, mg) + 29
    for _ in range(6):
        fv = sum(c * xi ** e for e, c in f.items())
        gv = sum(c * xi ** e for e, c in g.items())
        h = _int_gcd(fv, gv)
        if h:
            cand: dict[int, int] = {}
            k = 0
            hh = h
            half = xi // 2
            while hh:
                r = hh % xi
                if r > half:
                    r -= xi
                if r:
                    cand[k] = r
                hh = (hh - r) // xi
                k += 1
            if cand:
                c = _int_content(cand)
                if c > 1:
                    cand = {e: v // c for e, v in cand.items()}
                if cand[max(cand)] < 0:
                    cand = {e: -v for e, v in cand.items()}
                if (_int_uni_exquo(f, cand) is not None
                        and _int_uni_exquo(g, cand) is not None):
                    return cand
        xi = xi * 73794 // 27011 + 7
    return None


def _gcd_uni_int(f: dict[int, int], g: dict[int, int]) -> dict[int, int]:
    """Gcd of integer univariate polys: probe, heuristic, PRS fallback."""
    if not f and not g:
        return {}
    if not f or not g:
        h = f or g
        c = _int_content(h)
        h = {e: v // c for e, v in h.items()}
        if h[max(h)] < 0:
            h = {e: -v for e, v in h.items()}
        return h
    cf = _int_content(f)
    cg = _int_content(g)
    cont = _int_gcd(cf, cg)
    fp = {e: v // cf for e, v in f.items()}
    gp = {e: v // cg for e, v in g.items()}
    if max(fp) < max(gp):
        fp, gp = gp, fp
    if max(gp) == 0:
        return {0: cont}
    if max(fp) + max(gp) >= 8 and _probe_coprime(fp, gp, False):
        return {0: cont}
    res = _heu_gcd_uni(fp, gp)
    if res is None:
        res = _u_gcd(fp, gp, _IntRing)
    if cont > 1:
        res = {e: v * cont for e, v in res.items()}
    return res


def _to_xview(flat: dict[Mono, int]) -> dict[int, dict[int, int]]:
    out: dict[int, dict[int, int]] = {}
    for (i, j), c in flat.items():
        out.setdefault(i, {})[j] = c
    return out


def _from_xview(view: dict[int, dict[int, int]]) -> dict[Mono, int]:
    out: dict[Mono, int] = {}
    for i, tp in view.items():
        for j, c in tp.items():
            out[(i, j)] = c
    return out


def _int_exquo_flat(f: dict[Mono, int], g: dict[Mono, int]):
    """Exact quotient of integer polynomials, None if inexact."""
    if not f:
        return {}
    gm = max(g, key=grlex_key)
    gc = g[gm]
    rem = dict(f)
    out: dict[Mono, int] = {}
    while rem:
        rm = max(rem, key=grlex_key)
        mm = (rm[0] - gm[0], rm[1] - gm[1])
        if mm[0] < 0 or mm[1] < 0:
            return None
        q, r = divmod(rem[rm], gc)
        if r:
            return None
        out[mm] = q
        for (i2, j2), c2 in g.items():
            m = (mm[0] + i2, mm[1] + j2)
            v = rem.get(m, 0) - q * c2
            if v:
                rem[m] = v
            else:
                rem.pop(m, None)
    return out


def _gcd_impl(p: Poly, q: Poly) -> Poly:
    pi = p.terms
    qi = q.terms
    if all(m[1] == 0 for m in pi) and all(m[1] == 0 for m in qi):
        # univariate in x: plain integer coefficients
        res = _gcd_uni_int({m[0]: c for m, c in pi.items()},
                           {m[0]: c for m, c in qi.items()})
        flat = {(e, 0): c for e, c in res.items()}
    elif all(m[0] == 0 for m in pi) and all(m[0] == 0 for m in qi):
        res = _gcd_uni_int({m[1]: c for m, c in pi.items()},
                           {m[1]: c for m, c in qi.items()})
        flat = {(0, e): c for e, c in res.items()}
    else:
        res = _u_gcd(_to_xview(pi), _to_xview(qi), _TPolyRing)
        flat = _from_xview(res)
    return Poly._make(flat, _F1).monic()


_GCD_CACHE: dict = {}
_GCD_CACHE_MAX = 1 << 15


def poly_gcd(p: Poly, q: Poly) -> Poly:
    """Monic greatest common divisor in Q[x, t]."""
    if p.is_zero and q.is_zero:
        return P_ZERO
    if p.is_zero:
        return q.monic()
    if q.is_zero:
        return p.monic()
    if len(p.terms) == 1 and (0, 0) in p.terms:
        return P_ONE
    if len(q.terms) == 1 and (0, 0) in q.terms:
        return P_ONE
    key = (frozenset(p.terms.items()), frozenset(q.terms.items()))
    hit = _GCD_CACHE.get(key)
    if hit is not None:
        return hit
    res = _gcd_impl(p, q)
    if len(_GCD_CACHE) >= _GCD_CACHE_MAX:
        _GCD_CACHE.clear()
    _GCD_CACHE[key] = res
    _GCD_CACHE[(key[1], key[0])] = res
    return res


def poly_lcm(p: Poly, q: Poly) -> Poly:
    if p.is_zero or q.is_zero:
        return P_ZERO
    g = poly_gcd(p, q)
    return (p * q).exact_div(g).monic()

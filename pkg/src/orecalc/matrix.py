"""Matrix differential operators and their exact linear algebra.

An :class:`OpMatrix` is a rectangular matrix of scalar operators
(:class:`orecalc.ore.OrePoly`).  Everything here is driven by one kernel:
row reduction by invertible elementary operations over the operator ring
(tracking the transformation and its inverse), which yields

* the determinant degree and leading unit via :func:`dieudonne`,
* one-sided matrix gcds with cofactors and Bezout certificates,
* one-sided least common multiples with cofactor certificates
  (column reduction is realized through the formal adjoint),
* Hermite normal forms used to pick canonical representatives,
* inversion of unit matrices and exact one-sided quotients.

A square matrix is *non-degenerate* when it reduces to a triangular form
with nonzero diagonal; the sum of the diagonal orders is its degree, which
is additive under products.

The module also hosts the bounded-ansatz solver for ``A(F) = b`` over the
coefficient field: a transparent search over rational functions with a
prescribed denominator and bounded numerator degree.  Its failures mean
"nothing within the bound", never a proof of nonexistence.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import (
    DegenerateOperatorError,
    InconsistentInputError,
    InternalCheckError,
    ShapeError,
)
from .field import F_ONE, F_ZERO, FieldElem, as_field
from .poly import P_ONE, Poly, grlex_key, poly_gcd, poly_lcm
from .ore import OrePoly


def _as_op(v) -> OrePoly:
    if isinstance(v, OrePoly):
        return v
    return OrePoly.from_field(as_field(v))


class OpMatrix:
    """An immutable matrix of differential operators."""

    __slots__ = ("rows", "_det", "_hash")

    def __init__(self, rows: tuple[tuple[OrePoly, ...], ...]):
        self.rows = rows
        self._det: DetInfo | None = None
        self._hash: int | None = None

    # -- constructors ----------------------------------------------------

    @staticmethod
    def from_rows(rows: Iterable[Iterable]) -> "OpMatrix":
        data = tuple(tuple(_as_op(e) for e in row) for row in rows)
        if not data or not data[0]:
            raise ShapeError("matrix needs at least one row and one column")
        w = len(data[0])
        if any(len(r) != w for r in data):
            raise ShapeError("ragged matrix rows")
        return OpMatrix(data)

    @staticmethod
    def identity(n: int) -> "OpMatrix":
        one, zero = OrePoly.one(), OrePoly.zero()
        return OpMatrix(tuple(
            tuple(one if i == j else zero for j in range(n)) for i in range(n)))

    @staticmethod
    def zeros(m: int, n: int) -> "OpMatrix":
        zero = OrePoly.zero()
        return OpMatrix(tuple(tuple(zero for _ in range(n)) for _ in range(m)))

    @staticmethod
    def scalar(op, n: int = 1) -> "OpMatrix":
        """Diagonal matrix op * I of size n."""
        op = _as_op(op)
        zero = OrePoly.zero()
        return OpMatrix(tuple(
            tuple(op if i == j else zero for j in range(n)) for i in range(n)))

    @staticmethod
    def diag_blocks(blocks: Sequence["OpMatrix"]) -> "OpMatrix":
        n = sum(b.nrows for b in blocks)
        m = sum(b.ncols for b in blocks)
        rows = [[OrePoly.zero()] * m for _ in range(n)]
        r0 = c0 = 0
        for b in blocks:
            for i in range(b.nrows):
                for j in range(b.ncols):
                    rows[r0 + i][c0 + j] = b.rows[i][j]
            r0 += b.nrows
            c0 += b.ncols
        return OpMatrix(tuple(tuple(r) for r in rows))

    # -- shape -------------------------------------------------------------

    @property
    def nrows(self) -> int:
        return len(self.rows)

    @property
    def ncols(self) -> int:
        return len(self.rows[0])

    @property
    def is_square(self) -> bool:
        return self.nrows == self.ncols

    @property
    def size(self) -> int:
        if not self.is_square:
            raise ShapeError("matrix is not square")
        return self.nrows

    def __getitem__(self, ij: tuple[int, int]) -> OrePoly:
        return self.rows[ij[0]][ij[1]]

    def submatrix(self, r0: int, r1: int, c0: int, c1: int) -> "OpMatrix":
        return OpMatrix(tuple(tuple(row[c0:c1]) for row in self.rows[r0:r1]))

    @staticmethod
    def vstack(a: "OpMatrix", b: "OpMatrix") -> "OpMatrix":
        if a.ncols != b.ncols:
            raise ShapeError("vstack needs equal column counts")
        return OpMatrix(a.rows + b.rows)

    @staticmethod
    def hstack(a: "OpMatrix", b: "OpMatrix") -> "OpMatrix":
        if a.nrows != b.nrows:
            raise ShapeError("hstack needs equal row counts")
        return OpMatrix(tuple(ra + rb for ra, rb in zip(a.rows, b.rows)))

    # -- algebra -------------------------------------------------------

    def __eq__(self, other) -> bool:
        if not isinstance(other, OpMatrix):
            return NotImplemented
        return self.rows == other.rows

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(self.rows)
        return self._hash

    def __neg__(self) -> "OpMatrix":
        return OpMatrix(tuple(tuple(-e for e in row) for row in self.rows))

    def __add__(self, other: "OpMatrix") -> "OpMatrix":
        if self.nrows != other.nrows or self.ncols != other.ncols:
            raise ShapeError("matrix addition shape mismatch")
        return OpMatrix(tuple(
            tuple(a + b for a, b in zip(ra, rb))
            for ra, rb in zip(self.rows, other.rows)))

    def __sub__(self, other: "OpMatrix") -> "OpMatrix":
        return self + (-other)

    def __matmul__(self, other: "OpMatrix") -> "OpMatrix":
        if self.ncols != other.nrows:
            raise ShapeError("matrix product shape mismatch")
        n, k, m = self.nrows, self.ncols, other.ncols
        out = []
        for i in range(n):
            row = []
            for j in range(m):
                acc = OrePoly.zero()
                for s in range(k):
                    a = self.rows[i][s]
                    b = other.rows[s][j]
                    if a.coeffs and b.coeffs:
                        acc = acc + a * b
                row.append(acc)
            out.append(tuple(row))
        return OpMatrix(tuple(out))

    def adjoint(self) -> "OpMatrix":
        """Formal adjoint: transpose with entrywise scalar adjoints."""
        return OpMatrix(tuple(
            tuple(self.rows[j][i].adjoint() for j in range(self.nrows))
            for i in range(self.ncols)))

    def apply(self, vec: Sequence) -> tuple[FieldElem, ...]:
        """Apply the operator matrix to a vector of field elements."""
        vals = [as_field(v) for v in vec]
        if len(vals) != self.ncols:
            raise ShapeError("vector length does not match matrix columns")
        out = []
        for row in self.rows:
            acc = F_ZERO
            for e, v in zip(row, vals):
                if e.coeffs:
                    acc = acc + e.apply(v)
            out.append(acc)
        return tuple(out)

    @property
    def is_zero(self) -> bool:
        return all(e.is_zero for row in self.rows for e in row)

    def is_identity(self) -> bool:
        if not self.is_square:
            return False
        one, zero = OrePoly.one(), OrePoly.zero()
        return all(
            self.rows[i][j] == (one if i == j else zero)
            for i in range(self.nrows) for j in range(self.ncols))

    def render(self) -> str:
        return "[" + ", ".join(
            "[" + ", ".join(e.render() for e in row) + "]" for row in self.rows
        ) + "]"

    def __str__(self) -> str:
        return self.render()

    def __repr__(self) -> str:
        return f"OpMatrix({self.render()})"


@dataclass(frozen=True)
class DetInfo:
    """Outcome of the determinant computation.

    ``deg`` and ``det1`` are present exactly when the matrix is
    non-degenerate; ``det1`` is the product of the diagonal leading
    coefficients of a triangularization, times the sign of the row
    permutation used (a canonical representative of the leading unit).
    """

    degenerate: bool
    deg: int | None = None
    det1: FieldElem | None = None


class _Reducer:
    """Row reduction by invertible elementary operations.

    Optionally maintains the accumulated transformation U (with
    U @ original = current) and/or its inverse V, each tracked
    independently since both cost as much as the reduction itself.
    """

    def __init__(self, rows: list[list[OrePoly]],
                 track_u: bool = False, track_v: bool = False):
        self.rows = rows
        self.m = len(rows)
        self.ncols = len(rows[0]) if rows else 0
        self.swaps = 0
        self.det_scale = F_ONE  # product of row scalings, for determinants
        one, zero = OrePoly.one(), OrePoly.zero()
        self.u = ([[one if i == j else zero for j in range(self.m)]
                   for i in range(self.m)] if track_u else None)
        self.v = ([[one if i == j else zero for j in range(self.m)]
                   for i in range(self.m)] if track_v else None)

    def swap(self, i: int, k: int) -> None:
        if i == k:
            return
        self.rows[i], self.rows[k] = self.rows[k], self.rows[i]
        self.swaps += 1
        if self.u is not None:
            self.u[i], self.u[k] = self.u[k], self.u[i]
        if self.v is not None:
            for r in range(self.m):
                self.v[r][i], self.v[r][k] = self.v[r][k], self.v[r][i]

    def addmul(self, i: int, k: int, op: OrePoly) -> None:
        """row_i += op * row_k  (and bookkeeping on U, V)."""
        rk = self.rows[k]
        ri = self.rows[i]
        self.rows[i] = [ri[c] + op * rk[c] if rk[c].coeffs else ri[c]
                        for c in range(self.ncols)]
        if self.u is not None:
            uk = self.u[k]
            ui = self.u[i]
            self.u[i] = [ui[c] + op * uk[c] if uk[c].coeffs else ui[c]
                         for c in range(self.m)]
        if self.v is not None:
            for r in range(self.m):
                vri = self.v[r][i]
                if vri.coeffs:
                    self.v[r][k] = self.v[r][k] - vri * op
        self._strip(i)

    def scale(self, i: int, c: FieldElem) -> None:
        """row_i := c * row_i for a nonzero field element c."""
        self.det_scale = self.det_scale * c
        op = OrePoly.from_field(c)
        self.rows[i] = [op * e if e.coeffs else e for e in self.rows[i]]
        if self.u is not None:
            self.u[i] = [op * e if e.coeffs else e for e in self.u[i]]
        if self.v is not None:
            inv = OrePoly.from_field(c.inverse())
            for r in range(self.m):
                if self.v[r][i].coeffs:
                    self.v[r][i] = self.v[r][i] * inv

    def _strip(self, i: int) -> None:
        """Rescale row i to clear denominators and common content.

        A pure bookkeeping move (the scaling is an invertible elementary
        operation): it keeps coefficient growth during long eliminations
        in check.  Only triggered once entries carry big coefficients.
        When the transformation is tracked, its row takes part too, since
        the same scaling applies there.
        """
        entries = list(self.rows[i])
        if self.u is not None:
            entries += self.u[i]
        big = False
        for e in entries:
            for c in e.coeffs:
                if c.num.total_degree() > 8 or c.den.total_degree() > 4:
                    big = True
                    break
            if big:
                break
        if not big:
            return
        den = P_ONE
        for e in entries:
            for c in e.coeffs:
                if c.den != P_ONE:
                    den = poly_lcm(den, c.den)
        cont = None
        for e in entries:
            for c in e.coeffs:
                if c.is_zero:
                    continue
                num = c.num if c.den == P_ONE and den == P_ONE else \
                    c.num * den.exact_div(c.den)
                cont = num if cont is None else poly_gcd(cont, num)
                if cont.is_constant():
                    break
            if cont is not None and cont.is_constant():
                break
        if cont is None:
            return
        factor = FieldElem(den, cont if not cont.is_zero else P_ONE)
        if not factor.is_one:
            self.scale(i, factor)

    def echelon(self, full: bool = False) -> list[int]:
        """Reduce to row echelon form; returns the pivot column list.

        Each elimination step strictly lowers the order of one entry in the
        working column, so the multiset of (order, column) pairs decreases
        and the loop terminates.  With ``full=True`` pivots are made monic
        and entries above each pivot are reduced below its order.
        """
        pivots: list[int] = []
        prow = 0
        for col in range(self.ncols):
            if prow >= self.m:
                break
            while True:
                cand = [r for r in range(prow, self.m)
                        if self.rows[r][col].coeffs]
                if len(cand) <= 1:
                    break
                p = min(cand, key=lambda r: (self.rows[r][col].order, r))
                ep = self.rows[p][col]
                for r in cand:
                    if r == p:
                        continue
                    er = self.rows[r][col]
                    k = er.order - ep.order
                    c = er.lc / ep.lc
                    self.addmul(r, p, OrePoly.monomial(-c, k))
            if cand:
                self.swap(prow, cand[0])
                pivots.append(col)
                prow += 1
        if full:
            self._normalize(pivots)
        return pivots

    def _normalize(self, pivots: list[int]) -> None:
        # reduce above each pivot first; make pivots monic only at the
        # end, since reduction steps may rescale their target rows
        for r, col in enumerate(pivots):
            piv = self.rows[r][col]
            for i in range(r):
                while True:
                    e = self.rows[i][col]
                    if not e.coeffs or e.order < piv.order:
                        break
                    k = e.order - piv.order
                    c = e.lc / piv.lc
                    self.addmul(i, r, OrePoly.monomial(-c, k))
        for r, col in enumerate(pivots):
            piv = self.rows[r][col]
            if not piv.is_monic:
                self.scale(r, piv.lc.inverse())

    def matrix(self) -> OpMatrix:
        return OpMatrix(tuple(tuple(r) for r in self.rows))

    def u_matrix(self) -> OpMatrix:
        return OpMatrix(tuple(tuple(r) for r in self.u))

    def v_matrix(self) -> OpMatrix:
        return OpMatrix(tuple(tuple(r) for r in self.v))


def dieudonne(m: OpMatrix) -> DetInfo:
    """Determinant data (degree and leading unit) via row reduction."""
    if not m.is_square:
        raise ShapeError("determinant of a non-square matrix")
    if m._det is not None:
        return m._det
    red = _Reducer([list(r) for r in m.rows])
    pivots = red.echelon()
    n = m.size
    if len(pivots) < n or pivots != list(range(n)):
        info = DetInfo(degenerate=True)
    else:
        deg = 0
        det1 = as_field(1 if red.swaps % 2 == 0 else -1)
        for i in range(n):
            e = red.rows[i][i]
            deg += e.order
            det1 = det1 * e.lc
        det1 = det1 / red.det_scale  # undo tracked row rescalings
        info = DetInfo(degenerate=False, deg=deg, det1=det1)
    m._det = info
    return info


def is_nondegenerate(m: OpMatrix) -> bool:
    return not dieudonne(m).degenerate


def degree(m: OpMatrix) -> int:
    info = dieudonne(m)
    if info.degenerate:
        raise DegenerateOperatorError("degenerate matrix has no degree")
    return info.deg


@dataclass(frozen=True)
class MatGcd:
    """One-sided gcd with cofactors: right: a = a0 @ g, b = b0 @ g."""

    g: OpMatrix
    a0: OpMatrix
    b0: OpMatrix


@dataclass(frozen=True)
class MatLcm:
    """One-sided lcm with certificates.

    right: m = a @ cof_a = b @ cof_b;  left: m = cof_a @ a = cof_b @ b.
    """

    m: OpMatrix
    cof_a: OpMatrix
    cof_b: OpMatrix


def _stacked_reduction(a: OpMatrix, b: OpMatrix, track_u: bool = False,
                       track_v: bool = False, full: bool = True):
    """Row-reduce [a; b] with tracking; returns (reducer, pivots)."""
    s = OpMatrix.vstack(a, b)
    red = _Reducer([list(r) for r in s.rows], track_u=track_u, track_v=track_v)
    pivots = red.echelon(full=full)
    return red, pivots


def matrix_gcd(a: OpMatrix, b: OpMatrix, side: str = "right") -> MatGcd:
    """Greatest common one-sided divisor with cofactors.

    Requires at least one of the inputs non-degenerate so the gcd is
    non-degenerate.  The right gcd is returned in row Hermite form (monic
    diagonal, reduced above), the canonical representative.
    """
    if side == "left":
        res = matrix_gcd(a.adjoint(), b.adjoint(), "right")
        return MatGcd(res.g.adjoint(), res.a0.adjoint(), res.b0.adjoint())
    if side != "right":
        raise ValueError(f"side must be 'left' or 'right', not {side!r}")
    if a.nrows != b.nrows or a.ncols != b.ncols or not a.is_square:
        raise ShapeError("gcd needs two square matrices of equal size")
    n = a.size
    red, pivots = _stacked_reduction(a, b)
    if len(pivots) < n:
        raise DegenerateOperatorError(
            "gcd needs at least one non-degenerate input")
    g = red.matrix().submatrix(0, n, 0, n)
    # cofactors as exact quotients (cheaper than tracking the inverse
    # transformation through the whole elimination); both verify inside
    a0 = exact_right_quotient(g, a)
    b0 = exact_right_quotient(g, b)
    return MatGcd(g, a0, b0)


def _kernel_lcm(a: OpMatrix, b: OpMatrix) -> MatLcm:
    """Left lcm of (a, b) from the left kernel of the stacked matrix.

    Returns m = cof_a @ a = cof_b @ b, not yet canonically normalized.
    """
    n = a.size
    red, pivots = _stacked_reduction(a, b, track_u=True, full=False)
    if len(pivots) < n:
        raise DegenerateOperatorError("lcm needs a non-degenerate input")
    u = red.u_matrix()
    u21 = u.submatrix(n, 2 * n, 0, n)
    u22 = u.submatrix(n, 2 * n, n, 2 * n)
    m = u21 @ a
    if m != (-u22) @ b:
        raise InternalCheckError("lcm kernel certificate failed")
    return MatLcm(m, u21, -u22)


def hermite_row(m: OpMatrix):
    """Row Hermite form h = u @ m with u invertible; returns (h, u)."""
    red = _Reducer([list(r) for r in m.rows], track_u=True)
    red.echelon(full=True)
    return red.matrix(), red.u_matrix()


def hermite_col(m: OpMatrix):
    """Column Hermite form h = m @ w with w invertible; returns (h, w).

    Realized through the adjoint anti-automorphism; the diagonal is made
    monic with a constant-sign column fix.
    """
    hr, u = hermite_row(m.adjoint())
    h = hr.adjoint()
    w = u.adjoint()
    # adjoints of monic pivots carry sign (-1)^order; flip columns back
    signs = []
    for j in range(h.ncols):
        e = h.rows[j][j] if j < h.nrows else OrePoly.zero()
        if e.coeffs and e.lc == as_field(-1):
            signs.append(as_field(-1))
        else:
            signs.append(F_ONE)
    if any(not s.is_one for s in signs):
        fix = OpMatrix(tuple(
            tuple(OrePoly.from_field(signs[j]) if i == j else OrePoly.zero()
                  for j in range(h.ncols)) for i in range(h.ncols)))
        h = h @ fix
        w = w @ fix
    return h, w


def matrix_lcm(a: OpMatrix, b: OpMatrix, side: str = "right") -> MatLcm:
    """Least common one-sided multiple with cofactor certificates.

    right: m = a @ cof_a = b @ cof_b with b non-degenerate; cof_a is
    non-degenerate and deg(cof_a) <= deg(b) with equality iff a, b are
    left coprime.  The result is normalized by a unit to column Hermite
    form (the canonical generator of the right ideal).  left mirrors.
    """
    if side not in ("left", "right"):
        raise ValueError(f"side must be 'left' or 'right', not {side!r}")
    if a.nrows != b.nrows or a.ncols != b.ncols or not a.is_square:
        raise ShapeError("lcm needs two square matrices of equal size")
    if dieudonne(b).degenerate:
        raise DegenerateOperatorError("lcm needs a non-degenerate second input")
    if side == "right":
        res = _kernel_lcm(a.adjoint(), b.adjoint())
        m = res.m.adjoint()
        cof_a = res.cof_a.adjoint()
        cof_b = res.cof_b.adjoint()
        if not m.is_zero:
            _, w = hermite_col(m)
            m, cof_a, cof_b = m @ w, cof_a @ w, cof_b @ w
        if a @ cof_a != m or b @ cof_b != m:
            raise InternalCheckError("right lcm certificate failed")
        if dieudonne(cof_a).degenerate:
            raise InternalCheckError("right lcm cofactor degenerate")
        return MatLcm(m, cof_a, cof_b)
    res = _kernel_lcm(a, b)
    m, cof_a, cof_b = res.m, res.cof_a, res.cof_b
    if not m.is_zero:
        h, u = hermite_row(m)
        m, cof_a, cof_b = h, u @ cof_a, u @ cof_b
    if cof_a @ a != m or cof_b @ b != m:
        raise InternalCheckError("left lcm certificate failed")
    if dieudonne(cof_a).degenerate:
        raise InternalCheckError("left lcm cofactor degenerate")
    return MatLcm(m, cof_a, cof_b)


def multi_lcm(bs: Sequence[OpMatrix], side: str = "right"):
    """Least common multiple of a family, with one cofactor per member.

    right: (m, cofs) with m = bs[i] @ cofs[i] for all i.  Computed by
    folding the pairwise lcm; deg(m) <= sum deg(bs[i]).
    """
    if not bs:
        raise ValueError("multi_lcm needs at least one matrix")
    for b in bs:
        if dieudonne(b).degenerate:
            raise DegenerateOperatorError("multi_lcm needs non-degenerate inputs")
    n = bs[0].size
    m = bs[0]
    cofs = [OpMatrix.identity(n)]
    for b in bs[1:]:
        res = matrix_lcm(m, b, side)
        if side == "right":
            cofs = [c @ res.cof_a for c in cofs]
        else:
            cofs = [res.cof_a @ c for c in cofs]
        cofs.append(res.cof_b)
        m = res.m
    for b, c in zip(bs, cofs):
        prod = (b @ c) if side == "right" else (c @ b)
        if prod != m:
            raise InternalCheckError("multi_lcm cofactor certificate failed")
    return m, cofs


def bezout(a: OpMatrix, b: OpMatrix):
    """(c, d) with c @ a + d @ b = identity when a, b are right coprime.

    Returns None when a nontrivial common right divisor exists.
    """
    if dieudonne(b).degenerate:
        raise DegenerateOperatorError("bezout needs b non-degenerate")
    n = a.size
    red, pivots = _stacked_reduction(a, b, track_u=True, full=False)
    if len(pivots) < n:
        raise DegenerateOperatorError("bezout reduction lost rank")
    g = red.matrix().submatrix(0, n, 0, n)
    info = dieudonne(g)
    if info.degenerate or info.deg != 0:
        return None
    ginv = invert_unit(g)
    u = red.u_matrix()
    c = ginv @ u.submatrix(0, n, 0, n)
    d = ginv @ u.submatrix(0, n, n, 2 * n)
    if c @ a + d @ b != OpMatrix.identity(n):
        raise InternalCheckError("bezout certificate failed")
    return c, d


def invert_unit(m: OpMatrix) -> OpMatrix:
    """Inverse of an invertible operator matrix (degree zero)."""
    info = dieudonne(m)
    if info.degenerate or info.deg != 0:
        raise DegenerateOperatorError("matrix is not a unit")
    n = m.size
    h, u = hermite_row(m)
    # h is upper triangular with monic order-0 diagonal, i.e. ones
    zero = OrePoly.zero()
    x = [[zero] * n for _ in range(n)]
    ident = OpMatrix.identity(n)
    for i in range(n - 1, -1, -1):
        for j in range(n):
            acc = ident.rows[i][j]
            for k in range(i + 1, n):
                if h.rows[i][k].coeffs and x[k][j].coeffs:
                    acc = acc - h.rows[i][k] * x[k][j]
            x[i][j] = acc
    inv = OpMatrix(tuple(tuple(r) for r in x)) @ u
    if m @ inv != ident or inv @ m != ident:
        raise InternalCheckError("unit inverse certificate failed")
    return inv


def exact_right_quotient(g: OpMatrix, m: OpMatrix) -> OpMatrix:
    """The q with q @ g = m, when it exists; raises otherwise."""
    return exact_left_quotient(g.adjoint(), m.adjoint()).adjoint()


def exact_left_quotient(b: OpMatrix, m: OpMatrix) -> OpMatrix:
    """The d with b @ d = m, when it exists; raises otherwise."""
    if not b.is_square or b.nrows != m.nrows:
        raise ShapeError("quotient shape mismatch")
    info = dieudonne(b)
    if info.degenerate:
        raise DegenerateOperatorError("quotient by a degenerate matrix")
    n = b.size
    h, u = hermite_row(b)
    mp = u @ m
    zero = OrePoly.zero()
    d = [[zero] * m.ncols for _ in range(n)]
    for i in range(n - 1, -1, -1):
        piv = h.rows[i][i]
        for j in range(m.ncols):
            acc = mp.rows[i][j]
            for k in range(i + 1, n):
                if h.rows[i][k].coeffs and d[k][j].coeffs:
                    acc = acc - h.rows[i][k] * d[k][j]
            q, r = acc.divmod_left(piv)
            if not r.is_zero:
                raise InconsistentInputError("matrix quotient is not exact")
            d[i][j] = q
    out = OpMatrix(tuple(tuple(r) for r in d))
    if b @ out != m:
        raise InconsistentInputError("matrix quotient failed to verify")
    return out


# ---------------------------------------------------------------------------
# Bounded ansatz solver.
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class AnsatzBound:
    """Search bounds for rational solutions of A(F) = b.

    ``num_degree``: cap on the total degree of numerator monomials (derived
    from the data when None).  ``den_power``: each coprime denominator
    factor observed in the data enters the candidate denominator with this
    power.  ``denominator``: explicit override of the candidate denominator.
    """

    num_degree: int | None = None
    den_power: int = 2
    denominator: Poly | None = None


@dataclass(frozen=True)
class AnsatzSolution:
    """A particular solution plus a basis of the ansatz-space kernel."""

    particular: tuple[FieldElem, ...]
    kernel: tuple[tuple[FieldElem, ...], ...]


def _gcd_free_basis(polys: Iterable[Poly]) -> list[Poly]:
    """Pairwise-coprime monic factors covering every input polynomial."""
    basis: list[Poly] = []
    queue = []
    seen = set()
    for p in polys:
        p = p.monic()
        if p.is_constant() or p in seen:
            continue
        seen.add(p)
        queue.append(p)
    while queue:
        p = queue.pop()
        if p.is_constant():
            continue
        placed = False
        for i, q in enumerate(basis):
            g = poly_gcd(p, q)
            if not g.is_constant():
                rest_q = q.exact_div(g)
                repl = [g] + ([rest_q] if not rest_q.is_constant() else [])
                basis[i:i + 1] = repl
                rest_p = p.exact_div(g)
                if not rest_p.is_constant():
                    queue.append(rest_p)
                placed = True
                break
        if not placed:
            basis.append(p)
    return sorted(basis, key=lambda q: sorted(q.terms, key=grlex_key))


def _collect_denominators(a: OpMatrix, b: Sequence[FieldElem]) -> list[Poly]:
    dens = []
    for row in a.rows:
        for e in row:
            for c in e.coeffs:
                if c.den != P_ONE:
                    dens.append(c.den)
    for v in b:
        if v.den != P_ONE:
            dens.append(v.den)
    return dens


def _uses_t(a: OpMatrix, b: Sequence[FieldElem], den: Poly) -> bool:
    if den.deg_t() > 0:
        return True
    for row in a.rows:
        for e in row:
            for c in e.coeffs:
                if c.uses_t():
                    return True
    return any(v.uses_t() for v in b)


def _default_num_degree(a: OpMatrix, b: Sequence[FieldElem]) -> int:
    total_order = 0
    for row in a.rows:
        orders = [e.order for e in row if e.coeffs]
        total_order += max(orders) if orders else 0
    maxdeg = 0
    for row in a.rows:
        for e in row:
            for c in e.coeffs:
                maxdeg = max(maxdeg, c.num.total_degree(), c.den.total_degree())
    for v in b:
        maxdeg = max(maxdeg, v.num.total_degree(), v.den.total_degree())
    return total_order + maxdeg + 4


def _rref_solve(rows: list[list[Fraction]], rhs: list[Fraction], nunk: int):
    """Exact Gaussian elimination; returns (particular, kernel) or None."""
    aug = [row + [r] for row, r in zip(rows, rhs)]
    pivots: list[int] = []
    r = 0
    for c in range(nunk):
        p = None
        for i in range(r, len(aug)):
            if aug[i][c]:
                p = i
                break
        if p is None:
            continue
        aug[r], aug[p] = aug[p], aug[r]
        inv = 1 / aug[r][c]
        aug[r] = [v * inv for v in aug[r]]
        for i in range(len(aug)):
            if i != r and aug[i][c]:
                f = aug[i][c]
                aug[i] = [v - f * w for v, w in zip(aug[i], aug[r])]
        pivots.append(c)
        r += 1
        if r == len(aug):
            break
    for i in range(r, len(aug)):
        if aug[i][nunk]:
            return None  # inconsistent
    part = [Fraction(0)] * nunk
    for i, c in enumerate(pivots):
        part[c] = aug[i][nunk]
    free = [c for c in range(nunk) if c not in set(pivots)]
    kernel = []
    for fc in free:
        vec = [Fraction(0)] * nunk
        vec[fc] = Fraction(1)
        for i, c in enumerate(pivots):
            vec[c] = -aug[i][fc]
        kernel.append(vec)
    return part, kernel


def _solve_with(a: OpMatrix, b: Sequence[FieldElem], num_degree: int,
                den: Poly, use_t: bool) -> AnsatzSolution | None:
    ncols = a.ncols
    monos = []
    for i in range(num_degree + 1):
        if use_t:
            for j in range(num_degree + 1 - i):
                monos.append((i, j))
        else:
            monos.append((i, 0))
    basis = [FieldElem(Poly.monomial(i, j), den) for (i, j) in monos]
    unknowns = [(col, mi) for col in range(ncols) for mi in range(len(monos))]
    # images of basis elements under each matrix column
    images: list[list[FieldElem]] = []
    for col, mi in unknowns:
        img = []
        for i in range(a.nrows):
            e = a.rows[i][col]
            img.append(e.apply(basis[mi]) if e.coeffs else F_ZERO)
        images.append(img)
    rows: list[list[Fraction]] = []
    rhs: list[Fraction] = []
    for i in range(a.nrows):
        common = P_ONE
        for ui in range(len(unknowns)):
            v = images[ui][i]
            if not v.is_zero and v.den != P_ONE:
                common = poly_lcm(common, v.den)
        bi = as_field(b[i])
        if bi.den != P_ONE:
            common = poly_lcm(common, bi.den)
        numerators = []
        support: set = set()
        for ui in range(len(unknowns)):
            v = images[ui][i]
            p = v.num * common.exact_div(v.den) if not v.is_zero else None
            numerators.append(p)
            if p is not None:
                support.update(p.terms)
        brow = bi.num * common.exact_div(bi.den)
        support.update(brow.terms)
        for mono in sorted(support, key=grlex_key):
            row = []
            for p in numerators:
                row.append(p.coeff(mono) if p is not None else Fraction(0))
            rows.append(row)
            rhs.append(brow.coeff(mono))
    sol = _rref_solve(rows, rhs, len(unknowns))
    if sol is None:
        return None
    part_vec, kern_vecs = sol

    def assemble(vec: list[Fraction]) -> tuple[FieldElem, ...]:
        out = []
        for col in range(ncols):
            terms: dict = {}
            for mi, mono in enumerate(monos):
                c = vec[col * len(monos) + mi]
                if c:
                    terms[mono] = c
            out.append(FieldElem(Poly.from_terms(terms), den))
        return tuple(out)

    particular = assemble(part_vec)
    if a.apply(particular) != tuple(as_field(v) for v in b):
        raise InternalCheckError("ansatz solution failed verification")
    kernel = []
    zero_rhs = tuple(F_ZERO for _ in range(a.nrows))
    for vec in kern_vecs:
        kv = assemble(vec)
        if all(v.is_zero for v in kv):
            continue
        if a.apply(kv) != zero_rhs:
            raise InternalCheckError("ansatz kernel vector failed verification")
        kernel.append(kv)
    return AnsatzSolution(particular, tuple(kernel))


def _resolve_bound(a: OpMatrix, b: Sequence[FieldElem],
                   bound: AnsatzBound | None):
    bound = bound or AnsatzBound()
    if bound.denominator is not None:
        den = bound.denominator
    else:
        basis = _gcd_free_basis(_collect_denominators(a, b))
        den = P_ONE
        for p in basis:
            den = den * (p ** bound.den_power)
    num_degree = bound.num_degree
    if num_degree is None:
        num_degree = _default_num_degree(a, b) + den.total_degree()
    return num_degree, den, _uses_t(a, b, den)


def solve_ansatz(a: OpMatrix, b: Sequence, bound: AnsatzBound | None = None
                 ) -> AnsatzSolution | None:
    """Solve A(F) = b exactly within a bounded rational-function ansatz.

    A must be square and non-degenerate.  Returns None when no solution
    exists within the bound -- not a proof that none exists at all.
    The kernel part of the result is the full solution set of A(F) = 0
    inside the ansatz space, so the affine solution set is reported.
    """
    if not a.is_square:
        raise ShapeError("solve_ansatz needs a square matrix")
    if dieudonne(a).degenerate:
        raise DegenerateOperatorError("solve_ansatz needs a non-degenerate matrix")
    return solve_operator_system(a, b, bound)


def solve_operator_system(a: OpMatrix, b: Sequence,
                          bound: AnsatzBound | None = None
                          ) -> AnsatzSolution | None:
    """Like solve_ansatz for possibly rectangular (e.g. stacked) systems."""
    bvals = [as_field(v) for v in b]
    if len(bvals) != a.nrows:
        raise ShapeError("right-hand side length mismatch")
    num_degree, den, use_t = _resolve_bound(a, bvals, bound)
    return _solve_with(a, bvals, num_degree, den, use_t)


def solve_escalating(a: OpMatrix, b: Sequence,
                     bound: AnsatzBound | None = None
                     ) -> AnsatzSolution | None:
    """Escalating-degree search used by the association solvers.

    Tries small numerator degrees first and stops at the first success;
    any solution found is exact and verified, so early exits are sound.
    """
    bvals = [as_field(v) for v in b]
    if len(bvals) != a.nrows:
        raise ShapeError("right-hand side length mismatch")
    num_degree, den, use_t = _resolve_bound(a, bvals, bound)
    step = 3 if use_t else 4
    tried = set()
    for nd in list(range(2, num_degree, step)) + [num_degree]:
        if nd in tried:
            continue
        tried.add(nd)
        sol = _solve_with(a, bvals, nd, den, use_t)
        if sol is not None:
            return sol
    return None

"""Rational matrix operators as syntactic expressions, and their invariants.

A rational operator is presented either as an :class:`OpFraction` -- a pair
(a, b) of matrix differential operators standing for ``a b^{-1}`` (side
"right") or ``b^{-1} a`` (side "left"), with b non-degenerate -- or as a
:class:`RationalExpression`: a sum over summands, each summand a product of
factor pairs (a_1, b_1) ... (a_n, b_n) standing for
``a_1 b_1^{-1} ... a_n b_n^{-1}``.

Inverses are never expanded as series.  Every transformation below
(collapsing a product chain, merging a sum over a common denominator,
dividing out the right gcd) is certified by exact operator multiplication.

The key invariant of an expression is its *singular degree*: the degree of
the denominator in a fully reduced fraction, a noncommutative count of
poles.  It never exceeds the expression's *weight* (the total degree of all
denominators); the expression is *minimal* when the two are equal, which
happens exactly when the two witness spaces measured by
:func:`witness_nullity` and :func:`adjoint_witness_nullity` vanish.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Sequence

from .errors import (
    DegenerateOperatorError,
    InternalCheckError,
    ShapeError,
)
from .matrix import (
    MatLcm,
    OpMatrix,
    degree,
    dieudonne,
    hermite_col,
    is_nondegenerate,
    matrix_gcd,
    matrix_lcm,
    multi_lcm,
)
from .ore import OrePoly


class OpFraction:
    """A one-sided fraction of matrix differential operators."""

    __slots__ = ("a", "b", "side")

    def __init__(self, a: OpMatrix, b: OpMatrix, side: str = "right"):
        if side not in ("right", "left"):
            raise ValueError(f"side must be 'left' or 'right', not {side!r}")
        if a.nrows != b.nrows or a.ncols != b.ncols or not b.is_square:
            raise ShapeError("fraction needs square matrices of equal size")
        if dieudonne(b).degenerate:
            raise DegenerateOperatorError("fraction denominator is degenerate")
        self.a = a
        self.b = b
        self.side = side

    @property
    def size(self) -> int:
        return self.b.size

    def __eq__(self, other) -> bool:
        if not isinstance(other, OpFraction):
            return NotImplemented
        return (self.side == other.side and self.a == other.a
                and self.b == other.b)

    def __hash__(self) -> int:
        return hash((self.side, self.a, self.b))

    def adjoint(self) -> "OpFraction":
        """The adjoint fraction; a right fraction becomes a left one."""
        return OpFraction(self.a.adjoint(), self.b.adjoint(),
                          "left" if self.side == "right" else "right")

    def to_right(self) -> "OpFraction":
        """Convert a left fraction b^{-1} a to a right fraction.

        Uses the right lcm  a cof_a = b cof_b:  b^{-1} a = cof_b cof_a^{-1}.
        """
        if self.side == "right":
            return self
        res = matrix_lcm(self.a, self.b, "right")
        return OpFraction(res.cof_b, res.cof_a, "right")

    def equivalent(self, other: "OpFraction") -> bool:
        """Exact equality of the represented operators, decided by
        cross-multiplication over a common right multiple of denominators."""
        f, g = self.to_right(), other.to_right()
        if f.size != g.size:
            raise ShapeError("fractions of different sizes")
        res = matrix_lcm(f.b, g.b, "right")
        return f.a @ res.cof_a == g.a @ res.cof_b

    def __str__(self) -> str:
        if self.side == "right":
            return f"({self.a.render()}) * inv({self.b.render()})"
        return f"inv({self.b.render()}) * ({self.a.render()})"

    def __repr__(self) -> str:
        return f"OpFraction({self}, side={self.side!r})"


FactorPair = tuple[OpMatrix, OpMatrix]


class RationalExpression:
    """A sum of products of fraction factors, kept in syntactic form.

    ``summands[k]`` is the list of factor pairs of the k-th summand; all
    matrices share one size and all second components are non-degenerate.
    Summands may have different lengths.
    """

    __slots__ = ("summands", "_hash")

    def __init__(self, summands: Sequence[Sequence[FactorPair]]):
        if not summands:
            raise ShapeError("expression needs at least one summand")
        size = None
        out = []
        for summand in summands:
            if not summand:
                raise ShapeError("summand needs at least one factor pair")
            pairs = []
            for a, b in summand:
                if size is None:
                    size = b.size
                if (a.nrows, a.ncols) != (size, size) or \
                        (b.nrows, b.ncols) != (size, size):
                    raise ShapeError("all factors must share one square size")
                if dieudonne(b).degenerate:
                    raise DegenerateOperatorError(
                        "expression denominator is degenerate")
                pairs.append((a, b))
            out.append(tuple(pairs))
        self.summands = tuple(out)
        self._hash: int | None = None

    # -- constructors ------------------------------------------------------

    @staticmethod
    def from_fraction(f: OpFraction) -> "RationalExpression":
        f = f.to_right()
        return RationalExpression([[(f.a, f.b)]])

    @staticmethod
    def from_matrix(a: OpMatrix) -> "RationalExpression":
        return RationalExpression([[(a, OpMatrix.identity(a.size))]])

    # -- structure ------------------------------------------------------

    @property
    def size(self) -> int:
        return self.summands[0][0][1].size

    def weight(self) -> int:
        """Total denominator degree across all factors and summands."""
        return sum(degree(b) for s in self.summands for _, b in s)

    def __eq__(self, other) -> bool:
        if not isinstance(other, RationalExpression):
            return NotImplemented
        return self.normalized().summands == other.normalized().summands

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(self.normalized().summands)
        return self._hash

    def __add__(self, other: "RationalExpression") -> "RationalExpression":
        if self.size != other.size:
            raise ShapeError("sum of expressions of different sizes")
        return RationalExpression(list(self.summands) + list(other.summands))

    def __matmul__(self, other: "RationalExpression") -> "RationalExpression":
        if self.size != other.size:
            raise ShapeError("product of expressions of different sizes")
        out = []
        for s1 in self.summands:
            for s2 in other.summands:
                out.append(list(s1) + list(s2))
        return RationalExpression(out)

    def __neg__(self) -> "RationalExpression":
        out = []
        for s in self.summands:
            (a0, b0), rest = s[0], s[1:]
            out.append([(-a0, b0), *rest])
        return RationalExpression(out)

    def normalized(self) -> "RationalExpression":
        """Merge trivial-denominator factors into their right neighbour.

        Pairs (a, 1) are absorbed into the next factor's numerator (or kept
        as a single trailing pair), and (1, 1) pairs vanish.  This does not
        change the represented operator, the weight, or the witness-space
        dimensions; it is the canonical structure used for equality.
        """
        ident = OpMatrix.identity(self.size)
        out = []
        for s in self.summands:
            pairs: list[FactorPair] = []
            carry: OpMatrix | None = None
            for a, b in s:
                if carry is not None:
                    a = carry @ a
                    carry = None
                if b.is_identity():
                    carry = a
                else:
                    pairs.append((a, b))
            if carry is not None:
                if carry.is_identity() and pairs:
                    pass
                else:
                    pairs.append((carry, ident))
            out.append(pairs)
        return RationalExpression(out)

    # -- serialization ---------------------------------------------------

    def to_json(self) -> dict:
        return {
            "schema": 1,
            "summands": [
                [{"A": a.render(), "B": b.render()} for a, b in s]
                for s in self.summands
            ],
        }

    @staticmethod
    def from_json(data) -> "RationalExpression":
        from .parser import parse_matrix
        if isinstance(data, str):
            data = json.loads(data)
        summands = []
        for s in data["summands"]:
            pairs = []
            for item in s:
                pairs.append((parse_matrix(item["A"]),
                              parse_matrix(item["B"])))
            summands.append(pairs)
        return RationalExpression(summands)

    def render(self) -> str:
        parts = []
        for s in self.summands:
            factors = []
            for a, b in s:
                if not a.is_identity():
                    factors.append(f"({a.render()})")
                if not b.is_identity():
                    factors.append(f"inv({b.render()})")
            parts.append(" * ".join(factors) if factors else "1")
        return " + ".join(parts)

    def __str__(self) -> str:
        return self.render()

    def __repr__(self) -> str:
        return f"RationalExpression({self.render()})"


def as_expression(value) -> RationalExpression:
    if isinstance(value, RationalExpression):
        return value
    if isinstance(value, OpFraction):
        return RationalExpression.from_fraction(value)
    if isinstance(value, OpMatrix):
        return RationalExpression.from_matrix(value)
    raise TypeError(f"cannot interpret {value!r} as a rational expression")


# ---------------------------------------------------------------------------
# Collapsing to a single fraction.
# ---------------------------------------------------------------------------


def collapse_product_chain(summand: Sequence[FactorPair]
                           ) -> tuple[OpFraction, list[OpMatrix]]:
    """Collapse a_1 b_1^{-1} ... a_n b_n^{-1} to one right fraction.

    Returns the fraction (a_1 x_1, b_n x_n) together with the chain
    certificates x_1..x_n satisfying  b_i x_i = a_{i+1} x_{i+1},  each link
    checked by multiplication; x_n is non-degenerate.
    """
    pairs = list(summand)
    n = len(pairs)
    if n == 1:
        a, b = pairs[0]
        return OpFraction(a, b, "right"), [OpMatrix.identity(b.size)]
    size = pairs[0][1].size
    ident = OpMatrix.identity(size)
    # build the ladder of pairwise right lcms
    b_tilde = [ident]           # b_tilde[i] pads the i-th link, b_tilde[0] = 1
    a_tilde: list[OpMatrix] = [ident, ident]  # a_tilde[i] for i >= 2
    for i in range(1, n):
        b_i = pairs[i - 1][1]
        a_next = pairs[i][0]
        left_part = b_i @ b_tilde[i - 1]
        res = matrix_lcm(a_next, left_part, "right")
        # res.m = a_next @ res.cof_a = left_part @ res.cof_b
        b_tilde.append(res.cof_a)
        a_tilde.append(res.cof_b)
    xs: list[OpMatrix] = []
    for i in range(1, n + 1):
        x = b_tilde[i - 1]
        for j in range(i + 1, n + 1):
            x = x @ a_tilde[j]
        xs.append(x)
    for i in range(n - 1):
        if pairs[i][1] @ xs[i] != pairs[i + 1][0] @ xs[i + 1]:
            raise InternalCheckError("product chain certificate failed")
    if dieudonne(xs[-1]).degenerate:
        raise InternalCheckError("product chain lost non-degeneracy")
    return (OpFraction(pairs[0][0] @ xs[0], pairs[-1][1] @ xs[-1], "right"),
            xs)


def collapse_product(summand: Sequence[FactorPair]) -> OpFraction:
    return collapse_product_chain(summand)[0]


def collapse_sum(fractions: Sequence[OpFraction]) -> OpFraction:
    """Merge right fractions over the right lcm of their denominators."""
    fractions = [f.to_right() for f in fractions]
    if not fractions:
        raise ValueError("collapse_sum needs at least one fraction")
    if len({f.size for f in fractions}) != 1:
        raise ShapeError("fractions of different sizes")
    if len(fractions) == 1:
        return fractions[0]
    b, cofs = multi_lcm([f.b for f in fractions], "right")
    num = None
    for f, c in zip(fractions, cofs):
        term = f.a @ c
        num = term if num is None else num + term
    return OpFraction(num, b, "right")


def collapse_expression(expr) -> OpFraction:
    """Collapse a whole expression to a single right fraction."""
    expr = as_expression(expr)
    return collapse_sum([collapse_product(s) for s in expr.summands])


def minimal_fraction(f: OpFraction) -> OpFraction:
    """Divide out the right gcd of numerator and denominator.

    The result is in lowest terms (numerator and denominator right
    coprime) and normalized by a unit so the denominator is in column
    Hermite form with monic diagonal, the canonical representative.
    """
    f = f.to_right()
    res = matrix_gcd(f.a, f.b, "right")
    a0, b0 = res.a0, res.b0
    _, w = hermite_col(b0)
    a0, b0 = a0 @ w, b0 @ w
    out = OpFraction(a0, b0, "right")
    if degree(f.b) != degree(b0) + degree(res.g):
        raise InternalCheckError("gcd degree bookkeeping failed")
    return out


# ---------------------------------------------------------------------------
# Singular degree and coprimeness.
# ---------------------------------------------------------------------------


def singular_degree(value) -> int:
    """Degree of the denominator of a fully reduced fraction.

    Zero exactly when the operator is polynomial (no inverses left).
    """
    f = collapse_expression(as_expression(value))
    g = matrix_gcd(f.a, f.b, "right")
    return degree(f.b) - degree(g.g)


def strongly_coprime(bs: Sequence[OpMatrix], side: str = "left") -> bool:
    """Degree test for strong coprimeness of a family of denominators.

    A family is strongly *left* coprime when the degree of its *right*
    lcm equals the sum of the degrees (and mirrored for right); for two
    matrices this is ordinary coprimeness, for three or more it is
    strictly stronger than pairwise coprimeness.
    """
    if side not in ("left", "right"):
        raise ValueError(f"side must be 'left' or 'right', not {side!r}")
    for b in bs:
        if dieudonne(b).degenerate:
            raise DegenerateOperatorError("strongly_coprime needs "
                                          "non-degenerate inputs")
    lcm_side = "right" if side == "left" else "left"
    m, _ = multi_lcm(list(bs), lcm_side)
    return degree(m) == sum(degree(b) for b in bs)


def sdeg_triple(a: OpMatrix, b: OpMatrix, c: OpMatrix) -> int:
    """Singular degree of the sandwich  a b^{-1} c.

    Dispatches on one-sided coprimeness: when b is left coprime to c the
    answer is deg(b) minus the right-gcd degree of (a, b); when a is right
    coprime to b it is deg(b) minus the left-gcd degree of (b, c); with
    both, simply deg(b).  Otherwise falls back to the generic collapse.
    """
    if dieudonne(b).degenerate:
        raise DegenerateOperatorError("sandwich needs non-degenerate middle")
    right_cop = degree(matrix_gcd(a, b, "right").g) == 0
    left_cop = degree(matrix_gcd(b, c, "left").g) == 0
    if right_cop and left_cop:
        return degree(b)
    if left_cop:
        return degree(b) - degree(matrix_gcd(a, b, "right").g)
    if right_cop:
        return degree(b) - degree(matrix_gcd(b, c, "left").g)
    ident = OpMatrix.identity(b.size)
    return singular_degree(RationalExpression([[(a, b), (c, ident)]]))


def sdeg_block(blocks: Sequence, offdiag=None) -> int:
    """Singular degree of a block matrix with polynomial off-diagonal part.

    ``blocks`` are the diagonal blocks as expressions (or fractions or
    matrices); ``offdiag``, when given, maps (i, j) with i != j to plain
    operator matrices and must be shape compatible.  Polynomial summands
    never contribute, so the result is the sum over the diagonal blocks.
    """
    exprs = [as_expression(b) for b in blocks]
    sizes = [e.size for e in exprs]
    if offdiag:
        for (i, j), m in offdiag.items():
            if i == j:
                raise ShapeError("off-diagonal entries must have i != j")
            if not (0 <= i < len(sizes)) or not (0 <= j < len(sizes)):
                raise ShapeError("off-diagonal index out of range")
            if (m.nrows, m.ncols) != (sizes[i], sizes[j]):
                raise ShapeError("off-diagonal block has wrong shape")
    return sum(singular_degree(e) for e in exprs)


def assemble_blocks(blocks: Sequence, offdiag=None) -> RationalExpression:
    """Embed diagonal blocks and a polynomial off-diagonal part into one
    expression on the full size (used to cross-check sdeg_block)."""
    exprs = [as_expression(b) for b in blocks]
    sizes = [e.size for e in exprs]
    total = sum(sizes)
    offsets = []
    acc = 0
    for s in sizes:
        offsets.append(acc)
        acc += s

    def embed_a(m: OpMatrix, k: int) -> OpMatrix:
        rows = [[OrePoly.zero()] * total for _ in range(total)]
        o = offsets[k]
        for i in range(m.nrows):
            for j in range(m.ncols):
                rows[o + i][o + j] = m.rows[i][j]
        return OpMatrix(tuple(tuple(r) for r in rows))

    def embed_b(m: OpMatrix, k: int) -> OpMatrix:
        rows = [[OrePoly.one() if i == j else OrePoly.zero()
                 for j in range(total)] for i in range(total)]
        o = offsets[k]
        for i in range(m.nrows):
            for j in range(m.ncols):
                rows[o + i][o + j] = m.rows[i][j]
        return OpMatrix(tuple(tuple(r) for r in rows))

    summands = []
    for k, e in enumerate(exprs):
        for s in e.summands:
            summands.append([(embed_a(a, k), embed_b(b, k)) for a, b in s])
    if offdiag:
        rows = [[OrePoly.zero()] * total for _ in range(total)]
        for (i, j), m in offdiag.items():
            for r in range(m.nrows):
                for c in range(m.ncols):
                    rows[offsets[i] + r][offsets[j] + c] = m.rows[r][c]
        poly_part = OpMatrix(tuple(tuple(r) for r in rows))
        summands.append([(poly_part, OpMatrix.identity(total))])
    return RationalExpression(summands)


# ---------------------------------------------------------------------------
# Witness spaces of the zero relation, and the degree bounds.
# ---------------------------------------------------------------------------


def adjoint_expression(expr) -> RationalExpression:
    """The reversed-adjoint expression, with identity padding.

    A summand  a_1 b_1^{-1} ... a_n b_n^{-1}  becomes
    1 (b_n*)^{-1} a_n* (b_{n-1}*)^{-1} ... a_2* (b_1*)^{-1} a_1* 1^{-1},
    read as n+1 factor pairs.  The weight is preserved since adjoints
    keep degrees and the padding factors are units.
    """
    expr = as_expression(expr)
    ident = OpMatrix.identity(expr.size)
    out = []
    for s in expr.summands:
        n = len(s)
        pairs = []
        for k in range(n + 1):
            a = ident if k == 0 else s[n - k][0].adjoint()
            b = ident if k == n else s[n - 1 - k][1].adjoint()
            pairs.append((a, b))
        out.append(pairs)
    return RationalExpression(out)


def _pad_to_common_length(expr: RationalExpression) -> RationalExpression:
    """Left-pad shorter summands with identity pairs; dimensions and the
    represented operator are unchanged."""
    n = max(len(s) for s in expr.summands)
    if all(len(s) == n for s in expr.summands):
        return expr
    ident = OpMatrix.identity(expr.size)
    out = []
    for s in expr.summands:
        pad = [(ident, ident)] * (n - len(s))
        out.append(pad + list(s))
    return RationalExpression(out)


def adjoint_witness_nullity(expr) -> int:
    """Dimension of the witness space of the zero relation through the
    reversed-adjoint expression.

    Computed by a recursion that peels one factor (or one summand) at a
    time; each step contributes the degree of a left gcd, mirroring a
    short exact sequence of solution spaces, so no kernels are ever
    materialized.
    """
    expr = _pad_to_common_length(as_expression(expr).normalized())
    return _adjoint_nullity_rec(list(map(list, expr.summands)))


def _adjoint_nullity_rec(summands: list[list[FactorPair]]) -> int:
    n = len(summands[0])
    big_n = len(summands)
    if n == 1 and big_n == 1:
        return 0
    if n >= 2:
        # peel the last factor of every summand
        total = 0
        new_summands = []
        for s in summands:
            a_n = s[-1][0]
            b_prev = s[-2][1]
            q = matrix_gcd(b_prev, a_n, "left")
            total += degree(q.g)
            # right lcm of the coprime parts:  bbar c = abar d
            res = matrix_lcm(q.b0, q.a0, "right")
            c, dd = res.cof_b, res.cof_a
            if q.a0 @ c != q.b0 @ dd:
                raise InternalCheckError("factor-step certificate failed")
            merged = (s[-2][0] @ c, s[-1][1] @ dd)
            new_summands.append(s[:-2] + [merged])
        return total + _adjoint_nullity_rec(new_summands)
    # n == 1, big_n >= 2: merge the last two summands
    (a1, b1) = summands[-2][0]
    (a2, b2) = summands[-1][0]
    q = matrix_gcd(b1, b2, "left")
    res = matrix_lcm(q.a0, q.b0, "right")
    c1, c2 = res.cof_a, res.cof_b
    b_merged = b1 @ c1
    if b_merged != b2 @ c2:
        raise InternalCheckError("sum-step certificate failed")
    a_merged = a1 @ c1 + a2 @ c2
    new_summands = summands[:-2] + [[(a_merged, b_merged)]]
    return degree(q.g) + _adjoint_nullity_rec(new_summands)


def witness_nullity(expr) -> int:
    """Dimension of the witness space of the zero relation through the
    expression itself; computed on the adjoint side, where the peeling
    recursion is exact."""
    return adjoint_witness_nullity(adjoint_expression(expr))


@dataclass(frozen=True)
class SdegBounds:
    """Two-sided enclosure of the singular degree of an expression.

    lower = weight - nullity - adjoint_nullity,
    upper = weight - max(nullity, adjoint_nullity);
    the bounds coincide whenever either nullity vanishes.
    """

    weight: int
    nullity: int
    adjoint_nullity: int
    lower: int
    upper: int


def sdeg_bounds(expr) -> SdegBounds:
    expr = as_expression(expr)
    w = expr.weight()
    ne = witness_nullity(expr)
    na = adjoint_witness_nullity(expr)
    return SdegBounds(
        weight=w,
        nullity=ne,
        adjoint_nullity=na,
        lower=w - ne - na,
        upper=w - max(ne, na),
    )


def is_minimal(expr) -> bool:
    """True when the singular degree equals the weight.

    Also recomputes the criterion through the witness nullities; a
    disagreement between the two routes is an internal error.
    """
    expr = as_expression(expr)
    s = singular_degree(expr)
    w = expr.weight()
    ne = witness_nullity(expr)
    na = adjoint_witness_nullity(expr)
    if (s == w) != (ne == 0 and na == 0):
        raise InternalCheckError(
            f"minimality criteria disagree: sdeg={s} weight={w} "
            f"nullity={ne} adjoint_nullity={na}")
    return s == w


@dataclass(frozen=True)
class SubadditivityReport:
    """Singular degrees of two operands, their product and their sum."""

    sdeg_first: int
    sdeg_second: int
    sdeg_product: int
    sdeg_sum: int

    @property
    def product_subadditive(self) -> bool:
        return self.sdeg_product <= self.sdeg_first + self.sdeg_second

    @property
    def sum_subadditive(self) -> bool:
        return self.sdeg_sum <= self.sdeg_first + self.sdeg_second


def sdeg_subadditivity_check(h, k) -> SubadditivityReport:
    h = as_expression(h)
    k = as_expression(k)
    if h.size != k.size:
        raise ShapeError("operands of different sizes")
    return SubadditivityReport(
        sdeg_first=singular_degree(h),
        sdeg_second=singular_degree(k),
        sdeg_product=singular_degree(h @ k),
        sdeg_sum=singular_degree(h + k),
    )

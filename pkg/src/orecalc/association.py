"""The association relation: threading vectors through a rational expression.

A rational operator does not act on field vectors directly, since the
inverses in it are formal.  Instead a pair (xi, p) is *associated* through
an expression when witness vectors F^(alpha, i) -- one per factor pair --
satisfy, for every summand alpha with factors (a_1, b_1) ... (a_n, b_n):

    b_n(F^(alpha, n)) = xi,
    a_i(F^(alpha, i)) = b_{i-1}(F^(alpha, i-1))     for i = n, ..., 2,
    sum over alpha of a_1(F^(alpha, 1)) = p.

:func:`verify` decides these equations exactly.  :func:`solve_association`
produces a witness on a fraction in lowest terms by a bounded ansatz;
:func:`descend` recovers the common preimage behind a family of equal
products through the lcm cofactors; :func:`transport_witness` carries a
lowest-terms witness into an arbitrary expression for the same operator.
Solvers return None when the bounded search is exhausted -- the honest
"not found within the bound", never a proof of nonexistence.  Witnesses
are always verified before being returned.
"""

from __future__ import annotations

import json
from typing import Mapping, Sequence

from .errors import (
    InconsistentInputError,
    NotMinimalError,
    NotStronglyCoprimeError,
    PreconditionError,
    ShapeError,
)
from .field import F_ZERO, FieldElem, as_field
from .matrix import (
    AnsatzBound,
    OpMatrix,
    degree,
    dieudonne,
    exact_left_quotient,
    invert_unit,
    matrix_gcd,
    multi_lcm,
    solve_escalating,
)
from .rational import (
    OpFraction,
    RationalExpression,
    as_expression,
    collapse_product_chain,
    strongly_coprime,
)


class AssociationWitness:
    """Witness vectors indexed by (summand, factor), both 1-based."""

    __slots__ = ("entries",)

    def __init__(self, entries: Mapping[tuple[int, int], Sequence]):
        self.entries = {
            (int(k[0]), int(k[1])): tuple(as_field(v) for v in vec)
            for k, vec in entries.items()
        }

    def vector(self, alpha: int, i: int) -> tuple[FieldElem, ...]:
        return self.entries[(alpha, i)]

    def __eq__(self, other) -> bool:
        if not isinstance(other, AssociationWitness):
            return NotImplemented
        return self.entries == other.entries

    def to_json(self) -> dict:
        return {
            f"{alpha}.{i}": [v.render() for v in vec]
            for (alpha, i), vec in sorted(self.entries.items())
        }

    @staticmethod
    def from_json(data) -> "AssociationWitness":
        from .parser import parse_field_elem
        if isinstance(data, str):
            data = json.loads(data)
        entries = {}
        for key, vec in data.items():
            alpha, i = key.split(".")
            entries[(int(alpha), int(i))] = [parse_field_elem(v) for v in vec]
        return AssociationWitness(entries)

    def __repr__(self) -> str:
        return f"AssociationWitness({self.to_json()})"


def _as_vector(v, size: int) -> tuple[FieldElem, ...]:
    vec = tuple(as_field(c) for c in v)
    if len(vec) != size:
        raise ShapeError(f"vector length {len(vec)} does not match size {size}")
    return vec


def verify(expr, xi, p, witness: AssociationWitness) -> bool:
    """Check the witness equations exactly; shape errors are raised,
    any arithmetic mismatch just returns False."""
    expr = as_expression(expr)
    size = expr.size
    xi = _as_vector(xi, size)
    p = _as_vector(p, size)
    want = {(alpha + 1, i + 1)
            for alpha, s in enumerate(expr.summands) for i in range(len(s))}
    if set(witness.entries) != want:
        raise ShapeError("witness indices do not match the expression")
    for vec in witness.entries.values():
        if len(vec) != size:
            raise ShapeError("witness vector has wrong length")
    total = tuple(F_ZERO for _ in range(size))
    for alpha, s in enumerate(expr.summands, start=1):
        n = len(s)
        f_n = witness.vector(alpha, n)
        if s[n - 1][1].apply(f_n) != xi:
            return False
        for i in range(n, 1, -1):
            lhs = s[i - 1][0].apply(witness.vector(alpha, i))
            rhs = s[i - 2][1].apply(witness.vector(alpha, i - 1))
            if lhs != rhs:
                return False
        head = s[0][0].apply(witness.vector(alpha, 1))
        total = tuple(a + b for a, b in zip(total, head))
    return total == p


def solve_association(fraction: OpFraction, xi,
                      bound: AnsatzBound | None = None):
    """On a right fraction in lowest terms, find f with b(f) = xi and
    return (p, f) where p = a(f); None when the bounded search fails.

    Raises NotMinimalError when numerator and denominator share a
    nontrivial right divisor (reduce with minimal_fraction first).
    """
    fraction = fraction.to_right()
    g = matrix_gcd(fraction.a, fraction.b, "right")
    if degree(g.g) != 0:
        raise NotMinimalError("fraction is not in lowest terms")
    xi = _as_vector(xi, fraction.size)
    sol = solve_escalating(fraction.b, xi, bound)
    if sol is None:
        return None
    f = sol.particular
    return fraction.a.apply(f), f


def descend(bs: Sequence[OpMatrix], fs: Sequence[Sequence],
            bound: AnsatzBound | None = None):
    """Common preimage behind equal products of a strongly coprime family.

    Given strongly left coprime b_1..b_N and vectors f_1..f_N with
    b_1(f_1) = ... = b_N(f_N), returns f with c_alpha(f) = f_alpha for
    the right-lcm cofactors c_alpha; None when the ansatz bound is
    exhausted.
    """
    bs = list(bs)
    if len(bs) != len(fs) or not bs:
        raise ShapeError("need one vector per matrix")
    size = bs[0].size
    fs = [_as_vector(f, size) for f in fs]
    if not strongly_coprime(bs, "left"):
        raise NotStronglyCoprimeError(
            "family is not strongly left coprime")
    prods = [b.apply(f) for b, f in zip(bs, fs)]
    if any(prod != prods[0] for prod in prods[1:]):
        raise PreconditionError("products b_i(f_i) are not all equal")
    _, cofs = multi_lcm(bs, "right")
    stacked = cofs[0]
    rhs: list[FieldElem] = list(fs[0])
    for c, f in zip(cofs[1:], fs[1:]):
        stacked = OpMatrix.vstack(stacked, c)
        rhs.extend(f)
    sol = solve_escalating(stacked, rhs, bound)
    if sol is None:
        return None
    f = sol.particular
    for c, expected in zip(cofs, fs):
        if c.apply(f) != expected:
            raise InconsistentInputError("descent result failed to verify")
    return f


def transport_witness(expr, f_min: OpFraction, f_vec, xi, p,
                      bound: AnsatzBound | None = None):
    """Carry a lowest-terms witness into an arbitrary expression.

    ``f_min`` must be a right fraction in lowest terms representing the
    same operator as ``expr``; ``f_vec`` must satisfy
    b_min(f_vec) = xi and a_min(f_vec) = p.  The witness is built from
    the product-chain certificates and the lcm cofactors, threading one
    solved vector through every factor; it is verified before return.
    Returns None when an ansatz solve is exhausted.
    """
    expr = as_expression(expr)
    size = expr.size
    f_min = f_min.to_right()
    xi = _as_vector(xi, size)
    p = _as_vector(p, size)
    f_vec = _as_vector(f_vec, size)
    if f_min.b.apply(f_vec) != xi or f_min.a.apply(f_vec) != p:
        raise InconsistentInputError(
            "the minimal-fraction solution does not satisfy b(f) = xi, "
            "a(f) = p")
    g = matrix_gcd(f_min.a, f_min.b, "right")
    if degree(g.g) != 0:
        raise NotMinimalError("f_min is not in lowest terms")
    # collapse each summand, keeping the chain certificates
    chains = []
    collapsed = []
    for s in expr.summands:
        frac, xs = collapse_product_chain(s)
        collapsed.append(frac)
        chains.append(xs)
    # merge the collapsed denominators over their right lcm
    big_b, cofs = multi_lcm([fr.b for fr in collapsed], "right")
    big_a = None
    for fr, c in zip(collapsed, cofs):
        term = fr.a @ c
        big_a = term if big_a is None else big_a + term
    # compare against the lowest-terms fraction: big = (a_min d, b_min d)
    d = exact_left_quotient(f_min.b, big_b)
    if f_min.a @ d != big_a:
        raise InconsistentInputError(
            "expression does not represent the same operator as f_min")
    # solve f_vec = d(z)
    if degree(d) == 0:
        z = invert_unit(d).apply(f_vec)
    else:
        sol = solve_escalating(d, f_vec, bound)
        if sol is None:
            return None
        z = sol.particular
    entries = {}
    for alpha, (s, xs, c) in enumerate(zip(expr.summands, chains, cofs),
                                       start=1):
        z_alpha = c.apply(z)
        for i, x in enumerate(xs, start=1):
            entries[(alpha, i)] = x.apply(z_alpha)
    witness = AssociationWitness(entries)
    if not verify(expr, xi, p, witness):
        raise InconsistentInputError("transported witness failed to verify")
    return witness

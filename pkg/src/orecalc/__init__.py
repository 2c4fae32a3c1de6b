"""orecalc: exact computer algebra for matrix differential operators.

The package computes, over the rational-function fields Q(x) and Q(x)(t)
with t an exponential of x:

* scalar skew-polynomial (Ore) arithmetic with one-sided division,
  gcd and lcm (``orecalc.ore``);
* matrix operators, their determinant degree, one-sided matrix gcd/lcm
  with cofactor certificates, Bezout identities, and a bounded rational
  solver (``orecalc.matrix``);
* rational expressions built from formal inverses: collapsing, minimal
  fractions, singular degree, minimality certification via witness-space
  dimensions (``orecalc.rational``);
* the association relation between vectors threaded through an
  expression (``orecalc.association``);
* a text grammar and a command-line driver (``orecalc.parser``,
  ``orecalc.cli``).

Everything is exact; nothing is ever expanded into series or floats.
"""

from .association import (
    AssociationWitness,
    descend,
    solve_association,
    transport_witness,
    verify,
)
from .errors import (
    DegenerateOperatorError,
    InconsistentInputError,
    InternalCheckError,
    NotMinimalError,
    NotStronglyCoprimeError,
    OrecalcError,
    ParseError,
    PreconditionError,
    ShapeError,
)
from .field import F_ONE, F_T, F_X, F_ZERO, FieldElem, as_field
from .matrix import (
    AnsatzBound,
    AnsatzSolution,
    DetInfo,
    OpMatrix,
    bezout,
    degree,
    dieudonne,
    invert_unit,
    is_nondegenerate,
    matrix_gcd,
    matrix_lcm,
    multi_lcm,
    solve_ansatz,
)
from .ore import D, OrePoly, divide
from .ore import gcd as ore_gcd
from .ore import lcm as ore_lcm
from .ore import lcm_cofactors as ore_lcm_cofactors
from .parser import (
    parse_expression,
    parse_field_elem,
    parse_matrix,
    parse_operator,
    parse_value,
    parse_vector,
)
from .rational import (
    OpFraction,
    RationalExpression,
    SdegBounds,
    SubadditivityReport,
    adjoint_expression,
    adjoint_witness_nullity,
    as_expression,
    assemble_blocks,
    collapse_expression,
    collapse_product,
    collapse_sum,
    is_minimal,
    minimal_fraction,
    sdeg_block,
    sdeg_bounds,
    sdeg_subadditivity_check,
    sdeg_triple,
    singular_degree,
    strongly_coprime,
    witness_nullity,
)

__version__ = "0.1.0"

__all__ = [
    "AnsatzBound",
    "AnsatzSolution",
    "AssociationWitness",
    "D",
    "DegenerateOperatorError",
    "DetInfo",
    "F_ONE",
    "F_T",
    "F_X",
    "F_ZERO",
    "FieldElem",
    "InconsistentInputError",
    "InternalCheckError",
    "NotMinimalError",
    "NotStronglyCoprimeError",
    "OpFraction",
    "OpMatrix",
    "OrePoly",
    "OrecalcError",
    "ParseError",
    "PreconditionError",
    "RationalExpression",
    "SdegBounds",
    "ShapeError",
    "SubadditivityReport",
    "adjoint_expression",
    "adjoint_witness_nullity",
    "as_expression",
    "as_field",
    "assemble_blocks",
    "bezout",
    "collapse_expression",
    "collapse_product",
    "collapse_sum",
    "degree",
    "descend",
    "dieudonne",
    "divide",
    "invert_unit",
    "is_minimal",
    "is_nondegenerate",
    "matrix_gcd",
    "matrix_lcm",
    "minimal_fraction",
    "multi_lcm",
    "ore_gcd",
    "ore_lcm",
    "ore_lcm_cofactors",
    "parse_expression",
    "parse_field_elem",
    "parse_matrix",
    "parse_operator",
    "parse_value",
    "parse_vector",
    "sdeg_block",
    "sdeg_bounds",
    "sdeg_subadditivity_check",
    "sdeg_triple",
    "singular_degree",
    "solve_ansatz",
    "solve_association",
    "strongly_coprime",
    "transport_witness",
    "verify",
    "witness_nullity",
]

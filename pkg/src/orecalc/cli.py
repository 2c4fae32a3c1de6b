"""Command-line front end.

Each verb maps to one engine operation.  Inputs are inline grammar text,
paths to text files holding grammar text, or ``.json`` files using the
documented schemas (expressions: {"summands": [[{"A": ..., "B": ...}]]},
witnesses: {"alpha.i": [field elements]}).  Output is human-readable text,
or one JSON document with ``--json``:

    {"schema": 1, "verb": ..., "result": ..., "certificates": ...}

Exit codes: 0 success; 2 for honest not-found outcomes of the bounded
solvers; 1 for any input or engine error (the driver never shows a
traceback for those).
"""

from __future__ import annotations

import argparse
import json
import os
import random
import sys

from .association import (
    AssociationWitness,
    descend,
    solve_association,
    transport_witness,
    verify,
)
from .errors import OrecalcError
from .field import as_field
from .matrix import (
    AnsatzBound,
    OpMatrix,
    dieudonne,
    matrix_gcd,
    matrix_lcm,
    multi_lcm,
)
from .parser import (
    parse_expression,
    parse_matrix,
    parse_vector,
)
from .rational import (
    RationalExpression,
    collapse_expression,
    is_minimal,
    minimal_fraction,
    sdeg_bounds,
    singular_degree,
    strongly_coprime,
    adjoint_witness_nullity,
    witness_nullity,
)

_NOT_FOUND_EXIT = 2


def _read_input(arg: str) -> tuple[str, bool]:
    """Returns (content, is_json)."""
    if os.path.isfile(arg):
        with open(arg, "r", encoding="utf-8") as fh:
            content = fh.read()
        return content, arg.endswith(".json")
    return arg, False


def _load_expression(arg: str, field: str) -> RationalExpression:
    content, is_json = _read_input(arg)
    if is_json or content.lstrip().startswith("{"):
        return RationalExpression.from_json(content)
    return parse_expression(content, field)


def _load_matrix(arg: str, field: str) -> OpMatrix:
    content, _ = _read_input(arg)
    return parse_matrix(content, field)


def _load_vector(arg: str, field: str):
    content, is_json = _read_input(arg)
    if is_json or content.lstrip().startswith("{"):
        data = json.loads(content)
        from .parser import parse_field_elem
        return tuple(parse_field_elem(v, field) for v in data)
    return parse_vector(content, field)


def _load_witness(arg: str) -> AssociationWitness:
    content, _ = _read_input(arg)
    return AssociationWitness.from_json(content)


def _ansatz(args) -> AnsatzBound | None:
    if args.ansatz_num_deg is None and args.ansatz_den_pow is None:
        return None
    return AnsatzBound(
        num_degree=args.ansatz_num_deg,
        den_power=args.ansatz_den_pow if args.ansatz_den_pow is not None else 2,
    )


def _emit(args, verb: str, result, certificates=None, exit_code: int = 0):
    if args.json:
        doc = {"schema": 1, "verb": verb, "result": result}
        if certificates is not None:
            doc["certificates"] = certificates
        print(json.dumps(doc, indent=2))
    else:
        if isinstance(result, dict):
            for key, value in result.items():
                print(f"{key}: {value}")
        else:
            print(result)
        if certificates:
            for key, value in certificates.items():
                print(f"{key}: {value}")
    return exit_code


def _det_dict(info):
    if info.degenerate:
        return {"degenerate": True}
    return {"degenerate": False, "deg": info.deg, "det1": info.det1.render()}


def _run_degree(args) -> int:
    m = _load_matrix(args.matrix, args.field)
    return _emit(args, "degree", _det_dict(dieudonne(m)))


def _run_gcd(args) -> int:
    a = _load_matrix(args.a, args.field)
    b = _load_matrix(args.b, args.field)
    res = matrix_gcd(a, b, args.side)
    return _emit(args, "gcd", {"g": res.g.render()},
                 {"cofactor_a": res.a0.render(),
                  "cofactor_b": res.b0.render()})


def _run_lcm(args) -> int:
    a = _load_matrix(args.a, args.field)
    b = _load_matrix(args.b, args.field)
    res = matrix_lcm(a, b, args.side)
    return _emit(args, "lcm", {"m": res.m.render()},
                 {"cofactor_a": res.cof_a.render(),
                  "cofactor_b": res.cof_b.render()})


def _run_multi_lcm(args) -> int:
    bs = [_load_matrix(s, args.field) for s in args.matrices]
    m, cofs = multi_lcm(bs, args.side)
    info = dieudonne(m)
    return _emit(args, "multi-lcm",
                 {"m": m.render(), "deg": info.deg},
                 {"cofactors": [c.render() for c in cofs]})


def _run_strong_coprime(args) -> int:
    bs = [_load_matrix(s, args.field) for s in args.matrices]
    result = strongly_coprime(bs, args.side)
    return _emit(args, "strong-coprime", result)


def _run_collapse(args) -> int:
    expr = _load_expression(args.expr, args.field)
    f = collapse_expression(expr)
    return _emit(args, "collapse",
                 {"a": f.a.render(), "b": f.b.render(),
                  "deg_b": dieudonne(f.b).deg})


def _run_minfrac(args) -> int:
    expr = _load_expression(args.expr, args.field)
    f = minimal_fraction(collapse_expression(expr))
    return _emit(args, "minfrac",
                 {"a": f.a.render(), "b": f.b.render(),
                  "deg_b": dieudonne(f.b).deg})


def _run_sdeg(args) -> int:
    expr = _load_expression(args.expr, args.field)
    return _emit(args, "sdeg", singular_degree(expr))


def _run_bounds(args) -> int:
    expr = _load_expression(args.expr, args.field)
    b = sdeg_bounds(expr)
    return _emit(args, "bounds", {
        "weight": b.weight,
        "witness_nullity": b.nullity,
        "adjoint_witness_nullity": b.adjoint_nullity,
        "lower": b.lower,
        "upper": b.upper,
    })


def _run_dims(args) -> int:
    expr = _load_expression(args.expr, args.field)
    return _emit(args, "dims", {
        "witness_nullity": witness_nullity(expr),
        "adjoint_witness_nullity": adjoint_witness_nullity(expr),
    })


def _run_minimal(args) -> int:
    expr = _load_expression(args.expr, args.field)
    return _emit(args, "minimal", is_minimal(expr))


def _run_assoc_verify(args) -> int:
    expr = _load_expression(args.expr, args.field)
    xi = _load_vector(args.xi, args.field)
    p = _load_vector(args.p, args.field)
    w = _load_witness(args.witness)
    return _emit(args, "assoc-verify", verify(expr, xi, p, w))


def _run_assoc_solve(args) -> int:
    expr = _load_expression(args.expr, args.field)
    f = collapse_expression(expr)
    xi = _load_vector(args.xi, args.field)
    sol = solve_association(f, xi, _ansatz(args))
    if sol is None:
        return _emit(args, "assoc-solve", None,
                     {"note": "no solution within the ansatz bound"},
                     _NOT_FOUND_EXIT)
    p, fvec = sol
    return _emit(args, "assoc-solve",
                 {"p": [v.render() for v in p],
                  "f": [v.render() for v in fvec]})


def _run_assoc_transport(args) -> int:
    expr = _load_expression(args.expr, args.field)
    f_min = minimal_fraction(collapse_expression(expr))
    xi = _load_vector(args.xi, args.field)
    sol = solve_association(f_min, xi, _ansatz(args))
    if sol is None:
        return _emit(args, "assoc-transport", None,
                     {"note": "no minimal-fraction solution within the bound"},
                     _NOT_FOUND_EXIT)
    p, fvec = sol
    w = transport_witness(expr, f_min, fvec, xi, p, _ansatz(args))
    if w is None:
        return _emit(args, "assoc-transport", None,
                     {"note": "witness transport exhausted the ansatz bound"},
                     _NOT_FOUND_EXIT)
    return _emit(args, "assoc-transport",
                 {"p": [v.render() for v in p], "witness": w.to_json()})


def _run_assoc_descend(args) -> int:
    bs = [_load_matrix(s, args.field) for s in args.matrices]
    fs = [_load_vector(s, args.field) for s in args.vectors]
    f = descend(bs, fs, _ansatz(args))
    if f is None:
        return _emit(args, "assoc-descend", None,
                     {"note": "no descent within the ansatz bound"},
                     _NOT_FOUND_EXIT)
    return _emit(args, "assoc-descend", [v.render() for v in f])


def _run_selfcheck(args) -> int:
    """A quick randomized property sweep (seeded, deterministic)."""
    from .field import FieldElem
    from .ore import OrePoly, gcd as ore_gcd, lcm as ore_lcm
    from .poly import Poly

    rng = random.Random(args.seed if args.seed is not None else 0)

    def rand_field():
        num = Poly.from_terms({(rng.randrange(2), 0): rng.randrange(-3, 4)
                               for _ in range(2)})
        return FieldElem(num if not num.is_zero else Poly.const(1))

    def rand_op(order):
        cs = [rand_field() for _ in range(order + 1)]
        op = OrePoly.from_coeffs(cs)
        return op if not op.is_zero else OrePoly.one()

    checks = 0
    for _ in range(10):
        a, b, c = rand_op(2), rand_op(2), rand_op(1)
        assert (a * b) * c == a * (b * c)
        assert (a * b).adjoint() == b.adjoint() * a.adjoint()
        q, r = a.divmod_right(b)
        assert q * b + r == a
        g = ore_gcd(a, b, "left")
        m = ore_lcm(a, b, "right")
        assert m.order + g.order == a.order + b.order
        checks += 4
    return _emit(args, "selfcheck", {"ok": True, "checks": checks,
                                     "seed": args.seed or 0})


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--field", choices=("qx", "qxt"), default="qxt",
                        help="coefficient field: rational functions of x, "
                             "optionally extended by the exponential t")
    common.add_argument("--json", action="store_true",
                        help="emit one JSON document instead of text")
    common.add_argument("--ansatz-num-deg", type=int, default=None,
                        metavar="N", help="numerator degree cap for solvers")
    common.add_argument("--ansatz-den-pow", type=int, default=None,
                        metavar="K", help="power of each denominator factor")
    common.add_argument("--seed", type=int, default=None,
                        help="seed for randomized verbs (selfcheck)")

    sided = argparse.ArgumentParser(add_help=False)
    sided.add_argument("--side", choices=("left", "right"), default="right")

    top = argparse.ArgumentParser(
        prog="orecalc",
        description="Exact calculator for matrix differential operators: "
                    "determinant degrees, one-sided gcd/lcm, minimal "
                    "fractions, singular degree, association relations.")
    sub = top.add_subparsers(dest="verb", required=True)

    p = sub.add_parser("degree", parents=[common],
                       help="determinant degree and leading unit")
    p.add_argument("matrix")
    p.set_defaults(func=_run_degree)

    p = sub.add_parser("gcd", parents=[common, sided],
                       help="one-sided matrix gcd with cofactors")
    p.add_argument("a")
    p.add_argument("b")
    p.set_defaults(func=_run_gcd)

    p = sub.add_parser("lcm", parents=[common, sided],
                       help="one-sided matrix lcm with cofactors")
    p.add_argument("a")
    p.add_argument("b")
    p.set_defaults(func=_run_lcm)

    p = sub.add_parser("multi-lcm", parents=[common, sided],
                       help="lcm of a family, with all cofactors")
    p.add_argument("matrices", nargs="+")
    p.set_defaults(func=_run_multi_lcm)

    p = sub.add_parser("strong-coprime", parents=[common, sided],
                       help="degree test for strong coprimeness")
    p.add_argument("matrices", nargs="+")
    p.set_defaults(func=_run_strong_coprime)

    p = sub.add_parser("collapse", parents=[common],
                       help="collapse an expression to one fraction")
    p.add_argument("expr")
    p.set_defaults(func=_run_collapse)

    p = sub.add_parser("minfrac", parents=[common],
                       help="fraction in lowest terms")
    p.add_argument("expr")
    p.set_defaults(func=_run_minfrac)

    p = sub.add_parser("sdeg", parents=[common],
                       help="singular degree of an expression")
    p.add_argument("expr")
    p.set_defaults(func=_run_sdeg)

    p = sub.add_parser("bounds", parents=[common],
                       help="two-sided enclosure of the singular degree")
    p.add_argument("expr")
    p.set_defaults(func=_run_bounds)

    p = sub.add_parser("dims", parents=[common],
                       help="witness-space dimensions of the zero relation")
    p.add_argument("expr")
    p.set_defaults(func=_run_dims)

    p = sub.add_parser("minimal", parents=[common],
                       help="is the expression minimal?")
    p.add_argument("expr")
    p.set_defaults(func=_run_minimal)

    p = sub.add_parser("assoc-verify", parents=[common],
                       help="check witness equations exactly")
    p.add_argument("expr")
    p.add_argument("xi")
    p.add_argument("p")
    p.add_argument("witness")
    p.set_defaults(func=_run_assoc_verify)

    p = sub.add_parser("assoc-solve", parents=[common],
                       help="solve the association on a lowest-terms fraction")
    p.add_argument("expr")
    p.add_argument("xi")
    p.set_defaults(func=_run_assoc_solve)

    p = sub.add_parser("assoc-transport", parents=[common],
                       help="solve on the reduced fraction and transport "
                            "the witness into the expression")
    p.add_argument("expr")
    p.add_argument("xi")
    p.set_defaults(func=_run_assoc_transport)

    p = sub.add_parser("assoc-descend", parents=[common],
                       help="common preimage behind equal products of a "
                            "strongly coprime family")
    p.add_argument("--vectors", nargs="+", required=True)
    p.add_argument("matrices", nargs="+")
    p.set_defaults(func=_run_assoc_descend)

    p = sub.add_parser("selfcheck", parents=[common],
                       help="seeded randomized property sweep")
    p.set_defaults(func=_run_selfcheck)

    return top


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except OrecalcError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (ValueError, ZeroDivisionError, KeyError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())

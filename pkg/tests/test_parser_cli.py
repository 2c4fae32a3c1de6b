"""Grammar round trips and the command-line driver."""

import json
import random
import subprocess
import sys

import pytest

from orecalc import (
    AssociationWitness,
    D,
    F_X,
    FieldElem,
    OpMatrix,
    OrePoly,
    ParseError,
    RationalExpression,
    ShapeError,
    parse_expression,
    parse_field_elem,
    parse_matrix,
    parse_operator,
    parse_value,
    parse_vector,
)
from orecalc.cli import main as cli_main

from conftest import rand_field, rand_matrix, rand_nondeg, rand_ore


def test_parse_first_order_operator():
    v = parse_value("d + 1/x")
    assert isinstance(v, OrePoly)
    assert v.order == 1
    assert v.coeff(0) == F_X.inverse()


def test_parse_matrix_literal():
    m = parse_value("[[d^2+x*d, 1],[0, d+1]]")
    assert isinstance(m, OpMatrix)
    assert m.size == 2
    assert m.rows[0][0].order == 2


def test_parse_expression_sugar():
    e = parse_value("1/t * inv(d) + inv(d+1)")
    assert isinstance(e, RationalExpression)
    assert len(e.summands) == 2
    assert e.weight() == 2


def test_parse_field_restriction():
    with pytest.raises(ParseError):
        parse_value("t + 1", field="qx")
    assert parse_value("t + 1", field="qxt") is not None


def test_parse_errors_carry_positions():
    with pytest.raises(ParseError) as err:
        parse_value("d + $")
    assert "line 1" in str(err.value)
    with pytest.raises(ParseError):
        parse_value("[[d, 1],[0]]")  # ragged
    with pytest.raises(ParseError):
        parse_value("inv(inv(d))")
    with pytest.raises(ParseError):
        parse_value("d / (d+1)")


def test_unary_minus_and_powers():
    assert parse_field_elem("-x^2") == -(F_X * F_X)
    assert parse_field_elem("x^-1") == F_X.inverse()
    assert parse_operator("d^2") == D * D
    assert parse_operator("-d") == -D


def test_division_reserved_for_coefficients():
    v = parse_operator("(x*d + 1) / x")
    assert v == (OrePoly.from_field(F_X) * D + 1) * \
        OrePoly.from_field(F_X.inverse())


def test_field_elem_roundtrip_randomized():
    rng = random.Random(601)
    for _ in range(40):
        f = rand_field(rng, deg_x=2, deg_t=1, denominators=True)
        assert parse_field_elem(f.render()) == f


def test_operator_roundtrip_randomized():
    rng = random.Random(602)
    for _ in range(40):
        a = rand_ore(rng, rng.randrange(3), deg_t=1, denominators=True)
        assert parse_operator(a.render()) == a


def test_matrix_roundtrip_randomized():
    rng = random.Random(603)
    for _ in range(15):
        m = rand_matrix(rng, 2, 2)
        assert parse_matrix(m.render()) == m


def test_expression_roundtrip():
    rng = random.Random(604)
    for _ in range(10):
        summands = []
        for _ in range(rng.randrange(2) + 1):
            summands.append([(rand_nondeg(rng, 1, 1), rand_nondeg(rng, 1, 1))
                             for _ in range(rng.randrange(2) + 1)])
        expr = RationalExpression(summands)
        assert parse_expression(expr.render()) == expr


def test_vector_parsing():
    vec = parse_vector("[1, 1/x]")
    assert vec == (FieldElem(1), F_X.inverse())
    assert parse_vector("x") == (F_X,)


def test_scalar_promotion_in_matrix_context():
    m = parse_value("2 * [[d, 0],[0, d]] + 1")
    assert isinstance(m, OpMatrix)
    assert m.rows[0][0] == 2 * D + 1
    assert m.rows[0][1].is_zero


def test_size_mismatch_rejected():
    with pytest.raises(ShapeError):
        parse_value("[[d]] + [[d, 0],[0, d]]")


# -- command line ----------------------------------------------------------------


def run_cli(*argv) -> tuple[int, str]:
    import io
    from contextlib import redirect_stdout
    buf = io.StringIO()
    with redirect_stdout(buf):
        code = cli_main(list(argv))
    return code, buf.getvalue()


def test_cli_multi_lcm_of_singular_family():
    code, out = run_cli("multi-lcm", "--side", "right",
                        "d", "d+1/x", "d+1/(x+1)")
    assert code == 0
    assert "[[d^2]]" in out
    assert "deg: 2" in out


def test_cli_sdeg_of_exponential_sum():
    code, out = run_cli("sdeg", "--field", "qxt", "1/t * inv(d) + inv(d+1)")
    assert code == 0
    assert out.strip() == "1"


def test_cli_minimal_of_reduced_fraction():
    code, out = run_cli("minimal", "(d+x) * inv(d)")
    assert code == 0
    assert out.strip() == "True"


def test_cli_json_output_is_deterministic():
    args = ("sdeg", "--json", "--field", "qxt", "1/t * inv(d) + inv(d+1)")
    code1, out1 = run_cli(*args)
    code2, out2 = run_cli(*args)
    assert code1 == code2 == 0
    assert out1 == out2
    doc = json.loads(out1)
    assert doc == {"schema": 1, "verb": "sdeg", "result": 1}


def test_cli_degree_verb():
    code, out = run_cli("degree", "--json", "[[d^2+x*d, 1],[0, d+1]]")
    doc = json.loads(out)
    assert code == 0
    assert doc["result"] == {"degenerate": False, "deg": 3, "det1": "1"}


def test_cli_strong_coprime():
    code, out = run_cli("strong-coprime", "--side", "left",
                        "d", "d+1/x", "d+1/(x+1)")
    assert code == 0
    assert out.strip() == "False"


def test_cli_bounds_and_dims():
    code, out = run_cli("bounds", "--json", "--field", "qxt",
                        "1/t * inv(d) + inv(d+1)")
    doc = json.loads(out)
    assert code == 0
    assert doc["result"]["weight"] == 2
    assert doc["result"]["lower"] == doc["result"]["upper"] == 1
    code, out = run_cli("dims", "--json", "--field", "qxt",
                        "1/t * inv(d) + inv(d+1)")
    doc = json.loads(out)
    assert doc["result"]["witness_nullity"] == 1
    assert doc["result"]["adjoint_witness_nullity"] == 0


def test_cli_collapse_and_minfrac():
    code, out = run_cli("minfrac", "--json", "--field", "qxt",
                        "1/t * inv(d) + inv(d+1)")
    doc = json.loads(out)
    assert code == 0
    assert doc["result"]["deg_b"] == 1


def test_cli_expression_json_file(tmp_path):
    expr = RationalExpression([
        [(OpMatrix.from_rows([[OrePoly.from_field(F_X)]]),
          OpMatrix.from_rows([[D]]))],
    ])
    path = tmp_path / "expr.json"
    path.write_text(json.dumps(expr.to_json()))
    code, out = run_cli("sdeg", str(path))
    assert code == 0
    assert out.strip() == "1"


def test_cli_assoc_solve_and_verify(tmp_path):
    # b = d, a = d + 1: solve then verify through the CLI
    code, out = run_cli("assoc-solve", "--json", "(d+1)*inv(d)", "1")
    doc = json.loads(out)
    assert code == 0
    fvec = doc["result"]["f"]
    pvec = doc["result"]["p"]
    witness = {"1.1": fvec}
    wpath = tmp_path / "w.json"
    wpath.write_text(json.dumps(witness))
    code, out = run_cli("assoc-verify", "(d+1)*inv(d)", "1",
                        f"[{pvec[0]}]", str(wpath))
    assert code == 0
    assert out.strip() == "True"


def test_cli_assoc_transport():
    code, out = run_cli("assoc-transport", "--json", "--field", "qxt",
                        "(d+x)*inv(d)", "1")
    doc = json.loads(out)
    assert code == 0
    assert "witness" in doc["result"]


def test_cli_assoc_descend():
    code, out = run_cli("assoc-descend", "--json",
                        "--vectors", "1", "1/x", "--", "d", "d+1/x")
    doc = json.loads(out)
    assert code == 0
    assert doc["result"] == ["x - 1"]


def test_cli_not_found_exit_code():
    # the primitive of 1/(x^2+1) is not rational: honest not-found
    code, _ = run_cli("assoc-solve", "(d+1)*inv(d)", "1/(x^2+1)")
    assert code == 2


def test_cli_error_exit_code():
    code, _ = run_cli("sdeg", "d +")
    assert code == 1
    code, _ = run_cli("degree", "[[d, 1],[0]]")
    assert code == 1


def test_cli_selfcheck():
    code, out = run_cli("selfcheck", "--seed", "7")
    assert code == 0
    assert "ok" in out


def test_cli_entrypoint_subprocess():
    proc = subprocess.run(
        [sys.executable, "-m", "orecalc.cli", "sdeg", "--field", "qxt",
         "1/t * inv(d) + inv(d+1)"],
        capture_output=True, text=True)
    assert proc.returncode == 0
    assert proc.stdout.strip() == "1"


def test_witness_json_roundtrip():
    w = AssociationWitness({(1, 1): [F_X, F_X.inverse()]})
    again = AssociationWitness.from_json(json.dumps(w.to_json()))
    assert again == w


def test_cli_golden_files():
    """Every recorded invocation reproduces its stored JSON byte-for-byte."""
    import glob
    import os
    here = os.path.dirname(__file__)
    paths = sorted(glob.glob(os.path.join(here, "golden", "*.json")))
    assert paths, "golden files missing"
    for path in paths:
        with open(path) as fh:
            doc = json.load(fh)
        code, out = run_cli(*doc["argv"])
        assert code == 0, path
        assert json.loads(out) == doc["output"], path

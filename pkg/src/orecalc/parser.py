"""Text grammar for field elements, operators, matrices and expressions.

The grammar is a small calculator language:

    expr    := term (('+'|'-') term)*
    term    := unary (('*'|'/') unary)*
    unary   := ('-'|'+') unary | power
    power   := atom ('^' INT)?
    atom    := INT | 'x' | 't' | 'd' | 'inv' '(' expr ')'
             | '(' expr ')' | '[' row (',' row)* ']'
    row     := '[' expr (',' expr)* ']'

``d`` is the differentiation symbol with d*f = f*d + f'; ``t`` differentiates
to itself (an exponential of x) and is only admitted over the field "qxt".
``inv(...)`` marks a denominator factor and turns the value into a rational
expression; consecutive factors multiply left to right, so
``a1 * inv(b1) * a2 * inv(b2)`` is the two-factor product a1 b1^-1 a2 b2^-1.
Division is reserved for coefficients: ``p / f`` multiplies by the inverse
of a field element on the right; inverting genuine operators needs inv().

Values parse to the most specific of: FieldElem, OrePoly, OpMatrix,
RationalExpression.  Scalars stay size-free until they meet a matrix, then
promote to scalar diagonals.  render(parse(s)) parses back to an equal
value for each of the four types.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import ParseError, ShapeError
from .field import F_ONE, FieldElem, as_field
from .matrix import OpMatrix
from .ore import OrePoly
from .rational import RationalExpression, as_expression

_SYMBOLS = ("+", "-", "*", "/", "^", "(", ")", "[", "]", ",")


class _Token:
    __slots__ = ("kind", "value", "line", "col")

    def __init__(self, kind, value, line, col):
        self.kind = kind
        self.value = value
        self.line = line
        self.col = col


def _tokenize(text: str) -> list[_Token]:
    tokens = []
    line, col = 1, 1
    i = 0
    n = len(text)
    while i < n:
        ch = text[i]
        if ch == "\n":
            line += 1
            col = 1
            i += 1
            continue
        if ch.isspace():
            col += 1
            i += 1
            continue
        if ch.isdigit():
            j = i
            while j < n and text[j].isdigit():
                j += 1
            tokens.append(_Token("int", int(text[i:j]), line, col))
            col += j - i
            i = j
            continue
        if ch.isalpha() or ch == "_":
            j = i
            while j < n and (text[j].isalnum() or text[j] == "_"):
                j += 1
            tokens.append(_Token("ident", text[i:j], line, col))
            col += j - i
            i = j
            continue
        if ch in _SYMBOLS:
            tokens.append(_Token(ch, ch, line, col))
            col += 1
            i += 1
            continue
        raise ParseError(f"unexpected character {ch!r}", line, col)
    tokens.append(_Token("end", None, line, col))
    return tokens


# -- value algebra with promotion -------------------------------------------
#
# rank 0: FieldElem, 1: OrePoly, 2: OpMatrix, 3: RationalExpression.
# Scalar values are size-free; they become scalar diagonal matrices the
# moment they combine with a sized value.


def _rank(v) -> int:
    if isinstance(v, FieldElem):
        return 0
    if isinstance(v, OrePoly):
        return 1
    if isinstance(v, OpMatrix):
        return 2
    return 3


def _size_of(v):
    if isinstance(v, OpMatrix):
        return v.size
    if isinstance(v, RationalExpression):
        return v.size
    return None


def _as_operator(v) -> OrePoly:
    return v if isinstance(v, OrePoly) else OrePoly.from_field(v)


def _to_matrix(v, size: int) -> OpMatrix:
    if isinstance(v, OpMatrix):
        if v.size != size:
            raise ShapeError(
                f"matrix of size {v.size} used where size {size} is needed")
        return v
    return OpMatrix.scalar(_as_operator(v), size)


def _to_expression(v, size: int) -> RationalExpression:
    if isinstance(v, RationalExpression):
        if v.size != size:
            raise ShapeError(
                f"expression of size {v.size} used where size {size} is needed")
        return v
    return as_expression(_to_matrix(v, size))


def _common_size(a, b, default: int = 1) -> int:
    sa, sb = _size_of(a), _size_of(b)
    if sa is not None and sb is not None and sa != sb:
        raise ShapeError(f"sizes {sa} and {sb} do not match")
    return sa if sa is not None else (sb if sb is not None else default)


def _v_add(a, b, sign: int):
    r = max(_rank(a), _rank(b))
    if r == 0:
        return a + b if sign > 0 else a - b
    if r == 1:
        a, b = _as_operator(a), _as_operator(b)
        return a + b if sign > 0 else a - b
    size = _common_size(a, b)
    if r == 2:
        a, b = _to_matrix(a, size), _to_matrix(b, size)
        return a + b if sign > 0 else a - b
    a, b = _to_expression(a, size), _to_expression(b, size)
    return a + b if sign > 0 else a + (-b)


def _expr_times_poly(e: RationalExpression, p: OpMatrix) -> RationalExpression:
    out = []
    for s in e.summands:
        pairs = list(s)
        a_last, b_last = pairs[-1]
        if b_last.is_identity():
            pairs[-1] = (a_last @ p, b_last)
        else:
            pairs.append((p, OpMatrix.identity(p.size)))
        out.append(pairs)
    return RationalExpression(out)


def _poly_times_expr(p: OpMatrix, e: RationalExpression) -> RationalExpression:
    out = []
    for s in e.summands:
        (a0, b0), rest = s[0], list(s[1:])
        out.append([(p @ a0, b0), *rest])
    return RationalExpression(out)


def _v_mul(a, b):
    r = max(_rank(a), _rank(b))
    if r == 0:
        return a * b
    if r == 1:
        return _as_operator(a) * _as_operator(b)
    size = _common_size(a, b)
    if r == 2:
        return _to_matrix(a, size) @ _to_matrix(b, size)
    if isinstance(a, RationalExpression) and isinstance(b, RationalExpression):
        return a @ b
    if isinstance(a, RationalExpression):
        return _expr_times_poly(a, _to_matrix(b, size))
    return _poly_times_expr(_to_matrix(a, size), b)


def _v_neg(a):
    return -a


def _v_div(a, b, tok: _Token):
    if _rank(b) != 0:
        raise ParseError(
            "division is only defined by field coefficients; "
            "use inv(...) to invert an operator", tok.line, tok.col)
    if b.is_zero:
        raise ParseError("division by zero", tok.line, tok.col)
    if _rank(a) == 0:
        return a / b
    return _v_mul(a, b.inverse())


def _v_pow(a, k: int, tok: _Token):
    if _rank(a) == 0:
        return a ** k
    if k < 0:
        raise ParseError("negative powers need inv(...) on operators",
                         tok.line, tok.col)
    if isinstance(a, RationalExpression):
        if k == 0:
            return F_ONE
        out = a
        for _ in range(k - 1):
            out = out @ a
        return out
    return a ** k


def _v_inv(a, tok: _Token):
    if _rank(a) == 0:
        if a.is_zero:
            raise ParseError("inverse of zero", tok.line, tok.col)
        return a.inverse()
    if isinstance(a, RationalExpression):
        raise ParseError(
            "inv(...) of a rational expression is not supported; "
            "invert a polynomial operator", tok.line, tok.col)
    m = a if isinstance(a, OpMatrix) else OpMatrix.from_rows([[a]])
    return RationalExpression([[(OpMatrix.identity(m.size), m)]])


class _Parser:
    def __init__(self, text: str, field: str):
        if field not in ("qx", "qxt"):
            raise ValueError(f"field must be 'qx' or 'qxt', not {field!r}")
        self.tokens = _tokenize(text)
        self.pos = 0
        self.field = field

    def peek(self) -> _Token:
        return self.tokens[self.pos]

    def next(self) -> _Token:
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def expect(self, kind: str) -> _Token:
        tok = self.next()
        if tok.kind != kind:
            raise ParseError(f"expected {kind!r}, found {tok.value!r}",
                             tok.line, tok.col)
        return tok

    def parse(self):
        value = self.expr()
        tok = self.peek()
        if tok.kind != "end":
            raise ParseError(f"unexpected trailing input {tok.value!r}",
                             tok.line, tok.col)
        return value

    def expr(self):
        value = self.term()
        while self.peek().kind in ("+", "-"):
            op = self.next()
            rhs = self.term()
            value = _v_add(value, rhs, 1 if op.kind == "+" else -1)
        return value

    def term(self):
        value = self.unary()
        while self.peek().kind in ("*", "/"):
            op = self.next()
            rhs = self.unary()
            if op.kind == "*":
                value = _v_mul(value, rhs)
            else:
                value = _v_div(value, rhs, op)
        return value

    def unary(self):
        tok = self.peek()
        if tok.kind in ("+", "-"):
            self.next()
            value = self.unary()
            return value if tok.kind == "+" else _v_neg(value)
        return self.power()

    def power(self):
        value = self.atom()
        if self.peek().kind == "^":
            car = self.next()
            neg = False
            if self.peek().kind == "-":
                self.next()
                neg = True
            tok = self.expect("int")
            k = -tok.value if neg else tok.value
            value = _v_pow(value, k, car)
        return value

    def atom(self):
        tok = self.next()
        if tok.kind == "int":
            return as_field(tok.value)
        if tok.kind == "ident":
            if tok.value == "x":
                return FieldElem.x()
            if tok.value == "t":
                if self.field == "qx":
                    raise ParseError(
                        "the symbol t needs the field qxt", tok.line, tok.col)
                return FieldElem.t()
            if tok.value == "d":
                return OrePoly.d()
            if tok.value == "inv":
                self.expect("(")
                inner = self.expr()
                self.expect(")")
                return _v_inv(inner, tok)
            raise ParseError(f"unknown symbol {tok.value!r}",
                             tok.line, tok.col)
        if tok.kind == "(":
            inner = self.expr()
            self.expect(")")
            return inner
        if tok.kind == "[":
            return self.matrix(tok)
        raise ParseError(f"unexpected token {tok.value!r}", tok.line, tok.col)

    def matrix(self, opening: _Token):
        rows = []
        while True:
            self.expect("[")
            row = [self.expr()]
            while self.peek().kind == ",":
                self.next()
                row.append(self.expr())
            self.expect("]")
            rows.append(row)
            if self.peek().kind == ",":
                self.next()
                continue
            break
        self.expect("]")
        width = len(rows[0])
        if any(len(r) != width for r in rows):
            raise ParseError("ragged matrix literal",
                             opening.line, opening.col)
        if len(rows) != width:
            raise ParseError("matrix literal must be square",
                             opening.line, opening.col)
        entries = []
        for r in rows:
            row_ops = []
            for v in r:
                if _rank(v) >= 2:
                    raise ParseError(
                        "matrix entries must be scalar operators",
                        opening.line, opening.col)
                row_ops.append(_as_operator(v))
            entries.append(row_ops)
        return OpMatrix.from_rows(entries)


def parse_value(text: str, field: str = "qxt"):
    """Parse to the most specific of FieldElem, OrePoly, OpMatrix,
    RationalExpression."""
    return _Parser(text, field).parse()


def parse_field_elem(text: str, field: str = "qxt") -> FieldElem:
    v = parse_value(text, field)
    if isinstance(v, FieldElem):
        return v
    if isinstance(v, OrePoly) and (v.is_zero or v.order == 0):
        return v.coeff(0)
    raise ParseError(f"expected a field element, got {type(v).__name__}")


def parse_operator(text: str, field: str = "qxt") -> OrePoly:
    v = parse_value(text, field)
    if isinstance(v, FieldElem):
        return OrePoly.from_field(v)
    if isinstance(v, OrePoly):
        return v
    raise ParseError(f"expected a scalar operator, got {type(v).__name__}")


def parse_matrix(text: str, field: str = "qxt") -> OpMatrix:
    v = parse_value(text, field)
    if isinstance(v, (FieldElem, OrePoly)):
        return OpMatrix.from_rows([[_as_operator(v)]])
    if isinstance(v, OpMatrix):
        return v
    raise ParseError(f"expected an operator matrix, got {type(v).__name__}")


def parse_expression(text: str, field: str = "qxt") -> RationalExpression:
    v = parse_value(text, field)
    if isinstance(v, RationalExpression):
        return v
    return as_expression(parse_matrix(text, field))


def parse_vector(text: str, field: str = "qxt") -> tuple[FieldElem, ...]:
    """A vector literal: either one field element or [f1, ..., fk]."""
    text = text.strip()
    if text.startswith("["):
        parser = _Parser(text, field)
        parser.expect("[")
        out = [parser.expr()]
        while parser.peek().kind == ",":
            parser.next()
            out.append(parser.expr())
        parser.expect("]")
        tok = parser.peek()
        if tok.kind != "end":
            raise ParseError("unexpected trailing input", tok.line, tok.col)
        vals = []
        for v in out:
            if isinstance(v, OrePoly) and (v.is_zero or v.order == 0):
                v = v.coeff(0)
            if not isinstance(v, FieldElem):
                raise ParseError("vector entries must be field elements")
            vals.append(v)
        return tuple(vals)
    return (parse_field_elem(text, field),)

"""Integrand expressions: a Pratt parser, a printer, numpy evaluation and polynomial lowering.

Grammar, loosest first: + and -, then * and /, then unary minus, then ^ (right
associative). Variables are x, y, z or x1..xn; functions are sin, cos, exp, log, sqrt.
Decimal literals are read as exact rationals.
"""
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterator, List, Optional, Union

import numpy as np

from simpson_nd.errors import DimensionMismatch, ExpressionSyntaxError, NotPolynomial
from simpson_nd.models.polynomial import MonomialPoly

FUNCTIONS = {"sin": np.sin, "cos": np.cos, "exp": np.exp, "log": np.log, "sqrt": np.sqrt}
_ALIASES = {"x": 0, "y": 1, "z": 2}

_TOKEN = re.compile(r"\s*(?:(?P<number>\d+(?:\.\d*)?|\.\d+)|(?P<name>[A-Za-z_][A-Za-z0-9_]*)|(?P<op>[-+*/^(),]))")

_OPERAND = ("number", "variable", "function", "(", "-")


@dataclass(frozen=True)
class Number:
    value: Fraction


@dataclass(frozen=True)
class Var:
    index: int
    name: str


@dataclass(frozen=True)
class Neg:
    operand: "Expr"


@dataclass(frozen=True)
class Binary:
    op: str
    left: "Expr"
    right: "Expr"


@dataclass(frozen=True)
class Call:
    func: str
    arg: "Expr"


Expr = Union[Number, Var, Neg, Binary, Call]


@dataclass(frozen=True)
class _Token:
    kind: str
    text: str
    offset: int


def _tokenize(source: str) -> Iterator[_Token]:
    pos = 0
    while True:
        while pos < len(source) and source[pos].isspace():
            pos += 1
        if pos >= len(source):
            break
        match = _TOKEN.match(source, pos)
        if not match or match.end() == pos:
            raise ExpressionSyntaxError(f"unexpected character {source[pos]!r}", pos, _OPERAND)
        start = match.start(match.lastgroup)
        yield _Token(match.lastgroup, match.group(match.lastgroup), start)
        pos = match.end()
    yield _Token("end", "", len(source))


_BINDING = {"+": 10, "-": 10, "*": 20, "/": 20, "^": 30}
_UNARY_MINUS = 25


class _Parser:
    def __init__(self, source: str):
        self.tokens = list(_tokenize(source))
        self.pos = 0

    @property
    def token(self) -> _Token:
        return self.tokens[self.pos]

    def advance(self) -> _Token:
        token = self.token
        self.pos += 1
        return token

    def expect(self, text: str) -> None:
        if self.token.text != text:
            raise ExpressionSyntaxError(f"expected {text!r}", self.token.offset, (text,))
        self.advance()

    def lbp(self) -> int:
        token = self.token
        return _BINDING.get(token.text, 0) if token.kind == "op" else 0

    def expression(self, rbp: int = 0) -> Expr:
        left = self.nud(self.advance())
        while rbp < self.lbp():
            op = self.advance().text
            # ^ binds to the right
            right = self.expression(_BINDING[op] - 1 if op == "^" else _BINDING[op])
            left = Binary(op, left, right)
        return left

    def nud(self, token: _Token) -> Expr:
        if token.kind == "number":
            return Number(Fraction(token.text))
        if token.kind == "name":
            if token.text in FUNCTIONS:
                self.expect("(")
                arg = self.expression()
                self.expect(")")
                return Call(token.text, arg)
            return Var(_variable_index(token), token.text)
        if token.text == "-":
            return Neg(self.expression(_UNARY_MINUS))
        if token.text == "(":
            inner = self.expression()
            self.expect(")")
            return inner
        what = "end of input" if token.kind == "end" else repr(token.text)
        raise ExpressionSyntaxError(f"unexpected {what}", token.offset, _OPERAND)


def _variable_index(token: _Token) -> int:
    if token.text in _ALIASES:
        return _ALIASES[token.text]
    match = re.fullmatch(r"x([1-9]\d*)", token.text)
    if match:
        return int(match.group(1)) - 1
    raise ExpressionSyntaxError(f"unknown name {token.text!r}", token.offset, ("variable", "function"))


def parse(source: str) -> Expr:
    parser = _Parser(source)
    tree = parser.expression()
    if parser.token.kind != "end":
        raise ExpressionSyntaxError(f"unexpected {parser.token.text!r}", parser.token.offset, ("operator", "end"))
    return tree


def _decimal_text(q: Fraction) -> str:
    if q.denominator == 1:
        return str(q.numerator)
    rest = q.denominator
    for p in (2, 5):
        while rest % p == 0:
            rest //= p
    if rest != 1 or q < 0:
        return f"({q.numerator} / {q.denominator})"
    digits = 0
    while (10 ** digits) % q.denominator:
        digits += 1
    scaled = q.numerator * 10 ** digits // q.denominator
    whole, frac = divmod(scaled, 10 ** digits)
    return f"{whole}.{frac:0{digits}d}"


def pretty(e: Expr) -> str:
    """Fully parenthesised text that parses back to the same tree."""
    if isinstance(e, Number):
        return _decimal_text(e.value)
    if isinstance(e, Var):
        return e.name
    if isinstance(e, Neg):
        return f"(-{pretty(e.operand)})"
    if isinstance(e, Call):
        return f"{e.func}({pretty(e.arg)})"
    return f"({pretty(e.left)} {e.op} {pretty(e.right)})"


def max_variable(e: Expr) -> int:
    """Largest variable index used, -1 for constant expressions."""
    if isinstance(e, Var):
        return e.index
    if isinstance(e, Number):
        return -1
    if isinstance(e, (Neg, Call)):
        return max_variable(e.operand if isinstance(e, Neg) else e.arg)
    return max(max_variable(e.left), max_variable(e.right))


def evaluate(e: Expr, coords):
    """Floating-point value; coordinates may be numpy arrays."""
    if isinstance(e, Number):
        return float(e.value)
    if isinstance(e, Var):
        if e.index >= len(coords):
            raise DimensionMismatch(f"{e.name} needs {e.index + 1} coordinates, got {len(coords)}")
        return coords[e.index]
    if isinstance(e, Neg):
        return -evaluate(e.operand, coords)
    if isinstance(e, Call):
        return FUNCTIONS[e.func](evaluate(e.arg, coords))
    left, right = evaluate(e.left, coords), evaluate(e.right, coords)
    if e.op == "+":
        return left + right
    if e.op == "-":
        return left - right
    if e.op == "*":
        return left * right
    if e.op == "/":
        return left / right
    return np.power(left, right)


def to_function(e: Expr, dimension: int) -> Callable:
    if max_variable(e) >= dimension:
        raise DimensionMismatch(f"expression uses {max_variable(e) + 1} variables, region has {dimension}")
    return lambda *coords: evaluate(e, coords)


def to_monomial_poly(e: Expr, dimension: Optional[int] = None) -> MonomialPoly:
    """Expand a polynomial expression; anything else raises NotPolynomial."""
    if dimension is None:
        dimension = max(1, max_variable(e) + 1)
    if max_variable(e) >= dimension:
        raise DimensionMismatch(f"expression uses {max_variable(e) + 1} variables, region has {dimension}")
    return _lower(e, dimension)


def _lower(e: Expr, n: int) -> MonomialPoly:
    if isinstance(e, Number):
        return MonomialPoly.constant(n, e.value)
    if isinstance(e, Var):
        return MonomialPoly.variable(n, e.index)
    if isinstance(e, Neg):
        return -_lower(e.operand, n)
    if isinstance(e, Call):
        raise NotPolynomial(f"{e.func}(...) is not a polynomial")
    if e.op == "^":
        if not isinstance(e.right, Number) or e.right.value.denominator != 1:
            raise NotPolynomial("exponents must be non-negative integer literals")
        return _lower(e.left, n) ** int(e.right.value)
    left, right = _lower(e.left, n), _lower(e.right, n)
    if e.op == "+":
        return left + right
    if e.op == "-":
        return left - right
    if e.op == "*":
        return left * right
    if right.degree > 0:
        raise NotPolynomial("division by a non-constant expression")
    if right.is_zero():
        raise NotPolynomial("division by zero")
    return left * (1 / right.terms[(0,) * n])


def parse_monomials(text: str, dimension: int) -> List[tuple]:
    """Comma-separated monomials such as "x^2, x*y" as multi-indices."""
    out = []
    for item in text.split(","):
        poly = to_monomial_poly(parse(item), dimension)
        if len(poly.terms) != 1:
            raise NotPolynomial(f"{item.strip()!r} is not a single monomial")
        out.append(next(iter(poly.terms)))
    return out

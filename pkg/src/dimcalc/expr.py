"""Recursive-descent parser, renderer and dimension checker for quantity expressions.

Grammar::

    law     := expr '=' expr
    expr    := term (('+' | '-') term)*
    term    := unary (('*' | '/') unary)*
    unary   := '-' unary | factor
    factor  := base ('^' rational)?
    base    := number unitseq? | 'sqrt' '(' expr ')' | ident | '(' expr ')'
    unitseq := (unitname ('^' rational)?)+
    rational:= ['+'|'-'] int | '(' ['-'] int ['/' ['-'] int] ')'

Unit names only ever follow a number literal (``9.81 m s^-2``); everywhere
else a name is an identifier. ``sqrt(x)`` parses to a power node with
exponent 1/2 that remembers its spelling.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Mapping, Optional, Union

from .dimension import Dimension, render_rational
from .errors import DimensionMismatchError, ParseError
from .quantity import Quantity, UnitFrame, q_add, q_inv, q_mul, q_pow, q_sqrt


@dataclass(frozen=True)
class Span:
    line: int
    column: int
    end: int


NOSPAN = Span(1, 1, 1)


@dataclass(frozen=True)
class Literal:
    value: float
    text: str
    units: tuple[tuple[str, Fraction], ...] = ()
    span: Span = field(default=NOSPAN, compare=False)


@dataclass(frozen=True)
class Ident:
    name: str
    span: Span = field(default=NOSPAN, compare=False)


@dataclass(frozen=True)
class BinOp:
    op: str
    left: "Node"
    right: "Node"
    span: Span = field(default=NOSPAN, compare=False)
    op_at: tuple[int, int] = field(default=(0, 0), compare=False)  # (line, column) of the operator


@dataclass(frozen=True)
class Pow:
    base: "Node"
    exponent: Fraction
    sqrt: bool = False
    span: Span = field(default=NOSPAN, compare=False)


@dataclass(frozen=True)
class Neg:
    operand: "Node"
    span: Span = field(default=NOSPAN, compare=False)


@dataclass(frozen=True)
class Paren:
    inner: "Node"
    span: Span = field(default=NOSPAN, compare=False)


@dataclass(frozen=True)
class Equation:
    lhs: "Node"
    rhs: "Node"
    span: Span = field(default=NOSPAN, compare=False)
    op_at: tuple[int, int] = field(default=(0, 0), compare=False)  # (line, column) of the operator


Node = Union[Literal, Ident, BinOp, Pow, Neg, Paren]


@dataclass(frozen=True)
class Token:
    kind: str  # NUM, NAME, OP, EOF
    text: str
    line: int
    column: int


_TOKEN = re.compile(
    r"(?P<ws>[ \t\r]+)|(?P<nl>\n)"
    r"|(?P<NUM>(?:\d+\.\d*|\.\d+|\d+)(?:[eE][+-]?\d+)?)"
    r"|(?P<NAME>[^\W\d]\w*)"
    r"|(?P<OP>[-+*/^()=])"
)


def tokenize(text: str) -> list[Token]:
    tokens = []
    pos, line, line_start = 0, 1, 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            raise ParseError(f"unexpected character {text[pos]!r}", line, pos - line_start + 1)
        kind = m.lastgroup
        if kind == "nl":
            line += 1
            line_start = m.end()
        elif kind != "ws":
            tokens.append(Token(kind, m.group(), line, pos - line_start + 1))
        pos = m.end()
    tokens.append(Token("EOF", "", line, pos - line_start + 1))
    return tokens


class Parser:
    def __init__(self, text: str, units: Optional[Iterable[str]] = None):
        if not text.strip():
            raise ParseError("empty expression")
        self.tokens = tokenize(text)
        self.i = 0
        self.units = set(units) if units is not None else None

    @property
    def tok(self) -> Token:
        return self.tokens[self.i]

    def _advance(self) -> Token:
        t = self.tokens[self.i]
        self.i += 1
        return t

    def _at(self, text: str) -> bool:
        return self.tok.kind == "OP" and self.tok.text == text

    def _expect(self, text: str) -> Token:
        if not self._at(text):
            got = self.tok.text or "end of input"
            raise ParseError(f"expected {text!r}, got {got!r}", self.tok.line, self.tok.column)
        return self._advance()

    def _span(self, start: Token) -> Span:
        prev = self.tokens[self.i - 1]
        end = prev.column + len(prev.text) if prev.line == start.line else start.column + len(start.text)
        return Span(start.line, start.column, end)

    def parse_top(self) -> Union[Node, Equation]:
        start = self.tok
        lhs = self.expr()
        if self._at("="):
            eq = self._advance()
            rhs = self.expr()
            node = Equation(lhs, rhs, self._span(start), (eq.line, eq.column))
        else:
            node = lhs
        if self.tok.kind != "EOF":
            raise ParseError(f"unexpected {self.tok.text!r}", self.tok.line, self.tok.column)
        return node

    def expr(self) -> Node:
        start = self.tok
        node = self.term()
        while self._at("+") or self._at("-"):
            op = self._advance()
            node = BinOp(op.text, node, self.term(), self._span(start), (op.line, op.column))
        return node

    def term(self) -> Node:
        start = self.tok
        node = self.unary()
        while self._at("*") or self._at("/"):
            op = self._advance()
            node = BinOp(op.text, node, self.unary(), self._span(start), (op.line, op.column))
        return node

    def unary(self) -> Node:
        if self._at("-"):
            start = self._advance()
            return Neg(self.unary(), self._span(start))
        return self.factor()

    def factor(self) -> Node:
        start = self.tok
        base = self.base()
        if self._at("^"):
            self._advance()
            return Pow(base, self.rational(), False, self._span(start))
        return base

    def base(self) -> Node:
        t = self.tok
        if t.kind == "NUM":
            self._advance()
            units = self.unitseq()
            return Literal(float(t.text), t.text, units, self._span(t))
        if t.kind == "NAME" and t.text == "sqrt":
            self._advance()
            self._expect("(")
            inner = self.expr()
            self._expect(")")
            return Pow(inner, Fraction(1, 2), True, self._span(t))
        if t.kind == "NAME":
            self._advance()
            return Ident(t.text, self._span(t))
        if self._at("("):
            self._advance()
            inner = self.expr()
            self._expect(")")
            return Paren(inner, self._span(t))
        got = t.text or "end of input"
        raise ParseError(f"expected a number, name or '(', got {got!r}", t.line, t.column)

    def unitseq(self) -> tuple[tuple[str, Fraction], ...]:
        units = []
        while self.tok.kind == "NAME" and self.tok.text != "sqrt":
            t = self._advance()
            if self.units is not None and t.text not in self.units:
                raise ParseError(f"unknown unit {t.text!r}", t.line, t.column)
            exp = Fraction(1)
            if self._at("^"):
                self._advance()
                exp = self.rational()
            units.append((t.text, exp))
        return tuple(units)

    def _int(self) -> int:
        sign = 1
        if self._at("-") or self._at("+"):
            sign = -1 if self._advance().text == "-" else 1
        t = self.tok
        if t.kind != "NUM" or not t.text.isdigit():
            raise ParseError(f"malformed rational exponent near {t.text or 'end of input'!r}", t.line, t.column)
        self._advance()
        return sign * int(t.text)

    def rational(self) -> Fraction:
        if self._at("("):
            open_tok = self._advance()
            num = self._int()
            den = 1
            if self._at("/"):
                self._advance()
                den = self._int()
            self._expect(")")
            if den == 0:
                raise ParseError("malformed rational exponent: zero denominator", open_tok.line, open_tok.column)
            return Fraction(num, den)
        return Fraction(self._int())


def parse_quantity_expr(text: str, units: Optional[Iterable[str]] = None) -> Node:
    node = Parser(text, units).parse_top()
    if isinstance(node, Equation):
        raise ParseError("expected an expression, found an equation", node.span.line, node.span.column)
    return node


def parse(text: str, units: Optional[Iterable[str]] = None) -> Union[Node, Equation]:
    """Parse an expression or an equation ``lhs = rhs``."""
    return Parser(text, units).parse_top()


def _render_exp(q: Fraction) -> str:
    if q.denominator == 1:
        return str(q.numerator)
    return render_rational(q)


def render(node: Union[Node, Equation]) -> str:
    if isinstance(node, Equation):
        return f"{render(node.lhs)} = {render(node.rhs)}"
    if isinstance(node, Literal):
        parts = [node.text]
        for name, exp in node.units:
            parts.append(name if exp == 1 else f"{name}^{_render_exp(exp)}")
        return " ".join(parts)
    if isinstance(node, Ident):
        return node.name
    if isinstance(node, BinOp):
        return f"{render(node.left)} {node.op} {render(node.right)}"
    if isinstance(node, Neg):
        return f"-{render(node.operand)}"
    if isinstance(node, Paren):
        return f"({render(node.inner)})"
    if isinstance(node, Pow):
        if node.sqrt:
            return f"sqrt({render(node.base)})"
        return f"{render(node.base)}^{_render_exp(node.exponent)}"
    raise TypeError(f"not an expression node: {node!r}")


class DimensionCheckError(DimensionMismatchError):
    def __init__(self, message: str, span: Span):
        self.span = span
        self.line = span.line
        self.column = span.column
        self.bare_message = message
        super().__init__(f"{span.line}:{span.column}: {message}")


class UnknownIdentifierError(ParseError):
    pass


@dataclass
class CheckReport:
    steps: list[tuple[str, Dimension]]
    dimension: Optional[Dimension] = None  # of the expression, or of both sides of a law


def literal_dimension(node: Literal, frame: UnitFrame) -> Dimension:
    dim = frame.system.dimensionless()
    for name, exp in node.units:
        if name not in frame.unit_names:
            raise ParseError(f"unknown unit {name!r}", node.span.line, node.span.column)
        dim = dim * (frame.system.base(frame.system.fundamentals[frame.unit_names.index(name)]) ** exp)
    return dim


def check(node: Union[Node, Equation], env: Mapping[str, Dimension], frame: UnitFrame) -> CheckReport:
    """Infer dimensions bottom-up; raise :class:`DimensionCheckError` at the first inconsistency."""
    steps: list[tuple[str, Dimension]] = []

    def visit(n) -> Dimension:
        if isinstance(n, Literal):
            d = literal_dimension(n, frame)
        elif isinstance(n, Ident):
            if n.name not in env:
                raise UnknownIdentifierError(f"unknown identifier {n.name!r}", n.span.line, n.span.column)
            d = env[n.name]
        elif isinstance(n, Paren):
            return visit(n.inner)
        elif isinstance(n, Neg):
            d = visit(n.operand)
        elif isinstance(n, Pow):
            d = visit(n.base) ** n.exponent
        elif isinstance(n, BinOp):
            a, b = visit(n.left), visit(n.right)
            if n.op in "+-":
                if a != b:
                    line, col = n.op_at if n.op_at[0] else (n.span.line, n.left.span.end + 1)
                    raise DimensionCheckError(f"dimension mismatch at {n.op}: {a} vs {b}", Span(line, col, col + 1))
                d = a
            else:
                d = a * b if n.op == "*" else a / b
        else:
            raise TypeError(f"not an expression node: {n!r}")
        steps.append((render(n), d))
        return d

    if isinstance(node, Equation):
        lhs, rhs = visit(node.lhs), visit(node.rhs)
        if lhs != rhs:
            line, col = node.op_at if node.op_at[0] else (node.span.line, node.lhs.span.end + 1)
            raise DimensionCheckError(f"dimension mismatch at =: {lhs} vs {rhs}", Span(line, col, col + 1))
        return CheckReport(steps, lhs)
    return CheckReport(steps, visit(node))


def evaluate(node: Node, values: Mapping[str, Quantity], frame: UnitFrame) -> Quantity:
    """Evaluate with quantity arithmetic; dimension errors surface from the quantity layer."""
    if isinstance(node, Literal):
        return Quantity(node.value, literal_dimension(node, frame), frame)
    if isinstance(node, Ident):
        if node.name not in values:
            raise UnknownIdentifierError(f"unknown identifier {node.name!r}", node.span.line, node.span.column)
        return values[node.name]
    if isinstance(node, Paren):
        return evaluate(node.inner, values, frame)
    if isinstance(node, Neg):
        return -evaluate(node.operand, values, frame)
    if isinstance(node, Pow):
        base = evaluate(node.base, values, frame)
        return q_sqrt(base) if node.sqrt else q_pow(base, node.exponent)
    if isinstance(node, BinOp):
        a, b = evaluate(node.left, values, frame), evaluate(node.right, values, frame)
        if node.op == "+":
            return q_add(a, b)
        if node.op == "-":
            return q_add(a, -b)
        if node.op == "*":
            return q_mul(a, b)
        return q_mul(a, q_inv(b))
    raise TypeError(f"not an expression node: {node!r}")


def identifiers(node) -> set[str]:
    if isinstance(node, Ident):
        return {node.name}
    if isinstance(node, Equation):
        return identifiers(node.lhs) | identifiers(node.rhs)
    if isinstance(node, BinOp):
        return identifiers(node.left) | identifiers(node.right)
    if isinstance(node, (Paren,)):
        return identifiers(node.inner)
    if isinstance(node, Neg):
        return identifiers(node.operand)
    if isinstance(node, Pow):
        return identifiers(node.base)
    return set()


def law_residual(eq: Equation, names: tuple[str, ...], frame: UnitFrame,
                 dims: Mapping[str, Dimension]) -> Callable[[tuple[float, ...]], float]:
    """Turn ``lhs = rhs`` into f(magnitudes) = (lhs - rhs) / (|lhs| + |rhs|)."""

    def f(mags) -> float:
        values = {n: Quantity(m, dims[n], frame) for n, m in zip(names, mags)}
        a = evaluate(eq.lhs, values, frame).magnitude
        b = evaluate(eq.rhs, values, frame).magnitude
        scale = abs(a) + abs(b)
        return 0.0 if scale == 0 else (a - b) / scale

    return f

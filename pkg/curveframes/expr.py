# curveframes/expr.py
"""
Recursive-descent parser for coordinate expressions in the parameter t.

    expr    := term (('+' | '-') term)*
    term    := unary (('*' | '/') unary)*
    unary   := '-' unary | power
    power   := primary ('^' unary)?          right-associative
    primary := number | 't' | 'pi' | 'e' | func '(' expr ')' | '(' expr ')'

Evaluation is vectorized over numpy arrays of t. Domain violations raise
DomainError instead of producing NaN.
"""
import logging
import re
from dataclasses import dataclass
from typing import Callable, Dict, List, NamedTuple, Tuple

import numpy as np

from .exceptions import DomainError, ExprSyntaxError, UnknownIdentifier

logger = logging.getLogger(__name__)

_NUMBER = re.compile(r"\d+(\.\d*)?([eE][+-]?\d+)?|\.\d+([eE][+-]?\d+)?")
_IDENT = re.compile(r"[A-Za-z_][A-Za-z0-9_]*")
_OPERATORS = set("+-*/^()")

CONSTANTS: Dict[str, float] = {"pi": np.pi, "e": np.e}


def _outside(low: float, high: float) -> Callable[[np.ndarray], np.ndarray]:
    return lambda x: (x < low) | (x > high)


# name -> (ufunc, mask of inadmissible arguments or None)
FUNCTIONS = {
    "sin": (np.sin, None),
    "cos": (np.cos, None),
    "tan": (np.tan, None),
    "asin": (np.arcsin, _outside(-1.0, 1.0)),
    "acos": (np.arccos, _outside(-1.0, 1.0)),
    "atan": (np.arctan, None),
    "sqrt": (np.sqrt, lambda x: x < 0),
    "exp": (np.exp, None),
    "log": (np.log, lambda x: x <= 0),
    "abs": (np.abs, None),
}


def _first(values, mask) -> float:
    return float(np.broadcast_to(values, np.shape(mask))[mask].ravel()[0])


class Token(NamedTuple):
    kind: str       # "number" | "ident" | "op" | "end"
    text: str
    offset: int     # byte offset into the source text


# --- AST ------------------------------------------------------------------

class ExprAst:
    """Base node. Nodes are immutable; evaluate() accepts a float or ndarray."""

    def evaluate(self, t):
        raise NotImplementedError


@dataclass(frozen=True)
class Number(ExprAst):
    value: float

    def evaluate(self, t):
        return self.value

    def __str__(self) -> str:
        text = repr(float(self.value))
        return f"({text})" if self.value < 0 else text


@dataclass(frozen=True)
class Variable(ExprAst):
    def evaluate(self, t):
        return t

    def __str__(self) -> str:
        return "t"


@dataclass(frozen=True)
class Constant(ExprAst):
    name: str

    def evaluate(self, t):
        return CONSTANTS[self.name]

    def __str__(self) -> str:
        return self.name


@dataclass(frozen=True)
class Negate(ExprAst):
    operand: ExprAst

    def evaluate(self, t):
        return -self.operand.evaluate(t)

    def __str__(self) -> str:
        return f"(-{self.operand})"


@dataclass(frozen=True)
class BinaryOp(ExprAst):
    op: str
    left: ExprAst
    right: ExprAst

    def evaluate(self, t):
        lhs = np.asarray(self.left.evaluate(t), dtype=float)
        rhs = np.asarray(self.right.evaluate(t), dtype=float)
        if self.op == "+":
            return lhs + rhs
        if self.op == "-":
            return lhs - rhs
        if self.op == "*":
            return lhs * rhs
        if self.op == "/":
            zero = np.broadcast_to(rhs == 0, np.broadcast(lhs, rhs).shape)
            if zero.any():
                raise DomainError("/", 0.0)
            return lhs / rhs
        with np.errstate(all="ignore"):
            result = np.power(lhs, rhs)
        bad = np.isnan(result) & ~np.isnan(np.broadcast_to(lhs, np.shape(result)))
        if bad.any():
            raise DomainError("^", _first(lhs, bad))
        return result

    def __str__(self) -> str:
        return f"({self.left} {self.op} {self.right})"


@dataclass(frozen=True)
class Call(ExprAst):
    function: str
    argument: ExprAst

    def evaluate(self, t):
        arg = np.asarray(self.argument.evaluate(t), dtype=float)
        ufunc, inadmissible = FUNCTIONS[self.function]
        if inadmissible is not None:
            mask = inadmissible(arg)
            if np.any(mask):
                raise DomainError(self.function, _first(arg, mask))
        return ufunc(arg)

    def __str__(self) -> str:
        return f"{self.function}({self.argument})"


# --- tokenizer / parser ---------------------------------------------------

def tokenize(text: str, base_offset: int = 0) -> List[Token]:
    tokens: List[Token] = []
    pos = 0

    def byte_offset(i: int) -> int:
        return base_offset + len(text[:i].encode("utf-8"))

    while pos < len(text):
        ch = text[pos]
        if ch.isspace():
            pos += 1
            continue
        number = _NUMBER.match(text, pos)
        if number:
            tokens.append(Token("number", number.group(), byte_offset(pos)))
            pos = number.end()
            continue
        ident = _IDENT.match(text, pos)
        if ident:
            tokens.append(Token("ident", ident.group(), byte_offset(pos)))
            pos = ident.end()
            continue
        if ch in _OPERATORS:
            tokens.append(Token("op", ch, byte_offset(pos)))
            pos += 1
            continue
        raise ExprSyntaxError(f"unexpected character {ch!r}", byte_offset(pos))
    tokens.append(Token("end", "", byte_offset(len(text))))
    return tokens


class Parser:
    def __init__(self, text: str, base_offset: int = 0):
        self.tokens = tokenize(text, base_offset)
        self.pos = 0

    @property
    def current(self) -> Token:
        return self.tokens[self.pos]

    def _advance(self) -> Token:
        token = self.current
        self.pos += 1
        return token

    def _is_op(self, *ops: str) -> bool:
        return self.current.kind == "op" and self.current.text in ops

    def _expect(self, op: str) -> Token:
        if not self._is_op(op):
            raise ExprSyntaxError(f"expected '{op}'", self.current.offset)
        return self._advance()

    def parse(self) -> ExprAst:
        node = self.expr()
        if self.current.kind != "end":
            raise ExprSyntaxError(f"unexpected {self.current.text!r}", self.current.offset)
        return node

    def expr(self) -> ExprAst:
        node = self.term()
        while self._is_op("+", "-"):
            op = self._advance().text
            node = BinaryOp(op, node, self.term())
        return node

    def term(self) -> ExprAst:
        node = self.unary()
        while self._is_op("*", "/"):
            op = self._advance().text
            node = BinaryOp(op, node, self.unary())
        return node

    def unary(self) -> ExprAst:
        if self._is_op("-"):
            self._advance()
            return Negate(self.unary())
        return self.power()

    def power(self) -> ExprAst:
        base = self.primary()
        if self._is_op("^"):
            self._advance()
            return BinaryOp("^", base, self.unary())
        return base

    def primary(self) -> ExprAst:
        token = self.current
        if token.kind == "number":
            self._advance()
            return Number(float(token.text))
        if token.kind == "ident":
            self._advance()
            if token.text == "t":
                return Variable()
            if token.text in CONSTANTS:
                return Constant(token.text)
            if token.text in FUNCTIONS:
                self._expect("(")
                argument = self.expr()
                self._expect(")")
                return Call(token.text, argument)
            raise UnknownIdentifier(token.text, token.offset)
        if self._is_op("("):
            self._advance()
            node = self.expr()
            self._expect(")")
            return node
        if token.kind == "end":
            raise ExprSyntaxError("unexpected end of input", token.offset)
        raise ExprSyntaxError(f"unexpected {token.text!r}", token.offset)


def parse(text: str) -> ExprAst:
    return Parser(text).parse()


def evaluate(ast: ExprAst, t):
    """Evaluate at a scalar (returns float) or an array of t values."""
    with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
        value = ast.evaluate(np.asarray(t, dtype=float))
    if np.ndim(t) == 0:
        return float(value)
    return np.broadcast_to(np.asarray(value, dtype=float), np.shape(t)).copy()


def parse_curve(text: str) -> Tuple[ExprAst, ExprAst, ExprAst]:
    """Parse "x(t); y(t); z(t)". Error offsets refer to the whole text."""
    parts = text.split(";")
    if len(parts) != 3:
        raise ExprSyntaxError(
            f"expected 3 ';'-separated components, got {len(parts)}",
            len(text.encode("utf-8")),
        )
    components = []
    base = 0
    for part in parts:
        components.append(Parser(part, base).parse())
        base += len(part.encode("utf-8")) + 1
    return tuple(components)


def curve_function(text: str) -> Callable[[np.ndarray], np.ndarray]:
    """Vectorized position function t -> (n, 3) built from a curve expression."""
    x, y, z = parse_curve(text)
    logger.debug("parsed curve expression: %s; %s; %s", x, y, z)

    def position(t):
        t = np.asarray(t, dtype=float)
        return np.stack([evaluate(component, t) for component in (x, y, z)], axis=-1)

    return position

"""Operator-symbol expressions: parsing, complex evaluation, singularity probing.

Grammar (precedence high to low, ``^`` right-associative)::

    atom   := NUMBER | NAME | NAME '(' expr ')' | '(' expr ')'
    power  := atom ['^' unary]
    unary  := '-' unary | power
    term   := unary (('*' | '/') unary)*
    expr   := term (('+' | '-') term)*

Named constants are ``pi``, ``e``, ``i``; the function set is fixed to
exp, cos, sin, tan, sqrt, log, abs.  Function application requires
parentheses.  sqrt and log use principal branches.  Any intermediate whose
magnitude exceeds 1e300 is an overflow error; division by zero and log(0)
are domain errors.
"""

from __future__ import annotations

import cmath
import re
from dataclasses import dataclass
from typing import Iterable, Mapping, Union

import numpy as np

__all__ = [
    "SymbolExpr",
    "Literal",
    "Const",
    "Var",
    "Neg",
    "BinOp",
    "Call",
    "SingularityReport",
    "ParseError",
    "EvalError",
    "EvalDomainError",
    "EvalOverflowError",
    "parse",
    "unparse",
    "evaluate",
    "evaluate_array",
    "free_variables",
    "probe_singularities",
]

OVERFLOW_LIMIT = 1e300

CONSTANTS: dict[str, complex] = {"pi": complex(cmath.pi), "e": complex(cmath.e), "i": 1j}

# Extension point: new functions are added here, not to the grammar.
FUNCTIONS: dict[str, np.ufunc] = {
    "exp": np.exp,
    "cos": np.cos,
    "sin": np.sin,
    "tan": np.tan,
    "sqrt": np.sqrt,
    "log": np.log,
    "abs": np.abs,
}


class ParseError(ValueError):
    """Syntax or name error while parsing; carries the byte offset."""

    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} (offset {offset})")
        self.offset = offset


class EvalError(ArithmeticError):
    """Base class for evaluation failures; carries the flat index of the
    first offending entry when the failing value was an array."""

    def __init__(self, message: str, flat_index: int | None = None):
        super().__init__(message)
        self.flat_index = flat_index


class EvalDomainError(EvalError):
    """Division by zero, log(0), or 0 raised to a non-positive power."""


class EvalOverflowError(EvalError):
    """An intermediate magnitude exceeded the 1e300 cutoff."""


@dataclass(frozen=True)
class Literal:
    value: complex


@dataclass(frozen=True)
class Const:
    name: str


@dataclass(frozen=True)
class Var:
    name: str


@dataclass(frozen=True)
class Neg:
    operand: "SymbolExpr"


@dataclass(frozen=True)
class BinOp:
    op: str  # one of + - * / ^
    lhs: "SymbolExpr"
    rhs: "SymbolExpr"


@dataclass(frozen=True)
class Call:
    func: str
    arg: "SymbolExpr"


SymbolExpr = Union[Literal, Const, Var, Neg, BinOp, Call]


# ---------------------------------------------------------------------------
# tokenizer / parser
# ---------------------------------------------------------------------------

_TOKEN_RE = re.compile(
    r"(?P<num>(?:\d+(?:\.\d*)?|\.\d+)(?:[eE][+-]?\d+)?)"
    r"|(?P<name>[A-Za-z_][A-Za-z_0-9]*)"
    r"|(?P<op>[-+*/^()])"
)


@dataclass(frozen=True)
class _Token:
    kind: str  # num | name | op | end
    text: str
    offset: int


def _tokenize(text: str) -> list[_Token]:
    tokens = []
    pos = 0
    while pos < len(text):
        if text[pos].isspace():
            pos += 1
            continue
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            raise ParseError(f"unexpected character {text[pos]!r}", pos)
        kind = m.lastgroup
        tokens.append(_Token(kind, m.group(), pos))
        pos = m.end()
    tokens.append(_Token("end", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str, allowed_vars: frozenset[str]):
        self.tokens = _tokenize(text)
        self.pos = 0
        self.allowed_vars = allowed_vars

    def peek(self) -> _Token:
        return self.tokens[self.pos]

    def advance(self) -> _Token:
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def expect_op(self, op: str, context: str) -> None:
        tok = self.peek()
        if tok.kind == "op" and tok.text == op:
            self.advance()
            return
        raise ParseError(f"expected {op!r} {context}, found {tok.text or 'end of input'!r}", tok.offset)

    def parse_expr(self) -> SymbolExpr:
        node = self.parse_term()
        while self.peek().kind == "op" and self.peek().text in "+-":
            op = self.advance().text
            node = BinOp(op, node, self.parse_term())
        return node

    def parse_term(self) -> SymbolExpr:
        node = self.parse_unary()
        while self.peek().kind == "op" and self.peek().text in "*/":
            op = self.advance().text
            node = BinOp(op, node, self.parse_unary())
        return node

    def parse_unary(self) -> SymbolExpr:
        tok = self.peek()
        if tok.kind == "op" and tok.text == "-":
            self.advance()
            return Neg(self.parse_unary())
        return self.parse_power()

    def parse_power(self) -> SymbolExpr:
        base = self.parse_atom()
        tok = self.peek()
        if tok.kind == "op" and tok.text == "^":
            self.advance()
            # right-associative; a leading '-' is allowed in the exponent
            return BinOp("^", base, self.parse_unary())
        return base

    def parse_atom(self) -> SymbolExpr:
        tok = self.advance()
        if tok.kind == "num":
            return Literal(complex(float(tok.text)))
        if tok.kind == "name":
            if tok.text in FUNCTIONS:
                self.expect_op("(", f"after function {tok.text!r}")
                arg = self.parse_expr()
                self.expect_op(")", f"closing call to {tok.text!r}")
                return Call(tok.text, arg)
            if tok.text in CONSTANTS:
                return Const(tok.text)
            if tok.text in self.allowed_vars:
                return Var(tok.text)
            follower = self.peek()
            if follower.kind == "op" and follower.text == "(":
                raise ParseError(
                    f"unknown function {tok.text!r} (available: {', '.join(sorted(FUNCTIONS))})",
                    tok.offset,
                )
            raise ParseError(
                f"unknown variable {tok.text!r} (allowed: {', '.join(sorted(self.allowed_vars)) or 'none'})",
                tok.offset,
            )
        if tok.kind == "op" and tok.text == "(":
            node = self.parse_expr()
            self.expect_op(")", "to close parenthesized expression")
            return node
        raise ParseError(
            f"expected a number, name or '(' , found {tok.text or 'end of input'!r}", tok.offset
        )


def parse(text: str, allowed_vars: Iterable[str] = ("z",)) -> SymbolExpr:
    """Parse an expression over the given variable names."""
    if not text or not text.strip():
        raise ParseError("empty expression", 0)
    allowed = frozenset(allowed_vars)
    reserved = allowed & (set(CONSTANTS) | set(FUNCTIONS))
    if reserved:
        raise ValueError(f"variable names shadow built-ins: {sorted(reserved)}")
    parser = _Parser(text, allowed)
    node = parser.parse_expr()
    tail = parser.peek()
    if tail.kind != "end":
        raise ParseError(f"unexpected trailing input {tail.text!r}", tail.offset)
    return node


# ---------------------------------------------------------------------------
# unparsing
# ---------------------------------------------------------------------------

_LEVEL_ADD, _LEVEL_MUL, _LEVEL_NEG, _LEVEL_POW, _LEVEL_ATOM = 1, 2, 3, 4, 5


def _level(node: SymbolExpr) -> int:
    if isinstance(node, BinOp):
        if node.op in "+-":
            return _LEVEL_ADD
        if node.op in "*/":
            return _LEVEL_MUL
        return _LEVEL_POW
    if isinstance(node, Neg):
        return _LEVEL_NEG
    return _LEVEL_ATOM


def _fmt_number(value: complex) -> str:
    if value.imag == 0:
        r = value.real
        if r == int(r) and abs(r) < 1e16:
            return str(int(r))
        return repr(r)
    return f"({repr(value.real)} + {repr(value.imag)}*i)"


def unparse(node: SymbolExpr) -> str:
    """Render an AST back to text; re-parsing yields an identical AST."""
    if isinstance(node, Literal):
        return _fmt_number(node.value)
    if isinstance(node, (Const, Var)):
        return node.name
    if isinstance(node, Call):
        return f"{node.func}({unparse(node.arg)})"
    if isinstance(node, Neg):
        inner = unparse(node.operand)
        if _level(node.operand) < _LEVEL_NEG:
            inner = f"({inner})"
        return f"-{inner}"
    if isinstance(node, BinOp):
        own = _level(node)
        lhs = unparse(node.lhs)
        rhs = unparse(node.rhs)
        if node.op == "^":
            if _level(node.lhs) < _LEVEL_ATOM:
                lhs = f"({lhs})"
            if _level(node.rhs) < _LEVEL_POW:
                rhs = f"({rhs})"
        else:
            if _level(node.lhs) < own:
                lhs = f"({lhs})"
            # - and / do not associate on the right
            rhs_min = own + 1 if node.op in ("-", "/") else own
            if _level(node.rhs) < rhs_min:
                rhs = f"({rhs})"
        return f"{lhs}{node.op}{rhs}"
    raise TypeError(f"not a symbol expression: {node!r}")


def free_variables(node: SymbolExpr) -> set[str]:
    if isinstance(node, Var):
        return {node.name}
    if isinstance(node, Neg):
        return free_variables(node.operand)
    if isinstance(node, BinOp):
        return free_variables(node.lhs) | free_variables(node.rhs)
    if isinstance(node, Call):
        return free_variables(node.arg)
    return set()


# ---------------------------------------------------------------------------
# evaluation
# ---------------------------------------------------------------------------


def _first_flat_index(mask) -> int | None:
    if np.ndim(mask) == 0:
        return None
    return int(np.argmax(np.ravel(mask)))


def _check_magnitude(value, on_overflow: str):
    bad = ~np.isfinite(value) | (np.abs(value) > OVERFLOW_LIMIT)
    if np.any(bad) and on_overflow == "raise":
        raise EvalOverflowError(
            f"intermediate magnitude exceeds {OVERFLOW_LIMIT:g}", _first_flat_index(bad)
        )
    return value


def _int_power(base, n: int):
    # repeated squaring keeps integer powers conjugate-symmetric exactly
    if n == 0:
        return np.ones_like(base) if np.ndim(base) else np.complex128(1.0)
    invert = n < 0
    n = abs(n)
    result = None
    factor = base
    while n:
        if n & 1:
            result = factor if result is None else result * factor
        factor = factor * factor
        n >>= 1
    if invert:
        zero = result == 0
        if np.any(zero):
            raise EvalDomainError("0 raised to a negative power", _first_flat_index(zero))
        result = 1.0 / result
    return result


def _power(base, expo, on_overflow: str):
    if (
        np.ndim(expo) == 0
        and complex(expo).imag == 0
        and float(complex(expo).real).is_integer()
        and abs(complex(expo).real) <= 64
    ):
        return _int_power(base, int(complex(expo).real))
    zero = base == 0
    if np.any(zero):
        pos = np.broadcast_to(np.real(expo) > 0, np.shape(zero)) if np.ndim(zero) else np.real(expo) > 0
        bad = zero & ~pos
        if np.any(bad):
            raise EvalDomainError(
                "0 raised to a power without positive real part", _first_flat_index(bad)
            )
        safe = np.where(zero, 1.0, base)
        return np.where(zero, 0.0, np.exp(expo * np.log(safe)))
    return np.exp(expo * np.log(base))


def _eval(node: SymbolExpr, bindings: Mapping[str, object], on_overflow: str):
    if isinstance(node, Literal):
        return np.complex128(node.value)
    if isinstance(node, Const):
        return np.complex128(CONSTANTS[node.name])
    if isinstance(node, Var):
        try:
            return bindings[node.name]
        except KeyError:
            raise ValueError(f"unbound variable {node.name!r}") from None
    if isinstance(node, Neg):
        return -_eval(node.operand, bindings, on_overflow)
    if isinstance(node, Call):
        arg = _eval(node.arg, bindings, on_overflow)
        if node.func == "log":
            zero = arg == 0
            if np.any(zero):
                raise EvalDomainError("log of zero", _first_flat_index(zero))
        value = FUNCTIONS[node.func](arg)
        if node.func == "abs":
            value = value + 0j
        return _check_magnitude(value, on_overflow)
    if isinstance(node, BinOp):
        lhs = _eval(node.lhs, bindings, on_overflow)
        rhs = _eval(node.rhs, bindings, on_overflow)
        if node.op == "+":
            value = lhs + rhs
        elif node.op == "-":
            value = lhs - rhs
        elif node.op == "*":
            value = lhs * rhs
        elif node.op == "/":
            zero = rhs == 0
            if np.any(zero):
                raise EvalDomainError("division by zero", _first_flat_index(zero))
            value = lhs / rhs
        else:
            value = _power(lhs, rhs, on_overflow)
        return _check_magnitude(value, on_overflow)
    raise TypeError(f"not a symbol expression: {node!r}")


def evaluate(expr: SymbolExpr, bindings: Mapping[str, complex]) -> complex:
    """Evaluate at scalar complex bindings; deterministic, side-effect free."""
    scalars = {name: np.complex128(v) for name, v in bindings.items()}
    with np.errstate(all="ignore"):
        return complex(_eval(expr, scalars, "raise"))


def evaluate_array(
    expr: SymbolExpr,
    bindings: Mapping[str, np.ndarray],
    on_overflow: str = "raise",
) -> np.ndarray:
    """Vectorized evaluation over complex arrays.

    With ``on_overflow="keep"``, non-finite entries from overflowing
    functions are retained (callers inspect magnitudes themselves);
    division by zero and log(0) always raise, with the flat index of the
    first offending entry attached.
    """
    if on_overflow not in ("raise", "keep"):
        raise ValueError(f"on_overflow must be 'raise' or 'keep', got {on_overflow!r}")
    arrays = {name: np.asarray(v, dtype=np.complex128) for name, v in bindings.items()}
    with np.errstate(all="ignore"):
        return np.asarray(_eval(expr, arrays, on_overflow), dtype=np.complex128)


# ---------------------------------------------------------------------------
# singularity probing
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SingularityReport:
    """Evaluation outcomes over a set of probe arguments."""

    probes: tuple[tuple[complex, str], ...]
    max_finite_magnitude: float


def probe_singularities(
    expr: SymbolExpr, sample_args: Iterable[complex], var: str | None = None
) -> SingularityReport:
    """Evaluate at each argument and record finite / overflow / domain-error.

    Never raises on evaluation failures; they are data.  ``var`` defaults
    to the expression's single free variable (or ``z`` for constants).
    """
    args = [complex(a) for a in sample_args]
    if not args:
        raise ValueError("sample_args must be nonempty")
    if var is None:
        names = free_variables(expr)
        if len(names) > 1:
            raise ValueError(f"expression has several variables {sorted(names)}; pass var=")
        var = names.pop() if names else "z"
    probes: list[tuple[complex, str]] = []
    finite_mags: list[float] = []
    for a in args:
        try:
            value = evaluate(expr, {var: a})
        except EvalDomainError:
            probes.append((a, "domain-error"))
        except EvalOverflowError:
            probes.append((a, "overflow"))
        else:
            probes.append((a, "finite"))
            finite_mags.append(abs(value))
    return SingularityReport(tuple(probes), max(finite_mags, default=0.0))

"""Analytic symbols on the unit disk.

An :class:`AnalyticSymbol` is an immutable expression tree over the node
kinds {constant, z, negate, +, -, *, /, integer power, exp, log} with
principal-branch log.  Trees can be parsed from text, evaluated at scalar
or array arguments, differentiated structurally, composed by substitution,
and printed back to parseable text.

Everything here is pure and side-effect free; symbols are safe to share
across threads.
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass, field
from typing import Union

import numpy as np

__all__ = [
    "AnalyticSymbol",
    "EvaluationError",
    "ParseError",
    "SelfMapCheck",
    "compose",
    "const",
    "derivative",
    "evaluate",
    "exp_of",
    "int_pow",
    "log_of",
    "parse_symbol",
    "real_power",
    "validate_self_map",
    "var_z",
]


class ParseError(ValueError):
    """Raised on malformed expression text; carries the 0-based position."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


class EvaluationError(ArithmeticError):
    """Raised when a symbol cannot be evaluated at a point; carries the point."""

    def __init__(self, message: str, point: complex):
        super().__init__(f"{message} at z = {point}")
        self.point = point


# ---------------------------------------------------------------------------
# Expression nodes

_PREC_ADD, _PREC_MUL, _PREC_UNARY, _PREC_POW, _PREC_ATOM = 1, 2, 3, 4, 5


class _Node:
    """Base expression node.  Subclasses are frozen dataclasses."""

    __slots__ = ()

    def ev(self, z, memo):  # pragma: no cover - abstract
        raise NotImplementedError

    def diff(self) -> "_Node":  # pragma: no cover - abstract
        raise NotImplementedError

    def subst(self, repl: "_Node") -> "_Node":  # pragma: no cover - abstract
        raise NotImplementedError

    def fmt(self, prec: int) -> str:  # pragma: no cover - abstract
        raise NotImplementedError


def _fmt_real(x: float) -> str:
    s = repr(float(x))
    return s


@dataclass(frozen=True)
class _Const(_Node):
    value: complex

    def ev(self, z, memo):
        return self.value

    def diff(self):
        return _Const(0.0 + 0.0j)

    def subst(self, repl):
        return self

    def fmt(self, prec):
        re, im = self.value.real, self.value.imag
        if im == 0.0:
            if re < 0:
                s = f"-{_fmt_real(-re)}"
                return f"({s})" if prec > _PREC_UNARY else s
            return _fmt_real(re)
        if re == 0.0:
            if im < 0:
                s = f"-{_fmt_real(-im)}*i"
                return f"({s})" if prec > _PREC_UNARY else s
            s = f"{_fmt_real(im)}*i"
            return f"({s})" if prec > _PREC_MUL else s
        sign = "+" if im >= 0 else "-"
        return f"({_fmt_real(re)}{sign}{_fmt_real(abs(im))}*i)"


@dataclass(frozen=True)
class _Var(_Node):
    def ev(self, z, memo):
        return z

    def diff(self):
        return _Const(1.0 + 0.0j)

    def subst(self, repl):
        return repl

    def fmt(self, prec):
        return "z"


def _memoized(method):
    def wrapper(self, z, memo):
        key = id(self)
        hit = memo.get(key)
        if hit is not None:
            return hit
        val = method(self, z, memo)
        memo[key] = val
        return val

    return wrapper


@dataclass(frozen=True)
class _Neg(_Node):
    arg: _Node

    @_memoized
    def ev(self, z, memo):
        return -self.arg.ev(z, memo)

    def diff(self):
        return _neg(self.arg.diff())

    def subst(self, repl):
        return _neg(self.arg.subst(repl))

    def fmt(self, prec):
        s = f"-{self.arg.fmt(_PREC_UNARY)}"
        return f"({s})" if prec > _PREC_UNARY else s


@dataclass(frozen=True)
class _Add(_Node):
    left: _Node
    right: _Node

    @_memoized
    def ev(self, z, memo):
        return self.left.ev(z, memo) + self.right.ev(z, memo)

    def diff(self):
        return _add(self.left.diff(), self.right.diff())

    def subst(self, repl):
        return _add(self.left.subst(repl), self.right.subst(repl))

    def fmt(self, prec):
        s = f"{self.left.fmt(_PREC_ADD)} + {self.right.fmt(_PREC_ADD + 1)}"
        return f"({s})" if prec > _PREC_ADD else s


@dataclass(frozen=True)
class _Sub(_Node):
    left: _Node
    right: _Node

    @_memoized
    def ev(self, z, memo):
        return self.left.ev(z, memo) - self.right.ev(z, memo)

    def diff(self):
        return _sub(self.left.diff(), self.right.diff())

    def subst(self, repl):
        return _sub(self.left.subst(repl), self.right.subst(repl))

    def fmt(self, prec):
        s = f"{self.left.fmt(_PREC_ADD)} - {self.right.fmt(_PREC_ADD + 1)}"
        return f"({s})" if prec > _PREC_ADD else s


@dataclass(frozen=True)
class _Mul(_Node):
    left: _Node
    right: _Node

    @_memoized
    def ev(self, z, memo):
        return self.left.ev(z, memo) * self.right.ev(z, memo)

    def diff(self):
        return _add(
            _mul(self.left.diff(), self.right),
            _mul(self.left, self.right.diff()),
        )

    def subst(self, repl):
        return _mul(self.left.subst(repl), self.right.subst(repl))

    def fmt(self, prec):
        s = f"{self.left.fmt(_PREC_MUL)}*{self.right.fmt(_PREC_MUL + 1)}"
        return f"({s})" if prec > _PREC_MUL else s


@dataclass(frozen=True)
class _Div(_Node):
    left: _Node
    right: _Node

    @_memoized
    def ev(self, z, memo):
        return self.left.ev(z, memo) / self.right.ev(z, memo)

    def diff(self):
        return _div(
            _sub(
                _mul(self.left.diff(), self.right),
                _mul(self.left, self.right.diff()),
            ),
            _mul(self.right, self.right),
        )

    def subst(self, repl):
        return _div(self.left.subst(repl), self.right.subst(repl))

    def fmt(self, prec):
        s = f"{self.left.fmt(_PREC_MUL)}/{self.right.fmt(_PREC_MUL + 1)}"
        return f"({s})" if prec > _PREC_MUL else s


@dataclass(frozen=True)
class _Pow(_Node):
    base: _Node
    exponent: int

    @_memoized
    def ev(self, z, memo):
        b = self.base.ev(z, memo)
        if isinstance(b, np.ndarray):
            return b ** self.exponent
        return b ** self.exponent

    def diff(self):
        n = self.exponent
        return _mul(
            _mul(_Const(complex(n)), _pow(self.base, n - 1)),
            self.base.diff(),
        )

    def subst(self, repl):
        return _pow(self.base.subst(repl), self.exponent)

    def fmt(self, prec):
        s = f"{self.base.fmt(_PREC_ATOM)}^{self.exponent}"
        return f"({s})" if prec > _PREC_POW else s


@dataclass(frozen=True)
class _Exp(_Node):
    arg: _Node

    @_memoized
    def ev(self, z, memo):
        return np.exp(self.arg.ev(z, memo))

    def diff(self):
        return _mul(self, self.arg.diff())

    def subst(self, repl):
        return _Exp(self.arg.subst(repl))

    def fmt(self, prec):
        return f"exp({self.arg.fmt(_PREC_ADD)})"


@dataclass(frozen=True)
class _Log(_Node):
    arg: _Node

    @_memoized
    def ev(self, z, memo):
        return np.log(self.arg.ev(z, memo))

    def diff(self):
        return _div(self.arg.diff(), self.arg)

    def subst(self, repl):
        return _Log(self.arg.subst(repl))

    def fmt(self, prec):
        return f"log({self.arg.fmt(_PREC_ADD)})"


# Smart constructors: constant folding only, no structural simplification.


def _is_const(node: _Node, value: complex | None = None) -> bool:
    if not isinstance(node, _Const):
        return False
    return value is None or node.value == value


def _add(a: _Node, b: _Node) -> _Node:
    if isinstance(a, _Const) and isinstance(b, _Const):
        return _Const(a.value + b.value)
    if _is_const(a, 0):
        return b
    if _is_const(b, 0):
        return a
    return _Add(a, b)


def _sub(a: _Node, b: _Node) -> _Node:
    if isinstance(a, _Const) and isinstance(b, _Const):
        return _Const(a.value - b.value)
    if _is_const(b, 0):
        return a
    if _is_const(a, 0):
        return _neg(b)
    return _Sub(a, b)


def _mul(a: _Node, b: _Node) -> _Node:
    if isinstance(a, _Const) and isinstance(b, _Const):
        return _Const(a.value * b.value)
    if _is_const(a, 0) or _is_const(b, 0):
        return _Const(0.0 + 0.0j)
    if _is_const(a, 1):
        return b
    if _is_const(b, 1):
        return a
    return _Mul(a, b)


def _div(a: _Node, b: _Node) -> _Node:
    if isinstance(a, _Const) and isinstance(b, _Const) and b.value != 0:
        return _Const(a.value / b.value)
    if _is_const(b, 1):
        return a
    if _is_const(a, 0):
        return _Const(0.0 + 0.0j)
    return _Div(a, b)


def _neg(a: _Node) -> _Node:
    if isinstance(a, _Const):
        return _Const(-a.value)
    if isinstance(a, _Neg):
        return a.arg
    return _Neg(a)


def _pow(base: _Node, n: int) -> _Node:
    if n == 0:
        return _Const(1.0 + 0.0j)
    if n == 1:
        return base
    if isinstance(base, _Const):
        return _Const(base.value ** n)
    return _Pow(base, n)


# ---------------------------------------------------------------------------
# Public symbol type

Scalarish = Union[complex, float, int]


@dataclass(frozen=True)
class AnalyticSymbol:
    """Immutable expression tree for an analytic function on the unit disk.

    ``source_text`` holds the original expression for parsed symbols and is
    empty for programmatically built trees.
    """

    root: _Node
    source_text: str = ""

    # Natural arithmetic on symbols builds new trees.
    def __add__(self, other):
        return AnalyticSymbol(_add(self.root, _coerce(other)))

    def __radd__(self, other):
        return AnalyticSymbol(_add(_coerce(other), self.root))

    def __sub__(self, other):
        return AnalyticSymbol(_sub(self.root, _coerce(other)))

    def __rsub__(self, other):
        return AnalyticSymbol(_sub(_coerce(other), self.root))

    def __mul__(self, other):
        return AnalyticSymbol(_mul(self.root, _coerce(other)))

    def __rmul__(self, other):
        return AnalyticSymbol(_mul(_coerce(other), self.root))

    def __truediv__(self, other):
        return AnalyticSymbol(_div(self.root, _coerce(other)))

    def __rtruediv__(self, other):
        return AnalyticSymbol(_div(_coerce(other), self.root))

    def __neg__(self):
        return AnalyticSymbol(_neg(self.root))

    def __pow__(self, n: int):
        if not isinstance(n, int):
            raise TypeError("symbol powers must be integers; use real_power")
        return AnalyticSymbol(_pow(self.root, n))

    def evaluate(self, z):
        return evaluate(self, z)

    def derivative(self) -> "AnalyticSymbol":
        return derivative(self)

    def compose(self, inner: "AnalyticSymbol") -> "AnalyticSymbol":
        return compose(self, inner)

    def to_text(self) -> str:
        return self.root.fmt(0)

    def __str__(self) -> str:
        return self.to_text()


def _coerce(x) -> _Node:
    if isinstance(x, AnalyticSymbol):
        return x.root
    if isinstance(x, (int, float, complex)):
        return _Const(complex(x))
    raise TypeError(f"cannot use {type(x).__name__} as an analytic symbol")


def var_z() -> AnalyticSymbol:
    """The identity symbol z."""
    return AnalyticSymbol(_Var())


def const(value: Scalarish) -> AnalyticSymbol:
    return AnalyticSymbol(_Const(complex(value)))


def exp_of(sym: AnalyticSymbol) -> AnalyticSymbol:
    return AnalyticSymbol(_Exp(sym.root))


def log_of(sym: AnalyticSymbol) -> AnalyticSymbol:
    return AnalyticSymbol(_Log(sym.root))


def int_pow(sym: AnalyticSymbol, n: int) -> AnalyticSymbol:
    return AnalyticSymbol(_pow(sym.root, int(n)))


def real_power(sym: AnalyticSymbol, exponent: float) -> AnalyticSymbol:
    """sym**exponent for real exponents.

    Integer exponents become power nodes; anything else is built as
    exp(exponent*log(sym)) with principal-branch log, which is single
    valued as long as sym avoids the branch cut (all uses in this package
    keep Re(sym) > 0 on the disk).
    """
    e = float(exponent)
    if e.is_integer():
        return int_pow(sym, int(e))
    return exp_of(const(e) * log_of(sym))


# ---------------------------------------------------------------------------
# Evaluation


def evaluate(sym: AnalyticSymbol, z):
    """Evaluate a symbol at a point or ndarray of points.

    Array inputs return raw numpy results where non-finite entries mark
    evaluation failures (callers mask them).  Scalar inputs raise
    :class:`EvaluationError` naming the offending point on division by zero
    or log of zero.
    """
    if isinstance(z, np.ndarray):
        with np.errstate(all="ignore"):
            out = sym.root.ev(z.astype(np.complex128, copy=False), {})
        if isinstance(out, np.ndarray):
            return out
        return np.full(z.shape, out, dtype=np.complex128)
    zc = complex(z)
    with np.errstate(all="ignore"):
        val = sym.root.ev(zc, {})
    val = complex(val)
    if not (cmath.isfinite(val)):
        _diagnose(sym.root, zc)
        raise EvaluationError("non-finite value", zc)
    return val


def _diagnose(node: _Node, z: complex) -> None:
    """Walk the tree at a scalar point and raise a precise error."""
    if isinstance(node, (_Const, _Var)):
        return
    if isinstance(node, (_Neg, _Exp, _Log)):
        _diagnose(node.arg, z)
        if isinstance(node, _Log):
            with np.errstate(all="ignore"):
                a = complex(node.arg.ev(z, {}))
            if a == 0:
                raise EvaluationError("log of zero", z)
        return
    if isinstance(node, _Pow):
        _diagnose(node.base, z)
        with np.errstate(all="ignore"):
            b = complex(node.base.ev(z, {}))
        if b == 0 and node.exponent < 0:
            raise EvaluationError("division by zero", z)
        return
    _diagnose(node.left, z)
    _diagnose(node.right, z)
    if isinstance(node, _Div):
        with np.errstate(all="ignore"):
            d = complex(node.right.ev(z, {}))
        if d == 0:
            raise EvaluationError("division by zero", z)


def derivative(sym: AnalyticSymbol) -> AnalyticSymbol:
    """Structural complex derivative; total on the node grammar."""
    return AnalyticSymbol(sym.root.diff())


def compose(outer: AnalyticSymbol, inner: AnalyticSymbol) -> AnalyticSymbol:
    """Substitute ``inner`` for the variable of ``outer`` (outer o inner)."""
    return AnalyticSymbol(outer.root.subst(inner.root))


# ---------------------------------------------------------------------------
# Parser

_FUNCS = ("exp", "log")
_CONSTS = {"i": 1j, "pi": cmath.pi, "e": cmath.e}


class _Tokenizer:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def _skip_ws(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self):
        self._skip_ws()
        if self.pos >= len(self.text):
            return ("eof", "", self.pos)
        c = self.text[self.pos]
        start = self.pos
        if c.isdigit() or (c == "." and self.pos + 1 < len(self.text) and self.text[self.pos + 1].isdigit()):
            j = self.pos
            seen_dot = False
            while j < len(self.text) and (self.text[j].isdigit() or (self.text[j] == "." and not seen_dot)):
                if self.text[j] == ".":
                    seen_dot = True
                j += 1
            # exponent part only if digits follow (so 'e' the constant still lexes)
            if j < len(self.text) and self.text[j] in "eE":
                k = j + 1
                if k < len(self.text) and self.text[k] in "+-":
                    k += 1
                if k < len(self.text) and self.text[k].isdigit():
                    while k < len(self.text) and self.text[k].isdigit():
                        k += 1
                    j = k
            return ("number", self.text[start:j], start)
        if c.isalpha() or c == "_":
            j = self.pos
            while j < len(self.text) and (self.text[j].isalnum() or self.text[j] == "_"):
                j += 1
            return ("ident", self.text[start:j], start)
        if c in "+-*/^()":
            return ("op", c, start)
        raise ParseError(f"unexpected character {c!r}", start)

    def next(self):
        kind, text, start = self.peek()
        self.pos = start + len(text) if kind != "eof" else self.pos
        return (kind, text, start)


class _Parser:
    def __init__(self, text: str):
        self.tok = _Tokenizer(text)

    def parse(self) -> _Node:
        node = self._expr()
        kind, text, pos = self.tok.peek()
        if kind != "eof":
            raise ParseError(f"unexpected trailing input {text!r}", pos)
        return node

    def _expr(self) -> _Node:
        node = self._term()
        while True:
            kind, text, _ = self.tok.peek()
            if kind == "op" and text in "+-":
                self.tok.next()
                rhs = self._term()
                node = _add(node, rhs) if text == "+" else _sub(node, rhs)
            else:
                return node

    def _term(self) -> _Node:
        node = self._factor()
        while True:
            kind, text, _ = self.tok.peek()
            if kind == "op" and text in "*/":
                self.tok.next()
                rhs = self._factor()
                node = _mul(node, rhs) if text == "*" else _div(node, rhs)
            else:
                return node

    def _factor(self) -> _Node:
        node = self._base()
        kind, text, _ = self.tok.peek()
        if kind == "op" and text == "^":
            self.tok.next()
            node = _pow(node, self._integer())
        return node

    def _integer(self) -> int:
        kind, text, pos = self.tok.next()
        sign = 1
        if kind == "op" and text in "+-":
            sign = -1 if text == "-" else 1
            kind, text, pos = self.tok.next()
        if kind != "number":
            raise ParseError("expected integer exponent", pos)
        if not text.isdigit():
            raise ParseError(f"non-integer exponent {text!r}", pos)
        return sign * int(text)

    def _base(self) -> _Node:
        kind, text, pos = self.tok.next()
        if kind == "number":
            return _Const(complex(float(text)))
        if kind == "ident":
            if text == "z":
                return _Var()
            if text in _CONSTS:
                return _Const(complex(_CONSTS[text]))
            if text in _FUNCS:
                k2, t2, p2 = self.tok.next()
                if not (k2 == "op" and t2 == "("):
                    raise ParseError(f"expected '(' after {text}", p2)
                arg = self._expr()
                k3, t3, p3 = self.tok.next()
                if not (k3 == "op" and t3 == ")"):
                    raise ParseError("expected ')'", p3)
                return _Exp(arg) if text == "exp" else _Log(arg)
            raise ParseError(f"unknown identifier {text!r}", pos)
        if kind == "op" and text == "(":
            node = self._expr()
            k2, t2, p2 = self.tok.next()
            if not (k2 == "op" and t2 == ")"):
                raise ParseError("expected ')'", p2)
            return node
        if kind == "op" and text == "-":
            return _neg(self._base())
        raise ParseError(f"unexpected token {text!r}" if text else "unexpected end of input", pos)


def parse_symbol(text: str) -> AnalyticSymbol:
    """Parse expression text into an :class:`AnalyticSymbol`.

    Grammar: expr := term (('+'|'-') term)*; term := factor (('*'|'/')
    factor)*; factor := base ('^' integer)?; base := number | i | pi | e |
    z | exp(expr) | log(expr) | (expr) | -base.  Whitespace insignificant.
    """
    if not text or not text.strip():
        raise ParseError("empty expression", 0)
    return AnalyticSymbol(_Parser(text).parse(), source_text=text)


# ---------------------------------------------------------------------------
# Self-map validation


@dataclass(frozen=True)
class SelfMapCheck:
    """Result of probing |phi| over a grid: passed iff max_abs_observed < 1."""

    max_abs_observed: float
    witness: complex
    passed: bool


def validate_self_map(sym: AnalyticSymbol, grid) -> SelfMapCheck:
    """Probe |sym(z)| at every grid point; passed iff all values are < 1.

    Evaluation failures raise :class:`EvaluationError` with the witness
    point.  ``grid`` is a :class:`blochcomp.disk.DiskGrid`.
    """
    best = -1.0
    witness = 0j
    for z, _ in grid.blocks():
        vals = np.abs(evaluate(sym, z))
        bad = ~np.isfinite(vals)
        if bad.any():
            raise EvaluationError("self-map evaluation failed", complex(z[np.argmax(bad)]))
        i = int(np.argmax(vals))
        if vals[i] > best:
            best = float(vals[i])
            witness = complex(z[i])
    return SelfMapCheck(max_abs_observed=best, witness=witness, passed=best < 1.0)

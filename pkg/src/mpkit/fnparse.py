"""Parse production-function expressions and differentiate them exactly.

Grammar (whitespace ignored)::

    expr   := term (('+' | '-') term)*
    term   := unary (('*' | '/') unary)*
    unary  := '-' unary | power
    power  := atom ('^' unary)?          # right-associative
    atom   := NUMBER | xK | '(' expr ')' | ('exp' | 'log') '(' expr ')'

`^` binds tighter than `*`/`/`, which bind tighter than `+`/`-`. Variables
are named x1..xN for a declared arity N. Gradients are computed by forward
dual-number sweeps (one per coordinate) over a flattened program, executed
by the selected kernel backend (compiled or pure Python).

Power domain rule: a^b with a <= 0 is an error unless the exponent is an
integer constant (so x1^2 works on all reals, x1^0.5 needs x1 > 0).
"""

import re
from dataclasses import dataclass
from functools import lru_cache
from typing import Union

import numpy as np

from . import _kernel
from ._kernel import (
    OP_ADD,
    OP_CONST,
    OP_DIV,
    OP_EXP,
    OP_LOG,
    OP_MUL,
    OP_NEG,
    OP_POW,
    OP_POWI,
    OP_SUB,
    OP_VAR,
)
from .exceptions import ParseError


@dataclass(frozen=True)
class Const:
    value: float


@dataclass(frozen=True)
class Var:
    index: int  # 0-based; surface syntax is x{index+1}


@dataclass(frozen=True)
class BinOp:
    op: str  # one of + - * / ^
    left: "Expr"
    right: "Expr"


@dataclass(frozen=True)
class Neg:
    operand: "Expr"


@dataclass(frozen=True)
class Call:
    func: str  # exp | log
    arg: "Expr"


Expr = Union[Const, Var, BinOp, Neg, Call]

_FUNCS = ("exp", "log")

_TOKEN_RE = re.compile(
    r"(?P<num>(?:\d+(?:\.\d+)?|\.\d+)(?:[eE][+-]?\d+)?)"
    r"|(?P<name>[A-Za-z_][A-Za-z_0-9]*)"
    r"|(?P<op>[-+*/^()])"
)


def _tokenize(source):
    tokens = []
    pos = 0
    n = len(source)
    while pos < n:
        if source[pos].isspace():
            pos += 1
            continue
        m = _TOKEN_RE.match(source, pos)
        if m is None:
            raise ParseError(f"unexpected character {source[pos]!r}", pos)
        if m.lastgroup == "num":
            tokens.append(("num", m.group(), pos))
        elif m.lastgroup == "name":
            tokens.append(("name", m.group(), pos))
        else:
            tokens.append((m.group(), m.group(), pos))
        pos = m.end()
    tokens.append(("end", "", n))
    return tokens


class _Parser:
    def __init__(self, tokens, arity):
        self.tokens = tokens
        self.arity = arity
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def next(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect(self, kind, what):
        tok = self.next()
        if tok[0] != kind:
            raise ParseError(f"expected {what}, found {tok[1]!r}" if tok[1] else f"expected {what}", tok[2])
        return tok

    def expr(self):
        node = self.term()
        while self.peek()[0] in ("+", "-"):
            op = self.next()[0]
            node = BinOp(op, node, self.term())
        return node

    def term(self):
        node = self.unary()
        while self.peek()[0] in ("*", "/"):
            op = self.next()[0]
            node = BinOp(op, node, self.unary())
        return node

    def unary(self):
        if self.peek()[0] == "-":
            self.next()
            return Neg(self.unary())
        return self.power()

    def power(self):
        node = self.atom()
        if self.peek()[0] == "^":
            self.next()
            node = BinOp("^", node, self.unary())
        return node

    def atom(self):
        kind, text, pos = self.next()
        if kind == "num":
            return Const(float(text))
        if kind == "name":
            if text in _FUNCS:
                self.expect("(", "'(' after function name")
                arg = self.expr()
                self.expect(")", "')'")
                return Call(text, arg)
            m = re.fullmatch(r"x(\d+)", text)
            if m is None:
                raise ParseError(f"unknown identifier {text!r}", pos)
            idx = int(m.group(1))
            if idx == 0:
                raise ParseError("variable indices start at x1", pos)
            if idx > self.arity:
                raise ParseError(
                    f"variable x{idx} exceeds declared arity {self.arity}", pos
                )
            return Var(idx - 1)
        if kind == "(":
            node = self.expr()
            self.expect(")", "')'")
            return node
        if kind == "end":
            raise ParseError("unexpected end of expression", pos)
        raise ParseError(f"unexpected token {text!r}", pos)


def parse(source, arity):
    """Parse `source` into an expression tree with variables x1..x{arity}."""
    if not isinstance(arity, int) or arity < 1:
        raise ValueError(f"arity must be a positive integer, got {arity!r}")
    tokens = _tokenize(source)
    if tokens[0][0] == "end":
        raise ParseError("empty expression", 0)
    parser = _Parser(tokens, arity)
    node = parser.expr()
    trailing = parser.peek()
    if trailing[0] != "end":
        raise ParseError(f"unexpected trailing input {trailing[1]!r}", trailing[2])
    return node


# precedence levels used by the pretty-printer; atoms highest
_PREC_ADD, _PREC_MUL, _PREC_NEG, _PREC_POW, _PREC_ATOM = 1, 2, 3, 4, 5


def _prec(node):
    if isinstance(node, BinOp):
        if node.op in "+-":
            return _PREC_ADD
        if node.op in "*/":
            return _PREC_MUL
        return _PREC_POW
    if isinstance(node, Neg):
        return _PREC_NEG
    return _PREC_ATOM


def _wrap(text, needed):
    return f"({text})" if needed else text


def pretty(expr):
    """Render a tree back to source; re-parsing gives an equal tree.

    Only trees obtainable from `parse` are supported: a `Const` holding a
    negative or non-finite value has no literal syntax and raises ValueError.
    """
    if isinstance(expr, Const):
        v = expr.value
        if not (v >= 0.0) or v != v or v == float("inf"):
            raise ValueError(f"constant {v!r} has no literal form")
        return repr(v)
    if isinstance(expr, Var):
        return f"x{expr.index + 1}"
    if isinstance(expr, Call):
        return f"{expr.func}({pretty(expr.arg)})"
    if isinstance(expr, Neg):
        inner = pretty(expr.operand)
        return "-" + _wrap(inner, _prec(expr.operand) < _PREC_NEG)
    if isinstance(expr, BinOp):
        p = _prec(expr)
        left = pretty(expr.left)
        right = pretty(expr.right)
        if expr.op == "^":
            left = _wrap(left, _prec(expr.left) < _PREC_ATOM)
            right = _wrap(right, _prec(expr.right) < _PREC_NEG)
        else:
            left = _wrap(left, _prec(expr.left) < p)
            right = _wrap(right, _prec(expr.right) <= p)
        return f"{left}{expr.op}{right}"
    raise TypeError(f"not an expression node: {expr!r}")


def _neg_chain_int(node):
    """Integer value of a Const possibly wrapped in Neg, else None."""
    sign = 1
    while isinstance(node, Neg):
        sign = -sign
        node = node.operand
    if isinstance(node, Const):
        v = node.value
        if v == int(v) and abs(v) <= 2**31 - 1:
            return sign * int(v)
    return None


_BINOP_CODE = {"+": OP_ADD, "-": OP_SUB, "*": OP_MUL, "/": OP_DIV}


def compile_expr(expr, n_inputs):
    """Flatten a tree into a kernel program for input vectors of length n."""
    code = []
    consts = []
    const_idx = {}
    depth = 0
    max_depth = 0
    max_var = -1

    def push(op, arg, delta):
        nonlocal depth, max_depth
        code.append((op, arg))
        depth += delta
        max_depth = max(max_depth, depth)

    def const_slot(v):
        key = (v, v != v)  # nan-safe key; nan never appears from parse
        if key not in const_idx:
            const_idx[key] = len(consts)
            consts.append(v)
        return const_idx[key]

    def walk(node):
        nonlocal max_var
        if isinstance(node, Const):
            push(OP_CONST, const_slot(node.value), +1)
        elif isinstance(node, Var):
            max_var = max(max_var, node.index)
            push(OP_VAR, node.index, +1)
        elif isinstance(node, Neg):
            walk(node.operand)
            push(OP_NEG, 0, 0)
        elif isinstance(node, Call):
            walk(node.arg)
            push(OP_EXP if node.func == "exp" else OP_LOG, 0, 0)
        elif isinstance(node, BinOp):
            if node.op == "^":
                k = _neg_chain_int(node.right)
                if k is not None:
                    walk(node.left)
                    push(OP_POWI, k, 0)
                else:
                    walk(node.left)
                    walk(node.right)
                    push(OP_POW, 0, -1)
            else:
                walk(node.left)
                walk(node.right)
                push(_BINOP_CODE[node.op], 0, -1)
        else:
            raise TypeError(f"not an expression node: {node!r}")

    walk(expr)
    if max_var >= n_inputs:
        raise ValueError(
            f"expression references x{max_var + 1} but input vector has length {n_inputs}"
        )
    return _kernel.make_program(code, consts, n_inputs, max_depth)


@lru_cache(maxsize=512)
def _compiled(expr, n_inputs):
    return compile_expr(expr, n_inputs)


def evaluate(expr, x):
    """Value of the expression at the point x (len(x) = arity)."""
    return _kernel.eval_program(_compiled(expr, len(x)), x)


def gradient(expr, x):
    """Exact gradient at x via one dual-number sweep per coordinate."""
    _, g = _kernel.grad_program(_compiled(expr, len(x)), x)
    return g


class ExprFunction:
    """Production function y = f(x1..xn) backed by a parsed expression."""

    def __init__(self, expr, arity):
        self.expr = expr
        self.arity = arity
        self._prog = compile_expr(expr, arity)

    @classmethod
    def from_source(cls, source, arity):
        return cls(parse(source, arity), arity)

    def value(self, x):
        return _kernel.eval_program(self._prog, x)

    def gradient(self, x):
        _, g = _kernel.grad_program(self._prog, x)
        return np.asarray(g)

    def __repr__(self):
        return f"ExprFunction({pretty(self.expr)!r}, arity={self.arity})"

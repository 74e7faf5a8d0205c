"""Text syntax for scalars, words, noncommutative and tensor polynomials.

Scalars: ``1 - q^-2``, ``3/2*q^2*A1``.  Words: generator names joined by
``*``.  Tensor legs are separated by ``@``, which binds looser than ``*``
and tighter than ``+``: ``(1 - q^2)*b @ c + a @ a``.
"""
from __future__ import annotations

import re
from fractions import Fraction
from typing import Iterable

from .ncalg import NCPoly, Word, nc_mul
from .scalar import Scalar, format_scalar
from .tensor import Tensor


class ParseError(ValueError):
    pass


_TOKEN_RE = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(\S))")


def _tokenize(text: str) -> list:
    toks = []
    pos = 0
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if not m:
            raise ParseError(f"cannot tokenize {text[pos:]!r}")
        num, name, op = m.groups()
        if num is not None:
            toks.append(("num", int(num)))
        elif name is not None:
            toks.append(("name", name))
        else:
            if op not in "+-*/^@()":
                raise ParseError(f"unexpected character {op!r} in {text!r}")
            toks.append(("op", op))
        pos = m.end()
    toks.append(("end", None))
    return toks


class _Parser:
    def __init__(self, text: str, generators: Iterable[str]):
        self.text = text
        self.toks = _tokenize(text)
        self.i = 0
        self.generators = set(generators)

    def peek(self):
        return self.toks[self.i]

    def take(self):
        t = self.toks[self.i]
        self.i += 1
        return t

    def expect_op(self, op):
        t = self.take()
        if t != ("op", op):
            raise ParseError(f"expected {op!r} in {self.text!r}, got {t[1]!r}")

    def parse(self):
        v = self.sum()
        if self.peek()[0] != "end":
            raise ParseError(f"trailing input in {self.text!r}")
        return v

    def sum(self):
        sign = 1
        if self.peek() == ("op", "-"):
            self.take()
            sign = -1
        elif self.peek() == ("op", "+"):
            self.take()
        v = self.tprod()
        if sign < 0:
            v = _neg(v)
        while self.peek() in (("op", "+"), ("op", "-")):
            op = self.take()[1]
            w = self.tprod()
            v = _add(v, w if op == "+" else _neg(w))
        return v

    def tprod(self):
        v = self.prod()
        while self.peek() == ("op", "@"):
            self.take()
            w = self.prod()
            v = _tensor(v, w)
        return v

    def prod(self):
        v = self.unary()
        while self.peek() == ("op", "*"):
            self.take()
            v = _mul(v, self.unary())
        return v

    def unary(self):
        if self.peek() == ("op", "-"):
            self.take()
            return _neg(self.unary())
        return self.power()

    def power(self):
        base = self.atom()
        if self.peek() == ("op", "^"):
            self.take()
            sign = 1
            if self.peek() == ("op", "-"):
                self.take()
                sign = -1
            t = self.take()
            if t[0] != "num":
                raise ParseError(f"exponent must be an integer in {self.text!r}")
            e = sign * t[1]
            if isinstance(base, Scalar):
                return base**e
            if e < 0:
                raise ParseError("negative power of a noncommutative element")
            out = NCPoly.scalar(1)
            for _ in range(e):
                out = nc_mul(out, base)
            return out
        return base

    def atom(self):
        t = self.take()
        if t[0] == "num":
            if self.peek() == ("op", "/"):
                self.take()
                d = self.take()
                if d[0] != "num" or d[1] == 0:
                    raise ParseError(f"bad rational in {self.text!r}")
                return Scalar.const(Fraction(t[1], d[1]))
            return Scalar.const(t[1])
        if t[0] == "name":
            if t[1] in self.generators:
                return NCPoly.gen(t[1])
            return Scalar.symbol(t[1])
        if t == ("op", "("):
            v = self.sum()
            self.expect_op(")")
            return v
        raise ParseError(f"unexpected token {t[1]!r} in {self.text!r}")


def _lift(v, arity=None):
    if isinstance(v, Scalar):
        return NCPoly.scalar(v)
    return v


def _add(x, y):
    if isinstance(x, Scalar) and isinstance(y, Scalar):
        return x + y
    if isinstance(x, Tensor) or isinstance(y, Tensor):
        if not (isinstance(x, Tensor) and isinstance(y, Tensor)):
            raise ParseError("cannot add a tensor and a non-tensor")
        return x + y
    return _lift(x) + _lift(y)


def _neg(x):
    return -x


def _mul(x, y):
    if isinstance(x, Scalar) and isinstance(y, Scalar):
        return x * y
    if isinstance(x, Scalar):
        return y.scale(x)
    if isinstance(y, Scalar):
        return x.scale(y)
    if isinstance(x, Tensor) or isinstance(y, Tensor):
        raise ParseError("'*' between tensors; use '@' to separate legs")
    return nc_mul(x, y)


def _tensor(x, y):
    x = _lift(x)
    y = _lift(y)
    if isinstance(y, Tensor):
        raise ParseError("'@' is left-associative; parenthesised tensors are not supported")
    if isinstance(x, Tensor):
        return x.extend(y)
    return Tensor.from_product(x, y)


# --- public parsing ---

def parse_scalar(text: str) -> Scalar:
    v = _Parser(str(text), ()).parse()
    if not isinstance(v, Scalar):
        raise ParseError(f"{text!r} is not a scalar")
    return v


def parse_ncpoly(text: str, generators: Iterable[str]) -> NCPoly:
    v = _Parser(str(text), generators).parse()
    if isinstance(v, Tensor):
        raise ParseError(f"{text!r} is a tensor, expected an algebra element")
    return _lift(v)


def parse_tensor(text: str, generators: Iterable[str], arity: int = 2) -> Tensor:
    v = _Parser(str(text), generators).parse()
    if not isinstance(v, Tensor):
        if arity == 1:
            return Tensor.from_poly(_lift(v))
        if _lift(v).is_zero():
            return Tensor.zero(arity)
        raise ParseError(f"{text!r} is not a tensor")
    if v.arity != arity:
        raise ParseError(f"{text!r} has {v.arity} legs, expected {arity}")
    return v


def parse_word(text: str) -> Word:
    text = text.strip()
    if text == "1":
        return ()
    return tuple(p.strip() for p in text.split("*"))


# --- formatting ---

def format_word(w: Word) -> str:
    return "*".join(w) if w else "1"


def _coef_prefix(c: Scalar, first: bool):
    """Return (sign, body) for a coefficient multiplying something else."""
    if len(c) == 1:
        ((m, k),) = c.items()
        neg = k < 0
        body = format_scalar(-c if neg else c)
        return neg, ("" if body == "1" else body)
    return False, f"({format_scalar(c)})"


def _join_terms(parts: list) -> str:
    if not parts:
        return "0"
    out = []
    for i, (neg, body) in enumerate(parts):
        if i == 0:
            out.append(("-" if neg else "") + body)
        else:
            out.append((" - " if neg else " + ") + body)
    return "".join(out)


def _word_sort_key(w: Word) -> tuple:
    return (len(w), w)


def format_ncpoly(p: NCPoly) -> str:
    parts = []
    for w, c in sorted(p.items(), key=lambda t: _word_sort_key(t[0])):
        neg, cb = _coef_prefix(c, not parts)
        if not w:
            parts.append((neg, cb or "1"))
        else:
            ws = format_word(w)
            parts.append((neg, f"{cb}*{ws}" if cb else ws))
    return _join_terms(parts)


def format_tensor(t: Tensor) -> str:
    parts = []
    for legs, c in sorted(t.items(), key=lambda it: tuple(_word_sort_key(w) for w in it[0])):
        neg, cb = _coef_prefix(c, not parts)
        first = legs[0]
        if first:
            head = f"{cb}*{format_word(first)}" if cb else format_word(first)
        else:
            head = cb or "1"
        rest = [format_word(w) for w in legs[1:]]
        parts.append((neg, " @ ".join([head] + rest)))
    return _join_terms(parts)


def format_value(v) -> str:
    if isinstance(v, str):
        return v
    if isinstance(v, Scalar):
        return format_scalar(v)
    if isinstance(v, NCPoly):
        return format_ncpoly(v)
    if isinstance(v, Tensor):
        return format_tensor(v)
    raise TypeError(type(v))

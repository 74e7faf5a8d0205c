"""Exact coefficient ring: Laurent polynomials in q, r over Q, extended by
ordinary polynomial unknowns (the ansatz coefficients).

A monomial is a tuple of ``(symbol, exponent)`` pairs sorted by
:func:`symbol_key`; a :class:`Scalar` maps monomials to nonzero ``int`` or
``Fraction`` coefficients.
"""
from __future__ import annotations

import re
from fractions import Fraction
from functools import lru_cache
from numbers import Rational
from typing import Iterable, Mapping, Union

LAURENT_SYMBOLS = ("q", "r")

Coef = Union[int, Fraction]
Monomial = tuple  # tuple[tuple[str, int], ...]

_NAME_RE = re.compile(r"^([A-Za-z_]+?)(\d*)$")


@lru_cache(maxsize=None)
def symbol_key(name: str) -> tuple:
    if name in LAURENT_SYMBOLS:
        return (0, LAURENT_SYMBOLS.index(name), "", 0)
    m = _NAME_RE.match(name)
    if m and m.group(2):
        return (1, 0, m.group(1), int(m.group(2)))
    return (1, 0, name, -1)


def is_laurent_symbol(name: str) -> bool:
    return name in LAURENT_SYMBOLS


def _norm_coef(c) -> Coef:
    if isinstance(c, Fraction) and c.denominator == 1:
        return int(c.numerator)
    return c


def mono_mul(m1: Monomial, m2: Monomial) -> Monomial:
    if not m1:
        return m2
    if not m2:
        return m1
    out = []
    i = j = 0
    n1, n2 = len(m1), len(m2)
    while i < n1 and j < n2:
        s1, e1 = m1[i]
        s2, e2 = m2[j]
        if s1 == s2:
            e = e1 + e2
            if e:
                out.append((s1, e))
            i += 1
            j += 1
        elif symbol_key(s1) < symbol_key(s2):
            out.append(m1[i])
            i += 1
        else:
            out.append(m2[j])
            j += 1
    out.extend(m1[i:])
    out.extend(m2[j:])
    return tuple(out)


def _mono_sort_key(m: Monomial) -> tuple:
    return (sum(e for _, e in m), tuple((symbol_key(s), e) for s, e in m))


class Scalar:
    """Immutable exact element of Q[q, q^-1, r, r^-1][unknowns]."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[Monomial, Coef] | None = None):
        # callers hand over ownership of ``terms``; zero coefficients are dropped
        if terms is None:
            self._terms = {}
        else:
            self._terms = {m: _norm_coef(c) for m, c in terms.items() if c != 0}
        self._hash = None

    @classmethod
    def _raw(cls, terms: dict) -> "Scalar":
        s = object.__new__(cls)
        s._terms = terms
        s._hash = None
        return s

    # constructors
    @classmethod
    def const(cls, c) -> "Scalar":
        if isinstance(c, Scalar):
            return c
        if isinstance(c, float):
            raise TypeError("floating point coefficients are not supported")
        c = _norm_coef(Fraction(c)) if not isinstance(c, int) else c
        return cls._raw({(): c} if c else {})

    @classmethod
    def symbol(cls, name: str, exp: int = 1) -> "Scalar":
        if exp < 0 and not is_laurent_symbol(name):
            raise ValueError(f"unknown {name!r} cannot carry a negative exponent")
        if exp == 0:
            return ONE
        return cls._raw({((name, exp),): 1})

    @classmethod
    def monomial(cls, coef, exps: Mapping[str, int]) -> "Scalar":
        m = ()
        for name, e in exps.items():
            if e:
                m = mono_mul(m, ((name, e),))
        for name, e in m:
            if e < 0 and not is_laurent_symbol(name):
                raise ValueError(f"unknown {name!r} cannot carry a negative exponent")
        return cls({m: coef})

    # inspection
    @property
    def terms(self) -> tuple:
        """Canonical term tuple, highest monomial first."""
        return tuple(sorted(self._terms.items(), key=lambda t: _mono_sort_key(t[0]), reverse=True))

    def items(self):
        return self._terms.items()

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def symbols(self) -> set:
        return {s for m in self._terms for s, _ in m}

    def unknowns(self) -> set:
        return {s for m in self._terms for s, _ in m if not is_laurent_symbol(s)}

    def is_constant(self) -> bool:
        return all(not m for m in self._terms)

    def constant_value(self) -> Coef:
        if not self._terms:
            return 0
        if not self.is_constant():
            raise ValueError(f"{self} is not a rational constant")
        return self._terms[()]

    def is_unit(self) -> bool:
        """True for a single nonzero term free of unknowns."""
        if len(self._terms) != 1:
            return False
        (m,) = self._terms
        return all(is_laurent_symbol(s) for s, _ in m)

    def is_parameter_only(self) -> bool:
        return all(is_laurent_symbol(s) for m in self._terms for s, _ in m)

    # arithmetic
    def __add__(self, other) -> "Scalar":
        if not isinstance(other, Scalar):
            other = Scalar.const(other)
        if not other._terms:
            return self
        if not self._terms:
            return other
        t = dict(self._terms)
        for m, c in other._terms.items():
            v = t.get(m, 0) + c
            if v:
                t[m] = _norm_coef(v)
            else:
                t.pop(m, None)
        return Scalar._raw(t)

    __radd__ = __add__

    def __neg__(self) -> "Scalar":
        return Scalar._raw({m: -c for m, c in self._terms.items()})

    def __sub__(self, other) -> "Scalar":
        if not isinstance(other, Scalar):
            other = Scalar.const(other)
        return self + (-other)

    def __rsub__(self, other) -> "Scalar":
        return Scalar.const(other) - self

    def __mul__(self, other) -> "Scalar":
        if not isinstance(other, Scalar):
            if isinstance(other, (int, Fraction)):
                if other == 0:
                    return ZERO
                return Scalar._raw({m: _norm_coef(c * other) for m, c in self._terms.items()})
            return NotImplemented
        a, b = self._terms, other._terms
        if not a or not b:
            return ZERO
        if len(a) == 1 and () in a:
            k = a[()]
            return Scalar._raw({m: _norm_coef(c * k) for m, c in b.items()}) if k != 1 else other
        if len(b) == 1 and () in b:
            k = b[()]
            return Scalar._raw({m: _norm_coef(c * k) for m, c in a.items()}) if k != 1 else self
        t: dict = {}
        for m1, c1 in a.items():
            for m2, c2 in b.items():
                m = mono_mul(m1, m2)
                v = t.get(m, 0) + c1 * c2
                if v:
                    t[m] = v
                else:
                    del t[m]
        return Scalar._raw({m: _norm_coef(c) for m, c in t.items()})

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "Scalar":
        if n < 0:
            if not self.is_unit() and not self.is_constant():
                raise ValueError(f"cannot invert non-unit {self}")
            return self.inverse() ** (-n)
        result = ONE
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def inverse(self) -> "Scalar":
        if self.is_constant() and self._terms:
            return Scalar.const(Fraction(1) / Fraction(self.constant_value()))
        if not self.is_unit():
            raise ZeroDivisionError(f"{self} is not a unit")
        ((m, c),) = self._terms.items()
        return Scalar._raw({tuple((s, -e) for s, e in m): _norm_coef(Fraction(1) / Fraction(c))})

    def divide_by_unit(self, u: "Scalar") -> "Scalar":
        if not u.is_unit():
            raise ZeroDivisionError(f"division by non-unit {u}")
        return self * u.inverse()

    def __truediv__(self, other) -> "Scalar":
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise ZeroDivisionError("division by zero")
            return self * (Fraction(1) / Fraction(other))
        return self.divide_by_unit(other)

    # comparison
    def __eq__(self, other) -> bool:
        if isinstance(other, Scalar):
            return self._terms == other._terms
        if isinstance(other, (int, Fraction)):
            return self._terms == ({(): other} if other else {})
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def __repr__(self) -> str:
        return f"Scalar({format_scalar(self)!r})"

    def __str__(self) -> str:
        return format_scalar(self)

    # polynomial structure
    def degree_in(self, name: str) -> int:
        return max((dict(m).get(name, 0) for m in self._terms), default=0)

    def coefficients_in(self, name: str) -> dict:
        """Split into {exponent of ``name``: Scalar without ``name``}."""
        out: dict = {}
        for m, c in self._terms.items():
            e = 0
            rest = []
            for s, k in m:
                if s == name:
                    e = k
                else:
                    rest.append((s, k))
            out.setdefault(e, {})[tuple(rest)] = c
        return {e: Scalar._raw(t) for e, t in out.items()}

    def split_unknown_monomials(self) -> dict:
        """Group as {unknown monomial: parameter-only Scalar coefficient}."""
        out: dict = {}
        for m, c in self._terms.items():
            unk = tuple((s, e) for s, e in m if not is_laurent_symbol(s))
            par = tuple((s, e) for s, e in m if is_laurent_symbol(s))
            out.setdefault(unk, {})[par] = c
        return {u: Scalar._raw(t) for u, t in out.items()}

    def substitute(self, bindings: Mapping[str, "Scalar | int | Fraction"]) -> "Scalar":
        if not bindings:
            return self
        binds = {}
        for k, v in bindings.items():
            v = v if isinstance(v, Scalar) else S(v)
            if is_laurent_symbol(k):
                if v.is_zero():
                    raise ValueError(f"cannot substitute 0 for Laurent parameter {k}")
                if not (v.is_unit() or v.is_constant()):
                    raise ValueError(f"binding for {k} must be a unit, got {v}")
            binds[k] = v
        if not (self.symbols() & binds.keys()):
            return self
        powcache: dict = {}
        result: dict = {}
        for m, c in self._terms.items():
            keep = []
            factor = None
            for s, e in m:
                if s in binds:
                    key = (s, e)
                    p = powcache.get(key)
                    if p is None:
                        p = powcache[key] = binds[s] ** e
                    factor = p if factor is None else factor * p
                else:
                    keep.append((s, e))
            term = Scalar._raw({tuple(keep): c})
            if factor is not None:
                term = term * factor
            for mm, cc in term._terms.items():
                v = result.get(mm, 0) + cc
                if v:
                    result[mm] = v
                else:
                    del result[mm]
        return Scalar._raw({m: _norm_coef(c) for m, c in result.items()})

    def evaluate(self, values: Mapping[str, Coef]) -> Fraction:
        """Exact rational value; every symbol must be bound."""
        total = Fraction(0)
        for m, c in self._terms.items():
            v = Fraction(c)
            for s, e in m:
                v *= Fraction(values[s]) ** e
            total += v
        return total


ZERO = Scalar._raw({})
ONE = Scalar._raw({(): 1})


def S(x) -> Scalar:
    """Coerce ints, Fractions, strings and Scalars to Scalar."""
    if isinstance(x, Scalar):
        return x
    if isinstance(x, str):
        from .textformat import parse_scalar

        return parse_scalar(x)
    if isinstance(x, (int, Fraction)) or isinstance(x, Rational):
        return Scalar.const(Fraction(x))
    raise TypeError(f"cannot coerce {x!r} to Scalar")


q = Scalar.symbol("q")
r = Scalar.symbol("r")


def is_unit(x: Scalar) -> bool:
    return x.is_unit()


def divide_by_unit(x: Scalar, u: Scalar) -> Scalar:
    return x.divide_by_unit(u)


def substitute(x: Scalar, bindings: Mapping) -> Scalar:
    return x.substitute(bindings)


def scalar_sum(items: Iterable[Scalar]) -> Scalar:
    t: dict = {}
    for s in items:
        for m, c in s._terms.items():
            v = t.get(m, 0) + c
            if v:
                t[m] = v
            else:
                t.pop(m, None)
    return Scalar._raw({m: _norm_coef(c) for m, c in t.items()})


def _format_coef(c: Coef) -> str:
    return str(c)


def format_monomial(m: Monomial) -> str:
    parts = []
    for s, e in m:
        parts.append(s if e == 1 else f"{s}^{e}")
    return "*".join(parts)


def format_scalar(x: Scalar) -> str:
    if x.is_zero():
        return "0"
    out = []
    for i, (m, c) in enumerate(x.terms):
        neg = c < 0
        a = -c if neg else c
        mono = format_monomial(m)
        if not mono:
            body = _format_coef(a)
        elif a == 1:
            body = mono
        else:
            body = f"{_format_coef(a)}*{mono}"
        if i == 0:
            out.append(("-" if neg else "") + body)
        else:
            out.append((" - " if neg else " + ") + body)
    return "".join(out)

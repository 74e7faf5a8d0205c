"""Exact linear algebra over the rational function field Q(q, r, ...).

Scalars go in as Laurent polynomials and come back as Laurent polynomials
when that is possible; kernel vectors are cleared of denominators.
"""
from __future__ import annotations

from fractions import Fraction
from functools import reduce

import sympy
from sympy.polys.domains import QQ
from sympy.polys.matrices import DomainMatrix
from sympy.polys.matrices.exceptions import DMNonInvertibleMatrixError

from .scalar import ONE, ZERO, Scalar, is_laurent_symbol


def _sym(name: str) -> sympy.Symbol:
    return sympy.Symbol(name)


def scalar_to_sympy(x: Scalar) -> sympy.Expr:
    out = sympy.Integer(0)
    for mono, c in x.items():
        term = sympy.Rational(c.numerator, c.denominator) if isinstance(c, Fraction) else sympy.Integer(c)
        for name, e in mono:
            term *= _sym(name) ** e
        out += term
    return out


def sympy_to_scalar(expr) -> Scalar:
    """Convert a rational expression whose denominator is a monomial."""
    num, den = sympy.fraction(sympy.together(sympy.sympify(expr)))
    gens = sorted(num.free_symbols | den.free_symbols, key=lambda s: s.name)
    if not gens:
        v = sympy.Rational(num) / sympy.Rational(den)
        return Scalar.const(Fraction(int(v.p), int(v.q)))
    pden = sympy.Poly(den, *gens)
    if len(pden.terms()) != 1:
        raise ValueError(f"not a Laurent polynomial: {expr}")
    ((dexp, dcoef),) = pden.terms()
    dcoef = Fraction(int(sympy.Rational(dcoef).p), int(sympy.Rational(dcoef).q))
    out = ZERO
    for exps, c in sympy.Poly(num, *gens).terms():
        c = Fraction(int(sympy.Rational(c).p), int(sympy.Rational(c).q)) / dcoef
        powers = {g.name: e - de for g, e, de in zip(gens, exps, dexp) if e - de}
        for name, e in powers.items():
            if e < 0 and not is_laurent_symbol(name):
                raise ValueError(f"negative power of unknown {name} in {expr}")
        out = out + Scalar.monomial(c, powers)
    return out


def _field(rows):
    syms = set()
    for row in rows:
        for x in row:
            syms |= x.symbols()
    syms = sorted(syms)
    if not syms:
        return QQ, []
    return QQ.frac_field(*[_sym(s) for s in syms]), syms


def to_domain_matrix(rows: list) -> DomainMatrix:
    """``rows``: list of lists of Scalars."""
    K, _ = _field(rows)
    data = [[K.from_sympy(scalar_to_sympy(x)) for x in row] for row in rows]
    n = len(rows)
    m = len(rows[0]) if rows else 0
    return DomainMatrix(data, (n, m), K)


def nullspace(rows: list) -> list:
    """Basis of the right kernel of the Scalar matrix ``rows`` (n x m), each
    vector scaled to Laurent-polynomial entries with no common content."""
    if not rows:
        return []
    M = to_domain_matrix(rows)
    ns = M.nullspace().to_Matrix()
    out = []
    for i in range(ns.rows):
        vec = [sympy.together(v) for v in ns.row(i)]
        dens = [sympy.fraction(v)[1] for v in vec]
        lcm = reduce(sympy.lcm, dens, sympy.Integer(1))
        polys = [sympy.cancel(v * lcm) for v in vec]
        nz = [p for p in polys if p != 0]
        g = reduce(sympy.gcd, nz) if nz else sympy.Integer(1)
        polys = [sympy.cancel(p / g) for p in polys]
        out.append([sympy_to_scalar(sympy.expand(p)) for p in polys])
    return out


def rank(rows: list) -> int:
    if not rows:
        return 0
    return to_domain_matrix(rows).rank()


def inverse(rows: list) -> list:
    """Inverse of a square Scalar matrix; raises ValueError if singular or if
    an entry of the inverse is not a Laurent polynomial."""
    try:
        inv = to_domain_matrix(rows).inv()
    except (ZeroDivisionError, DMNonInvertibleMatrixError) as exc:
        raise ValueError("matrix is singular") from exc
    return [[sympy_to_scalar(v) for v in row] for row in inv.to_Matrix().tolist()]


def identity(n: int) -> list:
    return [[ONE if i == j else ZERO for j in range(n)] for i in range(n)]

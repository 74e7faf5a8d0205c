"""Coproduct, counit, antipode, star and braiding as generator tables,
their extension to the whole algebra, and the (braided) Hopf axiom suite.

In ``plain`` mode the braiding is the flip map, so the same code evaluates
the ordinary Hopf axioms; in ``braided`` mode every crossing of tensor legs
goes through the braiding table.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Callable, Iterable, Mapping, Sequence

from .ncalg import NCPoly, Presentation, Word, nc_mul
from .scalar import ONE, ZERO, Scalar
from .tensor import Tensor, _Acc

PLAIN = "plain"
BRAIDED = "braided"

CLASSICAL_AXIOMS = (
    "associativity",
    "unit",
    "coassociativity",
    "counit",
    "antipode-left",
    "antipode-right",
    "bialgebra",
    "antipode-m",
    "delta-S",
    "counit-m",
)
BRAIDED_ONLY_AXIOMS = (
    "psi-m-left",
    "psi-m-right",
    "psi-delta-left",
    "psi-delta-right",
    "yang-baxter",
)
STAR_AXIOMS = ("star-delta", "star-S", "star-involution")
ALL_AXIOMS = CLASSICAL_AXIOMS[:6] + BRAIDED_ONLY_AXIOMS + CLASSICAL_AXIOMS[6:] + STAR_AXIOMS

MAX_WITNESSES = 10


class ModeError(ValueError):
    pass


class UnknownAxiom(KeyError):
    pass


@dataclass
class CheckReport:
    axiom: str
    structure: str
    word_length_bound: int
    status: str = "holds"
    witnesses: list = field(default_factory=list)
    checked: int = 0
    failures: int = 0
    notes: list = field(default_factory=list)
    parts: dict = field(default_factory=dict)
    # unformatted residuals parallel to ``witnesses``
    raw: list = field(default_factory=list, repr=False, compare=False)

    @property
    def holds(self) -> bool:
        return self.status == "holds"

    def add_failure(self, inputs: Sequence[str], residual) -> None:
        from .textformat import format_value

        self.failures += 1
        self.status = "fails"
        if len(self.witnesses) < MAX_WITNESSES:
            self.witnesses.append({"input": list(inputs), "residual": format_value(residual)})
            self.raw.append(residual)

    def merge_part(self, name: str, part: "CheckReport") -> None:
        """Fold a sub-check into this report, prefixing its witness inputs."""
        self.parts[name] = part.status
        self.notes.extend(f"{name}: {n}" for n in part.notes)
        self.checked += part.checked
        for w, r in zip(part.witnesses, part.raw):
            self.add_failure([name, *w["input"]], r)
        self.failures += part.failures - len(part.witnesses)
        if part.failures:
            self.status = "fails"

    def to_dict(self) -> dict:
        d = {
            "axiom": self.axiom,
            "structure": self.structure,
            "word_length_bound": self.word_length_bound,
            "status": self.status,
            "checked": self.checked,
            "failures": self.failures,
            "witnesses": self.witnesses,
        }
        if self.parts:
            d["parts"] = dict(self.parts)
        if self.notes:
            d["notes"] = list(self.notes)
        return d


class StructureMaps:
    """Generator tables for Delta, epsilon, S, * and psi over ``base``."""

    def __init__(
        self,
        name: str,
        base: Presentation,
        delta: Mapping[str, Tensor],
        counit: Mapping[str, Scalar],
        antipode: Mapping[str, NCPoly],
        star: Mapping[str, NCPoly] | None = None,
        braiding: Mapping[tuple, Tensor] | None = None,
        mode: str = PLAIN,
    ):
        if mode not in (PLAIN, BRAIDED):
            raise ValueError(f"mode must be plain or braided, got {mode!r}")
        if mode == BRAIDED and braiding is None:
            raise ModeError("braided mode requires a braiding table")
        if mode == PLAIN and braiding is not None:
            raise ModeError("plain mode uses the flip map; a braiding table is not allowed")
        gens = base.generators
        for tbl, label in ((delta, "delta"), (counit, "counit"), (antipode, "antipode")):
            missing = [g for g in gens if g not in tbl]
            if missing:
                raise ValueError(f"{name}: {label} undefined on {missing}")
        if braiding is not None:
            missing = [(x, y) for x in gens for y in gens if (x, y) not in braiding]
            if missing:
                raise ValueError(f"{name}: braiding undefined on {missing}")
        self.name = name
        self.base = base
        self.mode = mode
        self.delta = {g: self._nf_tensor(delta[g]) for g in gens}
        self.counit = {g: counit[g] for g in gens}
        self.antipode = {g: base.normal_form(antipode[g]) for g in gens}
        self.star = None if star is None else {g: base.normal_form(star[g]) for g in gens}
        self.braiding = None if braiding is None else {k: self._nf_tensor(v) for k, v in braiding.items()}
        self._delta_cache: dict = {(): Tensor.unit(2)}
        self._psi_cache: dict = {}
        self._s_cache: dict = {(): NCPoly.scalar(1)}
        self._star_cache: dict = {(): NCPoly.scalar(1)}
        self._eps_cache: dict = {(): ONE}

    def __repr__(self) -> str:
        return f"StructureMaps({self.name!r}, base={self.base.name}, mode={self.mode})"

    @property
    def braided(self) -> bool:
        return self.mode == BRAIDED

    # --- algebra helpers ---
    def nf(self, x: NCPoly) -> NCPoly:
        return self.base.normal_form(x)

    def nf_word(self, w: Word) -> NCPoly:
        return self.base.normal_form(NCPoly.word(w))

    def mul_words(self, u: Word, v: Word) -> NCPoly:
        return self.nf_word(u + v)

    def _nf_tensor(self, t: Tensor) -> Tensor:
        for i in range(t.arity):
            t = t.map_leg(i, self.nf_word)
        return t

    def nf_tensor(self, t: Tensor) -> Tensor:
        return self._nf_tensor(t)

    # --- braiding ---
    def psi_words(self, u: Word, v: Word) -> Tensor:
        key = (u, v)
        hit = self._psi_cache.get(key)
        if hit is not None:
            return hit
        if not self.braided or not u or not v:
            res = Tensor.basis(v, u)
        elif len(u) == 1 and len(v) == 1:
            res = self.braiding[(u[0], v[0])]
        elif len(u) > 1:
            # psi(x U (x) v) = (id (x) m)(psi (x) id)(x (x) psi(U (x) v))
            x, rest = u[:1], u[1:]
            acc = _Acc()
            for (w_i, u_i), c in self.psi_words(rest, v).items():
                for (w_ij, x_ij), d in self.psi_words(x, w_i).items():
                    for nw, e in self.mul_words(x_ij, u_i).items():
                        acc.add((w_ij, nw), c * d * e)
            res = acc.tensor(2)
        else:
            # psi(x (x) y V) = (m (x) id)(id (x) psi)(psi (x) id)(x (x) y (x) V)
            y, rest = v[:1], v[1:]
            acc = _Acc()
            for (y_i, x_i), c in self.psi_words(u, y).items():
                for (v_ij, x_ij), d in self.psi_words(x_i, rest).items():
                    for nw, e in self.mul_words(y_i, v_ij).items():
                        acc.add((nw, x_ij), c * d * e)
            res = acc.tensor(2)
        self._psi_cache[key] = res
        return res

    def psi(self, t: Tensor, i: int = 0) -> Tensor:
        """Apply psi to legs (i, i+1) of ``t``."""
        return t.apply_pair(i, self.psi_words)

    def psi_extend(self, x: NCPoly, y: NCPoly) -> Tensor:
        return self.psi(Tensor.from_product(x, y))

    def tensor_mul(self, x: Tensor, y: Tensor) -> Tensor:
        """(u (x) v)(w (x) z) = sum u w_i (x) v_i z with psi(v (x) w) = sum w_i (x) v_i."""
        acc = _Acc()
        for (u, v), c in x.items():
            for (w, z), d in y.items():
                cd = c * d
                if not cd:
                    continue
                for (w_i, v_i), e in self.psi_words(v, w).items():
                    left = self.mul_words(u, w_i)
                    right = self.mul_words(v_i, z)
                    ce = cd * e
                    for lw, lc in left.items():
                        for rw, rc in right.items():
                            acc.add((lw, rw), ce * lc * rc)
        return acc.tensor(2)

    # --- coproduct / counit / antipode / star ---
    def delta_word(self, w: Word) -> Tensor:
        hit = self._delta_cache.get(w)
        if hit is not None:
            return hit
        if len(w) == 1:
            res = self.delta[w[0]]
        else:
            res = self.tensor_mul(self.delta[w[0]], self.delta_word(w[1:]))
        self._delta_cache[w] = res
        return res

    def delta_extend(self, x: NCPoly) -> Tensor:
        acc = _Acc()
        for w, c in x.items():
            for k, d in self.delta_word(w).items():
                acc.add(k, c * d)
        return acc.tensor(2)

    def counit_word(self, w: Word) -> Scalar:
        hit = self._eps_cache.get(w)
        if hit is not None:
            return hit
        res = self.counit[w[0]] * self.counit_word(w[1:])
        self._eps_cache[w] = res
        return res

    def counit_extend(self, x: NCPoly) -> Scalar:
        total = ZERO
        for w, c in x.items():
            total = total + c * self.counit_word(w)
        return total

    def antipode_word(self, w: Word) -> NCPoly:
        hit = self._s_cache.get(w)
        if hit is not None:
            return hit
        if len(w) == 1:
            res = self.antipode[w[0]]
        elif not self.braided:
            res = self.nf(nc_mul(self.antipode_word(w[1:]), self.antipode[w[0]]))
        else:
            # S(x U) = m psi (S x (x) S U)
            t = self.psi(Tensor.from_product(self.antipode[w[0]], self.antipode_word(w[1:])))
            res = self.nf(t.contract(lambda k: NCPoly.word(k[0] + k[1])))
        self._s_cache[w] = res
        return res

    def antipode_extend(self, x: NCPoly) -> NCPoly:
        return _linear(x, self.antipode_word)

    def star_word(self, w: Word) -> NCPoly:
        if self.star is None:
            raise ModeError(f"{self.name} has no star structure")
        hit = self._star_cache.get(w)
        if hit is not None:
            return hit
        res = self.nf(nc_mul(self.star_word(w[1:]), self.star[w[0]])) if len(w) > 1 else self.star[w[0]]
        self._star_cache[w] = res
        return res

    def star_extend(self, x: NCPoly) -> NCPoly:
        """Anti-multiplicative; coefficients are fixed (q, r real)."""
        return _linear(x, self.star_word)

    def star_tensor(self, t: Tensor) -> Tensor:
        """(x (x) y)* = y* (x) x*."""
        return t.map_leg(0, self.star_word).map_leg(1, self.star_word).flip()

    # --- multi-leg helpers ---
    def delta_leg(self, t: Tensor, i: int) -> Tensor:
        return t.expand_leg(i, self.delta_word)

    def mult_legs(self, t: Tensor, i: int) -> Tensor:
        """Multiply legs i and i+1."""
        return t.apply_pair(i, lambda u, v: Tensor.from_poly(self.mul_words(u, v)))

    def with_substitution(self, bindings: Mapping, base: Presentation | None = None, name: str | None = None) -> "StructureMaps":
        base = base or self.base.specialize(bindings)
        sub = lambda t: t.substitute(bindings)
        return StructureMaps(
            name or self.name,
            base,
            {g: sub(v) for g, v in self.delta.items()},
            {g: v.substitute(bindings) for g, v in self.counit.items()},
            {g: sub(v) for g, v in self.antipode.items()},
            None if self.star is None else {g: sub(v) for g, v in self.star.items()},
            None if self.braiding is None else {k: sub(v) for k, v in self.braiding.items()},
            self.mode,
        )


def _linear(x: NCPoly, f: Callable[[Word], NCPoly]) -> NCPoly:
    out: dict = {}
    for w, c in x.items():
        for nw, d in f(w).items():
            v = out.get(nw)
            v = c * d if v is None else v + c * d
            if v:
                out[nw] = v
            else:
                out.pop(nw, None)
    return NCPoly._raw(out)


# --- public operation wrappers ---

def tensor_mul(x: Tensor, y: Tensor, S: StructureMaps) -> Tensor:
    return S.tensor_mul(x, y)


def delta_extend(x: NCPoly, S: StructureMaps) -> Tensor:
    return S.delta_extend(x)


def counit_extend(x: NCPoly, S: StructureMaps) -> Scalar:
    return S.counit_extend(x)


def antipode_extend(x: NCPoly, S: StructureMaps) -> NCPoly:
    return S.antipode_extend(x)


def star_extend(x: NCPoly, S: StructureMaps) -> NCPoly:
    return S.star_extend(x)


def psi_extend(x: NCPoly, y: NCPoly, S: StructureMaps) -> Tensor:
    if not S.braided:
        raise ModeError("psi_extend requires braided mode")
    return S.psi_extend(x, y)


# --- evaluation domains ---

def basis_words(P: Presentation, L: int, nonempty: bool = True) -> list:
    ws = P.basis_words(L)
    return [w for w in ws if w] if nonempty else ws


def word_tuples(P: Presentation, L: int, k: int) -> list:
    """Tuples of k nonempty normal words with total length <= L."""
    words = basis_words(P, L)
    out = []
    for combo in itertools.product(words, repeat=k):
        if sum(len(w) for w in combo) <= L:
            out.append(combo)
    return out


def _fmt_words(ws) -> list:
    from .textformat import format_word

    return [format_word(w) for w in ws]


def _eq_residual(lhs, rhs):
    d = lhs - rhs
    return None if not d else d


# --- axioms ---

def _ax_associativity(S: StructureMaps, L: int, rep: CheckReport):
    for u, v, w in word_tuples(S.base, L, 3):
        left = S.nf(nc_mul(S.mul_words(u, v), NCPoly.word(w)))
        right = S.nf(nc_mul(NCPoly.word(u), S.mul_words(v, w)))
        yield (u, v, w), left - right


def _ax_unit(S, L, rep):
    for w in basis_words(S.base, L):
        x = NCPoly.word(w)
        yield (w,), S.nf(nc_mul(NCPoly.scalar(1), x)) - x
        yield (w,), S.nf(nc_mul(x, NCPoly.scalar(1))) - x


def _ax_coassociativity(S, L, rep):
    for w in basis_words(S.base, L):
        d = S.delta_word(w)
        yield (w,), S.delta_leg(d, 0) - S.delta_leg(d, 1)


def _ax_counit(S, L, rep):
    for w in basis_words(S.base, L):
        d = S.delta_word(w)
        x = NCPoly.word(w)
        left = d.contract(lambda k: NCPoly.word(k[1], S.counit_word(k[0])))
        right = d.contract(lambda k: NCPoly.word(k[0], S.counit_word(k[1])))
        yield (w,), left - x
        yield (w,), right - x


def _ax_antipode(side):
    def run(S, L, rep):
        for w in basis_words(S.base, L):
            d = S.delta_word(w)
            if side == "left":
                val = d.contract(lambda k: nc_mul(S.antipode_word(k[0]), NCPoly.word(k[1])))
            else:
                val = d.contract(lambda k: nc_mul(NCPoly.word(k[0]), S.antipode_word(k[1])))
            yield (w,), S.nf(val) - NCPoly.scalar(S.counit_word(w))

    return run


def _ax_psi_m_left(S, L, rep):
    # psi o (m (x) id) = (id (x) m)(psi (x) id)(id (x) psi)
    for u, v, w in word_tuples(S.base, L, 3):
        left = S.psi(Tensor.from_product(S.mul_words(u, v), NCPoly.word(w)))
        t = Tensor.basis(u, v, w)
        t = S.psi(t, 1)
        t = S.psi(t, 0)
        right = S.mult_legs(t, 1)
        yield (u, v, w), left - right


def _ax_psi_m_right(S, L, rep):
    # psi o (id (x) m) = (m (x) id)(id (x) psi)(psi (x) id)
    for u, v, w in word_tuples(S.base, L, 3):
        left = S.psi(Tensor.from_product(NCPoly.word(u), S.mul_words(v, w)))
        t = Tensor.basis(u, v, w)
        t = S.psi(t, 0)
        t = S.psi(t, 1)
        right = S.mult_legs(t, 0)
        yield (u, v, w), left - right


def _ax_psi_delta_left(S, L, rep):
    # (id (x) Delta) psi = (psi (x) id)(id (x) psi)(Delta (x) id)
    for u, v in word_tuples(S.base, L, 2):
        left = S.delta_leg(S.psi_words(u, v), 1)
        t = S.delta_leg(Tensor.basis(u, v), 0)
        t = S.psi(t, 1)
        right = S.psi(t, 0)
        yield (u, v), left - right


def _ax_psi_delta_right(S, L, rep):
    # (Delta (x) id) psi = (id (x) psi)(psi (x) id)(id (x) Delta)
    for u, v in word_tuples(S.base, L, 2):
        left = S.delta_leg(S.psi_words(u, v), 0)
        t = S.delta_leg(Tensor.basis(u, v), 1)
        t = S.psi(t, 0)
        right = S.psi(t, 1)
        yield (u, v), left - right


def _ax_bialgebra(S, L, rep):
    for u, v in word_tuples(S.base, L, 2):
        left = S.delta_extend(S.mul_words(u, v))
        right = S.tensor_mul(S.delta_word(u), S.delta_word(v))
        yield (u, v), left - right


def _ax_antipode_m(S, L, rep):
    for u, v in word_tuples(S.base, L, 2):
        left = S.antipode_extend(S.mul_words(u, v))
        t = S.psi(Tensor.from_product(S.antipode_word(u), S.antipode_word(v)))
        right = S.nf(t.contract(lambda k: NCPoly.word(k[0] + k[1])))
        yield (u, v), left - right


def _ax_delta_s(S, L, rep):
    for w in basis_words(S.base, L):
        left = S.delta_extend(S.antipode_word(w))
        t = S.psi(S.delta_word(w))
        right = t.map_leg(0, S.antipode_word).map_leg(1, S.antipode_word)
        yield (w,), left - right


def _ax_counit_m(S, L, rep):
    for u, v in word_tuples(S.base, L, 2):
        left = S.counit_extend(S.mul_words(u, v))
        yield (u, v), NCPoly.scalar(left - S.counit_word(u) * S.counit_word(v))


def _ax_yang_baxter(S, L, rep):
    for u, v, w in word_tuples(S.base, L, 3):
        t = Tensor.basis(u, v, w)
        left = S.psi(S.psi(S.psi(t, 0), 1), 0)
        right = S.psi(S.psi(S.psi(t, 1), 0), 1)
        yield (u, v, w), left - right


def _ax_star_delta(S, L, rep):
    # Delta o * = pi o (* (x) *) o Delta
    for w in basis_words(S.base, L):
        left = S.delta_extend(S.star_word(w))
        right = S.star_tensor(S.delta_word(w))
        yield (w,), left - right


def _ax_star_s(S, L, rep):
    for w in basis_words(S.base, L):
        yield (w,), S.antipode_extend(S.star_word(w)) - S.star_extend(S.antipode_word(w))


def _ax_star_involution(S, L, rep):
    P = S.base
    for w in basis_words(P, L):
        yield (w,), S.star_extend(S.star_word(w)) - NCPoly.word(w)
    for rel in P.defining_differences():
        yield ("relation",), _star_free(S, rel)
    # (x (x) y)* = y* (x) x* is an anti-automorphism of the (braided) tensor
    # product algebra iff psi commutes with that star
    for u, v in word_tuples(P, L, 2):
        t = Tensor.basis(u, v)
        yield (u, v), S.psi(S.star_tensor(t)) - S.star_tensor(S.psi(t))


def _star_free(S: StructureMaps, rel: NCPoly) -> NCPoly:
    """Star applied letterwise to a free (unreduced) polynomial, then reduced."""
    parts = NCPoly()
    for w, c in rel.items():
        acc = NCPoly.scalar(c)
        for g in w:
            acc = nc_mul(S.star[g], acc)
        parts = parts + acc
    return S.nf(parts)


_AXIOMS = {
    "associativity": _ax_associativity,
    "unit": _ax_unit,
    "coassociativity": _ax_coassociativity,
    "counit": _ax_counit,
    "antipode-left": _ax_antipode("left"),
    "antipode-right": _ax_antipode("right"),
    "psi-m-left": _ax_psi_m_left,
    "psi-m-right": _ax_psi_m_right,
    "psi-delta-left": _ax_psi_delta_left,
    "psi-delta-right": _ax_psi_delta_right,
    "bialgebra": _ax_bialgebra,
    "antipode-m": _ax_antipode_m,
    "delta-S": _ax_delta_s,
    "counit-m": _ax_counit_m,
    "yang-baxter": _ax_yang_baxter,
    "star-delta": _ax_star_delta,
    "star-S": _ax_star_s,
    "star-involution": _ax_star_involution,
}


def applicable_axioms(S: StructureMaps) -> list:
    out = [a for a in ALL_AXIOMS if S.braided or a not in BRAIDED_ONLY_AXIOMS]
    if S.star is None:
        out = [a for a in out if a not in STAR_AXIOMS]
    return out


def check_axiom(axiom: str, S: StructureMaps, L: int = 3) -> CheckReport:
    if axiom not in _AXIOMS:
        raise UnknownAxiom(axiom)
    if axiom in BRAIDED_ONLY_AXIOMS and not S.braided:
        raise ModeError(f"axiom {axiom} requires braided mode; {S.name} is plain")
    if axiom in STAR_AXIOMS and S.star is None:
        raise ModeError(f"{S.name} has no star structure")
    rep = CheckReport(axiom, S.name, L)
    for inputs, residual in _AXIOMS[axiom](S, L, rep):
        rep.checked += 1
        if residual:
            rep.add_failure(_fmt_words(inputs) if inputs and isinstance(inputs[0], tuple) else list(inputs), residual)
    return rep


def check_all(S: StructureMaps, L: int = 3, axioms: Iterable[str] | None = None) -> list:
    names = applicable_axioms(S) if axioms is None else list(axioms)
    return [check_axiom(a, S, L) for a in names]


def check_bosonic_central(t: NCPoly, S: StructureMaps, L: int = 1) -> CheckReport:
    if not S.braided:
        raise ModeError("bosonic check requires braided mode")
    from .textformat import format_ncpoly

    t = S.nf(t)
    rep = CheckReport("bosonic-central", S.name, L)
    rep.notes.append(f"t = {format_ncpoly(t)}")
    for w in basis_words(S.base, L):
        g = NCPoly.word(w)
        rep.checked += 3
        comm = S.nf(nc_mul(t, g) - nc_mul(g, t))
        if comm:
            rep.add_failure(["commutator", *_fmt_words([w])], comm)
        r1 = S.psi_extend(t, g) - Tensor.from_product(g, t)
        if r1:
            rep.add_failure(["psi(t@x)", *_fmt_words([w])], r1)
        r2 = S.psi_extend(g, t) - Tensor.from_product(t, g)
        if r2:
            rep.add_failure(["psi(x@t)", *_fmt_words([w])], r2)
    return rep


def well_definedness(S: StructureMaps) -> list:
    """Residuals of Delta, epsilon, S, * (and psi with each generator) on every
    defining relation; all must vanish for the maps to descend to the quotient."""
    out = []
    for rel in S.base.defining_differences():
        d = _delta_free(S, rel)
        if d:
            out.append(("delta", rel, d))
        e = ZERO
        for w, c in rel.items():
            e = e + c * _eps_free(S, w)
        if e:
            out.append(("counit", rel, e))
        # the recursive word maps accept unreduced words, so apply them to rel as is
        s = S.nf(_linear(rel, S.antipode_word))
        if s:
            out.append(("antipode", rel, s))
        if S.star is not None:
            st = _star_free(S, rel)
            if st:
                out.append(("star", rel, st))
        if S.braided:
            for g in S.base.generators:
                gp = NCPoly.gen(g)
                for t in (S.psi_extend(rel, gp), S.psi_extend(gp, rel)):
                    t = S.nf_tensor(t)
                    if t:
                        out.append(("psi", rel, t))
    return out


def psi_inverse(S: StructureMaps) -> dict:
    """Inverse braiding table on generator pairs, from a linear solve over
    the span of all letter pairs.  Raises ValueError when psi leaves that
    span or is singular on it."""
    from .linalg import inverse

    gens = S.base.generators
    pairs = [((x,), (y,)) for x in gens for y in gens]
    index = {k: i for i, k in enumerate(pairs)}
    cols = []
    for u, v in pairs:
        t = S.psi_words(u, v)
        outside = [k for k, _ in t.items() if k not in index]
        if outside:
            raise ValueError(f"psi({u[0]} (x) {v[0]}) leaves the span of letter pairs")
        cols.append(t)
    matrix = [[cols[j].coeff(*pairs[i]) for j in range(len(pairs))] for i in range(len(pairs))]
    inv = inverse(matrix)
    table = {}
    for j, (u, v) in enumerate(pairs):
        acc = _Acc()
        for i, k in enumerate(pairs):
            if inv[i][j]:
                acc.add(k, inv[i][j])
        table[(u[0], v[0])] = acc.tensor(2)
    return table


def check_plain_star(S: StructureMaps, L: int = 3) -> CheckReport:
    """Ordinary Hopf *-algebra conventions: Delta o * = (* (x) *) o Delta
    (no flip) and (S o *)^2 = id."""
    rep = CheckReport("star-hopf", S.name, L)
    for w in basis_words(S.base, L):
        x = NCPoly.word(w)
        d = S.delta_word(w)
        rhs = S.nf_tensor(d.map_leg(0, S.star_word).map_leg(1, S.star_word))
        rep.checked += 2
        r = S.delta_extend(S.star_word(w)) - rhs
        if r:
            rep.add_failure(["delta", *_fmt_words([w])], r)
        twice = S.antipode_extend(S.star_extend(S.antipode_extend(S.star_word(w))))
        r = S.nf(twice - x)
        if r:
            rep.add_failure(["S*S*", *_fmt_words([w])], r)
    return rep


def _delta_free(S: StructureMaps, x: NCPoly) -> Tensor:
    acc = Tensor.zero(2)
    for w, c in x.items():
        t = Tensor.unit(2)
        for g in w:
            t = S.tensor_mul(t, S.delta[g])
        acc = acc + t.scale(c)
    return acc


def _eps_free(S: StructureMaps, w: Word) -> Scalar:
    e = ONE
    for g in w:
        e = e * S.counit[g]
    return e


def transport(S: StructureMaps, basis_map, target: Presentation, name: str | None = None) -> StructureMaps:
    """Re-express ``S`` over ``target``.

    ``basis_map.forward`` gives S.base generators in terms of target ones and
    ``basis_map.backward`` the reverse.  Each target generator is pulled back,
    mapped by S, and its legs pushed forward and normalized in ``target``.
    """
    from .presentations import substitute_generators

    fwd = basis_map.forward
    back = basis_map.backward
    push = lambda w: target.normal_form(substitute_generators(NCPoly.word(w), fwd))

    def push_tensor(t: Tensor) -> Tensor:
        for i in range(t.arity):
            t = t.map_leg(i, push)
        return t

    gens = target.generators
    pull = {g: S.nf(back[g]) for g in gens}
    delta = {g: push_tensor(S.delta_extend(pull[g])) for g in gens}
    counit = {g: S.counit_extend(pull[g]) for g in gens}
    antipode = {g: target.normal_form(substitute_generators(S.antipode_extend(pull[g]), fwd)) for g in gens}
    star = None
    if S.star is not None:
        star = {g: target.normal_form(substitute_generators(S.star_extend(pull[g]), fwd)) for g in gens}
    braiding = None
    if S.braided:
        braiding = {(x, y): push_tensor(S.psi_extend(pull[x], pull[y])) for x in gens for y in gens}
    return StructureMaps(name or f"{S.name}->{target.name}", target, delta, counit, antipode, star, braiding, S.mode)

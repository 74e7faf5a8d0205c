"""Right coactions H -> H (x) A, comodule and comodule-algebra checks,
psi-naturality, and verification of transmuted multiplication tables."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping

from .hopfstruct import CheckReport, ModeError, StructureMaps, basis_words, word_tuples
from .ncalg import NCPoly, Presentation, Word, nc_mul
from .presentations import make_presentation
from .scalar import ONE, Scalar
from .tensor import Tensor, _Acc
from .textformat import format_word


@dataclass
class CoactionMap:
    """Generator table of a right coaction; left legs live in ``coacted``,
    right legs in ``coacting``.  ``source`` is set for adjoint coactions so
    comodule checks can evaluate the defining formula on any word."""

    name: str
    coacted: Presentation
    coacting: Presentation
    table: Mapping[str, Tensor]
    source: StructureMaps | None = None
    _cache: dict = field(default_factory=dict, repr=False, compare=False)

    def __post_init__(self):
        missing = [g for g in self.coacted.generators if g not in self.table]
        if missing:
            raise ValueError(f"{self.name}: coaction undefined on {missing}")
        self.table = {g: self._normalize(self.table[g], self.coacted) for g in self.coacted.generators}

    def _normalize(self, t: Tensor, left: Presentation) -> Tensor:
        t = t.map_leg(0, lambda w: left.normal_form(NCPoly.word(w)))
        return t.map_leg(1, lambda w: self.coacting.normal_form(NCPoly.word(w)))

    def substitute(self, bindings: Mapping, coacted: Presentation | None = None,
                   coacting: Presentation | None = None, name: str | None = None) -> "CoactionMap":
        coacted = coacted or self.coacted.specialize(bindings)
        coacting = coacting or self.coacting.specialize(bindings)
        src = None
        if self.source is not None and self.source.base is self.coacting:
            src = self.source.with_substitution(bindings, base=coacting)
        table = {g: t.substitute(bindings) for g, t in self.table.items()}
        return CoactionMap(name or self.name, coacted, coacting, table, src)

    def word_value(self, w: Word) -> Tensor:
        """beta on a normal word of the coacted algebra: the defining formula
        when known (adjoint), otherwise the multiplicative extension."""
        if self.source is not None:
            return adjoint_value(self.source, NCPoly.word(w))
        return coaction_extend(NCPoly.word(w), self, self.coacted)


def _product(x: Tensor, y: Tensor, left: Presentation, right: Presentation) -> Tensor:
    """Componentwise product of two coaction values."""
    acc = _Acc()
    for (u, a), c in x.items():
        for (v, b), d in y.items():
            cd = c * d
            lp = left.normal_form(NCPoly.word(u + v))
            rp = right.normal_form(NCPoly.word(a + b))
            for lw, lc in lp.items():
                for rw, rc in rp.items():
                    acc.add((lw, rw), cd * lc * rc)
    return acc.tensor(2)


# --- adjoint coaction ---

def adjoint_value(S: StructureMaps, x: NCPoly) -> Tensor:
    """sum h(2) (x) S(h(1)) h(3) with Delta^2 = (Delta (x) id) Delta."""
    if S.braided:
        raise ModeError("adjoint coaction is computed for plain Hopf structures only")
    acc = _Acc()
    for w, c in x.items():
        d2 = S.delta_leg(S.delta_word(w), 0)
        for (h1, h2, h3), d in d2.items():
            right = S.nf(nc_mul(S.antipode_word(h1), NCPoly.word(h3)))
            for rw, rc in right.items():
                acc.add((h2, rw), c * d * rc)
    return acc.tensor(2)


def adjoint_coaction(S: StructureMaps, name: str | None = None) -> CoactionMap:
    table = {g: adjoint_value(S, NCPoly.gen(g)) for g in S.base.generators}
    return CoactionMap(name or f"adjoint_{S.name}", S.base, S.base, table, S)


def trivial_coaction(H: Presentation, A: Presentation) -> CoactionMap:
    table = {g: Tensor.basis((g,), ()) for g in H.generators}
    return CoactionMap(f"trivial_{H.name}", H, A, table)


# --- multiplicative extension ---

def coaction_extend(x: NCPoly, beta: CoactionMap, coacted_mult: Presentation | None = None) -> Tensor:
    """beta(u w) = beta(u) beta(w), left legs multiplied in ``coacted_mult``."""
    mult = coacted_mult or beta.coacted
    cache = beta._cache.setdefault(("ext", mult.name, id(mult)), {(): Tensor.basis((), ())})

    def word(w: Word) -> Tensor:
        hit = cache.get(w)
        if hit is None:
            hit = _product(beta.table[w[0]], word(w[1:]), mult, beta.coacting)
            cache[w] = hit
        return hit

    acc = _Acc()
    for w, c in x.items():
        for k, d in word(w).items():
            acc.add(k, c * d)
    return acc.tensor(2)


# --- checks ---

def check_comodule(beta: CoactionMap, S_coacting: StructureMaps, L: int = 2) -> CheckReport:
    """(beta (x) id) beta = (id (x) Delta) beta and (id (x) eps) beta = id."""
    if S_coacting.base.generators != beta.coacting.generators:
        raise ValueError("coacting structure does not match the coaction")
    rep = CheckReport("comodule", beta.name, L)
    for w in basis_words(beta.coacted, L):
        val = beta.word_value(w)
        lhs = val.expand_leg(0, beta.word_value)
        rhs = val.expand_leg(1, S_coacting.delta_word)
        rep.checked += 2
        if lhs != rhs:
            rep.add_failure(["coassociativity", format_word(w)], lhs - rhs)
        back = val.contract(lambda k: NCPoly.word(k[0], S_coacting.counit_word(k[1])))
        res = beta.coacted.normal_form(back - NCPoly.word(w))
        if res:
            rep.add_failure(["counit", format_word(w)], res)
    return rep


def check_comodule_algebra(beta: CoactionMap, coacted_mult: Presentation, L: int = 2) -> CheckReport:
    """beta(h g) = beta(h) beta(g) with the coacted copy multiplied in
    ``coacted_mult``; word pairs in alphabet order, then defining relations."""
    if coacted_mult.generators != beta.coacted.generators:
        raise ValueError("coacted multiplication must share the coacted alphabet")
    rep = CheckReport("comodule-algebra", beta.name, L)
    rep.notes.append(f"coacted copy multiplied in {coacted_mult.name}")
    ext = lambda x: coaction_extend(x, beta, coacted_mult)
    for u, v in word_tuples(coacted_mult, L, 2):
        lhs = ext(coacted_mult.normal_form(NCPoly.word(u + v)))
        rhs = _product(ext(NCPoly.word(u)), ext(NCPoly.word(v)), coacted_mult, beta.coacting)
        rep.checked += 1
        if lhs != rhs:
            rep.add_failure([format_word(u), format_word(v)], lhs - rhs)
    for i, rel in enumerate(coacted_mult.defining_differences()):
        acc = Tensor.zero(2)
        for w, c in rel.items():
            t = Tensor.basis((), ())
            for g in w:
                t = _product(t, beta.table[g], coacted_mult, beta.coacting)
            acc = acc + t.scale(c)
        rep.checked += 1
        if acc:
            rep.add_failure([f"relation {i + 1}"], acc)
    return rep


def _coact_pair(beta: CoactionMap, t: Tensor, mult: Presentation) -> Tensor:
    """Factorwise coaction on H (x) H; coacting legs multiplied left factor first."""
    acc = _Acc()
    for (u, v), c in t.items():
        bu = coaction_extend(NCPoly.word(u), beta, mult)
        bv = coaction_extend(NCPoly.word(v), beta, mult)
        for (x, a), d in bu.items():
            for (y, b), e in bv.items():
                for rw, rc in beta.coacting.normal_form(NCPoly.word(a + b)).items():
                    acc.add((x, y, rw), c * d * e * rc)
    return acc.tensor(3)


def check_psi_naturality(beta: CoactionMap, S: StructureMaps, L: int = 2) -> CheckReport:
    """psi(beta(x (x) y)) = beta(psi(x (x) y)) on word pairs of total length <= L."""
    if not S.braided:
        raise ModeError("psi-naturality needs a braided structure")
    if S.base.generators != beta.coacted.generators:
        raise ValueError("braided structure must live on the coacted algebra")
    rep = CheckReport("psi-naturality", f"{beta.name}/{S.name}", L)
    for u, v in word_tuples(S.base, L, 2):
        lhs = S.psi(_coact_pair(beta, Tensor.basis(u, v), S.base), 0)
        rhs = _coact_pair(beta, S.psi_words(u, v), S.base)
        rep.checked += 1
        if lhs != rhs:
            rep.add_failure([format_word(u), format_word(v)], lhs - rhs)
    return rep


# --- transmutation tables ---

@dataclass
class MultiplicationTable:
    """Products of target generators written in the host algebra."""

    name: str
    host: Presentation
    target: Presentation
    table: Mapping[tuple, NCPoly]

    def __post_init__(self):
        gens = self.target.generators
        missing = [(x, y) for x in gens for y in gens if (x, y) not in self.table]
        if missing:
            raise ValueError(f"{self.name}: product table undefined on {missing}")
        if set(gens) != set(self.host.generators):
            raise ValueError("host and target must share generator names")
        self.table = {k: self.host.normal_form(v) for k, v in self.table.items()}

    def image(self, x: NCPoly) -> NCPoly:
        """Rewrite a free polynomial of target words (length <= 2) in the host."""
        acc = NCPoly()
        for w, c in x.items():
            if len(w) > 2:
                raise ValueError("product table only covers words of length <= 2")
            img = self.table[w] if len(w) == 2 else NCPoly.word(w)
            acc = acc + img.scale(c)
        return self.host.normal_form(acc)


def _free_words(gens, max_len: int) -> list:
    out = [()]
    layer = [()]
    for _ in range(max_len):
        layer = [w + (g,) for w in layer for g in gens]
        out.extend(layer)
    return out


def table_kernel(mt: MultiplicationTable) -> list:
    """Basis of the kernel of free words of length <= 2 -> host, as NCPolys."""
    from .linalg import nullspace

    words = _free_words(mt.target.generators, 2)
    images = [mt.image(NCPoly.word(w)) for w in words]
    support = sorted({hw for img in images for hw in img.words()}, key=mt.host.word_key)
    rows = [[img.coeff(hw) for img in images] for hw in support]
    out = []
    for vec in nullspace(rows):
        out.append(NCPoly({w: c for w, c in zip(words, vec) if c}))
    return out


def verify_transmutation(mt: MultiplicationTable, host: Presentation | None = None,
                         target: Presentation | None = None) -> CheckReport:
    """(i) target relations vanish in the host; (ii) the algebra presented
    by the kernel of the table is associative on generator triples without
    collapsing below the host's dimension; (iii) that kernel lies in the
    target's relations, so the induced product is well defined."""
    host = host or mt.host
    target = target or mt.target
    rep = CheckReport("transmutation", mt.name, 3)

    part = CheckReport("relations", mt.name, 2)
    for i, rel in enumerate(target.defining_differences()):
        part.checked += 1
        res = mt.image(rel)
        if res:
            part.add_failure([f"relation {i + 1}"], res)
    rep.merge_part("relations", part)

    kernel = table_kernel(mt)

    part = CheckReport("associativity", mt.name, 3)
    try:
        induced = make_presentation(
            f"{mt.name}_induced", dict(target.weights), [_as_relation(k) for k in kernel],
            target.parameters,
        )
    except Exception as exc:  # orientation failure is itself the finding
        part.checked += 1
        part.add_failure(["kernel presentation"], NCPoly.scalar(ONE))
        part.notes.append(str(exc))
    else:
        gens = target.generators
        for x in gens:
            for y in gens:
                for z in gens:
                    part.checked += 1
                    left = induced.normal_form(nc_mul(induced.normal_form(NCPoly.word((x, y))), NCPoly.gen(z)))
                    right = induced.normal_form(nc_mul(NCPoly.gen(x), induced.normal_form(NCPoly.word((y, z)))))
                    if left != right:
                        part.add_failure([x, y, z], left - right)
        for n in (2, 3):
            part.checked += 1
            dims = (_filtered_dim(induced, n), _filtered_dim(host, n))
            part.notes.append(f"normal words of length <= {n}: induced {dims[0]}, host {dims[1]}")
            if dims[0] != dims[1]:
                part.add_failure([f"dimension <= {n}"], NCPoly.scalar(Scalar.const(dims[0] - dims[1])))
    rep.merge_part("associativity", part)

    part = CheckReport("compatibility", mt.name, 2)
    part.notes.append(f"kernel dimension {len(kernel)}")
    for k in kernel:
        part.checked += 1
        res = target.normal_form(k)
        if res:
            part.add_failure(["kernel vector"], res)
    rep.merge_part("compatibility", part)
    return rep


def _filtered_dim(P: Presentation, n: int) -> int:
    return len(P.basis_words(n))


def _as_relation(k: NCPoly):
    from .ncalg import Relation

    return Relation(k, NCPoly())

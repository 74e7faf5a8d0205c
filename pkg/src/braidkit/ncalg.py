"""Free noncommutative polynomials over :class:`Scalar` and normal forms in
finitely presented quotients.

Words are tuples of generator names; the empty tuple is the unit.  Rewrite
rules are oriented by a weighted graded-lex order and completed against
overlaps up to a fixed word length when a presentation is built.
"""
from __future__ import annotations

import itertools
import logging
import random
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

from .scalar import ONE, ZERO, Scalar

log = logging.getLogger(__name__)

Word = tuple  # tuple[str, ...]

DEFAULT_STEP_BUDGET = 10**6
COMPLETION_MAX_LEN = 6


class AlphabetError(ValueError):
    pass


class RewriteBudgetExceeded(RuntimeError):
    pass


class OrientationError(ValueError):
    """A relation cannot be oriented with an invertible leading coefficient."""


class NCPoly:
    """Finite Scalar-linear combination of words."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping | None = None):
        t = {}
        if terms:
            for w, c in terms.items():
                if not isinstance(c, Scalar):
                    c = Scalar.const(c)
                if c:
                    t[tuple(w)] = c
        self._terms = t
        self._hash = None

    @classmethod
    def _raw(cls, terms: dict) -> "NCPoly":
        p = object.__new__(cls)
        p._terms = terms
        p._hash = None
        return p

    @classmethod
    def word(cls, w: Sequence[str], coef=ONE) -> "NCPoly":
        coef = coef if isinstance(coef, Scalar) else Scalar.const(coef)
        return cls._raw({tuple(w): coef} if coef else {})

    @classmethod
    def gen(cls, name: str) -> "NCPoly":
        return cls._raw({(name,): ONE})

    @classmethod
    def scalar(cls, c) -> "NCPoly":
        return cls.word((), c)

    def items(self):
        return self._terms.items()

    def words(self):
        return self._terms.keys()

    def coeff(self, w: Word) -> Scalar:
        return self._terms.get(tuple(w), ZERO)

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def letters(self) -> set:
        return {g for w in self._terms for g in w}

    def max_len(self) -> int:
        return max((len(w) for w in self._terms), default=0)

    def __add__(self, other) -> "NCPoly":
        other = as_ncpoly(other)
        if not other._terms:
            return self
        t = dict(self._terms)
        for w, c in other._terms.items():
            v = t.get(w)
            v = c if v is None else v + c
            if v:
                t[w] = v
            else:
                t.pop(w, None)
        return NCPoly._raw(t)

    __radd__ = __add__

    def __neg__(self) -> "NCPoly":
        return NCPoly._raw({w: -c for w, c in self._terms.items()})

    def __sub__(self, other) -> "NCPoly":
        return self + (-as_ncpoly(other))

    def __rsub__(self, other) -> "NCPoly":
        return as_ncpoly(other) - self

    def scale(self, s) -> "NCPoly":
        s = s if isinstance(s, Scalar) else Scalar.const(s)
        if not s:
            return NCPoly._raw({})
        if s == ONE:
            return self
        t = {}
        for w, c in self._terms.items():
            v = c * s
            if v:
                t[w] = v
        return NCPoly._raw(t)

    def __mul__(self, other) -> "NCPoly":
        if isinstance(other, NCPoly):
            return nc_mul(self, other)
        if isinstance(other, (Scalar, int)):
            return self.scale(other)
        return NotImplemented

    def __rmul__(self, other) -> "NCPoly":
        if isinstance(other, (Scalar, int)):
            return self.scale(other)
        return NotImplemented

    def __pow__(self, n: int) -> "NCPoly":
        out = NCPoly.scalar(1)
        for _ in range(n):
            out = out * self
        return out

    def map_coeffs(self, f) -> "NCPoly":
        t = {}
        for w, c in self._terms.items():
            v = f(c)
            if v:
                t[w] = v
        return NCPoly._raw(t)

    def substitute(self, bindings: Mapping) -> "NCPoly":
        return self.map_coeffs(lambda c: c.substitute(bindings))

    def __eq__(self, other) -> bool:
        if isinstance(other, NCPoly):
            return self._terms == other._terms
        if isinstance(other, (int, Scalar)):
            return self == NCPoly.scalar(other)
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def __repr__(self) -> str:
        from .textformat import format_ncpoly

        return f"NCPoly({format_ncpoly(self)!r})"

    def __str__(self) -> str:
        from .textformat import format_ncpoly

        return format_ncpoly(self)


def as_ncpoly(x) -> NCPoly:
    if isinstance(x, NCPoly):
        return x
    if isinstance(x, (Scalar, int)):
        return NCPoly.scalar(x)
    raise TypeError(f"cannot coerce {x!r} to NCPoly")


def nc_mul(x: NCPoly, y: NCPoly, alphabet: Iterable[str] | None = None) -> NCPoly:
    """Concatenation product in the free algebra (no reduction)."""
    if alphabet is not None:
        alpha = set(alphabet)
        bad = (x.letters() | y.letters()) - alpha
        if bad:
            raise AlphabetError(f"letters {sorted(bad)} not in alphabet")
    t: dict = {}
    for w1, c1 in x._terms.items():
        for w2, c2 in y._terms.items():
            w = w1 + w2
            c = c1 * c2
            v = t.get(w)
            v = c if v is None else v + c
            if v:
                t[w] = v
            else:
                t.pop(w, None)
    return NCPoly._raw(t)


def poly_sum(items: Iterable[NCPoly]) -> NCPoly:
    t: dict = {}
    for p in items:
        for w, c in p._terms.items():
            v = t.get(w)
            v = c if v is None else v + c
            if v:
                t[w] = v
            else:
                t.pop(w, None)
    return NCPoly._raw(t)


@dataclass(frozen=True)
class RewriteRule:
    lhs: Word
    rhs: NCPoly

    def __str__(self) -> str:
        from .textformat import format_ncpoly, format_word

        return f"{format_word(self.lhs)} -> {format_ncpoly(self.rhs)}"


@dataclass(frozen=True)
class Relation:
    lhs: NCPoly
    rhs: NCPoly

    def difference(self) -> NCPoly:
        return self.lhs - self.rhs


class Presentation:
    """Quotient of the free algebra by two-sided relations, with a
    terminating, overlap-checked rewriting system for normal forms.

    ``relations`` are the defining relations as given; ``central`` lists
    generators declared to commute with every other generator.
    """

    def __init__(
        self,
        name: str,
        generators: Sequence[str],
        relations: Sequence[Relation],
        weights: Mapping[str, int] | None = None,
        parameters: Sequence[str] = ("q",),
        central: Sequence[str] = (),
        completion_max_len: int = COMPLETION_MAX_LEN,
    ):
        self.name = name
        self.generators = tuple(generators)
        if len(set(self.generators)) != len(self.generators):
            raise ValueError("generator names must be unique")
        self.weights = {g: 1 for g in self.generators}
        if weights:
            self.weights.update(weights)
        if any(w <= 0 for w in self.weights.values()):
            raise ValueError("weights must be positive")
        self.index = {g: i for i, g in enumerate(self.generators)}
        self.relations = tuple(relations)
        self.parameters = tuple(parameters)
        self.central = tuple(central)
        self.completion_max_len = completion_max_len
        self.added_rules: list[RewriteRule] = []
        self._cache: dict = {}
        self._rules: dict = {}
        self._completing = False
        for rel in self.relations:
            self.check_alphabet(rel.lhs)
            self.check_alphabet(rel.rhs)
        self._build()

    # --- order ---
    def word_key(self, w: Word) -> tuple:
        return (sum(self.weights[g] for g in w), tuple(self.index[g] for g in w))

    def leading_word(self, p: NCPoly) -> Word:
        return max(p.words(), key=self.word_key)

    def check_alphabet(self, p: NCPoly) -> None:
        bad = p.letters() - self.index.keys()
        if bad:
            raise AlphabetError(f"letters {sorted(bad)} not in alphabet of {self.name}")

    def defining_differences(self) -> list[NCPoly]:
        out = [rel.difference() for rel in self.relations]
        for z in self.central:
            for g in self.generators:
                if g != z:
                    out.append(NCPoly.word((z, g)) - NCPoly.word((g, z)))
        return out

    @property
    def rules(self) -> list[RewriteRule]:
        return [RewriteRule(l, r) for l, r in sorted(self._rules.items(), key=lambda t: self.word_key(t[0]))]

    # --- construction ---
    def _build(self) -> None:
        pending = list(self.defining_differences())
        original = len(pending)
        seen_overlaps: set = set()
        rounds = 0
        while True:
            self._absorb(pending)
            pending = []
            self._completing = True
            rounds += 1
            pending.extend(self._critical_pairs(seen_overlaps))
            if not pending:
                break
            if rounds > 50:
                raise OrientationError(f"{self.name}: completion did not stabilise")
        # interreduce right-hand sides
        self._cache = {}
        for lhs in list(self._rules):
            self._rules[lhs] = self._reduce_unbudgeted(self._rules[lhs])
        self._cache = {}
        log.debug("%s: %d rules from %d relations", self.name, len(self._rules), original)

    def _absorb(self, pending: list) -> None:
        deferred: list = []
        while pending:
            f = pending.pop(0)
            self._cache = {}
            f = self._reduce_unbudgeted(f)
            if f.is_zero():
                continue
            lead = self.leading_word(f)
            lc = f.coeff(lead)
            if not (lc.is_unit() or lc.is_constant()):
                deferred.append(f)
                continue
            if len(lead) == 0:
                raise OrientationError(f"{self.name}: relations imply 1 = 0 ({f})")
            rhs = (f - NCPoly.word(lead, lc)).scale(-lc.inverse())
            if lead in self._rules:
                raise AssertionError("reduced polynomial has reducible leading word")
            # rules whose lhs contains the new lhs are retired and re-queued
            for l in list(self._rules):
                if _contains(l, lead):
                    pending.append(NCPoly.word(l) - self._rules.pop(l))
            self._rules[lead] = rhs
            if self._completing:
                self.added_rules.append(RewriteRule(lead, rhs))
            pending.extend(deferred)
            deferred = []
        if deferred:
            raise OrientationError(
                f"{self.name}: cannot orient relations with non-invertible leading coefficient: "
                + "; ".join(str(d) for d in deferred)
            )

    def _critical_pairs(self, seen: set):
        self._cache = {}
        lhss = sorted(self._rules, key=self.word_key)
        out = []
        for l1 in lhss:
            for l2 in lhss:
                for k in range(1, min(len(l1), len(l2))):
                    if l1[-k:] != l2[:k]:
                        continue
                    w = l1 + l2[k:]
                    if len(w) > self.completion_max_len or (l1, l2, k) in seen:
                        continue
                    seen.add((l1, l2, k))
                    left = nc_mul(self._rules[l1], NCPoly.word(l2[k:]))
                    right = nc_mul(NCPoly.word(l1[:-k]), self._rules[l2])
                    diff = self._reduce_unbudgeted(left - right)
                    if diff:
                        out.append(diff)
        return out

    # --- reduction ---
    def _find_match(self, w: Word):
        rules = self._rules
        n = len(w)
        for i in range(n - 1):
            for j in range(i + 2, n + 1):
                sub = w[i:j]
                if sub in rules:
                    return i, j, sub
        return None

    def _nf_word(self, w: Word, budget: list) -> NCPoly:
        cached = self._cache.get(w)
        if cached is not None:
            return cached
        m = self._find_match(w)
        if m is None:
            res = NCPoly._raw({w: ONE})
        else:
            budget[0] -= 1
            if budget[0] < 0:
                raise RewriteBudgetExceeded(f"{self.name}: rewrite step budget exhausted")
            i, j, sub = m
            pre, post = w[:i], w[j:]
            acc: dict = {}
            for rw, rc in self._rules[sub].items():
                part = self._nf_word(pre + rw + post, budget)
                for nw, nc in part.items():
                    c = rc * nc
                    v = acc.get(nw)
                    v = c if v is None else v + c
                    if v:
                        acc[nw] = v
                    else:
                        acc.pop(nw, None)
            res = NCPoly._raw(acc)
        self._cache[w] = res
        return res

    def _reduce_unbudgeted(self, x: NCPoly) -> NCPoly:
        return self.normal_form(x, budget=None)

    def normal_form(self, x: NCPoly, budget: int | None = DEFAULT_STEP_BUDGET) -> NCPoly:
        b = [budget if budget is not None else 10**12]
        acc: dict = {}
        for w, c in x.items():
            part = self._nf_word(w, b)
            for nw, nc in part.items():
                v = c * nc
                old = acc.get(nw)
                v = v if old is None else old + v
                if v:
                    acc[nw] = v
                else:
                    acc.pop(nw, None)
        return NCPoly._raw(acc)

    def is_normal(self, w: Word) -> bool:
        return self._find_match(tuple(w)) is None

    def basis_words(self, max_len: int) -> list[Word]:
        """Normal words of length <= max_len, in increasing order."""
        out = [()]
        layer = [()]
        for _ in range(max_len):
            nxt = []
            for w in layer:
                for g in self.generators:
                    v = w + (g,)
                    if self._find_match(v[-self._max_lhs_len():]) is None:
                        nxt.append(v)
            out.extend(nxt)
            layer = nxt
        return sorted(out, key=lambda w: (len(w), self.word_key(w)))

    def _max_lhs_len(self) -> int:
        return max((len(l) for l in self._rules), default=2)

    def mul(self, x: NCPoly, y: NCPoly) -> NCPoly:
        return self.normal_form(nc_mul(x, y))

    def specialize(self, bindings: Mapping, name: str | None = None) -> "Presentation":
        rels = [Relation(rel.lhs.substitute(bindings), rel.rhs.substitute(bindings)) for rel in self.relations]
        params = tuple(p for p in self.parameters if p not in bindings)
        return Presentation(
            name or f"{self.name}|" + ",".join(f"{k}={v}" for k, v in bindings.items()),
            self.generators,
            rels,
            weights=self.weights,
            parameters=params,
            central=self.central,
            completion_max_len=self.completion_max_len,
        )

    def __repr__(self) -> str:
        return f"Presentation({self.name!r}, {len(self.generators)} generators, {len(self._rules)} rules)"


def _contains(big: Word, small: Word) -> bool:
    n = len(small)
    return any(big[i : i + n] == small for i in range(len(big) - n + 1))


def normal_form(x: NCPoly, P: Presentation, budget: int = DEFAULT_STEP_BUDGET) -> NCPoly:
    P.check_alphabet(x)
    return P.normal_form(x, budget)


def alg_equal(x: NCPoly, y: NCPoly, P: Presentation) -> bool:
    return normal_form(x - y, P).is_zero()


# --- empirical confluence ---

def _random_reduce(P: Presentation, x: NCPoly, rng: random.Random, budget: int) -> NCPoly:
    rules = P._rules
    cur = dict(x.items())
    steps = 0
    while True:
        reducible = []
        for w in cur:
            n = len(w)
            matches = [(i, j) for i in range(n - 1) for j in range(i + 2, n + 1) if w[i:j] in rules]
            if matches:
                reducible.append((w, matches))
        if not reducible:
            return NCPoly._raw(cur)
        reducible.sort(key=lambda t: P.word_key(t[0]))
        w, matches = rng.choice(reducible)
        i, j = rng.choice(matches)
        steps += 1
        if steps > budget:
            raise RewriteBudgetExceeded(f"{P.name}: randomized reduction budget exhausted")
        c = cur.pop(w)
        for rw, rc in rules[w[i:j]].items():
            nw = w[:i] + rw + w[j:]
            v = cur.get(nw)
            v = c * rc if v is None else v + c * rc
            if v:
                cur[nw] = v
            else:
                cur.pop(nw, None)


@dataclass
class ConfluenceReport:
    presentation: str
    samples: int
    max_len: int
    seed: int
    counterexamples: list = field(default_factory=list)
    overlaps: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.counterexamples and all(o["resolves"] for o in self.overlaps)

    def to_dict(self) -> dict:
        return {
            "presentation": self.presentation,
            "samples": self.samples,
            "max_len": self.max_len,
            "seed": self.seed,
            "counterexamples": self.counterexamples,
            "overlaps": self.overlaps,
        }


def rewrite_system_from_rules(name: str, generators: Sequence[str], rules: Mapping, weights=None) -> Presentation:
    """Wrap a raw rule table (possibly inconsistent) without completion.

    Used for probing hand-written rule sets; duplicate left-hand sides are
    allowed by passing a list of (lhs, rhs) pairs.
    """
    P = object.__new__(_RawRules)
    P.name = name
    P.generators = tuple(generators)
    P.weights = {g: 1 for g in P.generators}
    if weights:
        P.weights.update(weights)
    P.index = {g: i for i, g in enumerate(P.generators)}
    P._multi = [(tuple(l), r) for l, r in (rules.items() if isinstance(rules, Mapping) else rules)]
    P._rules = {}
    for l, r in P._multi:
        P._rules.setdefault(l, r)
    P._cache = {}
    P.relations = ()
    P.central = ()
    P.parameters = ("q",)
    P.added_rules = []
    return P


class _RawRules(Presentation):
    """Rule table taken as given; several rules may share a left-hand side."""


def _random_reduce_multi(P, x: NCPoly, rng: random.Random, budget: int) -> NCPoly:
    multi = getattr(P, "_multi", None)
    if multi is None:
        return _random_reduce(P, x, rng, budget)
    cur = dict(x.items())
    steps = 0
    while True:
        reducible = []
        for w in cur:
            n = len(w)
            ms = [(i, i + len(l), r) for i in range(n) for l, r in multi if w[i : i + len(l)] == l]
            if ms:
                reducible.append((w, ms))
        if not reducible:
            return NCPoly._raw(cur)
        reducible.sort(key=lambda t: P.word_key(t[0]))
        w, ms = rng.choice(reducible)
        i, j, rhs = rng.choice(ms)
        steps += 1
        if steps > budget:
            raise RewriteBudgetExceeded(f"{P.name}: randomized reduction budget exhausted")
        c = cur.pop(w)
        for rw, rc in rhs.items():
            nw = w[:i] + rw + w[j:]
            v = cur.get(nw)
            v = c * rc if v is None else v + c * rc
            if v:
                cur[nw] = v
            else:
                cur.pop(nw, None)


def confluence_probe(
    P: Presentation,
    samples: int = 1000,
    max_len: int = 5,
    seed: int = 0,
    words: Iterable[Word] | None = None,
    budget: int = DEFAULT_STEP_BUDGET,
) -> ConfluenceReport:
    """Reduce random words along two independently randomized rule orders and
    report disagreements, plus resolution of every left-hand-side overlap."""
    from .textformat import format_ncpoly, format_word

    rng = random.Random(seed)
    rep = ConfluenceReport(P.name, samples, max_len, seed)
    if words is None:
        words = []
        for _ in range(samples):
            n = rng.randint(1, max_len)
            words.append(tuple(rng.choice(P.generators) for _ in range(n)))
    r1 = random.Random(seed * 2 + 1)
    r2 = random.Random(seed * 2 + 2)
    for w in words:
        x = NCPoly.word(w)
        a = _random_reduce_multi(P, x, r1, budget)
        b = _random_reduce_multi(P, x, r2, budget)
        if a != b:
            rep.counterexamples.append(
                {"word": format_word(w), "first": format_ncpoly(a), "second": format_ncpoly(b)}
            )
    multi = getattr(P, "_multi", None) or list(P._rules.items())
    limit = 2 * max((len(l) for l, _ in multi), default=2)
    for (l1, r1_), (l2, r2_) in itertools.product(multi, repeat=2):
        for k in range(1, min(len(l1), len(l2)) + 1):
            if k == len(l1) == len(l2):
                if l1 != l2 or r1_ is r2_:
                    continue
                left, right = r1_, r2_
                w = l1
            elif k < min(len(l1), len(l2)) and l1[-k:] == l2[:k]:
                w = l1 + l2[k:]
                left = nc_mul(r1_, NCPoly.word(l2[k:]))
                right = nc_mul(NCPoly.word(l1[:-k]), r2_)
            else:
                continue
            if len(w) > limit:
                continue
            da = _random_reduce_multi(P, left, r1, budget)
            db = _random_reduce_multi(P, right, r1, budget)
            rep.overlaps.append(
                {
                    "word": format_word(w),
                    "rules": [format_word(l1), format_word(l2)],
                    "resolves": da == db,
                }
            )
    return rep

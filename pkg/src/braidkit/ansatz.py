"""General coefficient ansatz for a braided Hopf structure on the (a,b,c,p)
algebra, the polynomial system the axioms impose on it, and an elimination
solver with branching.

Unknown families (names as they appear in Scalars):
  A1..A11, C1..C11   coproducts of a and p
  B1..B6             shared by the coproducts of b and c
  e1..e3             counits
  k1..k5, m1..m5, n1..n5   antipodes (b and c share m)
  g, d, f, z, c, a   braiding families, e.g. psi(b (x) b) = z1 b (x) b
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import gcd

from . import hopfstruct
from .catalog import STAR_BR_ABCP, star_conjugate
from .hopfstruct import BRAIDED, STAR_AXIOMS, CheckReport, StructureMaps
from .ncalg import NCPoly
from .presentations import builtin
from .scalar import ONE, ZERO, Scalar, format_scalar, symbol_key
from .tensor import Tensor
from .textformat import format_word, parse_ncpoly, parse_tensor

DEFAULT_BUDGET = 10**5

# the eleven-term pattern shared by Delta(a), Delta(p) and three braidings
_PATTERN11 = ("a @ a", "b @ c", "c @ b", "p @ a", "a @ p", "1 @ a", "a @ 1", "1 @ 1", "p @ p", "1 @ p", "p @ 1")

_TEMPLATES = {
    "delta": {
        "a": ("A", _PATTERN11),
        "b": ("B", ("a @ b", "b @ a", "b @ p", "p @ b", "1 @ b", "b @ 1")),
        "c": ("B", ("c @ a", "a @ c", "p @ c", "c @ p", "c @ 1", "1 @ c")),
        "p": ("C", _PATTERN11),
    },
    "antipode": {
        "a": ("k", ("a", "b", "c", "p", "1")),
        "b": ("m", ("a", "b", "c", "p", "1")),
        "c": ("m", ("a", "c", "b", "p", "1")),
        "p": ("n", ("a", "b", "c", "p", "1")),
    },
    "braiding": {
        ("a", "a"): ("g", _PATTERN11),
        ("a", "b"): ("d", ("b @ a", "a @ b", "p @ b", "b @ p", "1 @ b", "b @ 1")),
        ("a", "c"): ("f", ("c @ a", "a @ c", "p @ c", "c @ p", "1 @ c", "c @ 1")),
        ("b", "b"): ("z", ("b @ b",)),
        ("c", "b"): ("c", _PATTERN11),
        ("b", "c"): ("a", _PATTERN11),
    },
}
_COUNIT = {"a": "e1", "b": "e2", "c": "e2", "p": "e3"}

# axioms whose generators use words of the given total length
_ARITY = {
    "coassociativity": 1, "counit": 1, "antipode-left": 1, "antipode-right": 1, "delta-S": 1,
    "star-delta": 1, "star-S": 1, "star-involution": 2,
    "psi-delta-left": 2, "psi-delta-right": 2, "bialgebra": 2, "antipode-m": 2, "counit-m": 2,
    "psi-m-left": 3, "psi-m-right": 3, "yang-baxter": 3,
}
DEFAULT_AXIOMS = tuple(a for a in hopfstruct.ALL_AXIOMS if a in _ARITY)


def _template_tensor(family: str, terms, gens) -> Tensor:
    return parse_tensor(" + ".join(f"{family}{i}*{t}" for i, t in enumerate(terms, 1)), gens)


def _template_poly(family: str, terms, gens) -> NCPoly:
    return parse_ncpoly(" + ".join(f"{family}{i}*{t}" for i, t in enumerate(terms, 1)), gens)


@dataclass
class AnsatzSpec:
    base: object
    delta: dict
    counit: dict
    antipode: dict
    braiding: dict
    star: dict
    unknowns: tuple
    fixed_constraints: tuple

    def structure(self, assignment: dict | None = None, name: str = "ansatz") -> StructureMaps:
        sub = (lambda t: t.substitute(assignment)) if assignment else (lambda t: t)
        ssub = (lambda s: s.substitute(assignment)) if assignment else (lambda s: s)
        return StructureMaps(
            name, self.base,
            {g: sub(v) for g, v in self.delta.items()},
            {g: ssub(v) for g, v in self.counit.items()},
            {g: sub(v) for g, v in self.antipode.items()},
            self.star,
            {k: sub(v) for k, v in self.braiding.items()},
            BRAIDED,
        )


def build_ansatz() -> AnsatzSpec:
    base = builtin("BR_abcp")
    gens = base.generators
    delta = {g: _template_tensor(fam, terms, gens) for g, (fam, terms) in _TEMPLATES["delta"].items()}
    antipode = {g: _template_poly(fam, terms, gens) for g, (fam, terms) in _TEMPLATES["antipode"].items()}
    counit = {g: Scalar.symbol(s) for g, s in _COUNIT.items()}
    star = {g: NCPoly.gen(v) for g, v in STAR_BR_ABCP.items()}
    braiding = {k: _template_tensor(fam, terms, gens) for k, (fam, terms) in _TEMPLATES["braiding"].items()}
    # entries reached by the tensor star x (x) y -> y* (x) x*
    for (x, y), t in list(braiding.items()):
        ((k, _),) = star_conjugate(Tensor.basis((x,), (y,)), star, base).items()
        key = (k[0][0], k[1][0])
        braiding.setdefault(key, star_conjugate(t, star, base))
    for g in gens:
        braiding[("p", g)] = Tensor.basis((g,), ("p",))
        braiding[(g, "p")] = Tensor.basis(("p",), (g,))
    unknowns = set()
    for t in list(delta.values()) + list(braiding.values()):
        for _, c in t.items():
            unknowns |= c.unknowns()
    for x in list(antipode.values()):
        for _, c in x.items():
            unknowns |= c.unknowns()
    for c in counit.values():
        unknowns |= c.unknowns()
    return AnsatzSpec(
        base, delta, counit, antipode, braiding, star,
        tuple(sorted(unknowns, key=symbol_key)),
        ("psi(p (x) x) = x (x) p", "psi(x (x) p) = p (x) x",
         "psi(b (x) a), psi(c (x) a), psi(c (x) c) from the tensor star"),
    )


# --- equations ---

@dataclass
class EquationSystem:
    equations: list
    provenance: list

    def __len__(self) -> int:
        return len(self.equations)

    def unknowns(self) -> set:
        out = set()
        for e in self.equations:
            out |= e.unknowns()
        return out


def _residual_coeffs(residual):
    if isinstance(residual, Scalar):
        return [((), residual)] if residual else []
    return list(residual.items())


def _fmt_key(k) -> str:
    if isinstance(k, tuple) and k and isinstance(k[0], tuple):
        return " @ ".join(format_word(w) for w in k)
    if isinstance(k, tuple):
        return format_word(k)
    return str(k)


def _fmt_inputs(inputs) -> list:
    return [format_word(w) if isinstance(w, tuple) else str(w) for w in inputs]


def generate_equations(spec: AnsatzSpec, axioms=None, include_star: bool = True) -> EquationSystem:
    axioms = list(DEFAULT_AXIOMS if axioms is None else axioms)
    if not axioms:
        raise ValueError("at least one axiom is required")
    if not include_star:
        axioms = [a for a in axioms if a not in STAR_AXIOMS]
    S = spec.structure()
    seen: dict = {}
    eqs, prov = [], []
    for ax in axioms:
        gen = hopfstruct._AXIOMS[ax]
        rep = CheckReport(ax, S.name, _ARITY[ax])
        for inputs, residual in gen(S, _ARITY[ax], rep):
            for key, coef in _residual_coeffs(residual):
                e = normalize_equation(coef)
                if e.is_zero() or e in seen:
                    continue
                seen[e] = len(eqs)
                eqs.append(e)
                prov.append((ax, tuple(_fmt_inputs(inputs)), _fmt_key(key)))
    return EquationSystem(eqs, prov)


# --- normalization ---

def _q_poly_content(coefs: list) -> Scalar:
    """gcd over Q[q, 1/q] of pure-q Scalars, as a monic polynomial with
    nonzero constant term (so only non-unit factors are returned)."""
    import sympy

    from .linalg import scalar_to_sympy, sympy_to_scalar

    qs = sympy.Symbol("q")
    g = sympy.Integer(0)
    for c in coefs:
        e = sympy.Poly(sympy.expand(scalar_to_sympy(c) * qs ** (-_min_exp(c, "q"))), qs)
        g = e if g == 0 else sympy.gcd(g, e)
        if g.degree() == 0:
            return ONE
    g = sympy.Poly(g, qs).monic()
    return sympy_to_scalar(g.as_expr())


def _min_exp(c: Scalar, name: str) -> int:
    exps = [dict(m).get(name, 0) for m, _ in c.items()]
    return min(exps) if exps else 0


def _content_key(x: Scalar):
    return x


@lru_cache(maxsize=200_000)
def normalize_equation(x: Scalar) -> Scalar:
    """Canonical generator of the ideal (x) for generic q: strip units,
    rational content, sign, and pure-q polynomial factors."""
    if not x:
        return x
    groups = x.split_unknown_monomials()
    if len(groups) > 1 or any(len(c) > 1 for c in groups.values()):
        coefs = list(groups.values())
        if any(len(c) > 1 for c in coefs):
            g = _q_poly_content(coefs)
            if g != ONE:
                x = _exact_div_q(x, g)
    # q-monomial and rational content
    qmin = _min_exp(x, "q")
    nums = [abs(Fraction(c).numerator) for _, c in x.items()]
    dens = [Fraction(c).denominator for _, c in x.items()]
    num_g = 0
    for n in nums:
        num_g = gcd(num_g, n)
    den_l = 1
    for d in dens:
        den_l = den_l * d // gcd(den_l, d)
    lead = x.terms[0][1]
    sign = -1 if lead < 0 else 1
    factor = Scalar.monomial(Fraction(sign * den_l, num_g), {"q": -qmin} if qmin else {})
    return x * factor


def _exact_div_q(x: Scalar, g: Scalar) -> Scalar:
    import sympy

    from .linalg import scalar_to_sympy, sympy_to_scalar

    quo = sympy.cancel(scalar_to_sympy(x) / scalar_to_sympy(g))
    return sympy_to_scalar(sympy.expand(quo))


# --- known solutions as assignments ---

def assignment_from_structure(spec: AnsatzSpec, S: StructureMaps) -> dict:
    """Read unknown values off a concrete structure on the same algebra.
    Raises ValueError if a table has a term outside the template."""
    gens = spec.base.generators
    out: dict = {}

    def take(family, terms, actual, parse):
        seen = set()
        for i, t in enumerate(terms, 1):
            basis = parse(t)
            ((key, _),) = basis.items()
            seen.add(key)
            name = f"{family}{i}"
            val = actual.coeff(*key) if isinstance(actual, Tensor) else actual.coeff(key)
            if name in out and out[name] != val:
                raise ValueError(f"{name}: inconsistent values {out[name]} and {val}")
            out[name] = val
        extra = [k for k, _ in actual.items() if k not in seen]
        if extra:
            raise ValueError(f"{S.name}: terms {extra} lie outside the template")

    for g, (fam, terms) in _TEMPLATES["delta"].items():
        take(fam, terms, S.delta[g], lambda t: parse_tensor(t, gens))
    for g, (fam, terms) in _TEMPLATES["antipode"].items():
        take(fam, terms, S.antipode[g], lambda t: parse_ncpoly(t, gens))
    for k, (fam, terms) in _TEMPLATES["braiding"].items():
        take(fam, terms, S.braiding[k], lambda t: parse_tensor(t, gens))
    for g, name in _COUNIT.items():
        if name in out and out[name] != S.counit[g]:
            raise ValueError(f"{name}: inconsistent counit values")
        out[name] = S.counit[g]
    return out


def known_solutions(spec: AnsatzSpec | None = None) -> dict:
    from .catalog import structure

    spec = spec or build_ansatz()
    return {
        "solution-1": assignment_from_structure(spec, structure("br_sol1_abcp")),
        "solution-2": assignment_from_structure(spec, structure("br_sol2_abcp")),
    }


def substitute_system(system: EquationSystem, assignment: dict) -> list:
    """Nonzero residuals (with provenance) after substitution."""
    out = []
    for e, tag in zip(system.equations, system.provenance):
        v = e.substitute(assignment)
        if v:
            out.append((tag, v))
    return out


# --- solver ---

SOLVED = "solved"
STUCK = "stuck"
EXHAUSTED = "budget-exhausted"


@dataclass
class SolutionBranch:
    assignment: dict
    assumptions: list
    residual: list
    status: str
    trace: list = field(default_factory=list)

    @property
    def free_unknowns(self) -> list:
        out = set()
        for v in self.assignment.values():
            out |= v.unknowns()
        for e in self.residual:
            out |= e.unknowns()
        return sorted(out, key=symbol_key)

    def canonical_key(self) -> tuple:
        order = {SOLVED: 0, STUCK: 1, EXHAUSTED: 2}[self.status]
        items = tuple(sorted(((k, format_scalar(v)) for k, v in self.assignment.items()), key=lambda t: symbol_key(t[0])))
        return (order, len(self.residual), items, tuple(format_scalar(e) for e in self.residual))

    def to_dict(self) -> dict:
        return {
            "status": self.status,
            "assignment": {k: format_scalar(v) for k, v in sorted(self.assignment.items(), key=lambda t: symbol_key(t[0]))},
            "free_unknowns": self.free_unknowns,
            "assumptions": [format_scalar(a) for a in self.assumptions],
            "residual": [format_scalar(e) for e in self.residual],
            "trace_length": len(self.trace),
        }


@dataclass
class SolveResult:
    branches: list
    pruned: list
    steps: int
    exhausted: bool

    @property
    def solved(self) -> list:
        return [b for b in self.branches if b.status == SOLVED]


@dataclass
class _State:
    eqs: frozenset
    assignment: dict
    assumptions: list
    nonzero: frozenset
    trace: list


def _strip_nonzero(e: Scalar, nonzero: frozenset) -> Scalar:
    """Divide out powers of unknowns assumed nonzero that divide every term."""
    if not nonzero or not e:
        return e
    common = None
    for m, _ in e.items():
        exps = {s: k for s, k in m if s in nonzero}
        if common is None:
            common = exps
        else:
            common = {s: min(k, exps[s]) for s, k in common.items() if s in exps}
        if not common:
            return e
    out = {}
    for m, c in e.items():
        d = dict(m)
        for s, k in common.items():
            d[s] -= k
        out[tuple((s, d[s]) for s, _k in m if d[s])] = c
    return Scalar(out)


@lru_cache(maxsize=None)
def _info(e: Scalar) -> tuple:
    """(unknowns, degree, length, unit pivot or None, sort key) for one equation."""
    maxexp: dict = {}
    # an unknown admits a unit pivot when it occurs in exactly one term, to
    # the first power, next to nothing but q and r
    count: dict = {}
    lone: dict = {}
    degree = 0
    for m, _ in e.items():
        unk = [(s, k) for s, k in m if s not in ("q", "r")]
        degree = max(degree, sum(k for _s, k in unk))
        for s, k in unk:
            if k > maxexp.get(s, 0):
                maxexp[s] = k
            count[s] = count.get(s, 0) + 1
            if len(unk) == 1 and k == 1:
                lone[s] = m
    pivot = None
    cands = [x for x in lone if count[x] == 1]
    if cands:
        x = min(cands, key=symbol_key)
        m = lone[x]
        cx = Scalar._raw({tuple(t for t in m if t[0] != x): e._terms[m]})
        rest = Scalar._raw({mm: c for mm, c in e.items() if mm != m})
        pivot = (x, -rest.divide_by_unit(cx))
    unk = frozenset(maxexp)
    key = (len(unk), degree, len(e), format_scalar(e))
    return unk, degree, len(e), pivot, key


def _common_unknown(e: Scalar):
    """An unknown dividing every term of ``e``, if any (smallest by name)."""
    common = None
    for m, _ in e.items():
        names = {s for s, _k in m if s not in ("q", "r")}
        common = names if common is None else common & names
        if not common:
            return None
    return min(common, key=symbol_key) if common else None


def _clean(e: Scalar, nonzero: frozenset) -> Scalar:
    return normalize_equation(_strip_nonzero(e, nonzero))


def _degree(e: Scalar) -> int:
    return max((sum(k for s, k in m if s not in ("q", "r")) for m, _ in e.items()), default=0)


def _eq_order(e: Scalar) -> tuple:
    return _info(e)[4]


def _univariate_roots(e: Scalar, x: str):
    """Roots of a one-unknown equation that are Laurent polynomials in q, and
    whether every factor was linear."""
    import sympy

    from .linalg import scalar_to_sympy, sympy_to_scalar

    X = sympy.Symbol(x)
    roots = []
    all_linear = True
    _, factors = sympy.factor_list(sympy.together(scalar_to_sympy(e)), X)
    for f, _mult in factors:
        if sympy.degree(f, X) == 0:
            continue
        if sympy.degree(f, X) != 1:
            all_linear = False
            continue
        a1, a0 = sympy.Poly(f, X).all_coeffs()
        try:
            roots.append(sympy_to_scalar(sympy.cancel(-a0 / a1)))
        except ValueError:
            all_linear = False
    return roots, all_linear


class _Contradiction(Exception):
    def __init__(self, reason: str):
        super().__init__(reason)
        self.reason = reason


def _rebuild(eqs, touched, nonzero):
    """Replace the ``touched`` equations (old -> new raw value); raises
    _Contradiction on a nonzero equation free of unknowns."""
    out = set(eqs)
    for old, new in touched:
        out.discard(old)
    for _old, new in touched:
        e = _clean(new, nonzero)
        if not e:
            continue
        if not e.unknowns():
            raise _Contradiction(f"{format_scalar(e)} = 0 fails for generic q")
        out.add(e)
    return frozenset(out)


def _apply(state: _State, x: str, value: Scalar, note: str) -> _State:
    bind = {x: value}
    assignment = {k: v.substitute(bind) for k, v in state.assignment.items()}
    assignment[x] = value
    assumptions = []
    nonzero = set(state.nonzero) - {x}
    for a in state.assumptions:
        a2 = a.substitute(bind)
        if not a2:
            raise _Contradiction(f"{note} contradicts {format_scalar(a)} != 0")
        if a2.unknowns():
            assumptions.append(a2)
            if len(a2) == 1:
                ((m, _),) = a2.items()
                nonzero |= {s for s, _k in m if s not in ("q", "r")}
    nonzero = frozenset(nonzero)
    touched = [(e, e.substitute(bind)) for e in state.eqs if x in _info(e)[0]]
    if nonzero != state.nonzero:
        extra = nonzero - state.nonzero
        touched_ids = {id(o) for o, _ in touched}
        touched += [(e, e) for e in state.eqs if id(e) not in touched_ids and _info(e)[0] & extra]
    eqs = _rebuild(state.eqs, touched, nonzero)
    return _State(eqs, assignment, assumptions, nonzero, state.trace + [note])


def _assume_nonzero(state: _State, x: str) -> _State:
    nonzero = state.nonzero | {x}
    assumptions = state.assumptions if x in state.nonzero else state.assumptions + [Scalar.symbol(x)]
    touched = [(e, e) for e in state.eqs if x in _info(e)[0]]
    eqs = _rebuild(state.eqs, touched, nonzero)
    return _State(eqs, dict(state.assignment), assumptions, nonzero,
                  state.trace + [f"{x} != 0"])


def _step(state: _State, eqs: list, push, done: list) -> bool:
    """Act on the simplest equation that admits an action: a unit pivot, a
    split on a common unknown factor, or the roots of a one-unknown
    equation.  Returns False when no equation does."""
    for e in eqs:
        unk, _degree_, _n, piv, _key = _info(e)
        if piv is not None:
            x, value = piv
            push(lambda: _apply(state, x, value, f"{x} = {format_scalar(value)}"), state.trace)
            return True
        x = _common_unknown(e)
        if x is not None:
            # x = 0 is explored first
            push(lambda: _assume_nonzero(state, x), state.trace + [f"{x} != 0"])
            push(lambda: _apply(state, x, ZERO, f"{x} = 0"), state.trace + [f"{x} = 0"])
            return True
        if len(unk) == 1:
            (x,) = unk
            roots, all_linear = _univariate_roots(e, x)
            if not all_linear:
                done.append(SolutionBranch(state.assignment, state.assumptions, eqs, STUCK,
                                           state.trace + [f"{format_scalar(e)} = 0 has a factor with no "
                                                          f"Laurent-polynomial root in {x}"]))
            for root in reversed(roots):
                push(lambda: _apply(state, x, root, f"{x} = {format_scalar(root)}"), state.trace)
            return True
    return False


def solve(system: EquationSystem | list, budget: int = DEFAULT_BUDGET) -> SolveResult:
    """Unit-pivot elimination with branching on common factors and on
    one-unknown equations; deterministic depth-first exploration."""
    raw = system.equations if isinstance(system, EquationSystem) else system
    done: list = []
    pruned: list = []
    try:
        root = _State(_rebuild(frozenset(), [(None, e) for e in raw], frozenset()), {}, [], frozenset(), [])
        stack = [root]
    except _Contradiction as exc:
        pruned.append({"trace": [], "reason": exc.reason})
        stack = []
    steps = 0
    exhausted = False

    def push(make, trace):
        try:
            stack.append(make())
        except _Contradiction as exc:
            pruned.append({"trace": list(trace), "reason": exc.reason})

    while stack:
        state = stack.pop()
        if not state.eqs:
            done.append(SolutionBranch(state.assignment, state.assumptions, [], SOLVED, state.trace))
            continue
        if steps >= budget:
            exhausted = True
            done.append(SolutionBranch(state.assignment, state.assumptions, sorted(state.eqs, key=_eq_order),
                                       EXHAUSTED, state.trace))
            continue
        steps += 1
        eqs = sorted(state.eqs, key=_eq_order)
        if not _step(state, eqs, push, done):
            done.append(SolutionBranch(state.assignment, state.assumptions, eqs, STUCK, state.trace))
    return SolveResult(_dedupe(done), pruned, steps, exhausted)


def _dedupe(branches):
    seen = {}
    for b in branches:
        k = b.canonical_key()
        if k not in seen:
            seen[k] = b
    return [seen[k] for k in sorted(seen)]


# --- verdict ---

def branch_matches(branch: SolutionBranch, target: dict) -> bool:
    """True when ``target`` (a full assignment) is a specialization of the
    branch: every branch value agrees with it once free unknowns take
    their target values."""
    for name, value in target.items():
        mine = branch.assignment.get(name, Scalar.symbol(name))
        if mine.substitute(target) != value:
            return False
    return all(not e.substitute(target) for e in branch.residual)


def match_known_solutions(result: SolveResult, spec: AnsatzSpec | None = None) -> dict:
    """{solution label: index of the first matching solved branch or None}."""
    out = {}
    for label, target in known_solutions(spec).items():
        out[label] = next((i for i, b in enumerate(result.branches)
                           if b.status == SOLVED and branch_matches(b, target)), None)
    return out


def branch_structure(branch: SolutionBranch, spec: AnsatzSpec, name: str = "branch") -> StructureMaps:
    if branch.residual:
        raise ValueError("branch has unsolved equations")
    if branch.free_unknowns:
        raise ValueError(f"branch leaves unknowns free: {', '.join(branch.free_unknowns)}")
    full = {u: ZERO for u in spec.unknowns}
    full.update(branch.assignment)
    return spec.structure(full, name)


def verify_branch(branch: SolutionBranch, spec: AnsatzSpec, max_len: int = 3) -> CheckReport:
    """Run the whole axiom suite at word length ``max_len`` on the structure
    the branch defines; the sub-reports are merged into one."""
    S = branch_structure(branch, spec)
    report = CheckReport("braided-hopf", S.name, max_len)
    for part in hopfstruct.check_all(S, max_len):
        report.merge_part(part.axiom, part)
    return report


def soundness_residuals(branch: SolutionBranch, system: EquationSystem) -> list:
    """Equations of the original system that the branch assignment does not
    reduce to zero (expected empty for a solved branch)."""
    return substitute_system(system, branch.assignment)

"""``braidkit`` command line: list the catalog, run checks, solve the ansatz.

Exit codes: 0 success, 1 a mathematical check failed, 2 usage error,
3 the solver ran out of budget.
"""
from __future__ import annotations

import argparse
import sys

from . import files, report
from .scalar import S

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_BUDGET = 0, 1, 2, 3


class UsageError(Exception):
    pass


def _parse_bindings(items) -> dict:
    out = {}
    for item in items or ():
        key, sep, value = item.partition("=")
        if not sep or not key or not value:
            raise UsageError(f"--specialize expects name=value, got {item!r}")
        try:
            out[key.strip()] = S(value.strip())
        except ValueError as exc:
            raise UsageError(f"bad value in {item!r}: {exc}") from exc
    return out


def _config(args, **extra) -> dict:
    cfg = {"command": args.command}
    cfg.update(extra)
    return cfg


# --- list ---

def cmd_list(args) -> tuple:
    kinds = [args.kind] if args.kind else list(files.KINDS)
    lines = []
    for kind in kinds:
        for name in files.names(kind):
            lines.append(f"{kind:13} {name}")
    return EXIT_OK, lines, None


# --- check ---

def _structure_checks(args, name: str, bindings: dict) -> list:
    from .hopfstruct import ALL_AXIOMS, applicable_axioms, check_all, check_plain_star

    S_ = files.resolve("structure", name)
    if bindings:
        S_ = S_.with_substitution(bindings)
    allowed = applicable_axioms(S_)
    if args.axioms in (None, "all"):
        axioms = allowed
    else:
        axioms = [a.strip() for a in args.axioms.split(",") if a.strip()]
        unknown = [a for a in axioms if a not in ALL_AXIOMS]
        if unknown:
            raise UsageError(f"unknown axioms: {', '.join(unknown)}")
        bad = [a for a in axioms if a not in allowed]
        if bad:
            raise UsageError(f"{', '.join(bad)} do not apply to {name}")
    checks = check_all(S_, args.max_word_len or 3, axioms)
    if args.plain_star:
        if S_.star is None:
            raise UsageError(f"{name} has no star")
        checks.append(check_plain_star(S_, args.max_word_len or 3))
    return checks


def _coacting_structure(beta):
    """A plain Hopf structure on the coacting algebra, if one is shipped."""
    for n in files.names("structure"):
        S_ = files.resolve("structure", n)
        if not S_.braided and S_.base.name == beta.coacting.name.split("|", 1)[0]:
            return S_
    return None


def _coaction_checks(args, name: str, bindings: dict) -> list:
    from .coaction import CoactionMap, adjoint_coaction, check_comodule, check_comodule_algebra, check_psi_naturality

    beta = files.resolve("coaction", name)
    hopf = _coacting_structure(beta)
    if hopf is not None and adjoint_coaction(hopf).table == beta.table:
        beta = CoactionMap(beta.name, beta.coacted, beta.coacting, beta.table, hopf)
    if bindings:
        beta = beta.substitute(bindings)
        hopf = hopf.with_substitution(bindings, base=beta.coacting) if hopf is not None else None
    L = args.max_word_len or 2
    coacted = beta.coacted
    if args.coacted:
        coacted = files.resolve("presentation", args.coacted)
        if bindings:
            coacted = coacted.specialize(bindings)
        if coacted.generators != beta.coacted.generators:
            raise UsageError(f"{args.coacted} does not share the coacted generators of {name}")
    checks = []
    if args.comodule_algebra:
        checks.append(check_comodule_algebra(beta, coacted, L))
    if args.naturality:
        S_ = files.resolve("structure", args.naturality)
        if not S_.braided:
            raise UsageError(f"{args.naturality} is not braided")
        if S_.base.generators != beta.coacted.generators:
            raise UsageError(f"{args.naturality} does not live on the coacted algebra")
        checks.append(check_psi_naturality(beta, S_, L))
    if not checks:
        if hopf is None:
            raise UsageError(f"no Hopf structure on {beta.coacting.name} to check the comodule axioms against")
        checks.append(check_comodule(beta, hopf, L))
    return checks


def _table_checks(args, name: str, bindings: dict) -> list:
    from .coaction import verify_transmutation

    mt = files.resolve("table", name)
    if bindings:
        raise UsageError("tables are checked at their stated parameters; drop --specialize")
    return [verify_transmutation(mt)]


def _presentation_checks(args, name: str, bindings: dict) -> list:
    from .hopfstruct import CheckReport
    from .ncalg import COMPLETION_MAX_LEN, confluence_probe

    P = files.resolve("presentation", name)
    if bindings:
        P = P.specialize(bindings)
    probe = confluence_probe(P, samples=args.samples, max_len=args.max_word_len or 5, seed=args.seed)
    rep = CheckReport("confluence", P.name, probe.max_len)
    rep.checked = probe.samples + len(probe.overlaps)
    for c in probe.counterexamples:
        rep.add_failure([c["word"]], f"{c['first']} vs {c['second']}")
    beyond = 0
    for o in probe.overlaps:
        if o["resolves"]:
            continue
        # rules were completed only up to this length, so longer overlaps may stay open
        if len(o["word"].split("*")) > COMPLETION_MAX_LEN:
            beyond += 1
        else:
            rep.add_failure(["overlap", o["word"]], " / ".join(o["rules"]))
    rep.notes.append(f"{probe.samples} random words, seed {probe.seed}, {len(probe.overlaps)} overlaps")
    if beyond:
        rep.notes.append(f"{beyond} overlaps longer than {COMPLETION_MAX_LEN} letters left unresolved")
    return [rep]


_CHECKERS = {
    "structure": _structure_checks,
    "coaction": _coaction_checks,
    "table": _table_checks,
    "presentation": _presentation_checks,
}


def cmd_check(args) -> tuple:
    try:
        kind = files.kind_of(args.name)
    except KeyError as exc:
        raise UsageError(str(exc.args[0])) from exc
    if kind != "coaction" and (args.comodule_algebra or args.coacted or args.naturality):
        raise UsageError("--comodule-algebra, --coacted and --naturality apply to coactions only")
    if kind != "structure" and (args.axioms not in (None, "all") or args.plain_star):
        raise UsageError("--axioms and --plain-star apply to structures only")
    bindings = _parse_bindings(args.specialize)
    checks = _CHECKERS[kind](args, args.name, bindings)
    holds = all(c.holds for c in checks)
    cfg = _config(
        args, name=args.name, kind=kind, axioms=args.axioms or "all", max_word_len=args.max_word_len,
        specialize={k: str(v) for k, v in bindings.items()}, seed=args.seed,
        comodule_algebra=args.comodule_algebra, coacted=args.coacted, naturality=args.naturality,
        plain_star=args.plain_star,
    )
    doc = report.make_report("check", cfg, checks, verdict={"holds": holds})
    return (EXIT_OK if holds else EXIT_FAIL), report.summary_lines(doc), doc


# --- solve ---

def cmd_solve(args) -> tuple:
    from . import ansatz

    if args.budget < 0:
        raise UsageError("--budget must be nonnegative")
    spec = ansatz.build_ansatz()
    system = ansatz.generate_equations(spec, include_star=not args.no_star)
    result = ansatz.solve(system, args.budget)
    matches = ansatz.match_known_solutions(result, spec)
    checks = []
    for label, target in ansatz.known_solutions(spec).items():
        rep_ = _substitution_report(label, system, target)
        checks.append(rep_)
    verified = {}
    for i, b in enumerate(result.branches):
        if b.status == ansatz.SOLVED and not b.free_unknowns:
            rep_ = ansatz.verify_branch(b, spec)
            rep_.structure = f"branch {i}"
            checks.append(rep_)
            verified[i] = rep_.status
    branches = []
    for i, b in enumerate(result.branches):
        d = {"index": i}
        d.update(b.to_dict())
        d["trace"] = list(b.trace)
        branches.append(d)
    both = all(v is not None for v in matches.values())
    verdict = {
        "known_solutions": {k: (f"branch {v}" if v is not None else "unmatched") for k, v in matches.items()},
        "solved_branches": len(result.solved),
        "stuck_branches": sum(1 for b in result.branches if b.status == ansatz.STUCK),
        "exhausted_branches": sum(1 for b in result.branches if b.status == ansatz.EXHAUSTED),
        "pruned_branches": len(result.pruned),
        "steps": result.steps,
        "budget_exhausted": result.exhausted,
        "verified": {f"branch {i}": s for i, s in verified.items()},
        "all_solutions_certified": False,
    }
    cfg = _config(args, budget=args.budget, include_star=not args.no_star,
                  axioms=[a for a in ansatz.DEFAULT_AXIOMS if not (args.no_star and a in ansatz.STAR_AXIOMS)],
                  unknowns=len(spec.unknowns), equations=len(system))
    doc = report.make_report("solve", cfg, checks, branches, verdict)
    if args.emit_system:
        doc["system"] = [{"equation": str(e), "axiom": p[0], "inputs": list(p[1]), "basis": p[2]}
                         for e, p in zip(system.equations, system.provenance)]
        doc["pruned"] = result.pruned
    lines = report.summary_lines({**doc, "checks": doc["checks"][:2]})
    lines.insert(0, f"{len(system)} equations in {len(spec.unknowns)} unknowns, {result.steps} steps")
    if both:
        code = EXIT_OK
    elif result.exhausted:
        code = EXIT_BUDGET
    else:
        code = EXIT_FAIL
    return code, lines, doc


def _substitution_report(label, system, target):
    from .ansatz import substitute_system
    from .hopfstruct import CheckReport

    rep = CheckReport("substitution", label, 0)
    rep.checked = len(system)
    for tag, v in substitute_system(system, target):
        rep.add_failure([tag[0], *tag[1], tag[2]], v)
    return rep


# --- entry point ---

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="braidkit", description="Exact checks for braided Hopf structures.")
    sub = p.add_subparsers(dest="command", required=True)

    pl = sub.add_parser("list", help="show the catalog")
    pl.add_argument("--kind", choices=files.KINDS)

    pc = sub.add_parser("check", help="check a structure, coaction, table or presentation")
    pc.add_argument("name", help="catalog name or path to a .yaml document")
    pc.add_argument("--axioms", default=None, help="'all' or a comma-separated list")
    pc.add_argument("--max-word-len", type=int, default=None)
    pc.add_argument("--specialize", nargs="+", metavar="NAME=VALUE")
    pc.add_argument("--seed", type=int, default=0)
    pc.add_argument("--samples", type=int, default=1000, help="random words for presentation probes")
    pc.add_argument("--comodule-algebra", action="store_true")
    pc.add_argument("--coacted", default=None, help="presentation multiplying the coacted copy")
    pc.add_argument("--naturality", default=None, metavar="STRUCTURE", help="check psi-naturality against a braided structure")
    pc.add_argument("--plain-star", action="store_true", help="also check ordinary Hopf star conventions")
    _output_args(pc)

    ps = sub.add_parser("solve", help="generate and solve the coefficient ansatz")
    ps.add_argument("--budget", type=int, default=None)
    ps.add_argument("--no-star", action="store_true", help="drop the star axioms from the system")
    ps.add_argument("--emit-system", action="store_true", help="include equations and pruned branches in the report")
    _output_args(ps)
    return p


def _output_args(p):
    p.add_argument("--output", default=None, help="report path (default: $BRAIDKIT_OUTPUT_DIR/<name>.json)")
    p.add_argument("--json", action="store_true", help="print the report instead of the summary")


def _report_stem(args) -> str:
    if args.command == "solve":
        return "solve-nostar" if args.no_star else "solve"
    stem = args.name.rsplit("/", 1)[-1].replace("|", "_").replace("=", "")
    return f"check-{stem}"


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "check" and args.max_word_len is not None and args.max_word_len < 1:
        parser.error("--max-word-len must be at least 1")
    if args.command == "solve" and args.budget is None:
        from .ansatz import DEFAULT_BUDGET

        args.budget = DEFAULT_BUDGET
    handler = {"list": cmd_list, "check": cmd_check, "solve": cmd_solve}[args.command]
    try:
        code, lines, doc = handler(args)
    except (UsageError, files.FormatError, KeyError) as exc:
        msg = exc.args[0] if isinstance(exc, KeyError) and exc.args else exc
        print(f"braidkit: error: {msg}", file=sys.stderr)
        return EXIT_USAGE
    if doc is not None:
        path = args.output or report.default_path(_report_stem(args))
        if path:
            report.write(doc, path)
        if args.json:
            sys.stdout.write(report.dumps(doc))
            return code
    for line in lines:
        print(line)
    return code


if __name__ == "__main__":
    sys.exit(main())

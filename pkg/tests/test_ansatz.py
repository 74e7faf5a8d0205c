import pytest

from braidkit.ansatz import (
    SOLVED,
    STUCK,
    SolutionBranch,
    branch_matches,
    generate_equations,
    match_known_solutions,
    normalize_equation,
    known_solutions,
    solve,
    soundness_residuals,
    substitute_system,
    verify_branch,
)
from braidkit.scalar import ONE, S, Scalar
from braidkit.tensor import Tensor
from braidkit.textformat import parse_tensor


def test_template_shapes(ansatz_spec):
    gens = ansatz_spec.base.generators
    da = ansatz_spec.delta["a"]
    assert len(da) == 11
    assert {u for _, c in da.items() for u in c.unknowns()} == {f"A{i}" for i in range(1, 12)}
    assert ansatz_spec.braiding[("b", "b")] == parse_tensor("z1*b @ b", gens)
    assert ansatz_spec.counit["b"] == ansatz_spec.counit["c"] == Scalar.symbol("e2")
    # 11 + 6 + 11 coproduct, 3 counit, 15 antipode, 46 braiding
    assert len(ansatz_spec.unknowns) == 92
    for g in gens:
        assert ansatz_spec.braiding[("p", g)] == Tensor.basis((g,), ("p",))
        assert ansatz_spec.braiding[(g, "p")] == Tensor.basis(("p",), (g,))


def test_b_and_c_share_coefficients(ansatz_spec):
    ub = {u for _, c in ansatz_spec.delta["b"].items() for u in c.unknowns()}
    uc = {u for _, c in ansatz_spec.delta["c"].items() for u in c.unknowns()}
    assert ub == uc == {f"B{i}" for i in range(1, 7)}


def test_counit_equations_on_b(ansatz_spec):
    system = generate_equations(ansatz_spec, ["counit"])
    # (eps (x) id) Delta(b) = b, expanded by hand
    for text in ("B1*e1 + B4*e3 + B5 - 1", "B2*e2", "B3*e2", "B6*e2"):
        assert normalize_equation(S(text)) in system.equations


def test_coassociativity_degree(ansatz_spec):
    system = generate_equations(ansatz_spec, ["coassociativity"])
    tagged = [e for e, tag in zip(system.equations, system.provenance) if tag[1] == ("b",)]
    assert tagged
    degrees = {max(sum(k for s, k in m if s not in ("q", "r")) for m, _ in e.items()) for e in tagged}
    assert max(degrees) == 2


def test_generate_needs_axioms(ansatz_spec):
    with pytest.raises(ValueError):
        generate_equations(ansatz_spec, [])


def test_equations_canonical(full_solve):
    system, _, _ = full_solve
    assert len(set(system.equations)) == len(system.equations)
    assert all(not e.is_zero() for e in system.equations)
    assert len(system.provenance) == len(system.equations)


@pytest.mark.parametrize("label", ["solution-1", "solution-2"])
def test_known_solutions_are_exact_zeros(full_solve, ansatz_spec, label):
    system, _, _ = full_solve
    assert substitute_system(system, known_solutions(ansatz_spec)[label]) == []


def test_solution_one_values(ansatz_spec):
    sol = known_solutions(ansatz_spec)["solution-1"]
    assert sol["A1"] == sol["A2"] == ONE
    assert all(sol[f"A{i}"].is_zero() for i in range(3, 12))
    assert (sol["B1"], sol["B2"], sol["B3"]) == (ONE, S("-q^-2"), ONE)
    assert (sol["e1"], sol["e2"], sol["e3"]) == (ONE, S(0), S("1 + q^-2"))


def test_toy_single_branch():
    res = solve([S("q*X - q")])
    assert [b.assignment for b in res.branches] == [{"X": ONE}]
    assert res.branches[0].status == SOLVED


def test_toy_product_branches():
    res = solve([S("X*Y")])
    got = sorted(tuple(sorted((k, str(v)) for k, v in b.assignment.items())) for b in res.branches)
    assert got == [(("X", "0"),), (("Y", "0"),)]


def test_toy_contradiction_pruned():
    res = solve([S("X"), S("X - 1")])
    assert res.branches == []
    assert res.pruned


def test_toy_non_laurent_root_is_stuck():
    res = solve([S("2*X^2 - q")])
    assert [b.status for b in res.branches] == [STUCK]


def test_budget_exhaustion_is_flagged(ansatz_spec):
    res = solve(generate_equations(ansatz_spec, ["counit", "coassociativity"]), budget=3)
    assert res.exhausted
    assert any(b.status == "budget-exhausted" for b in res.branches)


def test_determinism(ansatz_spec):
    system = generate_equations(ansatz_spec, ["counit", "antipode-left", "antipode-right"])
    one = solve(system, budget=2000)
    two = solve(system, budget=2000)
    assert [b.to_dict() for b in one.branches] == [b.to_dict() for b in two.branches]
    assert one.pruned == two.pruned


def test_full_solve_finds_both(full_solve, ansatz_spec):
    _, result, _ = full_solve
    matches = match_known_solutions(result, ansatz_spec)
    assert matches["solution-1"] is not None
    assert matches["solution-2"] is not None
    assert not result.exhausted


def test_solved_branches_are_sound(full_solve):
    system, result, _ = full_solve
    for b in result.solved:
        assert soundness_residuals(b, system) == []


def test_assumptions_never_contradict(full_solve):
    _, result, _ = full_solve
    for b in result.branches:
        for a in b.assumptions:
            assert not a.substitute(b.assignment).is_zero()
            assert a.unknowns()


def test_every_branch_is_reported(full_solve):
    _, result, _ = full_solve
    for b in result.branches:
        assert b.status in (SOLVED, STUCK)
        assert (b.status == SOLVED) == (not b.residual)


@pytest.mark.parametrize("label", ["solution-1", "solution-2"])
def test_verify_known_solution(ansatz_spec, label):
    branch = SolutionBranch(known_solutions(ansatz_spec)[label], [], [], SOLVED)
    assert verify_branch(branch, ansatz_spec).holds


def test_verify_matched_branches(full_solve, ansatz_spec):
    _, result, _ = full_solve
    for idx in match_known_solutions(result, ansatz_spec).values():
        assert verify_branch(result.branches[idx], ansatz_spec).holds


def test_perturbed_solution_fails(ansatz_spec):
    sol = dict(known_solutions(ansatz_spec)["solution-1"])
    sol["z1"] = -sol["z1"]
    rep = verify_branch(SolutionBranch(sol, [], [], SOLVED), ansatz_spec)
    assert not rep.holds
    assert rep.witnesses


def test_branch_matching(ansatz_spec):
    target = known_solutions(ansatz_spec)["solution-2"]
    partial = {k: v for k, v in target.items() if k != "z1"}
    assert branch_matches(SolutionBranch(partial, [], [], SOLVED), target)
    wrong = dict(target, z1=target["z1"] + ONE)
    assert not branch_matches(SolutionBranch(wrong, [], [], SOLVED), target)

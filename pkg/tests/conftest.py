import re
import time
from functools import lru_cache

import pytest

from braidkit import catalog
from braidkit.ansatz import build_ansatz, generate_equations, solve
from braidkit.hopfstruct import check_all


@lru_cache(maxsize=None)
def axiom_reports(name: str, L: int = 3) -> dict:
    """{axiom: CheckReport} for a shipped structure, computed once per session."""
    return {r.axiom: r for r in check_all(catalog.structure(name), L)}


@pytest.fixture(scope="session")
def ansatz_spec():
    return build_ansatz()


@pytest.fixture(scope="session")
def full_solve(ansatz_spec):
    """The with-star system and its solve result, plus wall time of both steps."""
    start = time.perf_counter()
    system = generate_equations(ansatz_spec)
    result = solve(system)
    return system, result, time.perf_counter() - start


# one line per acceptance criterion at the end of the run

_CRITERIA: dict = {}
_CRITERION_RE = re.compile(r"test_criterion_(\d+)")


def pytest_runtest_logreport(report):
    m = _CRITERION_RE.search(report.nodeid)
    if not m or "test_acceptance" not in report.nodeid:
        return
    n = int(m.group(1))
    passed, elapsed = _CRITERIA.get(n, (True, 0.0))
    if report.when == "call" or report.failed:
        passed = passed and report.passed if report.when == "call" else passed and not report.failed
    _CRITERIA[n] = (passed, elapsed + report.duration)


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_CRITERIA):
        passed, elapsed = _CRITERIA[n]
        terminalreporter.write_line(f"criterion {n:2d}: {'PASS' if passed else 'FAIL'} ({elapsed:.1f} s)")

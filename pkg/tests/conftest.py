from __future__ import annotations

from functools import lru_cache

from coxinv.group import generate
from coxinv.os_algebra import build_matroid
from coxinv.rootsys import build_root_system
from coxinv.verify import Context


@lru_cache(maxsize=None)
def root_system(name: str):
    return build_root_system(name)


@lru_cache(maxsize=None)
def group(name: str):
    return generate(root_system(name))


@lru_cache(maxsize=None)
def matroid(name: str):
    return build_matroid(root_system(name))


@lru_cache(maxsize=None)
def context(name: str, mode: str = "auto") -> Context:
    return Context(name, mode)


_criteria: dict[str, list[bool]] = {}


def pytest_runtest_logreport(report):
    if "test_acceptance.py::test_criterion_" not in report.nodeid:
        return
    if report.when == "call" or report.failed:
        num = report.nodeid.split("test_criterion_")[1].split("_")[0]
        _criteria.setdefault(num, []).append(report.passed)


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(_criteria, key=int):
        results = _criteria[num]
        status = "PASS" if all(results) else "FAIL"
        terminalreporter.write_line(f"criterion {num}: {status} ({sum(results)}/{len(results)} checks)")

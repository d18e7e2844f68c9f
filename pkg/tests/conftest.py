from __future__ import annotations

import sys
from pathlib import Path

import pytest
from hypothesis import settings

sys.path.insert(0, str(Path(__file__).parent))

from friendship_turan.admissible import cstar_search  # noqa: E402
from friendship_turan.families import enumerate_Pk  # noqa: E402

settings.register_profile("default", deadline=None)
settings.load_profile("default")

_ACCEPTANCE: dict[int, tuple[bool, str]] = {}


def record(criterion: int, passed: bool, detail: str = "") -> None:
    _ACCEPTANCE[criterion] = (bool(passed), detail)


@pytest.fixture(scope="session")
def acceptance():
    return record


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for crit in sorted(_ACCEPTANCE):
        ok, detail = _ACCEPTANCE[crit]
        terminalreporter.write_line(f"criterion {crit:2d}: {'PASS' if ok else 'FAIL'}  {detail}")


@pytest.fixture(scope="session")
def family3():
    return enumerate_Pk(3)


@pytest.fixture(scope="session")
def cstar3(family3):
    """c_3^*(t) for t = 1, 2, 3 with symmetry pruning, computed once per session."""
    return {t: cstar_search(3, t, family3) for t in (1, 2, 3)}

"""Shared fixtures and the acceptance summary printed at the end of a run."""

import pytest

from surfnoise.kernels import ReducedMedium

ACCEPTANCE_LINES: list[str] = []


def record(criterion, label, ok, detail=""):
    """Store one acceptance line; the caller still asserts."""
    line = f"criterion {criterion:>2} {'PASS' if ok else 'FAIL'}  {label}"
    if detail:
        line += f"  [{detail}]"
    ACCEPTANCE_LINES.append(line)
    print(line)
    return ok


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[1])):
        terminalreporter.write_line(line)


@pytest.fixture
def skin_medium():
    """Factory for reduced media in skin-depth units."""

    def make(kind="local", d0=0.0, d0_bulk=0.0, w=1e-6):
        return ReducedMedium.skin_units(w, d0, d0_bulk, kind)

    return make

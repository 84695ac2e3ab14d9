import pytest
from hypothesis import settings

settings.register_profile("default", deadline=None, max_examples=60)
settings.load_profile("default")


@pytest.fixture(scope="session")
def geometry():
    from casimir_diff.pfa import ApparatusGeometry

    return ApparatusGeometry()


ACCEPTANCE_LINES = []


@pytest.fixture
def record():
    """Log one acceptance verdict line; printed in the terminal summary."""

    def _record(criterion, passed, detail):
        ACCEPTANCE_LINES.append(f"[{'PASS' if passed else 'FAIL'}] criterion {criterion}: {detail}")
        return passed

    return _record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)

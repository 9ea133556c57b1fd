import pytest

from hklat import catalog_get, direct_sum, hyperbolic
from hklat.lattice import GramLattice

ACCEPTANCE_RESULTS: list[tuple[str, bool, str]] = []


@pytest.fixture
def U():
    return hyperbolic(1)


@pytest.fixture
def UU():
    return direct_sum(hyperbolic(1), hyperbolic(1))


@pytest.fixture(scope="session")
def K3():
    return catalog_get("K3").lattice


def diag(*entries):
    return GramLattice.diagonal(*entries)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for name, ok, detail in ACCEPTANCE_RESULTS:
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  {name}  {detail}")

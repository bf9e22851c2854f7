import pytest

from latskel.lattice import Poset, build_lattice, chain, downset_lattice

# criterion -> (passed, detail); filled by test_acceptance and echoed at the end
ACCEPTANCE: dict[str, tuple[bool, str]] = {}


def d5():
    """Down-sets of two incomparable points under a common upper point."""
    return downset_lattice(Poset.from_covers(3, [(0, 2), (1, 2)]), name="D5")


def m3():
    return build_lattice(5, [(0, 1), (0, 2), (0, 3), (1, 4), (2, 4), (3, 4)], name="M3")


def n5():
    return build_lattice(5, [(0, 1), (1, 2), (2, 4), (0, 3), (3, 4)], name="N5")


@pytest.fixture
def D5():
    return d5()


@pytest.fixture
def M3():
    return m3()


@pytest.fixture
def N5():
    return n5()


@pytest.fixture
def chain4():
    return chain(4)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(ACCEPTANCE, key=lambda k: int(k.split()[0])):
        ok, detail = ACCEPTANCE[key]
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  criterion {key}: {detail}")

from pathlib import Path

import pytest

from loopbraid.builtin import TYParams, ising, tambara_yamagami, trivial
from loopbraid.catfile import load_category

DATA = Path(__file__).parent / "data"

ACCEPTANCE_LINES: list[str] = []


@pytest.fixture(scope="session")
def triv():
    return trivial()


@pytest.fixture(scope="session")
def ising_cat():
    return ising()


@pytest.fixture(scope="session")
def ty1():
    return tambara_yamagami(TYParams(k=1))


@pytest.fixture(scope="session")
def ty2():
    return tambara_yamagami(TYParams(k=2))


@pytest.fixture(scope="session")
def fib():
    """Fibonacci category: tau⊗tau = 1⊕tau, a pair whose double braiding is not trivial."""
    return load_category(DATA / "fibonacci.json")


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)

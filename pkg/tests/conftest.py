from fractions import Fraction

import numpy as np
import pytest

from yangbax.catalog import standard_r
from yangbax.liealg import abelian, aff1, gl_truncation, sl2
from yangbax.rmatrix import e3_demo
from yangbax.tensor import basis_wedge

# lines recorded by the acceptance suite, echoed in the terminal summary
CRITERION_LINES = []


def pytest_terminal_summary(terminalreporter):
    if CRITERION_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(CRITERION_LINES, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


@pytest.fixture
def S():
    return sl2()


@pytest.fixture
def A():
    return aff1()


@pytest.fixture
def ab4():
    return abelian(4)


@pytest.fixture
def gl2():
    return gl_truncation(2)


@pytest.fixture
def gl3():
    return gl_truncation(3)


@pytest.fixture
def xy(A):
    return basis_wedge(A, 0, 1)


@pytest.fixture
def std(S):
    return standard_r(S)


@pytest.fixture
def ef(S):
    return basis_wedge(S, 1, 2)


@pytest.fixture
def e3():
    return e3_demo()


def F(*args):
    return Fraction(*args)

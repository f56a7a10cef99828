from fractions import Fraction

import pytest

from deltader import lie_core


@pytest.fixture(scope="session")
def sl2():
    return lie_core.sl2()


@pytest.fixture(scope="session")
def sl3_pair():
    return lie_core.sl_n(3)


@pytest.fixture(scope="session")
def sl3(sl3_pair):
    return sl3_pair[0]


@pytest.fixture(scope="session")
def sl3_natural(sl3_pair):
    return sl3_pair[1]


@pytest.fixture(scope="session")
def sl3_adjoint(sl3):
    return lie_core.adjoint_module(sl3)


@pytest.fixture(scope="session")
def v_modules():
    """sl2_module(n) for n = 0..8, built once."""
    return {n: lie_core.sl2_module(n) for n in range(9)}


def F(a, b=1):
    return Fraction(a, b)

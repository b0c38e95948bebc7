import pytest

from spanfactor import GF, QQ, SearchBudget


@pytest.fixture
def f2():
    return GF(2)


@pytest.fixture
def f3():
    return GF(3)


@pytest.fixture
def f5():
    return GF(5)


@pytest.fixture
def qq():
    return QQ


@pytest.fixture
def budget():
    return SearchBudget(rng_seed=0)

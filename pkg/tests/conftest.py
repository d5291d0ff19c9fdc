import pytest

from wter.generators import (
    gen_complete,
    gen_cycle,
    gen_path,
    gen_petersen,
    gen_star,
)


@pytest.fixture
def k4():
    return gen_complete(4)


@pytest.fixture
def p4():
    return gen_path(4)


@pytest.fixture
def c4():
    return gen_cycle(4)


@pytest.fixture
def c5():
    return gen_cycle(5)


@pytest.fixture
def petersen():
    return gen_petersen()


@pytest.fixture
def star5():
    return gen_star(5)

import pathlib

import pytest

from d0l import parse_system

DATA = pathlib.Path(__file__).parent / "data"


def load(name):
    return parse_system((DATA / name).read_text())


@pytest.fixture(scope="session")
def twin():
    """a -> abca, b -> bc, c -> bc; two letters share an image."""
    return load("twin.d0l")


@pytest.fixture(scope="session")
def thue_morse():
    return load("thue-morse.d0l")


@pytest.fixture(scope="session")
def fibonacci():
    return load("fibonacci.d0l")


@pytest.fixture(scope="session")
def tail():
    """a -> ab, b -> b; pumps bounded b's."""
    return load("tail.d0l")


@pytest.fixture(scope="session")
def doubling():
    return load("doubling.d0l")


@pytest.fixture(scope="session")
def rotor():
    """a -> abc, b -> bc, c -> a; non-injective morphism."""
    return load("rotor.d0l")

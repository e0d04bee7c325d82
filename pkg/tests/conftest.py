import pytest

from eqseq import PrimePair


@pytest.fixture(scope="session")
def pair37() -> PrimePair:
    return PrimePair.create(3, 7)


@pytest.fixture(scope="session")
def pair313() -> PrimePair:
    return PrimePair.create(3, 13)


@pytest.fixture(scope="session")
def pair511() -> PrimePair:
    return PrimePair.create(5, 11)

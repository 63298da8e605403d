import pytest
from hypothesis import settings

from harmonic_census import PrimeModulus

settings.register_profile("repro", derandomize=True, database=None)
settings.load_profile("repro")


@pytest.fixture(scope="session")
def m5():
    return PrimeModulus(5)


@pytest.fixture(scope="session")
def m7():
    return PrimeModulus(7)


@pytest.fixture(scope="session")
def m13():
    return PrimeModulus(13)

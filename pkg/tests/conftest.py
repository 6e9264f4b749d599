import pytest

from mdlbound.ingest import load_fixture, to_sequence


@pytest.fixture(scope="session")
def b0059():
    return to_sequence(load_fixture("b0059").sequence, "ACGT")


@pytest.fixture(scope="session")
def b0060():
    return to_sequence(load_fixture("b0060").sequence, "ACGT")

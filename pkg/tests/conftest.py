import pytest

from floordiagrams.invariants import InvariantTable


@pytest.fixture(scope="session")
def table():
    """One shared in-memory invariant table for the whole run."""
    return InvariantTable()

import pytest

from wpexact.intersect import MemoTable


@pytest.fixture(scope="session")
def memo():
    """One shared memo table; values are pure, so sharing is safe."""
    return MemoTable()

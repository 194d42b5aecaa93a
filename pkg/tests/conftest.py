import random

import pytest

from elimcanon import corpus


@pytest.fixture
def rng():
    return random.Random(0xC0FFEE)


@pytest.fixture(scope="session")
def graphs_by_n():
    """Exhaustive non-isomorphic corpora, generated once per session."""

    def get(n: int):
        return corpus.graphs_upto_iso(n)

    return get


@pytest.fixture(scope="session")
def shared_memo():
    """Shared canonical-key memo for distance computations across tests."""
    return {}

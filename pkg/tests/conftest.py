"""Shared fixtures: small deterministic corpora reused across test modules."""

import pytest

from sigdtw import generate_corpus


@pytest.fixture(scope="session")
def corpus2():
    return generate_corpus(n_users=2, n_genuine=10, n_skilled=10, seed=7)


@pytest.fixture(scope="session")
def corpus5():
    return generate_corpus(n_users=5, n_genuine=10, n_skilled=10, seed=7)


@pytest.fixture(scope="session")
def corpus10():
    return generate_corpus(n_users=10, n_genuine=10, n_skilled=10, seed=7)


@pytest.fixture(scope="session")
def corpus50():
    return generate_corpus(n_users=50, n_genuine=10, n_skilled=10, seed=7)

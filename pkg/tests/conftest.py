"""Shared fixtures and small builders used across the test modules."""

import itertools
import random

import pytest

from lynhopf.freealg import BraidedSpace
from lynhopf.scalars import PrimeField


@pytest.fixture
def field():
    return PrimeField(10007)


def random_diagonal(field, d: int, rng: random.Random) -> BraidedSpace:
    """A diagonal braided space with uniformly random nonzero q entries."""
    q = [[field.from_int(rng.randrange(1, field.p)) for _ in range(d)]
         for _ in range(d)]
    return BraidedSpace(field, d, "diagonal", q)


def all_words(d: int, n: int):
    """Every word of length exactly n over 1..d."""
    return itertools.product(range(1, d + 1), repeat=n)

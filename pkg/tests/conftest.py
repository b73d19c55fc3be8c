import random
from fractions import Fraction

import pytest

from robustvote import Distribution, VotingRule


def rule3(table: str) -> VotingRule:
    return VotingRule.from_table_string(3, table)


def random_distribution(rng: random.Random, n: int, strictly_positive=False) -> Distribution:
    """Random rational distribution over the 2**n profiles."""
    size = 2**n
    lo = 1 if strictly_positive else 0
    raw = [rng.randint(lo, 12) for _ in range(size)]
    if sum(raw) == 0:
        raw[rng.randrange(size)] = 1
    total = sum(raw)
    return Distribution(n, tuple(Fraction(v, total) for v in raw))


@pytest.fixture
def rng():
    return random.Random(20260821)

"""
Seeded random sampling shared by every randomized oracle.
"""

from typing import Optional

import numpy as np
from sympy import QQ

from app.config import get_settings


def make_rng(seed: int, *salt: int) -> np.random.Generator:
    """Independent generator for a (seed, salt...) stream."""
    return np.random.default_rng([seed, *salt])


def random_int_matrix(rng: np.random.Generator, size: int, bound: Optional[int] = None) -> list[list[int]]:
    """Square matrix of integers in [-bound, bound]."""
    bound = bound or get_settings().random_entry_bound
    return rng.integers(-bound, bound + 1, size=(size, size)).tolist()


def random_nonzero_rational(rng: np.random.Generator, bound: Optional[int] = None):
    """Nonzero rational p/q with |p|, q bounded."""
    bound = bound or get_settings().random_entry_bound
    numerator = 0
    while numerator == 0:
        numerator = int(rng.integers(-bound, bound + 1))
    denominator = int(rng.integers(1, bound + 1))
    return QQ(numerator, denominator)


def random_permutation(rng: np.random.Generator, size: int) -> list[int]:
    return [int(i) for i in rng.permutation(size)]

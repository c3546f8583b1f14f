import random

import pytest

from braidrev import DimVector, QuiverRep
from braidrev.families import random_matrix, sample_stable_rep


def stable_rep(dims: tuple, seed: int) -> QuiverRep:
    """Seeded random representation with a simple braid image."""
    return sample_stable_rep(DimVector(*dims), random.Random(seed))


def invertible(rng: random.Random, n: int):
    mat = random_matrix(rng, n, n)
    while not mat.det():
        mat = random_matrix(rng, n, n)
    return mat


@pytest.fixture
def rng():
    return random.Random(20240817)

import random
from fractions import Fraction

import pytest

from chabauty.exactmat import MatrixSubspace, RatMatrix

SEED = 20240611


def random_fraction(rng, bound=5):
    return Fraction(rng.randint(-bound, bound), rng.randint(1, 3))


def random_matrix(rng, n, density=0.6, bound=5):
    return RatMatrix(n, n, tuple(random_fraction(rng, bound) if rng.random() < density else 0 for _ in range(n * n)))


def random_subspace(rng, n, max_dim=None):
    max_dim = n * n if max_dim is None else max_dim
    k = rng.randint(0, max_dim)
    return MatrixSubspace.span([random_matrix(rng, n) for _ in range(k)], n=n)


def random_invertible(rng, n):
    """Unit lower times unit upper triangular, so always invertible."""
    lo = [[1 if i == j else (random_fraction(rng, 3) if i > j else 0) for j in range(n)] for i in range(n)]
    up = [[1 if i == j else (random_fraction(rng, 3) if i < j else 0) for j in range(n)] for i in range(n)]
    return RatMatrix.from_rows(lo) @ RatMatrix.from_rows(up)


@pytest.fixture
def rng():
    return random.Random(SEED)

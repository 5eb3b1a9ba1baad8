from itertools import product

import pytest

from cayley_doubling.doubling import gf_algebra
from cayley_doubling.gf_tower import make_tower


@pytest.fixture(scope="session")
def gf9():
    return make_tower(3, 1, 2)


@pytest.fixture(scope="session")
def gf9_algebras(gf9):
    """All 8 x 16 doublings of GF(9)/GF(3), in canonical order."""
    return [gf_algebra(gf9, c, list(s)) for c in range(1, gf9.q) for s in product(range(2), repeat=4)]

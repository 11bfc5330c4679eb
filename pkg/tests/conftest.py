import numpy as np
import pytest

from rieszfeller import BandlimitSpec, CliffordAlgebra, CliffordField, GridSpec, make_bandlimited


@pytest.fixture
def grid2():
    return GridSpec.cubic(2, 64, 0.5)


@pytest.fixture
def alg2():
    return CliffordAlgebra(2)


@pytest.fixture
def rng():
    return np.random.default_rng(1234)


def random_field(grid, algebra, rng, zero_dc=False):
    data = rng.standard_normal(grid.shape + (algebra.dim,)) + 1j * rng.standard_normal(
        grid.shape + (algebra.dim,)
    )
    f = CliffordField(grid, algebra, data)
    if zero_dc:
        from rieszfeller import dft_forward, dft_inverse

        F = dft_forward(f)
        F.data[tuple(N // 2 for N in grid.sizes)] = 0.0
        f = dft_inverse(F)
    return f


def bandlimited(grid, algebra, R=2.0, seed=0):
    return make_bandlimited(grid, algebra, BandlimitSpec(R=R, seed=seed))


@pytest.fixture
def field2(grid2, alg2, rng):
    return random_field(grid2, alg2, rng)


@pytest.fixture
def field2_zero_dc(grid2, alg2, rng):
    return random_field(grid2, alg2, rng, zero_dc=True)

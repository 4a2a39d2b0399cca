import numpy as np
import pytest

from vortexwavelab.grid import GridSpec, Field
from vortexwavelab.spectral import periodic_cauchy_kernel, periodic_square_kernel


@pytest.fixture(scope="session")
def grid():
    """Default working grid."""
    return GridSpec(200.0, 2 ** 14)


@pytest.fixture(scope="session")
def small_grid():
    """Cheap grid for O(n^2) quadrature cross-checks."""
    return GridSpec(200.0, 2 ** 10)


def per_pole(grid, w, order=1):
    """Field sampling the periodization of 1/(a - w)**order (order 1 or 2).

    This is how a rational function of the line is faithfully realized on
    the periodic interval; raw samples of the unperiodized function differ
    from any periodic function by O(1/L) and would drown spectral tests.
    """
    if order == 1:
        return Field(grid, periodic_cauchy_kernel(grid.alpha - w, grid.half_length))
    if order == 2:
        return Field(grid, periodic_square_kernel(grid.alpha - w, grid.half_length))
    raise ValueError(order)


def mean_zero(f):
    return Field(f.grid, f.samples - f.mean())


def band_limited(grid, rng, modes=32, scale=1.0):
    """Random real mean-zero field supported on grid modes 1..modes."""
    spec = np.zeros(grid.n_points, dtype=np.complex128)
    coef = rng.normal(size=modes) + 1j * rng.normal(size=modes)
    spec[1:modes + 1] = coef
    spec[-modes:] = np.conj(coef[::-1])
    return Field(grid, np.fft.ifft(spec).real * scale)

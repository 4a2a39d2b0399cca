"""Uniform periodic grid and complex-sampled fields.

The real line is truncated to the periodic interval [-half_length,
half_length).  Spectral operators act on the discrete modes
k_m = pi*m/half_length with m = -n/2 .. n/2-1, so anything fed to them
must either be genuinely periodic or decay well below the working
tolerance before the interval ends.  Functions with algebraic tails
(vortex-induced velocities and the like) are represented through their
periodization; see :mod:`vortexwavelab.spectral` for the periodized
kernels that keep that representation exact.
"""

import numpy as np

from .errors import GridMismatchError

_DEF_REAL_TOL = 1e-12


class GridSpec:
    """Equispaced periodic grid on [-half_length, half_length).

    n_points must be a power of two and at least 16; spacing * n_points
    equals 2 * half_length exactly in floating point (division by a
    power of two is exact).
    """

    def __init__(self, half_length, n_points):
        n_points = int(n_points)
        if n_points < 16 or (n_points & (n_points - 1)) != 0:
            raise ValueError("n_points must be a power of two >= 16, got %d" % n_points)
        if half_length <= 0:
            raise ValueError("half_length must be positive")
        self.half_length = float(half_length)
        self.n_points = n_points
        self.spacing = 2.0 * self.half_length / n_points
        self.alpha = -self.half_length + self.spacing * np.arange(n_points)
        # fftfreq ordering, radians per unit length: k_m = pi*m/half_length
        self.wavenumbers = 2.0 * np.pi * np.fft.fftfreq(n_points, d=self.spacing)
        self.abs_k = np.abs(self.wavenumbers)
        self.k_max = float(np.max(self.abs_k))

    def __eq__(self, other):
        return (isinstance(other, GridSpec)
                and other.half_length == self.half_length
                and other.n_points == self.n_points)

    def __hash__(self):
        return hash((self.half_length, self.n_points))

    def __repr__(self):
        return "GridSpec(half_length=%g, n_points=%d)" % (self.half_length, self.n_points)


class Field:
    """A complex-valued function sampled on a :class:`GridSpec`.

    The raw FFT of the samples is computed lazily and cached; treat the
    sample array as immutable once the field is constructed (compute-once,
    read-many), so sharing a Field across workers is safe.
    """

    __slots__ = ("grid", "samples", "_fft")

    def __init__(self, grid, samples):
        samples = np.asarray(samples, dtype=np.complex128)
        if samples.shape != (grid.n_points,):
            raise ValueError("samples shape %s does not match grid with %d points"
                             % (samples.shape, grid.n_points))
        self.grid = grid
        self.samples = samples
        self._fft = None

    @property
    def fft(self):
        """Cached raw ``np.fft.fft`` of the samples."""
        if self._fft is None:
            self._fft = np.fft.fft(self.samples)
        return self._fft

    @property
    def spectrum(self):
        """Fourier coefficients under fhat(k) = sum_j f(a_j) e^(-i k a_j) h
        (the fft phased to the grid origin and weighted by the spacing)."""
        n = self.grid.n_points
        phase = np.where(np.arange(n) % 2 == 0, 1.0, -1.0)  # e^(i k_m L) = (-1)^m
        return self.grid.spacing * phase * self.fft

    def is_real(self, tol=_DEF_REAL_TOL):
        """True when the imaginary part is negligible relative to the size
        of the field (scale-free check; an all-zero field counts as real)."""
        scale = np.max(np.abs(self.samples))
        if scale == 0.0:
            return True
        return np.max(np.abs(self.samples.imag)) <= tol * scale

    @property
    def real(self):
        return Field(self.grid, self.samples.real)

    @property
    def imag(self):
        return Field(self.grid, self.samples.imag)

    def conj(self):
        return Field(self.grid, np.conj(self.samples))

    def l2_norm(self):
        """Continuum L2 norm of the sampled function (trapezoid weight)."""
        return float(np.sqrt(self.grid.spacing * np.sum(np.abs(self.samples) ** 2)))

    def sup_norm(self):
        return float(np.max(np.abs(self.samples)))

    def mean(self):
        """Interval average (1/2L) * integral."""
        return complex(np.mean(self.samples))

    # Small arithmetic surface so call sites read like formulas.
    def _coerce(self, other):
        if isinstance(other, Field):
            if other.grid != self.grid:
                raise GridMismatchError("fields live on different grids")
            return other.samples
        return other

    def __add__(self, other):
        return Field(self.grid, self.samples + self._coerce(other))

    __radd__ = __add__

    def __sub__(self, other):
        return Field(self.grid, self.samples - self._coerce(other))

    def __rsub__(self, other):
        return Field(self.grid, self._coerce(other) - self.samples)

    def __mul__(self, other):
        return Field(self.grid, self.samples * self._coerce(other))

    __rmul__ = __mul__

    def __truediv__(self, other):
        return Field(self.grid, self.samples / self._coerce(other))

    def __neg__(self):
        return Field(self.grid, -self.samples)


def check_same_grid(*fields):
    """Raise GridMismatchError unless all fields share one grid."""
    grid = fields[0].grid
    for f in fields[1:]:
        if f.grid != grid:
            raise GridMismatchError("fields live on different grids")
    return grid


def field_from_function(grid, fn):
    """Sample a callable of alpha into a Field."""
    return Field(grid, np.asarray(fn(grid.alpha), dtype=np.complex128))


def zero_field(grid):
    return Field(grid, np.zeros(grid.n_points))


def constant_field(grid, value):
    return Field(grid, np.full(grid.n_points, value, dtype=np.complex128))

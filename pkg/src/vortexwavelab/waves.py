"""Assembly of the derived quantities of the wave + point-vortex system.

State is (W, U, vortices, t): W and U are the real parts of the interface
displacement Z - alpha and of the velocity trace F; both extend to
boundary values of functions holomorphic below the interface, so

    Z = alpha + (I + H) W,        F = (I + H) U.

From these the assembly derives, per state:

    Q      vortex-induced (conjugate) velocity trace,
    DtZ    full velocity trace conj(F) + conj(Q),
    zdot_j vortex velocities (mutual induction + wave-induced drift),
    DtQ    material derivative of Q,
    b      transport coefficient of the material derivative D_t = d_t + b d_a,
    A1     Taylor-sign coefficient (A1 < 0 somewhere = Rayleigh-Taylor
           unstable), with A = A1 / |Z_a|^2,
    G, R   the forcing felt by (U, W).

b is computed from its defining property: b minus the holomorphic pieces
(D_t Z (1/Z_a - 1) + conj(Q) + conj(F)) must itself be the boundary value
of a function holomorphic below and decaying, i.e. annihilated by the
projection (I - H)/2 up to its mean.  b_residual measures exactly that
and is carried as a per-state diagnostic; it is formula-convention
independent, which is the point.
"""

from dataclasses import dataclass

import numpy as np

from .errors import VortexProximityError
from .grid import Field, check_same_grid
from .spectral import (analytic_projection, apply_multiplier, cauchy_velocity,
                       commutator_hilbert, derivative, lambda_op, low_pass,
                       periodic_cauchy_kernel, periodic_square_kernel, pminus,
                       sq_diff_integral)

TWO_PI = 2.0 * np.pi


@dataclass(frozen=True)
class Vortex:
    """Point vortex: complex position (strictly below the interface) and
    signed strength."""

    position: complex
    strength: float


@dataclass
class WaveState:
    """Full dynamical state (W, U, vortices, t)."""

    W: Field
    U: Field
    vortices: tuple
    t: float = 0.0

    def __post_init__(self):
        check_same_grid(self.W, self.U)
        self.vortices = tuple(self.vortices)

    @property
    def grid(self):
        return self.W.grid


@dataclass
class DerivedFields:
    """Everything computable from one state, assembled in a single pass
    and read-only afterwards."""

    Z: Field
    Z_alpha: Field
    F: Field
    Q: Field
    DtZ: Field
    DtQ: Field
    b: Field
    b0: Field
    b1: Field
    commutator_F: Field     # Re [conj(F), H] (1/Z_a - 1), reused by the W-equation
    A1: Field
    A: Field
    G: Field
    R: Field
    zdots: tuple
    b_residual: float
    d_I: float
    chord_arc: float
    inf_A1: float
    argmin_alpha: float


def reconstruct(W, U):
    """(Z, F, Z_alpha) from the real parts W, U.

    The plus sign in (I + H) is forced: with the -sgn(k) multiplier it
    projects onto k <= 0 modes, exactly the boundary values of functions
    holomorphic below the interface, so (I - H)(Z - alpha) vanishes.
    """
    grid = check_same_grid(W, U)
    if not (W.is_real() and U.is_real()):
        raise ValueError("W and U must be real fields")
    plus = 1.0 - np.sign(grid.wavenumbers)
    Zm = apply_multiplier(W, plus)            # Z - alpha
    F = apply_multiplier(U, plus)
    Z = Field(grid, grid.alpha + Zm.samples)
    Z_alpha = 1.0 + derivative(Zm)
    return Z, F, Z_alpha


def interface_distance(Z, vortices):
    """min over grid nodes and vortices of |Z(a) - z_j|."""
    if not vortices:
        return np.inf
    return float(min(np.min(np.abs(Z.samples - v.position)) for v in vortices))


def chord_arc_constant(Z):
    """min over sampled pairs of |Z(a) - Z(b)| / |a - b|.

    Pairs are taken at every separation s*h with s a power of two (all
    offsets at each separation), which resolves self-approach at any
    scale without the O(n^2) full search.
    """
    grid = Z.grid
    best = np.inf
    s = 1
    while s <= grid.n_points // 2:
        d = np.abs(Z.samples[s:] - Z.samples[:-s]) / (s * grid.spacing)
        best = min(best, float(np.min(d)))
        s *= 2
    return best


def compute_Q(Z, vortices):
    """Q = -sum_j (lam_j i / 2 pi) / (Z - z_j), periodized kernel."""
    out = np.zeros(Z.grid.n_points, dtype=np.complex128)
    for v in vortices:
        out -= (v.strength * 1j / TWO_PI) * periodic_cauchy_kernel(
            Z.samples - v.position, Z.grid.half_length)
    return Field(Z.grid, out)


def vortex_velocity(Z, F, Z_alpha, vortices, j):
    """zdot_j = conj(U(z_j)) + sum_{k != j} (lam_k i / 2 pi) / conj(z_j - z_k).

    The mutual-induction part keeps the plain 1/conj(dz) form (point
    evaluation, no periodization): for the symmetric pair with no wave it
    reduces to lam i / (4 pi x) exactly.
    """
    zj = vortices[j].position
    u = cauchy_velocity(Z, F, zj, Z_alpha=Z_alpha)
    total = np.conj(u)
    for k, v in enumerate(vortices):
        if k != j:
            total += v.strength * 1j / (TWO_PI * np.conj(zj - v.position))
    return complex(total)


def compute_DtQ(Z, DtZ, vortices, zdots):
    """DtQ = sum_j (lam_j i / 2 pi) (DtZ - zdot_j) / (Z - z_j)^2."""
    out = np.zeros(Z.grid.n_points, dtype=np.complex128)
    for v, zd in zip(vortices, zdots):
        kern = periodic_square_kernel(Z.samples - v.position, Z.grid.half_length)
        out += (v.strength * 1j / TWO_PI) * (DtZ.samples - zd) * kern
    return Field(Z.grid, out)


def compute_b(U, F, Q, DtZ, Z_alpha):
    """Transport coefficient b and its split b = b0 + b1.

    b  = Re (I-H)[DtZ (1/Z_a - 1)] + Re (I-H) conj(Q) + 2 Re F
    b0 = 2 Re F + Re [conj(F), H](1/Z_a - 1)      (the rough, wave part)
    b1 = b - b0                                    (more regular)

    Also returns the commutator field entering the W-equation and the
    holomorphicity residual
    ||P_-( b - DtZ(1/Z_a - 1) - conj(Q) - conj(F) )||_L2, which must stay
    at quadrature level (<= 1e-6 * (1 + ||b||_L2)) for a trustworthy b.
    """
    grid = U.grid
    g = Field(grid, 1.0 / Z_alpha.samples - 1.0)
    twoU = 2.0 * U.samples.real
    b = Field(grid, analytic_projection(DtZ * g).samples.real
              + analytic_projection(Q.conj()).samples.real
              + twoU)
    comm = Field(grid, commutator_hilbert(F.conj(), g).samples.real)
    b0 = Field(grid, twoU + comm.samples)
    b1 = b - b0
    resid = b - DtZ * g - Q.conj() - F.conj()
    b_residual = pminus(resid).l2_norm()
    return b, b0, b1, comm, b_residual


def compute_A1(Z, Z_alpha, DtZ, vortices, zdots):
    """Taylor-sign coefficient

         A1 = 1 + (1/2pi) int |DtZ(a) - DtZ(b)|^2/(a-b)^2 db
                - sum_j (lam_j/2pi) Re{ (I-H)[Z_a/(Z-z_j)^2] (DtZ - zdot_j) }.
    """
    grid = Z.grid
    out = 1.0 + sq_diff_integral(DtZ).samples.real
    for v, zd in zip(vortices, zdots):
        kern = Field(grid, Z_alpha.samples * periodic_square_kernel(
            Z.samples - v.position, grid.half_length))
        proj = analytic_projection(kern).samples
        out -= (v.strength / TWO_PI) * (proj * (DtZ.samples - zd)).real
    return Field(grid, out)


def refine_minimum(alpha, values, i):
    """Parabolic refinement of a grid minimum through three points."""
    n = len(values)
    im, ip = (i - 1) % n, (i + 1) % n
    fm, f0, fp = values[im], values[i], values[ip]
    denom = fp - 2.0 * f0 + fm
    if denom <= 0:
        return float(alpha[i]), float(f0)
    shift = 0.5 * (fm - fp) / denom
    shift = float(np.clip(shift, -1.0, 1.0))
    h = alpha[1] - alpha[0]
    a_star = alpha[i] + shift * h
    f_star = f0 - 0.125 * (fm - fp) ** 2 / denom
    return float(a_star), float(f_star)


def assemble(state, min_vortex_spacings=4.0):
    """One full derived-field pass over a state; raises
    VortexProximityError when a vortex is too close to the interface for
    the quadratures to mean anything."""
    W, U = state.W, state.U
    grid = state.grid
    Z, F, Z_alpha = reconstruct(W, U)
    d_I = interface_distance(Z, state.vortices)
    if d_I < min_vortex_spacings * grid.spacing:
        raise VortexProximityError(
            "vortex within %.3g of the interface (< %g grid spacings)"
            % (d_I, min_vortex_spacings))
    Q = compute_Q(Z, state.vortices)
    DtZ = F.conj() + Q.conj()
    zdots = tuple(vortex_velocity(Z, F, Z_alpha, state.vortices, j)
                  for j in range(len(state.vortices)))
    DtQ = compute_DtQ(Z, DtZ, state.vortices, zdots)
    b, b0, b1, comm, b_residual = compute_b(U, F, Q, DtZ, Z_alpha)
    A1 = compute_A1(Z, Z_alpha, DtZ, state.vortices, zdots)
    A = Field(grid, A1.samples.real / np.abs(Z_alpha.samples) ** 2)
    G = Field(grid, -DtQ.samples.real)
    R = Field(grid, Q.samples.real - b1.samples.real)
    vals = A1.samples.real
    i_min = int(np.argmin(vals))
    argmin_alpha, inf_A1 = refine_minimum(grid.alpha, vals, i_min)
    return DerivedFields(Z=Z, Z_alpha=Z_alpha, F=F, Q=Q, DtZ=DtZ, DtQ=DtQ,
                         b=b, b0=b0, b1=b1, commutator_F=comm,
                         A1=A1, A=A, G=G, R=R, zdots=zdots,
                         b_residual=b_residual, d_I=d_I,
                         chord_arc=chord_arc_constant(Z),
                         inf_A1=inf_A1, argmin_alpha=argmin_alpha)


def compute_G_R(derived):
    """(G, R) = (-Re DtQ, Re Q - b1); thin accessor kept for symmetry with
    the assembly pieces."""
    return derived.G, derived.R


def rhs(state, derived=None):
    """Time derivatives (dW/dt, dU/dt, [dz_j/dt]) of the evolution

        d_t U = -b dU/da + A |d/da| W + G
        d_t W = -b dW/da - U - Re[conj(F), H](1/Z_a - 1) + R

    plus the vortex ODEs.  ``derived`` may be passed in when the caller
    already assembled this state.
    """
    if derived is None:
        derived = assemble(state)
    dW_a = derivative(state.W).samples.real
    dU_a = derivative(state.U).samples.real
    bs = derived.b.samples.real
    dU = Field(state.grid, -bs * dU_a
               + derived.A.samples.real * lambda_op(state.W).samples.real
               + derived.G.samples.real)
    dW = Field(state.grid, -bs * dW_a
               - state.U.samples.real
               - derived.commutator_F.samples.real
               + derived.R.samples.real)
    # keep the evolved fields band-limited to half the grid band (de-aliasing)
    return low_pass(dW), low_pass(dU), list(derived.zdots)

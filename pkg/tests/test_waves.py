"""Derived-field assembly tests: reconstruction, vortex fields, transport
coefficient, Taylor coefficient, and the evolution right-hand side."""

import math

import numpy as np
import pytest

from vortexwavelab.errors import VortexProximityError
from vortexwavelab.grid import Field, GridSpec, field_from_function, zero_field
from vortexwavelab.spectral import (analytic_projection, commutator_hilbert,
                                    low_pass, periodic_cauchy_kernel,
                                    periodic_square_kernel, pv_commutator)
from vortexwavelab.taylor import PairConfig, a1_flat_pair
from vortexwavelab.waves import (Vortex, WaveState, assemble, chord_arc_constant,
                                 compute_Q, interface_distance, reconstruct, rhs)

from conftest import band_limited, per_pole

TWO_PI = 2 * math.pi


def pair_vortices(x, y, lam):
    return (Vortex(complex(-x, y), lam), Vortex(complex(x, y), -lam))


def flat_pair_state(grid, x, y, lam):
    return WaveState(zero_field(grid), zero_field(grid), pair_vortices(x, y, lam))


def odd_bump_state(grid, amp, vortices=()):
    f = field_from_function(grid, lambda a: amp * a * np.exp(-a * a / 4))
    W = Field(grid, low_pass(f).samples.real)
    return WaveState(W, Field(grid, W.samples.copy()), vortices)


# ----------------------------------------------------------------------
# reconstruction

def test_reconstruct_trivial(grid):
    Z, F, Z_alpha = reconstruct(zero_field(grid), zero_field(grid))
    assert np.max(np.abs(Z.samples - grid.alpha)) == 0.0
    assert F.sup_norm() == 0.0
    assert np.max(np.abs(Z_alpha.samples - 1.0)) == 0.0


def test_reconstruct_pole_eigenrelation(grid):
    # W = Re 1/(a - i) = a/(a^2+1): Z - alpha must come out as the full
    # boundary value 1/(a - i) (periodized, mean removed)
    p = per_pole(grid, 1j)
    W = Field(grid, p.samples.real)
    Z, _, _ = reconstruct(W, zero_field(grid))
    expected = p.samples - p.mean()
    assert np.max(np.abs(Z.samples - grid.alpha - expected)) <= 1e-12


def test_reconstruct_holomorphic_projection(grid):
    rng = np.random.default_rng(31)
    W = band_limited(grid, rng)
    U = band_limited(grid, rng)
    Z, F, _ = reconstruct(W, U)
    zm = Field(grid, Z.samples - grid.alpha)
    for f, src in ((zm, W), (F, U)):
        proj = analytic_projection(f)
        resid = Field(grid, proj.samples - np.mean(proj.samples)).l2_norm()
        assert resid <= 1e-10 * (1.0 + src.l2_norm())


def test_reconstruct_rejects_complex_input(grid):
    bad = Field(grid, 1j * np.ones(grid.n_points))
    with pytest.raises(ValueError):
        reconstruct(bad, zero_field(grid))


# ----------------------------------------------------------------------
# vortex-induced fields

def test_compute_q_no_vortices(grid):
    Z = Field(grid, grid.alpha.astype(complex))
    assert compute_Q(Z, ()).sup_norm() == 0.0


def test_compute_q_pair_value_and_symmetry(grid):
    Z = Field(grid, grid.alpha.astype(complex))
    vortices = (Vortex(-1 - 2j, math.pi), Vortex(1 - 2j, -math.pi))
    Q = compute_Q(Z, vortices)
    i0 = grid.n_points // 2          # alpha = 0
    # line value: -(pi i/2pi) [1/(1+2i) - 1/(-1+2i)] = -0.2i, periodization O(1/L^2)
    assert abs(Q.samples[i0] + 0.2j) <= 1e-4
    # exact against the periodized arithmetic
    expected = -(math.pi * 1j / TWO_PI) * (
        periodic_cauchy_kernel(0 - (-1 - 2j), grid.half_length)
        - periodic_cauchy_kernel(0 - (1 - 2j), grid.half_length))
    assert abs(Q.samples[i0] - expected) <= 1e-14
    rev = (-np.arange(grid.n_points)) % grid.n_points
    assert np.max(np.abs(Q.samples.real + Q.samples.real[rev])) <= 1e-13
    assert np.max(np.abs(Q.samples.imag - Q.samples.imag[rev])) <= 1e-13


def test_dtq_single_vortex_symbolic(grid):
    # flat frozen interface, F = 0, single vortex: the assembled DtQ must
    # equal (lam i/2pi)(Qbar - zdot) kappa2(a - z) built by hand
    lam, z = 5.0, -1.5 - 3.0j
    state = WaveState(zero_field(grid), zero_field(grid), (Vortex(z, lam),))
    d = assemble(state)
    qbar = np.conj(d.Q.samples)
    zdot = d.zdots[0]
    by_hand = (lam * 1j / TWO_PI) * (qbar - zdot) * periodic_square_kernel(
        grid.alpha - z, grid.half_length)
    assert np.max(np.abs(d.DtQ.samples - by_hand)) <= 1e-12
    assert zdot == 0.0               # single vortex, no wave


def test_dtq_and_g_decay_with_depth(grid):
    sups_dtq, sups_g = [], []
    for y in (-6.0, -9.0, -13.5):
        d = assemble(flat_pair_state(grid, 1.0, y, 10.0))
        sups_dtq.append(d.DtQ.sup_norm())
        sups_g.append(d.G.sup_norm())
    assert sups_dtq[0] > sups_dtq[1] > sups_dtq[2]
    assert sups_g[0] > sups_g[1] > sups_g[2]


def test_vortex_velocity_pair_exact(grid):
    d = assemble(flat_pair_state(grid, 1.0, -6.0, 4 * math.pi))
    assert abs(d.zdots[0] - 1j) <= 1e-12
    assert abs(d.zdots[1] - 1j) <= 1e-12


def test_vortex_velocity_small_wave_mostly_vertical(grid):
    state = odd_bump_state(grid, 1e-2, pair_vortices(1.0, -6.0, 4 * math.pi))
    d = assemble(state)
    for zd in d.zdots:
        assert abs(zd.real) < 0.1 * abs(zd.imag)


# ----------------------------------------------------------------------
# transport coefficient

def test_b_zero_cases(grid):
    d = assemble(WaveState(zero_field(grid), zero_field(grid), ()))
    assert d.b.sup_norm() == 0.0
    d = assemble(flat_pair_state(grid, 1.0, -6.0, 4 * math.pi))
    assert d.b.sup_norm() <= 1e-12       # (I-H) kills the pair trace
    assert d.b_residual <= 1e-12


def test_b_residual_bound_generic(grid):
    state = odd_bump_state(grid, 5e-2, pair_vortices(1.0, -8.0, 20.0))
    d = assemble(state)
    assert d.b_residual <= 1e-6 * (1.0 + d.b.l2_norm())


def test_b0_matches_pv_quadrature(small_grid):
    # dual path for the wave part of b: multiplier-form commutator against
    # the O(n^2) principal-value quadrature
    rng = np.random.default_rng(32)
    U = band_limited(small_grid, rng, modes=16, scale=0.05)
    W = band_limited(small_grid, rng, modes=16, scale=0.05)
    Z, F, Z_alpha = reconstruct(W, U)
    g = Field(small_grid, 1.0 / Z_alpha.samples - 1.0)
    via_mult = commutator_hilbert(F.conj(), g)
    via_pv = pv_commutator(F.conj(), g)
    assert np.max(np.abs(via_mult.samples - via_pv.samples)) <= 1e-8


# ----------------------------------------------------------------------
# Taylor coefficient

def test_a1_equilibrium(grid):
    d = assemble(WaveState(zero_field(grid), zero_field(grid), ()))
    assert np.max(np.abs(d.A1.samples - 1.0)) == 0.0


def test_a1_dual_path_wide_grid():
    wide = GridSpec(3200.0, 2 ** 18)
    state = flat_pair_state(wide, 1.0, -2.0, TWO_PI)
    d = assemble(state)
    oracle = a1_flat_pair(wide.alpha, PairConfig(1.0, -2.0, TWO_PI))
    assert np.max(np.abs(d.A1.samples.real - oracle)) <= 1e-6
    i0 = wide.n_points // 2
    assert d.A1.samples.real[i0] == pytest.approx(1.148, abs=2e-6)


def test_a_times_jacobian_is_a1(grid):
    state = odd_bump_state(grid, 3e-2, pair_vortices(1.0, -7.0, 15.0))
    d = assemble(state)
    lhs = d.A.samples.real * np.abs(d.Z_alpha.samples) ** 2
    assert np.max(np.abs(lhs - d.A1.samples.real)) <= 1e-10 * np.max(np.abs(d.A1.samples.real))


def test_inf_a1_refinement(grid):
    d = assemble(flat_pair_state(grid, 1.0, -6.0, 2 * math.pi * 6 ** 1.5))
    grid_min = float(np.min(d.A1.samples.real))
    assert d.inf_A1 <= grid_min + 1e-12
    from vortexwavelab.taylor import inf_a1_flat
    exact, argmin = inf_a1_flat(PairConfig(1.0, -6.0, 2 * math.pi * 6 ** 1.5))
    assert d.inf_A1 == pytest.approx(exact, abs=2e-4)
    assert abs(abs(d.argmin_alpha) - abs(argmin)) <= 0.05


# ----------------------------------------------------------------------
# forcing and right-hand side

def test_g_r_no_vortices(grid):
    d = assemble(WaveState(zero_field(grid), zero_field(grid), ()))
    assert d.DtQ.sup_norm() == 0.0
    assert d.G.sup_norm() == 0.0 and d.R.sup_norm() == 0.0


def test_r_equals_re_q_for_flat_pair(grid):
    d = assemble(flat_pair_state(grid, 1.0, -6.0, 10.0))
    assert np.max(np.abs(d.R.samples.real - d.Q.samples.real)) <= 1e-12


def test_rhs_equilibrium_and_pair_forcing(grid):
    dW, dU, zd = rhs(WaveState(zero_field(grid), zero_field(grid), ()))
    assert dW.sup_norm() == 0.0 and dU.sup_norm() == 0.0 and zd == []
    state = flat_pair_state(grid, 1.0, -6.0, 4 * math.pi)
    d = assemble(state)
    dW, dU, zd = rhs(state, d)
    assert zd[0] == pytest.approx(1j, abs=1e-12)
    assert dU.sup_norm() > 0.0           # the pair forces the wave
    assert np.max(np.abs(dU.samples.real - low_pass(d.G).samples.real)) <= 1e-12


def test_rhs_preserves_oddness(grid):
    state = odd_bump_state(grid, 1e-2, pair_vortices(1.0, -6.0, 10.0))
    dW, dU, zd = rhs(state)
    rev = (-np.arange(grid.n_points)) % grid.n_points
    for f in (dW, dU):
        s = f.samples.real
        assert np.max(np.abs(s + s[rev])) <= 1e-8 * max(1.0, np.max(np.abs(s)))
    assert zd[0].real == pytest.approx(-zd[1].real, abs=1e-12)
    assert zd[0].imag == pytest.approx(zd[1].imag, abs=1e-12)


# ----------------------------------------------------------------------
# geometry diagnostics

def test_interface_distance_and_proximity(grid):
    state = flat_pair_state(grid, 1.0, -6.0, 1.0)
    d = assemble(state)
    # min over the grid: nearest node sits at alpha ~ +-1, giving |y| = 6
    # (the distance from alpha = 0 would be sqrt(37) ~ 6.083)
    assert d.d_I == pytest.approx(6.0, abs=1e-6)
    with pytest.raises(VortexProximityError):
        assemble(flat_pair_state(grid, 1.0, -2 * grid.spacing, 1.0))


def test_chord_arc_flat(grid):
    Z = Field(grid, grid.alpha.astype(complex))
    assert chord_arc_constant(Z) == pytest.approx(1.0, rel=1e-14)
    assert interface_distance(Z, ()) == np.inf


def test_kinematic_identity():
    # whole-system cross-check: the reconstructed interface, evolved only
    # through its real part W, must move with the physical trace velocity:
    #     d/dt (Z - alpha) = conj(F) + conj(Q) - b Z_alpha
    # up to the uniform imaginary mean mode (the map normalization pins
    # Im mean(Z - alpha) = 0, re-gauging any mean-height drift).  Any sign
    # or convention error in b, Q, F or the reconstruction breaks this.
    from vortexwavelab.sim import make_initial, step_rk4
    g = GridSpec(200.0, 2 ** 13)
    state = make_initial("odd_bump", 5e-3, PairConfig(1.0, -8.0, 40.0), g)
    for _ in range(10):
        state = step_rk4(state, 2e-3)
    dt = 1e-3
    sp = step_rk4(state, dt)
    sm = step_rk4(state, -dt)
    Zp, _, _ = reconstruct(sp.W, sp.U)
    Zm, _, _ = reconstruct(sm.W, sm.U)
    dZdt = (Zp.samples - Zm.samples) / (2 * dt)
    d = assemble(state)
    velocity = (np.conj(d.F.samples) + np.conj(d.Q.samples)
                - d.b.samples.real * d.Z_alpha.samples)
    velocity = low_pass(Field(g, velocity)).samples
    mismatch = dZdt - velocity
    gauge = mismatch.mean()
    assert abs(gauge.real) <= 1e-10                   # drift is purely vertical
    assert np.max(np.abs(mismatch - gauge)) <= 1e-6   # identity modulo gauge
    # and the gauge mode is exactly the re-normalized mean-height drift
    assert gauge.imag == pytest.approx(-np.mean(velocity).imag, abs=1e-10)


def test_asymmetric_three_vortex_smoke(grid):
    # the data model supports general vortex configurations; one step of a
    # lopsided triple must stay finite with the b-residual at noise level
    from vortexwavelab.sim import step_rk4
    vortices = (Vortex(-2.0 - 7.0j, 9.0), Vortex(0.5 - 5.0j, -4.0),
                Vortex(3.0 - 9.0j, 2.5))
    state = WaveState(zero_field(grid), zero_field(grid), vortices)
    d = assemble(state)
    assert d.b_residual <= 1e-6 * (1.0 + d.b.l2_norm())
    after = step_rk4(state, 2e-3)
    assert np.all(np.isfinite(after.W.samples))
    d2 = assemble(after)
    assert np.isfinite(d2.inf_A1)

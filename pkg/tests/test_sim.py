"""Integrator, monitor, and trajectory-loop tests.

The expensive canonical runs live in the acceptance suite; here the same
machinery is exercised on short horizons and coarser grids.
"""

import math

import numpy as np
import pytest

from vortexwavelab.errors import PicardDivergedError
from vortexwavelab.gevrey import GevreyParams, energy
from vortexwavelab.grid import GridSpec, zero_field
from vortexwavelab.sim import (IntegratorConfig, make_initial, monitor,
                               reversed_state, run_simulation, step_picard,
                               step_rk4, symmetry_defect)
from vortexwavelab.taylor import PairConfig
from vortexwavelab.waves import WaveState


@pytest.fixture(scope="module")
def sim_grid():
    return GridSpec(200.0, 2 ** 12)


def canonical_pair(lam=4 * math.pi, y=-6.0):
    return PairConfig(1.0, y, lam)


def test_make_initial_variants(sim_grid):
    s0 = make_initial("zero_wave", 0.0, canonical_pair(), sim_grid)
    s1 = make_initial("odd_bump", 0.0, canonical_pair(), sim_grid)
    assert np.array_equal(s0.W.samples, s1.W.samples)
    assert s0.vortices[0].strength == 4 * math.pi
    assert s0.vortices[1].strength == -4 * math.pi
    s2 = make_initial("odd_bump", 1e-3, canonical_pair(), sim_grid)
    assert symmetry_defect(s2) <= 1e-14
    from types import SimpleNamespace
    with pytest.raises(ValueError):
        # defensive re-check for a pair object that slipped past validation
        make_initial("odd_bump", 1e-3, SimpleNamespace(x=1.0, y=0.5, lam=1.0),
                     sim_grid)
    with pytest.raises(ValueError):
        make_initial("square_bump", 1e-3, canonical_pair(), sim_grid)
    with pytest.raises(ValueError):
        make_initial("odd_bump", -1.0, canonical_pair(), sim_grid)


def test_make_initial_gevrey_scales_with_amplitude(sim_grid):
    p = GevreyParams(L0=10.0, delta0=1.0)
    e1 = energy(*(lambda s: (s.W, s.U))(make_initial("odd_bump", 1e-3, None, sim_grid)), 0.0, p)
    e2 = energy(*(lambda s: (s.W, s.U))(make_initial("odd_bump", 2e-3, None, sim_grid)), 0.0, p)
    assert np.isfinite(e1) and e1 > 0
    assert e2 == pytest.approx(4.0 * e1, rel=1e-10)   # quadratic in amplitude


def test_equilibrium_fixed_point(sim_grid):
    s = WaveState(zero_field(sim_grid), zero_field(sim_grid), ())
    s_rk = step_rk4(s, 0.05)
    assert np.max(np.abs(s_rk.W.samples)) <= 1e-14
    cfg = IntegratorConfig(dt=0.05, t_end=0.05, scheme="picard")
    s_pi, iters, _ = step_picard(s, 0.05, cfg)
    assert iters == 1
    assert np.max(np.abs(s_pi.U.samples)) <= 1e-14


def test_pair_rises_one_step(sim_grid):
    s = make_initial("zero_wave", 0.0, canonical_pair(), sim_grid)
    dt = 0.01
    s1 = step_rk4(s, dt)
    dy = s1.vortices[0].position.imag + 6.0
    assert dy == pytest.approx(dt, abs=5e-4)         # zdot = i + O(dt * dU)


def test_rk4_self_convergence_order(sim_grid):
    s = make_initial("odd_bump", 1e-3, canonical_pair(lam=10.0), sim_grid)

    def march(dt, n):
        out = s
        for _ in range(n):
            out = step_rk4(out, dt)
        return out

    ref = march(0.0025, 32)
    errs = []
    for dt, n in ((0.02, 4), (0.01, 8)):
        got = march(dt, n)
        errs.append(math.sqrt(sim_grid.spacing * np.sum(
            np.abs(got.U.samples - ref.U.samples) ** 2)
            + abs(got.vortices[0].position - ref.vortices[0].position) ** 2))
    order = math.log2(errs[0] / errs[1])
    assert order >= 3.8


def test_picard_contracts_and_matches_rk4(sim_grid):
    s = make_initial("odd_bump", 1e-3, canonical_pair(lam=10.0), sim_grid)
    cfg = IntegratorConfig(dt=5e-3, t_end=1.0, scheme="picard", picard_tol=1e-9)
    s_pi = s
    for _ in range(10):
        s_pi, iters, hist = step_picard(s_pi, 5e-3, cfg)
        for i in range(1, len(hist)):
            assert hist[i] < hist[i - 1]
    s_rk = s
    for _ in range(10):
        s_rk = step_rk4(s_rk, 5e-3)
    gap = math.sqrt(sim_grid.spacing * np.sum(np.abs(s_rk.W.samples - s_pi.W.samples) ** 2))
    assert gap <= 1e-7


def test_picard_diverges_with_huge_step(sim_grid):
    s = make_initial("odd_bump", 1e-2, canonical_pair(lam=40.0), sim_grid)
    cfg = IntegratorConfig(dt=0.5, t_end=1.0, scheme="picard", picard_max_iter=8)
    with pytest.raises(PicardDivergedError) as err:
        step_picard(s, 0.5, cfg)
    assert len(err.value.history) == 8


def test_monitor_zero_state(sim_grid):
    s = WaveState(zero_field(sim_grid), zero_field(sim_grid), ())
    rep = monitor(s, gevrey_params=GevreyParams(L0=10, delta0=1))
    assert rep.E == 0.0
    assert rep.chord_arc == pytest.approx(1.0, rel=1e-14)
    assert all(rep.as_flags.values())
    assert rep.inf_A1 == pytest.approx(1.0, abs=1e-14)


def test_vertical_velocity_sign_follows_strength(sim_grid):
    for lam in (10.0, -10.0):
        s = make_initial("odd_bump", 1e-4, canonical_pair(lam=lam), sim_grid)
        for _ in range(4):
            prev_y = s.vortices[0].position.imag
            s = step_rk4(s, 5e-3)
            dy = s.vortices[0].position.imag - prev_y
            assert math.copysign(1.0, dy) == math.copysign(1.0, lam)


def test_energy_boundedness_short_window(sim_grid):
    # delta0 = 100 * L0: the radius survives only to t = L0/(2 delta0) = 0.005
    p = GevreyParams(L0=10.0, delta0=1000.0)
    s = make_initial("odd_bump", 1e-4, canonical_pair(lam=5.0), sim_grid)
    e0 = energy(s.W, s.U, 0.0, p)
    for _ in range(2):
        s = step_rk4(s, 2.5e-3)
    assert energy(s.W, s.U, s.t, p) <= 2.0 * (e0 + 1.0)


def test_run_constant_trajectory_lambda_zero(sim_grid):
    s = make_initial("zero_wave", 0.0, canonical_pair(lam=0.0), sim_grid)
    res = run_simulation(s, IntegratorConfig(dt=0.01, t_end=0.05), stride=1)
    assert res.exit_reason == "completed"
    assert all(abs(r.inf_A1 - 1.0) <= 1e-12 for r in res.records)
    assert all(r.y1 == -6.0 for r in res.records)
    ts = [r.t for r in res.records]
    assert all(t2 > t1 for t1, t2 in zip(ts, ts[1:]))


def test_run_stops_on_cfl(sim_grid):
    s = make_initial("zero_wave", 0.0, canonical_pair(lam=10.0), sim_grid)
    res = run_simulation(s, IntegratorConfig(dt=0.5, t_end=1.0))
    assert res.exit_reason == "cfl_violation"
    assert len(res.records) == 1


def test_run_stops_on_proximity(sim_grid):
    close = PairConfig(1.0, -6.5 * sim_grid.spacing, 1.0)
    s = make_initial("zero_wave", 0.0, close, sim_grid)
    res = run_simulation(s, IntegratorConfig(dt=1e-4, t_end=1e-3))
    assert res.exit_reason == "vortex_proximity"
    assert len(res.records) < 11


def test_run_taylor_negative_stop(sim_grid):
    # start just above the crossing depth: inf A1 goes negative quickly
    lam = 2 * math.pi * 6.0 ** 1.5
    s = make_initial("zero_wave", 0.0, PairConfig(1.0, -6.3, lam), sim_grid)
    res = run_simulation(s, IntegratorConfig(dt=2e-3, t_end=0.5),
                         eta1=0.1, stride=1)
    assert res.exit_reason == "taylor_negative"
    assert res.records[-1].inf_A1 <= -0.1


def test_reversed_state_involution(sim_grid):
    s = make_initial("odd_bump", 1e-3, canonical_pair(lam=7.0), sim_grid)
    rr = reversed_state(reversed_state(s))
    assert np.array_equal(rr.U.samples, s.U.samples)
    assert rr.vortices[0].strength == s.vortices[0].strength


def test_short_time_reversal(sim_grid):
    s = make_initial("odd_bump", 1e-3, canonical_pair(lam=10.0), sim_grid)
    fwd = s
    for _ in range(8):
        fwd = step_rk4(fwd, 5e-3)
    back = reversed_state(fwd)
    for _ in range(8):
        back = step_rk4(back, 5e-3)
    assert abs(back.vortices[0].position.imag - (-6.0)) <= 1e-10
    assert np.max(np.abs(back.W.samples - s.W.samples)) <= 1e-10


def test_radius_exhaustion_marks_energy_nan(sim_grid):
    s = make_initial("zero_wave", 0.0, canonical_pair(lam=1.0), sim_grid)
    res = run_simulation(s, IntegratorConfig(dt=5e-3, t_end=0.02),
                         gevrey_params=GevreyParams(L0=10.0, delta0=1000.0))
    assert res.exit_reason == "completed"
    assert math.isnan(res.records[-1].E_gevrey)
    assert not monitor(res.final_state, gevrey_params=GevreyParams(
        L0=10.0, delta0=1000.0)).as_flags["AS5"]

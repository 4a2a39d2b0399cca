"""Acceptance suite: every shipped claim as an executable check.

Each check returns a :class:`CheckResult`; ``run_all`` executes the
registry in order and is what the ``verify`` command prints.  Expensive
simulation runs are shared between checks through a :class:`RunCache`.

The canonical transition scenario used by several checks puts the
counter-rotating pair at depth 12 with strength lam = 2*pi*6.75^1.5
(about 110.19), giving a predicted destabilization depth
(lam^2/4pi^2)^(1/3) = 6.75: deep enough below the start that the
interface begins firmly in the stable regime (inf A1 above 0.8) and is
reached well before the vortices approach the grid scale.
"""

import math
import time
from dataclasses import dataclass

import numpy as np
from scipy.optimize import curve_fit

from .gevrey import GevreyParams, gevrey_norm
from .grid import Field, GridSpec, field_from_function, zero_field
from .sim import IntegratorConfig, make_initial, run_simulation, reversed_state, step_rk4, step_picard
from .spectral import hilbert, periodic_cauchy_kernel, sq_diff_integral
from .taylor import (PairConfig, a1_flat_pair, crossing_depth, f_reduced,
                     g_profile, inf_a1_flat, interaction_sum,
                     residue_pair_integral, residue_pair_integral_quad)
from .waves import WaveState, Vortex, assemble

CANONICAL_X0 = 1.0
CANONICAL_Y0 = -12.0
CANONICAL_LAMBDA = 2.0 * math.pi * 6.75 ** 1.5
CANONICAL_DT = 0.004
CANONICAL_ETA1 = 0.5

DEFAULT_GRID = (200.0, 2 ** 14)
WIDE_GRID = (3200.0, 2 ** 18)   # oracle-tolerance grid: same spacing, 16x domain


@dataclass
class CheckResult:
    name: str
    passed: bool
    detail: str
    seconds: float = 0.0


class RunCache:
    """Lazily built shared state for the expensive checks."""

    def __init__(self):
        self._store = {}

    def default_grid(self):
        return self._memo("default_grid", lambda: GridSpec(*DEFAULT_GRID))

    def wide_grid(self):
        return self._memo("wide_grid", lambda: GridSpec(*WIDE_GRID))

    def transition(self):
        def build():
            grid = self.default_grid()
            pair = PairConfig(CANONICAL_X0, CANONICAL_Y0, CANONICAL_LAMBDA)
            state = make_initial("odd_bump", 1e-3, pair, grid)
            integ = IntegratorConfig(dt=CANONICAL_DT, t_end=0.85, scheme="rk4")
            return run_simulation(state, integ,
                                  gevrey_params=GevreyParams(L0=10.0, delta0=5.0),
                                  eta1=CANONICAL_ETA1, stride=2)
        return self._memo("transition", build)

    def receding(self):
        def build():
            grid = self.default_grid()
            pair = PairConfig(CANONICAL_X0, CANONICAL_Y0, -CANONICAL_LAMBDA)
            state = make_initial("odd_bump", 1e-3, pair, grid)
            integ = IntegratorConfig(dt=CANONICAL_DT, t_end=0.9, scheme="rk4")
            return run_simulation(state, integ,
                                  gevrey_params=GevreyParams(L0=10.0, delta0=5.0),
                                  stride=2)
        return self._memo("receding", build)

    def _memo(self, key, build):
        if key not in self._store:
            self._store[key] = build()
        return self._store[key]


def _flat_pair_state(grid, x, y, lam):
    W = zero_field(grid)
    U = zero_field(grid)
    vortices = (Vortex(-x + 1j * y, lam), Vortex(x + 1j * y, -lam))
    return WaveState(W, U, vortices, 0.0)


# ----------------------------------------------------------------------
# the criteria

def check_closed_form_trichotomy(cache):
    t0 = time.time()
    errs = [abs(g_profile(1.0) - 0.25), abs(g_profile(-1.0) - 0.25),
            abs(g_profile(0.0) + 1.0),
            abs(f_reduced(4.0, 1.0)), abs(f_reduced(4.0, -1.0))]
    k = np.linspace(-100.0, 100.0, 400_001)
    gk = g_profile(k)
    in_range = gk.min() >= -1.0 - 1e-15 and gk.max() <= 0.25 + 1e-15
    wall = time.time() - t0
    passed = max(errs) <= 1e-12 and in_range and wall < 1.0
    return passed, ("extrema/zero errors <= %.2e; g in [-1,1/4] on |k|<=100: %s; "
                    "%.2fs (cap 1s)" % (max(errs), in_range, wall))


def check_residue_oracles(cache):
    rng = np.random.default_rng(20260810)
    worst = 0.0
    for _ in range(20):
        w1 = complex(rng.uniform(-5, 5), -rng.uniform(1, 6))
        w2 = complex(rng.uniform(-5, 5), -rng.uniform(1, 6))
        exact = residue_pair_integral(w1, w2)
        numeric = residue_pair_integral_quad(w1, w2)
        worst = max(worst, abs(exact - numeric))
    return worst <= 1e-8, "20 random pairs, worst |closed - quadrature| = %.2e" % worst


_INTERACTION_CONFIGS = [
    [(-1.0 - 2.0j, 2 * math.pi), (1.0 - 2.0j, -2 * math.pi)],
    [(-1.0j, 2 * math.pi)],
    [(-0.5 - 3.0j, 5.0), (0.5 - 3.0j, -5.0)],
    [(-2.0 - 4.0j, 10.0), (2.0 - 4.0j, -10.0)],
    [(-2.5j, -4.0)],
]


def check_interaction_identity(cache):
    grid = cache.wide_grid()
    worst_spec = worst_quad = 0.0
    sub = np.arange(0, grid.n_points, grid.n_points // 512)
    for vort in _INTERACTION_CONFIGS:
        samples = np.zeros(grid.n_points, dtype=np.complex128)
        for z, lam in vort:
            samples += (lam * 1j / (2 * math.pi)) * periodic_cauchy_kernel(
                grid.alpha - np.conj(z), grid.half_length)
        qbar = Field(grid, samples)
        oracle = interaction_sum(vort, grid.alpha)
        spec = sq_diff_integral(qbar).samples.real
        worst_spec = max(worst_spec, float(np.max(np.abs(spec - oracle))))
        quad, idx = sq_diff_integral(qbar, method="quadrature", out_indices=sub)
        worst_quad = max(worst_quad, float(np.max(np.abs(
            quad.samples.real[idx] - oracle[idx]))))
    passed = worst_spec <= 1e-6 and worst_quad <= 1e-6
    return passed, ("5 configs: spectral path %.2e, quadrature path %.2e vs closed form"
                    % (worst_spec, worst_quad))


def check_hilbert_calibration(cache):
    grid = cache.default_grid()
    one = Field(grid, np.ones(grid.n_points))
    err_one = hilbert(one).sup_norm()
    # 1/(a - i) realized on the periodic domain through its periodization;
    # the mean is removed first since H annihilates the mean mode by design.
    f = field_from_function(
        grid, lambda a: periodic_cauchy_kernel(a - 1j, grid.half_length))
    f0 = Field(grid, f.samples - f.mean())
    err_fixed = float(np.max(np.abs(hilbert(f0).samples - f0.samples)))
    raw = field_from_function(grid, lambda a: 1.0 / (a - 1j))
    raw_gap = float(np.max(np.abs(hilbert(raw).samples - raw.samples)))

    rng = np.random.default_rng(7)
    worst_unit = 0.0
    for _ in range(10):
        spec = np.zeros(grid.n_points, dtype=np.complex128)
        coef = rng.normal(size=32) + 1j * rng.normal(size=32)
        spec[1:33] = coef
        spec[-32:] = np.conj(coef[::-1])
        h = Field(grid, np.fft.ifft(spec).real)
        for sigma in (1.0, 5.0, 10.0):
            a = gevrey_norm(h, sigma, "X").value
            b = gevrey_norm(hilbert(h), sigma, "X").value
            worst_unit = max(worst_unit, abs(a - b) / a)
    passed = err_one <= 1e-6 and err_fixed <= 1e-6 and worst_unit <= 1e-10
    return passed, ("H1=%.1e; fixed-point error %.1e (raw, unperiodized samples "
                    "would leave a truncation gap of %.1e); unitarity rel dev %.1e"
                    % (err_one, err_fixed, raw_gap, worst_unit))


_DUAL_PATH_CONFIGS = [
    (1.0, -2.0, 2 * math.pi),
    (0.5, -2.0, 2 * math.pi),
    (2.0, -3.0, 4 * math.pi),
    (1.0, -5.0, 10.0),
    (1.0, -2.0, -2 * math.pi),
    (0.7, -4.0, 5.0),
    (1.5, -2.5, 7.0),
]


def check_dual_path_a1(cache):
    grid = cache.wide_grid()
    # the quoted headline value first: A1(0) = 1 + 4*10/625 + 21/250 = 1.148
    head = a1_flat_pair(0.0, PairConfig(1.0, -2.0, 2 * math.pi))
    if abs(head - 1.148) > 1e-12:
        return False, "headline closed-form value %.15g != 1.148" % head
    worst = 0.0
    for x, y, lam in _DUAL_PATH_CONFIGS:
        state = _flat_pair_state(grid, x, y, lam)
        derived = assemble(state)
        oracle = a1_flat_pair(grid.alpha, PairConfig(x, y, lam))
        worst = max(worst, float(np.max(np.abs(derived.A1.samples.real - oracle))))
    return worst <= 1e-6, ("A1(0)=%.6f; 7 configs, worst grid deviation %.2e"
                           % (head, worst))


def check_deep_pair_limit(cache):
    gaps = []
    for y in (-10.0, -20.0, -40.0, -80.0):
        inf_v, _ = inf_a1_flat(PairConfig(1.0, y, 10.0))
        gaps.append((abs(y), abs(inf_v - 1.0)))
    decreasing = all(gaps[i + 1][1] < gaps[i][1] for i in range(len(gaps) - 1))
    bounded = all(gap <= 5.0 / depth for depth, gap in gaps)
    detail = ", ".join("|y|=%g: %.2e (cap %.2e)" % (d, g, 5.0 / d) for d, g in gaps)
    return decreasing and bounded, detail


def check_linear_dispersion(cache):
    t_start = time.time()
    grid = GridSpec(200.0, 2 ** 12)
    state = make_initial("odd_bump", 1e-6, None, grid)
    m = int(round(grid.half_length / math.pi))      # grid mode nearest k = 1
    k_mode = grid.wavenumbers[m]
    dt, t_end = 0.04, 25.0
    times, series = [], []
    for i in range(int(round(t_end / dt))):
        state = step_rk4(state, dt)
        times.append(state.t)
        series.append(np.fft.fft(state.W.samples)[m].imag)
    times = np.asarray(times)
    series = np.asarray(series)

    def model(t, a, b, w):
        return a * np.cos(w * t) + b * np.sin(w * t)

    p0 = (series[0], 0.0, math.sqrt(abs(k_mode)))
    popt, _ = curve_fit(model, times, series, p0=p0)
    omega = abs(popt[2])
    dev = abs(omega - 1.0)
    wall = time.time() - t_start
    return dev <= 0.01 and wall < 30.0, (
        "mode k=%.5f: fitted omega=%.5f, |omega-1|=%.4f (cap 0.01); %.0fs (cap 30s)"
        % (k_mode, omega, dev, wall))


def check_transition_experiment(cache):
    t0 = time.time()
    res = cache.transition()
    wall = time.time() - t0
    infs = np.array([r.inf_A1 for r in res.records])
    ys = np.array([r.y1 for r in res.records])
    start_ok = infs[0] >= 0.8
    decreasing = bool(np.all(np.diff(infs) < 1e-12))
    crossed = np.any(infs <= 0.0)
    detail_bits = ["start inf A1 = %.4f" % infs[0]]
    cross_ok = False
    if crossed:
        i = int(np.argmax(infs <= 0.0))
        frac = infs[i - 1] / (infs[i - 1] - infs[i])
        y_cross = abs(ys[i - 1] + frac * (ys[i] - ys[i - 1]))
        y_pred = crossing_depth(CANONICAL_LAMBDA)
        rel = abs(y_cross - y_pred) / y_pred
        cross_ok = rel <= 0.15
        detail_bits.append("crossing |y|=%.3f vs predicted %.3f (dev %.1f%%)"
                           % (y_cross, y_pred, 100 * rel))
    detail_bits.append("exit=%s" % res.exit_reason)
    passed = (start_ok and decreasing and crossed and cross_ok
              and res.exit_reason == "taylor_negative" and wall < 300.0)
    return passed, "; ".join(detail_bits) + "; run wall %.0fs (cap 300s)" % wall


def check_receding_pair(cache):
    res = cache.receding()
    rows = res.records
    lam = abs(CANONICAL_LAMBDA)
    d0 = rows[0].d_I
    bound_ok = all(r.d_I >= d0 + lam * r.t / (8 * math.pi) - 1e-9 for r in rows)
    infs = np.array([r.inf_A1 for r in rows])
    increasing = bool(np.all(np.diff(infs) > -1e-3))
    final_ok = infs[-1] >= 0.95
    passed = bound_ok and increasing and final_ok and res.exit_reason == "completed"
    return passed, ("d_I bound "
                    "%s; inf A1 %.4f -> %.4f (final >= 0.95: %s)"
                    % ("held" if bound_ok else "violated", infs[0], infs[-1], final_ok))


def check_scheme_crosscheck(cache):
    grid = cache.default_grid()
    pair = PairConfig(CANONICAL_X0, CANONICAL_Y0, CANONICAL_LAMBDA)
    start = make_initial("odd_bump", 1e-3, pair, grid)
    dt, steps = 2e-3, 50
    # 1e-9 sits just above the k^4-amplified round-off floor of the H4
    # metric on this state while certifying agreement far below the 1e-6
    # acceptance bound.
    integ = IntegratorConfig(dt=dt, t_end=steps * dt, scheme="picard",
                             picard_tol=1e-9)
    s_rk = start
    for _ in range(steps):
        s_rk = step_rk4(s_rk, dt)
    s_pi = start
    ratios_ok = True
    worst_ratio = 0.0
    for _ in range(steps):
        s_pi, iters, hist = step_picard(s_pi, dt, integ)
        for i in range(1, len(hist)):
            r = hist[i] / hist[i - 1] if hist[i - 1] > 0 else 0.0
            worst_ratio = max(worst_ratio, r)
            if r >= 1.0:
                ratios_ok = False
    dW = math.sqrt(grid.spacing * np.sum(np.abs(s_rk.W.samples - s_pi.W.samples) ** 2))
    dU = math.sqrt(grid.spacing * np.sum(np.abs(s_rk.U.samples - s_pi.U.samples) ** 2))
    diff = max(dW, dU)
    passed = diff <= 1e-6 and ratios_ok
    return passed, ("50 steps: final L2(W,U) gap %.2e (cap 1e-6); worst sweep "
                    "contraction ratio %.3f" % (diff, worst_ratio))


def check_symmetry_structure(cache):
    rows = cache.transition().records + cache.receding().records
    sym = max(r.symmetry_defect for r in rows)
    xsum = max(abs(r.x1 + r.x2) for r in rows)
    bres = max(r.b_residual for r in rows)
    passed = sym <= 1e-8 and xsum <= 1e-8 and bres <= 1e-6
    return passed, ("max oddness defect %.1e, max |x1+x2| %.1e, max b_residual %.1e"
                    % (sym, xsum, bres))


def check_time_reversal(cache):
    grid = cache.default_grid()
    pair = PairConfig(CANONICAL_X0, CANONICAL_Y0, CANONICAL_LAMBDA)
    state = make_initial("odd_bump", 1e-3, pair, grid)
    dt, steps = CANONICAL_DT, 20
    y_path = [state.vortices[0].position.imag]
    s = state
    for _ in range(steps):
        s = step_rk4(s, dt)
        y_path.append(s.vortices[0].position.imag)
    back = reversed_state(s)
    errs = []
    for i in range(steps):
        back = step_rk4(back, dt)
        errs.append(abs(back.vortices[0].position.imag - y_path[steps - 1 - i]))
    worst = max(errs)
    return worst <= 1e-4, ("max |y_return - y_forward| over the window = %.2e "
                           "(cap 1e-4)" % worst)


REGISTRY = [
    ("C01 closed-form trichotomy", check_closed_form_trichotomy),
    ("C02 residue oracles", check_residue_oracles),
    ("C03 interaction identity", check_interaction_identity),
    ("C04 Hilbert calibration", check_hilbert_calibration),
    ("C05 dual-path Taylor coefficient", check_dual_path_a1),
    ("C06 deep-pair limit", check_deep_pair_limit),
    ("C07 linear dispersion", check_linear_dispersion),
    ("C08 transition experiment", check_transition_experiment),
    ("C09 receding pair", check_receding_pair),
    ("C10 scheme cross-check", check_scheme_crosscheck),
    ("C11 symmetry and structure", check_symmetry_structure),
    ("C12 time reversal", check_time_reversal),
]


def run_all(cache=None, names=None):
    """Execute the registry; returns a list of CheckResult."""
    cache = cache or RunCache()
    results = []
    for name, fn in REGISTRY:
        if names is not None and not any(s in name for s in names):
            continue
        t0 = time.time()
        try:
            passed, detail = fn(cache)
        except Exception as exc:  # a crashed check is a failed check
            passed, detail = False, "raised %s: %s" % (type(exc).__name__, exc)
        results.append(CheckResult(name, bool(passed), detail, time.time() - t0))
    return results

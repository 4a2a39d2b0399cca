"""Time integration of the wave + vortex system, runtime monitors, and
trajectory recording.

Two interchangeable steppers are provided.  The production stepper is
classical RK4 on the full nonlinear right-hand side.  The cross-check
stepper advances by the implicit trapezoid rule solved per step by
fixed-point (Picard) sweeps: each sweep re-evaluates the right-hand side
on the previous iterate's endpoint, so the frozen-coefficient structure
of the iteration matches the construction that makes the continuous
problem solvable, and the sweep-to-sweep contraction ratio is itself a
diagnostic.  The sweeps contract when dt * sqrt(max A * k_max) / 2 < 1,
a stronger restriction than the RK4 stability limit; the step raises
with its residual history if that fails.

The step size is checked each step against

    dt <= cfl_safety * min( spacing / max|b| ,  1 / sqrt(max|A| k_max) )

(advective and gravity-dispersive limits; the time scale of the fastest
resolvable gravity wave is 1/sqrt(A k_max)).
"""

import math
from dataclasses import dataclass

import numpy as np

from .errors import PicardDivergedError, VortexProximityError
from .gevrey import GevreyParams, energy
from .grid import Field, field_from_function, zero_field
from .spectral import low_pass
from .waves import Vortex, WaveState, assemble, rhs

FATAL_PROXIMITY_SPACINGS = 8.0  # below this the quadratures are unresolved


@dataclass
class IntegratorConfig:
    dt: float
    t_end: float
    scheme: str = "rk4"
    picard_tol: float = 1e-10       # discrete H4 change between sweeps
    picard_max_iter: int = 50
    cfl_safety: float = 0.5

    def __post_init__(self):
        if self.scheme not in ("rk4", "picard"):
            raise ValueError("scheme must be 'rk4' or 'picard'")
        if not (0.0 < self.cfl_safety <= 1.0):
            raise ValueError("cfl_safety must lie in (0, 1]")
        if self.dt <= 0 or self.t_end < 0:
            raise ValueError("dt must be positive and t_end nonnegative")


@dataclass
class MonitorReport:
    """Per-state diagnostic record; the as_flags are advisory except for
    vortex-interface proximity, which callers treat as fatal."""

    t: float
    E: float
    chord_arc: float
    d_I: float
    phi: float
    inf_A1: float
    argmin_alpha: float
    U_L2: float
    U_inf: float
    b_residual: float
    symmetry_defect: float
    as_flags: dict


@dataclass
class Baseline:
    """Initial-state quantities the runtime assumption checks compare
    against."""

    chord_arc0: float
    d_I0: float
    x0: float


def make_initial(kind, amplitude, pair, grid):
    """Initial state: wave profile plus the symmetric counter-rotating pair.

    kind "zero_wave" gives W = U = 0; "odd_bump" gives
    W0 = U0 = amplitude * a * exp(-a^2/4) (odd, rapidly decaying).  The
    vortices sit at -x + iy (strength +lam) and x + iy (strength -lam).
    """
    if amplitude < 0:
        raise ValueError("amplitude must be nonnegative")
    if kind not in ("zero_wave", "odd_bump"):
        raise ValueError("unknown initial kind %r" % kind)
    if kind == "zero_wave" or amplitude == 0.0:
        W = zero_field(grid)
        U = zero_field(grid)
    else:
        bump = field_from_function(grid, lambda a: amplitude * a * np.exp(-a * a / 4.0))
        W = Field(grid, low_pass(bump).samples.real)
        U = Field(grid, W.samples.copy())
    vortices = ()
    if pair is not None:
        if pair.y >= 0:
            raise ValueError("vortex pair must start below the interface")
        vortices = (Vortex(-pair.x + 1j * pair.y, pair.lam),
                    Vortex(pair.x + 1j * pair.y, -pair.lam))
    return WaveState(W, U, vortices, 0.0)


def cfl_limit(state, derived):
    """Largest stable dt for the current state (before the safety factor)."""
    grid = state.grid
    bmax = derived.b.sup_norm()
    adv = grid.spacing / bmax if bmax > 0 else math.inf
    amax = float(np.max(np.abs(derived.A.samples.real)))
    disp = 1.0 / math.sqrt(max(amax, 1e-300) * grid.k_max)
    return min(adv, disp)


def _advance(state, dt_t, parts, weights):
    """state + sum_i weights[i] * parts[i], time advanced by dt_t."""
    W = state.W.samples.copy()
    U = state.U.samples.copy()
    zs = [v.position for v in state.vortices]
    for w, (dW, dU, zd) in zip(weights, parts):
        W = W + w * dW.samples
        U = U + w * dU.samples
        zs = [z + w * d for z, d in zip(zs, zd)]
    vortices = tuple(Vortex(z, v.strength) for z, v in zip(zs, state.vortices))
    return WaveState(Field(state.grid, W.real), Field(state.grid, U.real),
                     vortices, state.t + dt_t)


def step_rk4(state, dt, derived=None):
    """Classical fourth-order Runge-Kutta step."""
    k1 = rhs(state, derived)
    k2 = rhs(_advance(state, dt / 2, [k1], [dt / 2]))
    k3 = rhs(_advance(state, dt / 2, [k2], [dt / 2]))
    k4 = rhs(_advance(state, dt, [k3], [dt]))
    return _advance(state, dt, [k1, k2, k3, k4],
                    [dt / 6, dt / 3, dt / 3, dt / 6])


def _h4_distance(s1, s2):
    """Discrete H4 x H4 distance of (W, U) plus the vortex separation."""
    total = 0.0
    for f1, f2 in ((s1.W, s2.W), (s1.U, s2.U)):
        diff = Field(f1.grid, f1.samples - f2.samples)
        power = (np.abs(diff.fft) ** 2) * (diff.grid.spacing / diff.grid.n_points)
        k2 = diff.grid.wavenumbers ** 2
        acc = power.copy()
        total += acc.sum()
        for _ in range(4):
            acc *= k2
            total += acc.sum()
    for v1, v2 in zip(s1.vortices, s2.vortices):
        total += abs(v1.position - v2.position) ** 2
    return math.sqrt(total)


def step_picard(state, dt, config, derived=None):
    """Implicit-trapezoid step solved by Picard sweeps.

    Sweep n+1 re-evaluates the right-hand side on iterate n's endpoint
    and recomputes  X = X_0 + dt/2 (rhs(X_0) + rhs(X_n)); the converged
    fixed point solves the trapezoid equations for the wave fields and
    the vortex ODE simultaneously.  Returns (new_state, iterations,
    residual_history); raises PicardDivergedError when the H4 change has
    not fallen below picard_tol within picard_max_iter sweeps.
    """
    k0 = rhs(state, derived)
    candidate = _advance(state, dt, [k0], [dt])  # Euler predictor
    history = []
    for iteration in range(1, config.picard_max_iter + 1):
        k1 = rhs(candidate)
        new = _advance(state, dt, [k0, k1], [dt / 2, dt / 2])
        delta = _h4_distance(new, candidate)
        history.append(delta)
        candidate = new
        if delta < config.picard_tol:
            return candidate, iteration, history
    raise PicardDivergedError(
        "no contraction to %g after %d sweeps (last residual %.2e): dt too "
        "large, or the tolerance sits below the discrete H4 round-off floor"
        % (config.picard_tol, config.picard_max_iter, history[-1]), history)


def symmetry_defect(state):
    """Deviation from the odd/symmetric-pair structure: sup of
    |f(a) + f(-a)| over W and U plus the pair-position defects."""
    defect = 0.0
    n = state.grid.n_points
    idx = (-np.arange(n)) % n
    for f in (state.W, state.U):
        s = f.samples.real
        defect = max(defect, float(np.max(np.abs(s + s[idx]))))
    if len(state.vortices) == 2:
        z1, z2 = (v.position for v in state.vortices)
        defect = max(defect, abs(z1.real + z2.real), abs(z1.imag - z2.imag))
    return defect


def monitor(state, derived=None, gevrey_params=None, baseline=None,
            energy_cap=1.0, u_l2_cap=1.0, u_inf_cap=1.0):
    """Full diagnostic record for one state.

    The assumption flags: AS1 all quantities finite; AS2 the homogeneous
    energy pair, ||U||_L2 and ||U||_inf within the configured caps; AS3
    chord-arc at least half its initial value; AS4 vortex-interface
    distance at least half of d_I(0)^(9/10) and half-separation at least
    half its initial value; AS5 radius phi(t) still at least L0/2.
    """
    derived = derived if derived is not None else assemble(state)
    params = gevrey_params or GevreyParams()
    phi = params.L0 - params.delta0 * state.t
    if phi > 0:
        E = energy(state.W, state.U, state.t, params)
    else:
        E = math.nan
    u_l2 = state.U.l2_norm()
    u_inf = state.U.sup_norm()
    sdef = symmetry_defect(state)
    finite = all(np.all(np.isfinite(f.samples)) for f in (state.W, state.U)) \
        and all(np.isfinite([derived.d_I if state.vortices else 0.0,
                             derived.inf_A1, derived.b_residual]))
    flags = {"AS1": bool(finite),
             "AS2": bool(2.0 * E <= energy_cap + 1e-12 if not math.isnan(E) else False)
             and u_l2 <= u_l2_cap and u_inf <= u_inf_cap,
             "AS5": bool(phi >= params.L0 / 2.0)}
    if baseline is not None:
        flags["AS3"] = bool(derived.chord_arc >= 0.5 * baseline.chord_arc0)
        ok4 = derived.d_I >= 0.5 * baseline.d_I0 ** 0.9 if state.vortices else True
        if len(state.vortices) == 2:
            x_now = abs(state.vortices[1].position.real)
            ok4 = ok4 and x_now >= 0.5 * baseline.x0
        flags["AS4"] = bool(ok4)
    else:
        flags["AS3"] = True
        flags["AS4"] = True
    return MonitorReport(t=state.t, E=E, chord_arc=derived.chord_arc,
                         d_I=derived.d_I, phi=phi, inf_A1=derived.inf_A1,
                         argmin_alpha=derived.argmin_alpha,
                         U_L2=u_l2, U_inf=u_inf,
                         b_residual=derived.b_residual,
                         symmetry_defect=sdef, as_flags=flags)


@dataclass
class StepRecord:
    """One trajectory row (the CSV column set, in order)."""

    t: float
    x1: float
    y1: float
    x2: float
    y2: float
    d_I: float
    inf_A1: float
    argmin_alpha: float
    E_gevrey: float
    phi: float
    chord_arc: float
    U_L2: float
    U_inf: float
    b_residual: float
    symmetry_defect: float
    picard_iters: object  # int, or None for rk4

    COLUMNS = ("t", "x1", "y1", "x2", "y2", "d_I", "inf_A1", "argmin_alpha",
               "E_gevrey", "phi", "chord_arc", "U_L2", "U_inf",
               "b_residual", "symmetry_defect", "picard_iters")

    def csv_row(self):
        vals = []
        for name in self.COLUMNS:
            v = getattr(self, name)
            if name == "picard_iters":
                vals.append("" if v is None else str(int(v)))
            else:
                vals.append("%.17g" % v)
        return ",".join(vals)


def _record(state, report, picard_iters):
    if len(state.vortices) == 2:
        z1, z2 = (v.position for v in state.vortices)
    else:
        z1 = z2 = complex(math.nan, math.nan)
    return StepRecord(t=state.t, x1=z1.real, y1=z1.imag, x2=z2.real, y2=z2.imag,
                      d_I=report.d_I, inf_A1=report.inf_A1,
                      argmin_alpha=report.argmin_alpha, E_gevrey=report.E,
                      phi=report.phi, chord_arc=report.chord_arc,
                      U_L2=report.U_L2, U_inf=report.U_inf,
                      b_residual=report.b_residual,
                      symmetry_defect=report.symmetry_defect,
                      picard_iters=picard_iters)


@dataclass
class RunResult:
    records: list
    exit_reason: str      # completed | taylor_negative | vortex_proximity | cfl_violation
    final_state: WaveState
    message: str = ""
    states: list = None   # populated only when collect_states is requested


def run_simulation(state, integrator, gevrey_params=None, eta1=None, stride=1,
                   collect_states=False):
    """March a state to t_end, recording monitors every ``stride`` steps.

    Stops early (reason "taylor_negative") once inf A1 <= -eta1, or with
    a truncated trajectory on fatal vortex proximity / CFL violation.
    """
    params = gevrey_params or GevreyParams()
    n_steps = max(int(round(integrator.t_end / integrator.dt)), 0)
    records = []
    states = [] if collect_states else None
    derived = assemble(state)
    baseline = Baseline(chord_arc0=derived.chord_arc, d_I0=derived.d_I,
                        x0=abs(state.vortices[-1].position.real) if state.vortices else 0.0)
    report = monitor(state, derived, params, baseline)
    records.append(_record(state, report, None))
    if collect_states:
        states.append(state)
    picard_iters = None
    for step_index in range(1, n_steps + 1):
        if state.vortices and derived.d_I < FATAL_PROXIMITY_SPACINGS * state.grid.spacing:
            return RunResult(records, "vortex_proximity", state,
                             "d_I=%g below %g spacings" % (derived.d_I, FATAL_PROXIMITY_SPACINGS),
                             states=states)
        limit = integrator.cfl_safety * cfl_limit(state, derived)
        if integrator.dt > limit:
            return RunResult(records, "cfl_violation", state,
                             "dt=%g exceeds stability limit %g at t=%g"
                             % (integrator.dt, limit, state.t), states=states)
        try:
            if integrator.scheme == "rk4":
                state = step_rk4(state, integrator.dt, derived)
                picard_iters = None
            else:
                state, picard_iters, _ = step_picard(state, integrator.dt,
                                                     integrator, derived)
        except VortexProximityError as exc:
            return RunResult(records, "vortex_proximity", state, str(exc), states=states)
        derived = assemble(state)
        last = step_index == n_steps
        hit = eta1 is not None and derived.inf_A1 <= -eta1
        if step_index % stride == 0 or last or hit:
            report = monitor(state, derived, params, baseline)
            records.append(_record(state, report, picard_iters))
            if collect_states:
                states.append(state)
        if hit:
            return RunResult(records, "taylor_negative", state,
                             "inf A1 = %g <= -%g at t=%g" % (derived.inf_A1, eta1, state.t),
                             states=states)
    return RunResult(records, "completed", state, states=states)


def reversed_state(state):
    """Time-reversal image: (W, U, {z_j, lam_j}) -> (W, -U, {z_j, -lam_j}).

    Running the image forward retraces the original trajectory backwards.
    """
    vortices = tuple(Vortex(v.position, -v.strength) for v in state.vortices)
    return WaveState(state.W, Field(state.grid, -state.U.samples), vortices, 0.0)

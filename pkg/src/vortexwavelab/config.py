"""Scenario configuration files and trajectory output.

Configs are flat ``key = value`` text with ``#`` comments, one namespaced
key per line::

    grid.half_length = 200
    grid.n            = 16384
    vortex.x0         = 1.0
    vortex.y0         = -12.0
    vortex.lambda     = 110.188
    wave.kind         = odd_bump
    wave.amplitude    = 1e-3
    gevrey.L0         = 10
    gevrey.delta0     = 5
    time.dt           = 0.004
    time.t_end        = 0.85
    time.scheme       = rk4
    output.path       = trajectory.csv
    output.stride     = 2
    monitor.eta1      = 0.5

Exactly one of vortex.gamma / vortex.lambda may appear; gamma sets the
strength through lambda = pi * sqrt(gamma) * |y0|^(3/2).  Trajectories are
written as CSV with a fixed 16-column header and 17-significant-digit
floats.
"""

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import ConfigError
from .gevrey import GevreyParams
from .grid import GridSpec
from .sim import IntegratorConfig, StepRecord, make_initial, run_simulation
from .taylor import PairConfig

_FLOAT_KEYS = {
    "grid.half_length", "vortex.x0", "vortex.y0", "vortex.gamma",
    "vortex.lambda", "wave.amplitude", "gevrey.L0", "gevrey.delta0",
    "time.dt", "time.t_end", "monitor.eta1",
}
_INT_KEYS = {"grid.n", "output.stride"}
_STR_KEYS = {"wave.kind", "time.scheme", "output.path"}
_ALL_KEYS = _FLOAT_KEYS | _INT_KEYS | _STR_KEYS

_DEFAULTS = {
    "grid.half_length": 200.0,
    "grid.n": 16384,
    "vortex.x0": 1.0,
    "wave.kind": "zero_wave",
    "wave.amplitude": 0.0,
    "gevrey.L0": 10.0,
    "gevrey.delta0": 1000.0,
    "time.scheme": "rk4",
    "output.path": "trajectory.csv",
    "output.stride": 1,
}
_REQUIRED = ("vortex.y0", "time.dt", "time.t_end")


@dataclass
class ScenarioConfig:
    """Validated scenario: a dict of the namespaced keys actually set."""

    values: dict = field(default_factory=dict)

    def __post_init__(self):
        self.validate()

    # --- accessors -----------------------------------------------------
    def get(self, key):
        if key in self.values:
            return self.values[key]
        return _DEFAULTS.get(key)

    @property
    def lam(self):
        """Vortex strength, derived from gamma when given that way."""
        if "vortex.lambda" in self.values:
            return self.values["vortex.lambda"]
        gamma = self.values["vortex.gamma"]
        return math.pi * math.sqrt(gamma) * abs(self.get("vortex.y0")) ** 1.5

    # --- validation ----------------------------------------------------
    def validate(self):
        for key in self.values:
            if key not in _ALL_KEYS:
                raise ConfigError("unknown key %r" % key, key=key)
        for key in _REQUIRED:
            if key not in self.values:
                raise ConfigError("missing required key %r" % key, key=key)
        has_gamma = "vortex.gamma" in self.values
        has_lambda = "vortex.lambda" in self.values
        if has_gamma == has_lambda:
            raise ConfigError(
                "exactly one of vortex.gamma / vortex.lambda must be set "
                "(got %s)" % ("both" if has_gamma else "neither"),
                key="vortex.gamma" if has_gamma else "vortex.lambda")
        for key, v in self.values.items():
            if isinstance(v, float) and not math.isfinite(v):
                raise ConfigError("value of %r is not finite" % key, key=key)
        if self.get("wave.kind") not in ("zero_wave", "odd_bump"):
            raise ConfigError("wave.kind must be zero_wave or odd_bump",
                              key="wave.kind")
        if self.get("time.scheme") not in ("rk4", "picard"):
            raise ConfigError("time.scheme must be rk4 or picard",
                              key="time.scheme")
        if self.get("vortex.y0") >= 0:
            raise ConfigError("vortex.y0 must be negative (below the interface)",
                              key="vortex.y0")

    # --- text form -----------------------------------------------------
    @classmethod
    def parse(cls, text):
        values = {}
        for lineno, raw in enumerate(text.splitlines(), start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ConfigError("line %d is not 'key = value': %r" % (lineno, raw))
            key, _, val = line.partition("=")
            key = key.strip()
            val = val.strip()
            if key not in _ALL_KEYS:
                raise ConfigError("unknown key %r (line %d)" % (key, lineno), key=key)
            if key in values:
                raise ConfigError("duplicate key %r (line %d)" % (key, lineno), key=key)
            try:
                if key in _FLOAT_KEYS:
                    values[key] = float(val)
                elif key in _INT_KEYS:
                    values[key] = int(val)
                else:
                    values[key] = val
            except ValueError:
                raise ConfigError("bad value %r for key %r (line %d)"
                                  % (val, key, lineno), key=key)
        return cls(values)

    @classmethod
    def from_file(cls, path):
        with open(path, "r") as fh:
            return cls.parse(fh.read())

    def serialize(self):
        """Canonical text form; parsing it reproduces the same key set and
        values."""
        order = sorted(self.values)
        lines = []
        for key in order:
            v = self.values[key]
            if isinstance(v, float):
                lines.append("%s = %.17g" % (key, v))
            else:
                lines.append("%s = %s" % (key, v))
        return "\n".join(lines) + "\n"


def build_run_inputs(cfg):
    """(grid, initial state, integrator, gevrey params, eta1, stride)."""
    grid = GridSpec(cfg.get("grid.half_length"), cfg.get("grid.n"))
    pair = PairConfig(cfg.get("vortex.x0"), cfg.get("vortex.y0"), cfg.lam)
    state = make_initial(cfg.get("wave.kind"), cfg.get("wave.amplitude"),
                         pair, grid)
    integrator = IntegratorConfig(dt=cfg.get("time.dt"),
                                  t_end=cfg.get("time.t_end"),
                                  scheme=cfg.get("time.scheme"))
    gevrey = GevreyParams(L0=cfg.get("gevrey.L0"), delta0=cfg.get("gevrey.delta0"))
    eta1 = cfg.get("monitor.eta1")
    return grid, state, integrator, gevrey, eta1, cfg.get("output.stride")


def run_scenario(cfg):
    """Run a scenario end to end; returns the RunResult."""
    _, state, integrator, gevrey, eta1, stride = build_run_inputs(cfg)
    return run_simulation(state, integrator, gevrey_params=gevrey,
                          eta1=eta1, stride=stride)


def write_trajectory(path, records):
    with open(path, "w") as fh:
        fh.write(",".join(StepRecord.COLUMNS) + "\n")
        for rec in records:
            fh.write(rec.csv_row() + "\n")


def write_sweep(path, rows):
    """Sweep CSV: gamma, x, y, lambda, inf_A1, argmin_alpha."""
    with open(path, "w") as fh:
        fh.write("gamma,x,y,lambda,inf_A1,argmin_alpha\n")
        for row in rows:
            fh.write(",".join("%.17g" % v for v in row) + "\n")


def sweep_rows(gamma_min, gamma_max, steps, x, y, max_workers=None):
    """Closed-form stability scan over gamma in [gamma_min, gamma_max].

    lambda is derived per row as pi*sqrt(gamma)*|y|^(3/2); rows come back
    in gamma order regardless of worker scheduling.
    """
    from concurrent.futures import ThreadPoolExecutor
    from .taylor import inf_a1_flat

    if not gamma_min < gamma_max:
        raise ValueError("need gamma_min < gamma_max")
    if steps < 2:
        raise ValueError("need at least 2 steps")
    gammas = np.linspace(gamma_min, gamma_max, steps)

    def one(gamma):
        lam = math.pi * math.sqrt(gamma) * abs(y) ** 1.5
        inf_v, argmin = inf_a1_flat(PairConfig(x, y, lam))
        return (gamma, x, y, lam, inf_v, argmin)

    if max_workers is not None and max_workers > 1:
        with ThreadPoolExecutor(max_workers=max_workers) as pool:
            return list(pool.map(one, gammas))
    return [one(g) for g in gammas]

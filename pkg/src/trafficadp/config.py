"""Model constants, run settings, grid construction and admissibility checks."""

from __future__ import annotations

import math
from dataclasses import dataclass, field, fields, replace

import numpy as np

# Default road length; every speed/acceleration scale derives from it.
DEFAULT_ROAD_LENGTH = 2.0 * math.pi


def _derived_s_max(road_length: float) -> float:
    return road_length / 20.0


def _derived_u_max(s_max: float) -> float:
    return s_max / 6.0


def _derived_w_max(u_max: float) -> float:
    return u_max / 10.0


@dataclass(frozen=True)
class ModelParams:
    """Physical and game constants. Immutable; share freely."""

    road_length: float = DEFAULT_ROAD_LENGTH
    s_max: float | None = None      # speed limit, defaults to road_length/20
    u_max: float | None = None      # control bound, defaults to s_max/6
    w_max: float | None = None      # disturbance bound, defaults to u_max/10
    gamma: float = 10.0             # disturbance attenuation
    beta: float = 2.0               # speed-preference weight
    alpha: float = 1.0              # discount rate
    epsilon: float = 0.0005         # noise strength
    theta_inv: float = 1e-2         # learning rate
    K: int = 2                      # Fourier truncation per axis
    weight_init: float = 0.1        # initial fill value for both weight matrices

    def __post_init__(self):
        # Derived defaults keep the ratio structure when road_length is overridden.
        if self.s_max is None:
            object.__setattr__(self, "s_max", _derived_s_max(self.road_length))
        if self.u_max is None:
            object.__setattr__(self, "u_max", _derived_u_max(self.s_max))
        if self.w_max is None:
            object.__setattr__(self, "w_max", _derived_w_max(self.u_max))


@dataclass(frozen=True)
class RunConfig:
    """Settings for one simulation run."""

    T: float = 600.0
    dt: float = 0.0025
    nx: int = 81
    nv: int = 81
    snapshot_times: tuple[float, ...] = ()
    mc_agents: int = 0              # 0 disables the Monte-Carlo oracle
    rng_seed: int = 0
    out_dir: str = "out"


@dataclass(frozen=True)
class GridSpec:
    """Uniform cell-centered grid on the position x speed cylinder."""

    nx: int
    nv: int
    dx: float
    dv: float
    x_centers: np.ndarray = field(repr=False, compare=False)
    v_centers: np.ndarray = field(repr=False, compare=False)

    @classmethod
    def build(cls, params: ModelParams, run: RunConfig) -> "GridSpec":
        dx = params.road_length / run.nx
        dv = params.s_max / run.nv
        x = (np.arange(run.nx) + 0.5) * dx
        v = (np.arange(run.nv) + 0.5) * dv
        return cls(nx=run.nx, nv=run.nv, dx=dx, dv=dv, x_centers=x, v_centers=v)

    @property
    def cell_area(self) -> float:
        return self.dx * self.dv


CFL_SAFETY = 0.9


@dataclass(frozen=True)
class ValidationReport:
    violations: tuple[str, ...]
    cfl_bounds: dict

    @property
    def admissible(self) -> bool:
        return not self.violations


def validate(params: ModelParams, run: RunConfig) -> ValidationReport:
    """Check every field invariant plus the explicit-scheme CFL condition.

    Pure: returns a report, never raises for inadmissible values.
    """
    bad = []
    for name in ("road_length", "s_max", "gamma", "beta", "alpha", "epsilon",
                 "theta_inv"):
        if getattr(params, name) <= 0:
            bad.append(f"{name} must be strictly positive")
    if not (0 < params.w_max < params.u_max):
        bad.append("must have 0 < w_max < u_max")
    if params.K < 1:
        bad.append("K must be >= 1")
    if run.dt <= 0:
        bad.append("dt must be strictly positive")
    if run.T < run.dt:
        bad.append("T must be >= dt")
    if run.nx < 4 or run.nv < 4:
        bad.append("nx and nv must be >= 4")
    if any(t < 0 or t > run.T for t in run.snapshot_times):
        bad.append("snapshot_times must lie in [0, T]")
    if run.mc_agents < 0:
        bad.append("mc_agents must be nonnegative")

    dx = params.road_length / max(run.nx, 1)
    dv = params.s_max / max(run.nv, 1)
    bounds = {
        "advective_x": dx / params.s_max if params.s_max > 0 else math.nan,
        "advective_v": dv / (params.u_max + params.w_max),
        "diffusive_v": dv * dv / (2.0 * params.epsilon)
        if params.epsilon > 0 else math.inf,
    }
    dt_max = CFL_SAFETY * min(bounds.values())
    bounds["dt_max"] = dt_max
    if run.dt > dt_max:
        bad.append(
            f"CFL violation: dt={run.dt:g} exceeds {CFL_SAFETY:g} * "
            f"min(bounds) = {dt_max:g}"
        )
    return ValidationReport(violations=tuple(bad), cfl_bounds=bounds)


class ConfigError(ValueError):
    pass


# Keys accepted in the plain-text config, split by destination dataclass.
_PARAM_KEYS = ("road_length", "s_max", "u_max", "w_max", "gamma", "beta",
               "alpha", "epsilon", "theta_inv", "K", "weight_init")
_RUN_KEYS = ("T", "dt", "nx", "nv", "snapshot_times", "mc_agents",
             "rng_seed", "out_dir")
_INT_KEYS = ("K", "nx", "nv", "mc_agents", "rng_seed")


def load_config(path) -> tuple[ModelParams, RunConfig]:
    """Parse a key=value config file; missing keys take the defaults."""
    pvals: dict = {}
    rvals: dict = {}
    with open(path) as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ConfigError(f"{path}:{lineno}: expected key=value, got {raw!r}")
            key, _, value = line.partition("=")
            key = key.strip()
            value = value.strip()
            try:
                if key == "snapshot_times":
                    rvals[key] = tuple(
                        float(tok) for tok in value.split(",") if tok.strip()
                    )
                elif key == "out_dir":
                    rvals[key] = value
                elif key in _INT_KEYS:
                    parsed = int(value)
                    (pvals if key in _PARAM_KEYS else rvals)[key] = parsed
                elif key in _PARAM_KEYS:
                    pvals[key] = float(value)
                elif key in _RUN_KEYS:
                    rvals[key] = float(value)
                else:
                    raise ConfigError(f"{path}:{lineno}: unknown key {key!r}")
            except ConfigError:
                raise
            except ValueError as exc:
                raise ConfigError(f"{path}:{lineno}: bad value for {key}: {exc}")
    return ModelParams(**pvals), RunConfig(**rvals)


def save_config(params: ModelParams, run: RunConfig, path) -> None:
    """Write a config file that load_config round-trips exactly."""
    lines = []
    for f in fields(ModelParams):
        lines.append(f"{f.name}={getattr(params, f.name)!r}")
    for f in fields(RunConfig):
        value = getattr(run, f.name)
        if f.name == "snapshot_times":
            value = ",".join(repr(t) for t in value)
        elif f.name != "out_dir":
            value = repr(value)
        lines.append(f"{f.name}={value}")
    with open(path, "w") as fh:
        fh.write("\n".join(lines) + "\n")


def with_overrides(params: ModelParams, **kw) -> ModelParams:
    return replace(params, **kw)

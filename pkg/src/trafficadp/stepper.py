"""Coupled SSP-RK2 integrator for the weight-flow / forward-Kolmogorov system.

Weights and density advance on one shared clock; controls are re-derived
from the stage weights inside every stage, so the update is the literal
two-stage Shu-Osher discretization of the semi-discrete coupled system.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field

import numpy as np

from .basis import GridBasis, WeightMatrices
from .config import GridSpec, ModelParams, RunConfig
from . import fk, residual


@dataclass
class CoupledState:
    W: WeightMatrices
    rho: np.ndarray
    t: float


@dataclass
class CoupledTendency:
    dA: np.ndarray
    dB: np.ndarray
    drho: np.ndarray


def coupled_rhs(s: CoupledState, gb: GridBasis, p: ModelParams,
                freeze_weights: bool = False) -> CoupledTendency:
    """Right-hand side of the coupled system at the given state."""
    if freeze_weights:
        dA = np.zeros_like(s.W.A)
        dB = np.zeros_like(s.W.B)
    else:
        g = residual.weight_gradients(s.W, s.rho, gb, p)
        dA = -p.theta_inv * g.gA
        dB = -p.theta_inv * g.gB
    vel = fk.velocity_field(s.W, gb.grid, p)
    drho = fk.fk_rhs(s.rho, vel, gb.grid, p)
    return CoupledTendency(dA=dA, dB=dB, drho=drho)


def shu_osher_step(y, rhs, dt):
    """Generic two-stage SSP-RK2 update: a convex combination of two
    forward-Euler steps, so it inherits their positivity under the CFL."""
    y1 = y + dt * rhs(y)
    return 0.5 * (y + y1 + dt * rhs(y1))


def ssp_rk2_step(s: CoupledState, dt: float, gb: GridBasis, p: ModelParams,
                 freeze_weights: bool = False) -> CoupledState:
    """One Shu-Osher step of the joint (A, B, rho) system."""

    def rhs(y):
        A, B, rho = y
        k = coupled_rhs(CoupledState(W=WeightMatrices(A, B), rho=rho, t=s.t),
                        gb, p, freeze_weights)
        return _Triple(k.dA, k.dB, k.drho)

    A, B, rho = shu_osher_step(_Triple(s.W.A, s.W.B, s.rho), rhs, dt)
    return CoupledState(W=WeightMatrices(A, B), rho=rho, t=s.t + dt)


class _Triple(tuple):
    """Component-wise arithmetic on (A, B, rho) so the generic update
    applies to the coupled state."""

    def __new__(cls, A, B, rho):
        return super().__new__(cls, (A, B, rho))

    def __add__(self, other):
        if isinstance(other, tuple):
            return _Triple(*(a + b for a, b in zip(self, other)))
        return _Triple(*(a + other for a in self))

    __radd__ = __add__

    def __rmul__(self, c):
        return _Triple(*(c * a for a in self))

    def __mul__(self, c):
        return self.__rmul__(c)


@dataclass
class RunSummary:
    steps: int
    t_final: float
    error_initial: float
    error_final: float
    mass_min: float
    mass_max: float
    rho_min: float
    wall_seconds: float

    def lines(self):
        return [
            f"steps={self.steps}",
            f"t_final={self.t_final!r}",
            f"error_initial={self.error_initial!r}",
            f"error_final={self.error_final!r}",
            f"mass_min={self.mass_min!r}",
            f"mass_max={self.mass_max!r}",
            f"rho_min={self.rho_min!r}",
            f"wall_seconds={self.wall_seconds:.3f}",
        ]


@dataclass
class NullSinks:
    """Sink interface; every callback receives immutable snapshots."""

    def on_series(self, t, W, E, profile):
        pass

    def on_snapshot(self, t, rho, grid):
        pass


def run(s0: CoupledState, cfg: RunConfig, gb: GridBasis, p: ModelParams,
        sinks=None, series_stride: int = 100,
        freeze_weights: bool = False) -> tuple[CoupledState, RunSummary]:
    """March the coupled system from t=0 to T, emitting series and snapshots."""
    from .diagnostics import macro_profile

    sinks = sinks or NullSinks()
    grid = gb.grid
    n_steps = int(round(cfg.T / cfg.dt)) if cfg.T > 0 else 0
    snap_steps = sorted({min(int(round(ts / cfg.dt)), n_steps)
                         for ts in cfg.snapshot_times} | {0})

    start = time.perf_counter()
    s = s0
    E0 = residual.hjb_error(s.W, s.rho, gb, p)
    mass_min = mass_max = fk.mass(s.rho, grid)
    rho_min = fk.min_value(s.rho)

    def emit_series(state):
        E = residual.hjb_error(state.W, state.rho, gb, p)
        sinks.on_series(state.t, state.W, E,
                        macro_profile(state.rho, grid, p, state.t))
        return E

    emit_series(s)
    if 0 in snap_steps:
        sinks.on_snapshot(0.0, s.rho, grid)
    E_last = E0

    for k in range(1, n_steps + 1):
        s = ssp_rk2_step(s, cfg.dt, gb, p, freeze_weights)
        m = fk.mass(s.rho, grid)
        mass_min, mass_max = min(mass_min, m), max(mass_max, m)
        rho_min = min(rho_min, fk.min_value(s.rho))
        if k % series_stride == 0 or k == n_steps:
            E_last = emit_series(s)
        if k in snap_steps:
            sinks.on_snapshot(s.t, s.rho, grid)

    summary = RunSummary(
        steps=n_steps, t_final=s.t, error_initial=E0, error_final=E_last,
        mass_min=mass_min, mass_max=mass_max, rho_min=rho_min,
        wall_seconds=time.perf_counter() - start,
    )
    return s, summary

"""Microscopic cross-validation: reflected Euler-Maruyama particle ensemble.

Agents follow dx = v dt, dv = (u~ + w~) dt + sqrt(2*eps) dW with the speed
kept in [0, s_max] by mirror folding, the pathwise realization of the
boundary local time. Controls come from the closed-form value surrogate at
the agent's exact state, so no grid interpolation is involved.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .basis import WeightMatrices, eval_dv_dy2
from .config import GridSpec, ModelParams
from . import policy


@dataclass
class EnsembleState:
    x: np.ndarray
    v: np.ndarray
    t: float

    @property
    def n(self) -> int:
        return self.x.size


def sample_initial(n: int, rho0: np.ndarray, grid: GridSpec,
                   rng: np.random.Generator) -> EnsembleState:
    """n i.i.d. draws from the cell-averaged density: cell by mass, then
    uniform within the cell."""
    if n <= 0:
        raise ValueError("need at least one agent")
    weights = np.asarray(rho0, dtype=float).ravel()
    weights = weights / weights.sum()
    cells = rng.choice(weights.size, size=n, p=weights)
    ix, iv = np.unravel_index(cells, (grid.nx, grid.nv))
    x = (ix + rng.random(n)) * grid.dx
    v = (iv + rng.random(n)) * grid.dv
    return EnsembleState(x=x, v=v, t=0.0)


def _reflect(v: np.ndarray, s_max: float) -> np.ndarray:
    """Fold speeds back into [0, s_max]; at CFL-scale steps one fold per
    boundary suffices, so more than two passes flags a broken step size."""
    for _ in range(2):
        v = np.where(v < 0.0, -v, v)
        v = np.where(v > s_max, 2.0 * s_max - v, v)
        if np.all((v >= 0.0) & (v <= s_max)):
            return v
    raise RuntimeError("speed reflection did not settle in two folds; "
                       "the Monte-Carlo time step is too large")


def em_step(e: EnsembleState, W: WeightMatrices, dt_mc: float, grid: GridSpec,
            p: ModelParams, rng: np.random.Generator) -> EnsembleState:
    p2 = eval_dv_dy2(W, e.x, e.v, p)
    drift = policy.smooth_control(p2, p) + policy.smooth_disturbance(p2, p)
    x = np.mod(e.x + e.v * dt_mc, p.road_length)
    noise = rng.standard_normal(e.n)
    v = e.v + drift * dt_mc + np.sqrt(2.0 * p.epsilon * dt_mc) * noise
    return EnsembleState(x=x, v=_reflect(v, p.s_max), t=e.t + dt_mc)


def empirical_density(e: EnsembleState, grid: GridSpec) -> np.ndarray:
    """Cell-count histogram normalized to unit mass."""
    if e.n == 0:
        raise ValueError("empty ensemble")
    ix = np.minimum((e.x / grid.dx).astype(int), grid.nx - 1)
    iv = np.minimum((e.v / grid.dv).astype(int), grid.nv - 1)
    counts = np.zeros((grid.nx, grid.nv))
    np.add.at(counts, (ix, iv), 1.0)
    return counts / (e.n * grid.cell_area)


def l1_distance(rho_a: np.ndarray, rho_b: np.ndarray, grid: GridSpec) -> float:
    return float(np.sum(np.abs(rho_a - rho_b)) * grid.cell_area)

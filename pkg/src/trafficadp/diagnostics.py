"""Macroscopic observables: spatial density, momentum, bulk velocity,
speed marginal, and a discrete continuity-law residual."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .config import GridSpec, ModelParams


@dataclass
class MacroProfile:
    t: float
    x: np.ndarray
    r1: np.ndarray      # spatial density
    j: np.ndarray       # momentum density
    vbulk: np.ndarray   # j / r1, NaN where r1 is below the vacuum floor
    v: np.ndarray
    r2: np.ndarray      # speed marginal


def macro_profile(rho: np.ndarray, grid: GridSpec, p: ModelParams,
                  t: float) -> MacroProfile:
    rho = np.asarray(rho, dtype=float)
    r1 = rho.sum(axis=1) * grid.dv
    j = (rho * grid.v_centers[None, :]).sum(axis=1) * grid.dv
    r2 = rho.sum(axis=0) * grid.dx
    # Vacuum cells would divide j by ~0; mark them missing instead.
    floor = 1e-12 / p.s_max
    vbulk = np.full_like(r1, np.nan)
    ok = r1 >= floor
    vbulk[ok] = j[ok] / r1[ok]
    return MacroProfile(t=t, x=grid.x_centers.copy(), r1=r1, j=j,
                        vbulk=vbulk, v=grid.v_centers.copy(), r2=r2)


def continuity_check(profiles) -> float:
    """Residual of d(r1)/dt + d(j)/dy1 = 0 from consecutive profiles.

    Central differences in time (uniform spacing required) and periodic
    central differences in space; returns the max-abs residual over all
    interior times and positions.
    """
    profiles = list(profiles)
    if len(profiles) < 3:
        raise ValueError("need at least 3 consecutive profiles")
    times = np.array([q.t for q in profiles])
    steps = np.diff(times)
    if np.any(steps <= 0) or not np.allclose(steps, steps[0], rtol=1e-9):
        raise ValueError("profiles must be at uniform increasing times")
    dt = steps[0]
    dx = float(profiles[0].x[1] - profiles[0].x[0])
    worst = 0.0
    for k in range(1, len(profiles) - 1):
        dr1_dt = (profiles[k + 1].r1 - profiles[k - 1].r1) / (2.0 * dt)
        jk = profiles[k].j
        dj_dx = (np.roll(jk, -1) - np.roll(jk, 1)) / (2.0 * dx)
        worst = max(worst, float(np.max(np.abs(dr1_dt + dj_dx))))
    return worst

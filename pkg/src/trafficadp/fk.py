"""Finite-volume discretization of the forward Kolmogorov operator.

First-order Rusanov fluxes for both advection directions, flux-form central
differences for the speed diffusion. Periodic in position; both speed
boundaries carry exactly zero total (advective + diffusive) flux, so the
discrete mass is conserved to round-off.
"""

from __future__ import annotations

import numpy as np

from .basis import WeightMatrices, eval_dv_dy2
from .config import GridSpec, ModelParams
from . import policy
from .residual import NumericsError


def init_density(grid: GridSpec, p: ModelParams) -> np.ndarray:
    """Smooth initial density: von-Mises-like bump in position times a
    compactly supported bump in speed centered at 0.3*s_max, normalized to
    unit discrete mass."""
    x = grid.x_centers[:, None]
    v = grid.v_centers[None, :]
    fx = np.exp(10.0 * np.cos(2.0 * np.pi * (x - p.road_length / 2.0)
                              / p.road_length))
    dv_off = 11.0 * (v - 0.3 * p.s_max)
    inside = np.abs(v - 0.3 * p.s_max) < 1.0 / 11.0
    fv = np.zeros_like(dv_off)
    arg = dv_off[inside] ** 2 - 1.0
    fv[inside] = np.exp(1.0 / arg)
    rho = fx * fv
    total = rho.sum() * grid.cell_area
    if total <= 0.0:
        raise ValueError("initial density vanishes on this grid; refine nv")
    return rho / total


def mass(rho: np.ndarray, grid: GridSpec) -> float:
    return float(np.sum(rho) * grid.cell_area)


def min_value(rho: np.ndarray) -> float:
    return float(np.min(rho))


def rusanov_flux(qL, qR, speed_bound, fL, fR):
    """Monotone two-point flux: average minus wave-speed dissipation."""
    if np.any(np.asarray(speed_bound) < 0):
        raise ValueError("Rusanov speed bound must be nonnegative")
    return 0.5 * (fL + fR) - 0.5 * speed_bound * (np.asarray(qR) - qL)


def velocity_field(W: WeightMatrices, grid: GridSpec, p: ModelParams) -> np.ndarray:
    """Speed-direction transport a = u~ + w~ from the current weights."""
    y1 = grid.x_centers[:, None] * np.ones((1, grid.nv))
    y2 = grid.v_centers[None, :] * np.ones((grid.nx, 1))
    p2 = eval_dv_dy2(W, y1, y2, p)
    return policy.smooth_control(p2, p) + policy.smooth_disturbance(p2, p)


def fk_rhs(rho: np.ndarray, vel: np.ndarray, grid: GridSpec,
           p: ModelParams) -> np.ndarray:
    """Semi-discrete tendency d(rho)/dt, shape (nx, nv)."""
    rho = np.asarray(rho, dtype=float)
    vel = np.asarray(vel, dtype=float)
    if rho.shape != (grid.nx, grid.nv) or vel.shape != rho.shape:
        raise ValueError("density/velocity shape does not match the grid")

    v_row = grid.v_centers[None, :]

    # Position direction: flux v*rho, exact wave speed |v_j| per row.
    rho_r = np.roll(rho, -1, axis=0)
    Fx = rusanov_flux(rho, rho_r, np.abs(v_row), v_row * rho, v_row * rho_r)
    adv_x = (Fx - np.roll(Fx, 1, axis=0)) / grid.dx

    # Speed direction: interior faces only; outer faces carry zero flux.
    aL, aR = vel[:, :-1], vel[:, 1:]
    a_face = 0.5 * (aL + aR)
    s_face = np.maximum(np.abs(aL), np.abs(aR))
    qL, qR = rho[:, :-1], rho[:, 1:]
    Fv_int = rusanov_flux(qL, qR, s_face, a_face * qL, a_face * qR)
    Fv = np.zeros((grid.nx, grid.nv + 1))
    Fv[:, 1:-1] = Fv_int
    adv_v = (Fv[:, 1:] - Fv[:, :-1]) / grid.dv

    # Diffusion in flux form; zero-gradient faces at the speed boundaries.
    D = np.zeros((grid.nx, grid.nv + 1))
    D[:, 1:-1] = p.epsilon * (rho[:, 1:] - rho[:, :-1]) / grid.dv
    diff_v = (D[:, 1:] - D[:, :-1]) / grid.dv

    tend = -adv_x - adv_v + diff_v
    if not np.all(np.isfinite(tend)):
        bad = np.argwhere(~np.isfinite(tend))[0]
        raise NumericsError(f"non-finite FK tendency at cell {tuple(bad)}")
    return tend

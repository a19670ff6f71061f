"""Game cost pieces: controls, disturbances, interaction field, Hamiltonian.

All functions are numpy-vectorized over their state arguments.
"""

from __future__ import annotations

import numpy as np

from .config import GridSpec, ModelParams


def ramp_control(p2, p: ModelParams):
    """Exact minimizing control: -p2 clipped to [-u_max, u_max]."""
    return np.clip(-np.asarray(p2, dtype=float), -p.u_max, p.u_max)


def ramp_disturbance(p2, p: ModelParams):
    """Exact maximizing disturbance: gamma^2 * p2 clipped to [-w_max, w_max]."""
    return np.clip(p.gamma ** 2 * np.asarray(p2, dtype=float), -p.w_max, p.w_max)


def smooth_control(p2, p: ModelParams):
    """Feasible smooth stand-in for ramp_control: -u_max * tanh(p2)."""
    return -p.u_max * np.tanh(p2)


def smooth_disturbance(p2, p: ModelParams):
    """Feasible smooth stand-in for ramp_disturbance: w_max * tanh(gamma^2 p2)."""
    return p.w_max * np.tanh(p.gamma ** 2 * np.asarray(p2, dtype=float))


def _sech2(x):
    # 1/cosh^2 without overflow for large |x|.
    e = np.exp(-2.0 * np.abs(x))
    return 4.0 * e / np.square(1.0 + e)


def smooth_derivatives(p2, p: ModelParams):
    """d/dp2 of (smooth_control, smooth_disturbance)."""
    p2 = np.asarray(p2, dtype=float)
    g2 = p.gamma ** 2
    return -p.u_max * _sech2(p2), g2 * p.w_max * _sech2(g2 * p2)


def interaction_field(rho: np.ndarray, grid: GridSpec, p: ModelParams) -> np.ndarray:
    """Convolution of the density with the sinusoidal congestion kernel.

    Phi(x) = integral of sin(2*pi*(x - eta1)/L) * rho over the cylinder,
    evaluated separably: the angle difference expands into two scalar
    moments of rho, so the cost is O(nx*nv) instead of O(nx^2*nv).
    """
    rho = np.asarray(rho, dtype=float)
    if rho.shape != (grid.nx, grid.nv):
        raise ValueError(f"density shape {rho.shape} does not match grid "
                         f"({grid.nx}, {grid.nv})")
    ang = 2.0 * np.pi * grid.x_centers / p.road_length
    col_mass = rho.sum(axis=1) * grid.cell_area     # per-x integral over speed
    C = float(np.cos(ang) @ col_mass)
    S = float(np.sin(ang) @ col_mass)
    return np.sin(ang) * C - np.cos(ang) * S


def running_cost(y2, u, w, phi, p: ModelParams):
    """Comfort + disturbance reward + congestion/speed-preference terms."""
    return 0.5 * np.square(u) - np.square(w) / (2.0 * p.gamma ** 2) \
        + (phi - 1.0 / p.beta) * y2


def pre_hamiltonian(y2, u, w, phi, p1, p2, p: ModelParams):
    """Running cost plus costate-weighted drift (y2, u + w)."""
    return running_cost(y2, u, w, phi, p) + p1 * np.asarray(y2) + p2 * (u + w)

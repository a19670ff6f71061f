"""HJB-Isaacs residual field, its squared L2 norm, and weight gradients.

The residual per cell is
    f = alpha*V + H(y, u~(Vy2), w~(Vy2), Phi, grad V) + epsilon*Vy2y2
with the smooth tanh policies closing the Hamiltonian. The gradient of
E = ||f||^2 w.r.t. each Fourier weight follows by the chain rule through
the closed-form basis partials; both are integrated with the midpoint rule
on cell centers so finite differences of E reproduce the gradients.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .basis import GridBasis, WeightMatrices
from .config import GridSpec, ModelParams
from . import policy


class NumericsError(RuntimeError):
    """Raised when a NaN enters a residual evaluation."""


@dataclass
class ResidualCache:
    """Everything the gradient reduction reuses from the field evaluation."""

    f: np.ndarray
    Vy2: np.ndarray
    u: np.ndarray
    w: np.ndarray
    du: np.ndarray
    dw: np.ndarray


def _check_finite(name, arr):
    if not np.all(np.isfinite(arr)):
        raise NumericsError(f"non-finite values in {name}")


def _evaluate(W: WeightMatrices, rho: np.ndarray, gb: GridBasis,
              p: ModelParams) -> ResidualCache:
    grid = gb.grid
    rho = np.asarray(rho, dtype=float)
    _check_finite("weights", W.A)
    _check_finite("weights", W.B)
    _check_finite("density", rho)

    V, Vy1, Vy2, Vy2y2 = gb.fields(W)
    u = policy.smooth_control(Vy2, p)
    w = policy.smooth_disturbance(Vy2, p)
    du, dw = policy.smooth_derivatives(Vy2, p)
    phi = policy.interaction_field(rho, grid, p)[:, None]
    y2 = grid.v_centers[None, :]

    H = policy.pre_hamiltonian(y2, u, w, phi, Vy1, Vy2, p)
    f = p.alpha * V + H + p.epsilon * Vy2y2
    _check_finite("residual field", f)
    return ResidualCache(f=f, Vy2=Vy2, u=u, w=w, du=du, dw=dw)


def residual_field(W: WeightMatrices, rho: np.ndarray, gb: GridBasis,
                   p: ModelParams) -> np.ndarray:
    """Pointwise HJB-I residual at every cell center, shape (nx, nv)."""
    return _evaluate(W, rho, gb, p).f


def hjb_error(W: WeightMatrices, rho: np.ndarray, gb: GridBasis,
              p: ModelParams) -> float:
    """E = midpoint quadrature of f^2 over the cylinder."""
    f = residual_field(W, rho, gb, p)
    return float(np.sum(f * f) * gb.grid.cell_area)


@dataclass
class WeightGradient:
    gA: np.ndarray
    gB: np.ndarray


def weight_gradients(W: WeightMatrices, rho: np.ndarray, gb: GridBasis,
                     p: ModelParams) -> WeightGradient:
    """Frobenius gradients of the residual error w.r.t. A and B.

    Per weight, d f = alpha*dV + (dH/du * du~ + dH/dw * dw~ + u~ + w~) * dVy2
    + y2 * dVy1 + epsilon * dVy2y2, and the gradient entry is
    2 * sum(f * df) * dx * dv. The y2-partial coefficient bundles the
    policy chain terms with the costate term because both multiply dVy2.
    """
    grid = gb.grid
    c = _evaluate(W, rho, gb, p)
    g2 = p.gamma ** 2

    dH_du = c.u + c.Vy2
    dH_dw = -c.w / g2 + c.Vy2
    # Coefficient of the d(dV/dy2)/dw partial in df.
    coef_y2 = dH_du * c.du + dH_dw * c.dw + c.u + c.w
    coef_y1 = grid.v_centers[None, :] * np.ones((grid.nx, 1))

    scale = 2.0 * grid.cell_area
    out = []
    for X, Xp in ((gb.Sx, gb.Cxkx), (gb.Cx, -gb.Sxkx)):   # sine, cosine branch
        # df[ij] = alpha*X_i Cv_j - coef_y2 * X_i Svk_j + coef_y1 * Xp_i Cv_j
        #          - epsilon * X_i Cvk2_j, contracted against f cellwise.
        fX = np.einsum("xv,ix->iv", c.f, X)               # (K, nv)
        fXp = np.einsum("xv,ix->iv", c.f * coef_y1, Xp)
        fXc = np.einsum("xv,ix->iv", c.f * coef_y2, X)
        g = p.alpha * (fX @ gb.Cv.T) - fXc @ gb.Svk.T + fXp @ gb.Cv.T \
            - p.epsilon * (fX @ gb.Cvk2.T)
        out.append(scale * g)
    return WeightGradient(gA=out[0], gB=out[1])

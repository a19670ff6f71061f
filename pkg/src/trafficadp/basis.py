"""Truncated Fourier approximation of the value function and its derivatives.

The surrogate is
    V(y1, y2) = sum_{i,j=0}^{K-1} (a_ij sin(2*pi*i*y1/L) + b_ij cos(2*pi*i*y1/L))
                * cos(2*pi*j*y2/s_max),
periodic in y1 and with zero y2-derivative on both speed boundaries by
construction. Trig arguments are range-reduced so those two structural
properties hold to machine precision.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .config import GridSpec, ModelParams


@dataclass
class WeightMatrices:
    """Sine-branch (A) and cosine-branch (B) coefficients, each K x K."""

    A: np.ndarray
    B: np.ndarray

    def __post_init__(self):
        self.A = np.asarray(self.A, dtype=float)
        self.B = np.asarray(self.B, dtype=float)
        if self.A.shape != self.B.shape or self.A.ndim != 2 \
                or self.A.shape[0] != self.A.shape[1]:
            raise ValueError(f"weights must be two K x K matrices, got "
                             f"{self.A.shape} and {self.B.shape}")

    @property
    def K(self) -> int:
        return self.A.shape[0]

    @classmethod
    def zeros(cls, K: int) -> "WeightMatrices":
        return cls(np.zeros((K, K)), np.zeros((K, K)))

    @classmethod
    def filled(cls, K: int, value: float) -> "WeightMatrices":
        return cls(np.full((K, K), value), np.full((K, K), value))

    def copy(self) -> "WeightMatrices":
        return WeightMatrices(self.A.copy(), self.B.copy())


def _sin2pi(frac):
    return np.sin(2.0 * np.pi * np.mod(frac, 1.0))


def _cos2pi(frac):
    return np.cos(2.0 * np.pi * np.mod(frac, 1.0))


def _tables(K: int, y1, y2, p: ModelParams):
    """Per-harmonic factor tables at the given points.

    Returns Sx, Cx with shape (K,) + shape(y1) and Sv, Cv likewise in y2,
    plus the angular rates kx_i = 2*pi*i/L and kv_j = 2*pi*j/s_max.
    """
    y1 = np.asarray(y1, dtype=float)
    y2 = np.asarray(y2, dtype=float)
    modes = np.arange(K).reshape((K,) + (1,) * y1.ndim)
    fx = modes * (y1 / p.road_length)
    fv = modes * (y2 / p.s_max)
    kx = 2.0 * np.pi * np.arange(K) / p.road_length
    kv = 2.0 * np.pi * np.arange(K) / p.s_max
    return _sin2pi(fx), _cos2pi(fx), _sin2pi(fv), _cos2pi(fv), kx, kv


def eval_value(W: WeightMatrices, y1, y2, p: ModelParams):
    Sx, Cx, _, Cv, _, _ = _tables(W.K, y1, y2, p)
    return np.einsum("ij,i...,j...->...", W.A, Sx, Cv) \
        + np.einsum("ij,i...,j...->...", W.B, Cx, Cv)


def eval_dv_dy2(W: WeightMatrices, y1, y2, p: ModelParams):
    """d/dy2 of the value surrogate; exactly zero on both speed boundaries."""
    Sx, Cx, Sv, _, _, kv = _tables(W.K, y1, y2, p)
    Svk = Sv * kv.reshape((W.K,) + (1,) * (Sv.ndim - 1))
    return -(np.einsum("ij,i...,j...->...", W.A, Sx, Svk)
             + np.einsum("ij,i...,j...->...", W.B, Cx, Svk))


def eval_d2v_dy2(W: WeightMatrices, y1, y2, p: ModelParams):
    Sx, Cx, _, Cv, _, kv = _tables(W.K, y1, y2, p)
    Cvk2 = Cv * (kv ** 2).reshape((W.K,) + (1,) * (Cv.ndim - 1))
    return -(np.einsum("ij,i...,j...->...", W.A, Sx, Cvk2)
             + np.einsum("ij,i...,j...->...", W.B, Cx, Cvk2))


def eval_grad_y(W: WeightMatrices, y1, y2, p: ModelParams):
    """(d/dy1, d/dy2) of the value surrogate."""
    Sx, Cx, Sv, Cv, kx, kv = _tables(W.K, y1, y2, p)
    kxr = kx.reshape((W.K,) + (1,) * (Sx.ndim - 1))
    kvr = kv.reshape((W.K,) + (1,) * (Sv.ndim - 1))
    d1 = np.einsum("ij,i...,j...->...", W.A, Cx * kxr, Cv) \
        - np.einsum("ij,i...,j...->...", W.B, Sx * kxr, Cv)
    d2 = -(np.einsum("ij,i...,j...->...", W.A, Sx, Sv * kvr)
           + np.einsum("ij,i...,j...->...", W.B, Cx, Sv * kvr))
    return d1, d2


class PartialSet(NamedTuple):
    """Derivatives of the four value-surrogate fields w.r.t. one weight."""

    value: np.ndarray       # dV/dw
    dy2: np.ndarray         # d(dV/dy2)/dw
    grad: tuple             # (d(dV/dy1)/dw, d(dV/dy2)/dw)
    d2y2: np.ndarray        # d(d2V/dy2^2)/dw


def basis_partials(i: int, j: int, branch: str, y1, y2, p: ModelParams) -> PartialSet:
    """Closed-form partials w.r.t. a_ij (branch='sine') or b_ij ('cosine')."""
    y1 = np.asarray(y1, dtype=float)
    y2 = np.asarray(y2, dtype=float)
    fx = i * y1 / p.road_length
    fv = j * y2 / p.s_max
    kx = 2.0 * np.pi * i / p.road_length
    kv = 2.0 * np.pi * j / p.s_max
    if branch == "sine":
        X, Xp = _sin2pi(fx), _cos2pi(fx) * kx
    elif branch == "cosine":
        X, Xp = _cos2pi(fx), -_sin2pi(fx) * kx
    else:
        raise ValueError(f"branch must be 'sine' or 'cosine', got {branch!r}")
    Cv, Sv = _cos2pi(fv), _sin2pi(fv)
    d_dy2 = -X * Sv * kv
    return PartialSet(
        value=X * Cv,
        dy2=d_dy2,
        grad=(Xp * Cv, d_dy2),
        d2y2=-X * Cv * kv * kv,
    )


class GridBasis:
    """Harmonic tables tabulated once on a grid, reused every evaluation.

    Field arrays are (nx, nv); the per-branch tensors carried here make the
    K^2-entry weight-gradient reduction a single einsum.
    """

    def __init__(self, grid: GridSpec, p: ModelParams):
        K = p.K
        self.K = K
        self.grid = grid
        fx = np.outer(np.arange(K), grid.x_centers / p.road_length)
        fv = np.outer(np.arange(K), grid.v_centers / p.s_max)
        self.Sx, self.Cx = _sin2pi(fx), _cos2pi(fx)   # (K, nx)
        self.Sv, self.Cv = _sin2pi(fv), _cos2pi(fv)   # (K, nv)
        self.kx = 2.0 * np.pi * np.arange(K) / p.road_length
        self.kv = 2.0 * np.pi * np.arange(K) / p.s_max
        self.Svk = self.Sv * self.kv[:, None]
        self.Cvk2 = self.Cv * self.kv[:, None] ** 2
        self.Cxkx = self.Cx * self.kx[:, None]
        self.Sxkx = self.Sx * self.kx[:, None]

    def fields(self, W: WeightMatrices):
        """Value, its y-gradient and second y2-derivative at all cell centers."""
        if W.K != self.K:
            raise ValueError("weight truncation does not match the basis tables")
        V = np.einsum("ij,ix,jv->xv", W.A, self.Sx, self.Cv) \
            + np.einsum("ij,ix,jv->xv", W.B, self.Cx, self.Cv)
        Vy1 = np.einsum("ij,ix,jv->xv", W.A, self.Cxkx, self.Cv) \
            - np.einsum("ij,ix,jv->xv", W.B, self.Sxkx, self.Cv)
        Vy2 = -(np.einsum("ij,ix,jv->xv", W.A, self.Sx, self.Svk)
                + np.einsum("ij,ix,jv->xv", W.B, self.Cx, self.Svk))
        Vy2y2 = -(np.einsum("ij,ix,jv->xv", W.A, self.Sx, self.Cvk2)
                  + np.einsum("ij,ix,jv->xv", W.B, self.Cx, self.Cvk2))
        return V, Vy1, Vy2, Vy2y2

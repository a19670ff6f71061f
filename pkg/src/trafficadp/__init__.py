"""Online adaptive control of ring-road traffic via a mean-field game.

Co-evolves Fourier value-function weights (gradient flow on the
HJB-Isaacs residual) with a finite-volume forward-Kolmogorov density
solver, cross-validated by a reflected-SDE Monte-Carlo ensemble.
"""

__version__ = "0.1.0"

from .config import GridSpec, ModelParams, RunConfig, load_config, save_config, validate
from .basis import WeightMatrices

__all__ = [
    "GridSpec",
    "ModelParams",
    "RunConfig",
    "WeightMatrices",
    "load_config",
    "save_config",
    "validate",
]

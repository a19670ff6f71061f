"""Figure rendering for trafficadp CSV output.

Every plotted number is read verbatim from CSV; no physics is recomputed
here.
"""

__version__ = "0.1.0"

from .figures import (MissingColumnError, plot_error, plot_profiles,
                      plot_weights_and_marginal, select_times)

__all__ = [
    "MissingColumnError",
    "plot_error",
    "plot_profiles",
    "plot_weights_and_marginal",
    "select_times",
]

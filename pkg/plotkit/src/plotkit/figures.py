"""The three standard figures: spatial profiles, weights + speed marginal,
and the error history."""

from __future__ import annotations

import warnings

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

from .reader import MissingColumnError, load_columns, series_times

__all__ = ["MissingColumnError", "plot_error", "plot_profiles",
           "plot_weights_and_marginal", "select_times"]

_SAVE_KW = {"dpi": 150, "metadata": {"Date": None}}


def select_times(available, requested):
    """Match each requested time to the nearest available one.

    Warns when a request falls outside the data range or lands more than
    one snapshot stride away; returns the matched times (deduplicated, in
    order of first request).
    """
    available = np.asarray(available, dtype=float)
    if available.size == 0:
        raise ValueError("no times in data")
    stride = np.max(np.diff(available)) if available.size > 1 else 0.0
    matched = []
    for t in requested:
        near = float(available[np.argmin(np.abs(available - t))])
        if abs(near - t) > max(stride, 1e-12):
            warnings.warn(f"requested time {t:g} not in data; "
                          f"using nearest t={near:g}")
        if near not in matched:
            matched.append(near)
    return matched


def _save(fig, out_path):
    fig.savefig(out_path, **_SAVE_KW)
    plt.close(fig)
    return out_path


def plot_profiles(spatial_csv, times, out_path):
    """Two stacked panels sharing the x-axis: spatial density r1 and bulk
    velocity, one curve per selected time."""
    data = load_columns(spatial_csv, ["t", "y1", "r1", "vbulk"])
    sel = select_times(series_times(data["t"]), times)
    fig, (ax_r, ax_v) = plt.subplots(2, 1, sharex=True, figsize=(6, 6))
    for t in sel:
        mask = data["t"] == t
        ax_r.plot(data["y1"][mask], data["r1"][mask], label=f"t={t:g}")
        ax_v.plot(data["y1"][mask], data["vbulk"][mask])
    ax_r.set_ylabel(r"$r_1(y_1)$")
    ax_v.set_ylabel("bulk velocity")
    ax_v.set_xlabel(r"$y_1$")
    ax_r.legend(fontsize=8)
    fig.tight_layout()
    return _save(fig, out_path)


def plot_weights_and_marginal(weights_csv, marginal_csv, times, out_path):
    """Weight trajectories over time (top) and the speed marginal r2 at the
    selected times (bottom)."""
    wdata = load_columns(weights_csv, ["t"])
    mdata = load_columns(marginal_csv, ["t", "y2", "r2"])
    sel = select_times(series_times(mdata["t"]), times)
    fig, (ax_w, ax_m) = plt.subplots(2, 1, figsize=(6, 6))
    for name in wdata:
        if name != "t":
            ax_w.plot(wdata["t"], wdata[name], label=name, lw=1)
    ax_w.set_xlabel("t")
    ax_w.set_ylabel("weights")
    ax_w.legend(fontsize=6, ncol=4)
    for t in sel:
        mask = mdata["t"] == t
        ax_m.plot(mdata["y2"][mask], mdata["r2"][mask], label=f"t={t:g}")
    ax_m.set_xlabel(r"$y_2$")
    ax_m.set_ylabel(r"$r_2(y_2)$")
    ax_m.legend(fontsize=8)
    fig.tight_layout()
    return _save(fig, out_path)


def plot_error(error_csv, out_path, log_scale=False):
    """Single panel: the residual error E against time."""
    data = load_columns(error_csv, ["t", "E"])
    if data["t"].size == 0:
        raise ValueError(f"{error_csv}: no data rows")
    fig, ax = plt.subplots(figsize=(6, 4))
    t, E = data["t"], data["E"]
    if log_scale:
        keep = E > 0
        t, E = t[keep], E[keep]
        ax.set_yscale("log")
    ax.plot(t, E)
    ax.set_xlabel("t")
    ax.set_ylabel("E")
    fig.tight_layout()
    return _save(fig, out_path)

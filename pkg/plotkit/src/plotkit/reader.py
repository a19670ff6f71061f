"""Column-oriented CSV loading with named-column errors."""

from __future__ import annotations

import csv

import numpy as np


class MissingColumnError(ValueError):
    """A required column is absent from a CSV file."""


def load_columns(path, required):
    """Read a CSV into a dict of float arrays keyed by header name.

    Empty fields (e.g. the blanked-out bulk velocity in vacuum cells)
    become NaN. Raises MissingColumnError naming the first absent column.
    """
    with open(path, newline="") as fh:
        rows = list(csv.reader(fh))
    if not rows:
        raise ValueError(f"{path}: empty file")
    header = rows[0]
    for name in required:
        if name not in header:
            raise MissingColumnError(f"{path}: missing column {name!r}")
    data = {name: [] for name in header}
    for row in rows[1:]:
        for name, field in zip(header, row):
            data[name].append(float(field) if field != "" else np.nan)
    return {name: np.asarray(vals) for name, vals in data.items()}


def series_times(t_column):
    """The distinct times present in a long-format series column, in order."""
    times = np.unique(t_column)
    return times[np.argsort(times)]

"""CSV output sinks and the run manifest."""

from __future__ import annotations

import hashlib
import os
from dataclasses import dataclass, field

import numpy as np

from . import __version__
from .config import ModelParams, RunConfig, save_config


def _fmt(x: float) -> str:
    return repr(float(x))


@dataclass
class CsvSinks:
    """Writes weights.csv, error.csv, spatial.csv, speed_marginal.csv and
    per-time density snapshots under out_dir."""

    out_dir: str
    K: int
    _files: dict = field(default_factory=dict)
    _snapshots: list = field(default_factory=list)

    def __post_init__(self):
        os.makedirs(self.out_dir, exist_ok=True)
        names = [f"a_{i}{j}" for i in range(self.K) for j in range(self.K)] \
            + [f"b_{i}{j}" for i in range(self.K) for j in range(self.K)]
        self._open("weights.csv", "t," + ",".join(names))
        self._open("error.csv", "t,E")
        self._open("spatial.csv", "t,y1,r1,j,vbulk")
        self._open("speed_marginal.csv", "t,y2,r2")

    def _open(self, name, header):
        fh = open(os.path.join(self.out_dir, name), "w")
        fh.write(header + "\n")
        self._files[name] = fh

    def on_series(self, t, W, E, profile):
        flat = [_fmt(v) for v in np.concatenate([W.A.ravel(), W.B.ravel()])]
        self._files["weights.csv"].write(_fmt(t) + "," + ",".join(flat) + "\n")
        self._files["error.csv"].write(f"{_fmt(t)},{_fmt(E)}\n")
        sp = self._files["spatial.csv"]
        for x, r1, j, vb in zip(profile.x, profile.r1, profile.j, profile.vbulk):
            vb_s = "" if np.isnan(vb) else _fmt(vb)
            sp.write(f"{_fmt(t)},{_fmt(x)},{_fmt(r1)},{_fmt(j)},{vb_s}\n")
        sm = self._files["speed_marginal.csv"]
        for v, r2 in zip(profile.v, profile.r2):
            sm.write(f"{_fmt(t)},{_fmt(v)},{_fmt(r2)}\n")

    def on_snapshot(self, t, rho, grid):
        name = f"density_t{t:g}.csv"
        path = os.path.join(self.out_dir, name)
        with open(path, "w") as fh:
            fh.write("y1,y2,rho\n")
            for ix, x in enumerate(grid.x_centers):
                for iv, v in enumerate(grid.v_centers):
                    fh.write(f"{_fmt(x)},{_fmt(v)},{_fmt(rho[ix, iv])}\n")
        self._snapshots.append(name)

    def close(self):
        for fh in self._files.values():
            fh.close()

    def written_files(self):
        return list(self._files.keys()) + list(self._snapshots)


def config_hash(params: ModelParams, run: RunConfig) -> str:
    import tempfile
    from dataclasses import replace

    # the output location does not affect the computation, so it does not
    # affect the hash either
    run = replace(run, out_dir="")
    with tempfile.NamedTemporaryFile("w+", suffix=".cfg", delete=False) as tmp:
        name = tmp.name
    try:
        save_config(params, run, name)
        with open(name, "rb") as fh:
            return hashlib.sha256(fh.read()).hexdigest()[:16]
    finally:
        os.unlink(name)


def emit_manifest(out_dir: str, files, cfg_hash: str) -> str:
    """List every output file with its row count; returns the manifest path."""
    path = os.path.join(out_dir, "manifest.txt")
    with open(path, "w") as fh:
        fh.write(f"version={__version__}\n")
        fh.write(f"config_hash={cfg_hash}\n")
        for name in sorted(files):
            full = os.path.join(out_dir, name)
            with open(full) as data:
                rows = sum(1 for _ in data)
            fh.write(f"{name} rows={rows}\n")
    return path

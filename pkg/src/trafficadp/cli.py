"""Command-line driver.

Modes: adp (full coupled run), fk-only (frozen weights), mc-compare
(particle oracle vs finite-volume density), grad-check (finite-difference
gradient audit), validate-only. Exit codes: 0 success, 1 validation
failure, 2 runtime abort.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import replace

import numpy as np

from .basis import GridBasis, WeightMatrices
from .config import (ConfigError, GridSpec, ModelParams, RunConfig, validate,
                     load_config)
from . import fk, mc, output, residual
from .residual import NumericsError
from .stepper import CoupledState, run as run_loop

EXIT_OK = 0
EXIT_INVALID = 1
EXIT_RUNTIME = 2


def _parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="trafficadp",
        description="Adaptive mean-field traffic control simulator",
    )
    ap.add_argument("--mode", required=True,
                    choices=["adp", "fk-only", "mc-compare", "grad-check",
                             "validate-only"])
    ap.add_argument("--config", default=None,
                    help="key=value config file; omit for built-in defaults")
    ap.add_argument("--out-dir", default=None, help="override config out_dir")
    ap.add_argument("--seed", type=int, default=None, help="override rng_seed")
    ap.add_argument("--progress", type=int, default=0,
                    help="print a progress line every N series strides")
    return ap


def _load(args) -> tuple[ModelParams, RunConfig]:
    if args.config:
        params, cfg = load_config(args.config)
    else:
        params, cfg = ModelParams(), RunConfig()
    if args.out_dir is not None:
        cfg = replace(cfg, out_dir=args.out_dir)
    if args.seed is not None:
        cfg = replace(cfg, rng_seed=args.seed)
    return params, cfg


def _print_validation(report):
    for name, bound in report.cfl_bounds.items():
        print(f"cfl.{name}={bound!r}")
    for msg in report.violations:
        print(f"violation: {msg}", file=sys.stderr)


def _run_sim(params, cfg, freeze_weights, progress):
    grid = GridSpec.build(params, cfg)
    gb = GridBasis(grid, params)
    rho0 = fk.init_density(grid, params)
    W0 = WeightMatrices.filled(params.K, params.weight_init)
    sinks = output.CsvSinks(cfg.out_dir, params.K)
    if progress:
        base_on_series = sinks.on_series
        counter = {"k": 0}

        def on_series(t, W, E, profile):
            base_on_series(t, W, E, profile)
            counter["k"] += 1
            if counter["k"] % progress == 0:
                print(f"t={t:.3f} E={E:.6e}", flush=True)

        sinks.on_series = on_series
    try:
        _, summary = run_loop(CoupledState(W=W0, rho=rho0, t=0.0), cfg, gb,
                              params, sinks, freeze_weights=freeze_weights)
    finally:
        sinks.close()
    output.emit_manifest(cfg.out_dir, sinks.written_files(),
                         output.config_hash(params, cfg))
    for line in summary.lines():
        print(line)
    return summary


def run_grad_check(params, seed=0, n_states=20, nx=33, nv=33, h=1e-6,
                   rel_tol=1e-4, abs_tol=1e-10):
    """Central-difference audit of both weight-gradient matrices.

    Returns (worst_rel, failures); entries whose analytic and numeric
    values are both tiny are compared absolutely.
    """
    rng = np.random.default_rng(seed)
    cfg = RunConfig(nx=nx, nv=nv)
    grid = GridSpec.build(params, cfg)
    gb = GridBasis(grid, params)
    K = params.K
    worst = 0.0
    failures = []
    for state_idx in range(n_states):
        W = WeightMatrices(0.2 * rng.standard_normal((K, K)),
                           0.2 * rng.standard_normal((K, K)))
        rho = rng.random((nx, nv)) + 0.1
        rho /= rho.sum() * grid.cell_area
        g = residual.weight_gradients(W, rho, gb, params)
        for branch, mat, gmat in (("A", W.A, g.gA), ("B", W.B, g.gB)):
            for i in range(K):
                for j in range(K):
                    Wp, Wm = W.copy(), W.copy()
                    getattr(Wp, branch)[i, j] += h
                    getattr(Wm, branch)[i, j] -= h
                    fd = (residual.hjb_error(Wp, rho, gb, params)
                          - residual.hjb_error(Wm, rho, gb, params)) / (2 * h)
                    an = gmat[i, j]
                    if abs(fd) < abs_tol and abs(an) < abs_tol:
                        continue
                    rel = abs(an - fd) / max(abs(fd), abs_tol)
                    worst = max(worst, rel)
                    if rel > rel_tol:
                        failures.append((state_idx, branch, i, j, rel))
    return worst, failures


def run_mc_compare(params, cfg, n_agents, n_steps, seed):
    """Frozen small random weights: evolve FV density and particle ensemble
    side by side, report their L1 distance."""
    grid = GridSpec.build(params, cfg)
    gb = GridBasis(grid, params)
    rng = np.random.default_rng(seed)
    W = WeightMatrices(0.05 * rng.standard_normal((params.K, params.K)),
                       0.05 * rng.standard_normal((params.K, params.K)))
    rho = fk.init_density(grid, params)
    ens = mc.sample_initial(n_agents, rho, grid, rng)
    vel = fk.velocity_field(W, grid, params)
    for _ in range(n_steps):
        # FV side: SSP-RK2 with static velocity (weights frozen).
        k1 = fk.fk_rhs(rho, vel, grid, params)
        rho1 = rho + cfg.dt * k1
        rho = 0.5 * (rho + rho1 + cfg.dt * fk.fk_rhs(rho1, vel, grid, params))
        ens = mc.em_step(ens, W, cfg.dt, grid, params, rng)
    hist = mc.empirical_density(ens, grid)
    return {
        "agents": n_agents,
        "steps": n_steps,
        "l1_distance": mc.l1_distance(hist, rho, grid),
        "max_cell_deviation": float(np.max(np.abs(hist - rho))),
    }


def main(argv=None) -> int:
    args = _parser().parse_args(argv)
    try:
        params, cfg = _load(args)
    except (ConfigError, OSError) as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_INVALID

    report = validate(params, cfg)
    if args.mode == "validate-only":
        _print_validation(report)
        return EXIT_OK if report.admissible else EXIT_INVALID
    if not report.admissible:
        _print_validation(report)
        return EXIT_INVALID

    try:
        if args.mode in ("adp", "fk-only"):
            _run_sim(params, cfg, freeze_weights=(args.mode == "fk-only"),
                     progress=args.progress)
        elif args.mode == "grad-check":
            worst, failures = run_grad_check(params, seed=cfg.rng_seed)
            print(f"grad-check worst_rel={worst:.3e} failures={len(failures)}")
            if failures:
                for item in failures[:10]:
                    print(f"  mismatch: {item}", file=sys.stderr)
                return EXIT_RUNTIME
        elif args.mode == "mc-compare":
            n_agents = cfg.mc_agents or 10000
            n_steps = min(int(round(cfg.T / cfg.dt)), 1000)
            rep = run_mc_compare(params, cfg, n_agents, n_steps, cfg.rng_seed)
            for key, val in rep.items():
                print(f"{key}={val}")
    except NumericsError as exc:
        print(f"runtime abort: {exc}", file=sys.stderr)
        return EXIT_RUNTIME
    except OSError as exc:
        print(f"output failure: {exc}", file=sys.stderr)
        return EXIT_RUNTIME
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())

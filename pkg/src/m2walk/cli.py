"""Batch command-line interface.

Five subcommands: ``theory`` (closed-form constants), ``simulate``
(ensemble CSV + manifest), ``verify`` (report suites with a gating exit
status), ``scan`` (fitted-vs-predicted variance exponent across a
memory grid), and ``ode`` (drift-flow trajectories and basin maps).

Every run writes into one output directory (``--out``, the
``M2WALK_OUTPUT_DIR`` environment variable, or the working directory)
and nothing outside it.  Data files are accompanied by a JSON manifest
carrying the full parameter set and SHA-256 digests; identical
parameters reproduce byte-identical data files on any backend or
thread count.  Exit codes: 0 success / all verifications passed,
1 verification failure, 2 usage error.

A JSON config file (``--config``) may supply any long-flag value under
its underscored name (for example ``{"p": "p1", "replicas": 500}``);
explicit flags override the file.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
from pathlib import Path

import numpy as np

from . import _serialize as ser
from . import theory
from .engine import SeedSpec, dyadic_checkpoints, ensemble_run, simulate
from .stats import DEFAULT_SEED, PRESETS, SUITES, run_suite
from .stats.ode import interior_grid, ode_integrate

__all__ = ["main"]

OUTPUT_DIR_ENV = "M2WALK_OUTPUT_DIR"

_MODEL_TOKENS = {"two-channel": "walk", "erw": "erw", "urn": "urn"}

_ENSEMBLE_HEADER = ("n", "count", "mean_S", "var_S", "mean_ratio",
                    "var_ratio", "kurtosis")
_VERIFICATION_HEADER = ("name", "theory", "estimate", "uncertainty",
                        "tolerance", "verdict")


def _parse_p(text) -> float:
    """Memory parameter from a decimal or a threshold token (p1/p2/p3)."""
    if isinstance(text, str) and text.strip().lower() in theory.THRESHOLDS:
        return theory.THRESHOLDS[text.strip().lower()]
    try:
        p = float(text)
    except (TypeError, ValueError):
        raise argparse.ArgumentTypeError(
            f"expected a number in (0, 1) or one of {tuple(theory.THRESHOLDS)}, "
            f"got {text!r}") from None
    if not 0.0 < p < 1.0:
        raise argparse.ArgumentTypeError(
            f"memory parameter must lie strictly inside (0, 1), got {p}")
    return p


def _parse_grid(text) -> list[float]:
    """Inclusive ``start:stop:step`` grid of memory parameters."""
    try:
        start, stop, step = (float(part) for part in str(text).split(":"))
    except ValueError:
        raise argparse.ArgumentTypeError(
            f"expected start:stop:step, got {text!r}") from None
    if step <= 0 or stop < start:
        raise argparse.ArgumentTypeError(f"degenerate grid {text!r}")
    count = int(math.floor((stop - start) / step + 1e-9)) + 1
    values = [start + k * step for k in range(count)]
    if not all(0.0 < v < 1.0 for v in values):
        raise argparse.ArgumentTypeError(
            f"grid {text!r} leaves the open interval (0, 1)")
    return values


def _parse_checkpoints(text) -> list[int]:
    try:
        return [int(part) for part in str(text).split(",") if part.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(
            f"expected comma-separated integers, got {text!r}") from None


def _parse_point(text) -> tuple[float, float]:
    try:
        x1, x2 = (float(part) for part in str(text).split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(
            f"expected x1,x2 coordinates, got {text!r}") from None
    return (x1, x2)


def _load_config(path) -> dict:
    try:
        with open(path, encoding="utf-8") as handle:
            config = json.load(handle)
    except (OSError, json.JSONDecodeError) as exc:
        raise argparse.ArgumentTypeError(f"cannot read config {path}: {exc}")
    if not isinstance(config, dict):
        raise argparse.ArgumentTypeError(
            f"config {path} must hold a JSON object of flag values")
    return config


def _resolve(args: argparse.Namespace, parser: argparse.ArgumentParser,
             key: str, default=None, required: bool = False, convert=None):
    """Flag value if given, else config value, else default."""
    value = getattr(args, key, None)
    if value is None and args.config:
        value = args.config.get(key)
        if value is not None and convert is not None:
            try:
                value = convert(value)
            except argparse.ArgumentTypeError as exc:
                parser.error(f"config field {key!r}: {exc}")
    if value is None:
        if required:
            parser.error(f"missing required parameter {key!r} "
                         "(flag or config file)")
        value = default
    return value


def _output_dir(args, parser) -> Path:
    out = _resolve(args, parser, "out", default=None)
    if out is None:
        out = os.environ.get(OUTPUT_DIR_ENV) or "."
    path = Path(out)
    path.mkdir(parents=True, exist_ok=True)
    return path


def _zero_label(p: float, point: np.ndarray) -> str:
    """Human label of the drift zero nearest to ``point``."""
    if np.linalg.norm(point) < 1e-6:
        return "origin"
    if abs(point[0] - point[1]) < 1e-6:
        return "symmetric"
    return "dominant-plus" if point[0] > point[1] else "dominant-minus"


def _fmt(value: float) -> str:
    return format(float(value), ".12g")


# ---------------------------------------------------------------------------
# theory
# ---------------------------------------------------------------------------

def _constant_row(p: float) -> dict:
    row = {"p": p, "regime": theory.classify_regime(p).value}
    constants = theory.AsymptoticConstants(p).as_dict()
    for name in ("speed", "clt_variance", "critical_clt_variance",
                 "fluctuation_exponent", "variance_growth_exponent",
                 "alpha", "beta"):
        row[name] = constants.get(name, "")
    return row


def _print_theory_report(p: float) -> None:
    regime = theory.classify_regime(p)
    print(f"p = {_fmt(p)}")
    print(f"regime = {regime.value}")
    if regime is theory.Regime.OPEN_BOUNDARY:
        print("open case: no limit classification is claimed at this memory "
              "value; the linear test at the symmetric zero is inconclusive")
    print("fixed points:")
    for report in theory.fixed_points(p):
        label = _zero_label(p, report.location)
        loc = ", ".join(_fmt(v) for v in report.location)
        eig = ", ".join(_fmt(v) for v in report.eigenvalues)
        flag = "  [boundary-open]" if report.boundary_open else ""
        print(f"  {label:15s} ({loc})  eigenvalues ({eig})  "
              f"{report.stability}{flag}")
    constants = theory.AsymptoticConstants(p).as_dict()
    names = [k for k in ("speed", "clt_variance", "critical_clt_variance",
                         "fluctuation_exponent", "variance_growth_exponent",
                         "alpha", "beta") if k in constants]
    if names:
        print("constants:")
        for name in names:
            print(f"  {name} = {_fmt(constants[name])}")


def _cmd_theory(args, parser) -> int:
    p = _resolve(args, parser, "p", convert=_parse_p)
    grid = _resolve(args, parser, "grid", convert=_parse_grid)
    if (p is None) == (grid is None):
        parser.error("theory needs exactly one of --p or --grid")
    if p is not None:
        _print_theory_report(p)
        return 0

    out_dir = _output_dir(args, parser)
    started = ser.utc_now()
    header = ("p", "regime", "speed", "clt_variance", "critical_clt_variance",
              "fluctuation_exponent", "variance_growth_exponent",
              "alpha", "beta")
    rows = [[_constant_row(p)[k] for k in header] for p in grid]
    csv_path = ser.write_csv(out_dir / "theory_grid.csv", header, rows)
    manifest = ser.build_manifest(
        "theory", {"grid": [grid[0], grid[-1], len(grid)]},
        [csv_path], started, ser.utc_now())
    ser.write_json(out_dir / "manifest.json", manifest)
    print(f"wrote {csv_path} ({len(grid)} rows) and manifest.json")
    return 0


# ---------------------------------------------------------------------------
# simulate
# ---------------------------------------------------------------------------

def _ensemble_rows(result) -> tuple[tuple, list]:
    header = _ENSEMBLE_HEADER
    rows = []
    stats_rows = result.checkpoint_stats()
    if result.model == "urn":
        header = header + ("mean_R", "mean_B", "mean_G")
    for ci, summary in enumerate(stats_rows):
        row = [summary.n, summary.count, summary.mean_position,
               summary.var_position, summary.mean_ratio, summary.var_ratio,
               summary.kurtosis]
        if result.model == "urn":
            row += [float(np.mean(result.red[:, ci])),
                    float(np.mean(result.blue[:, ci])),
                    float(np.mean(result.green[:, ci]))]
        rows.append(row)
    return header, rows


def _cmd_simulate(args, parser) -> int:
    model_token = _resolve(args, parser, "model", required=True)
    if model_token not in _MODEL_TOKENS:
        parser.error(f"unknown model {model_token!r}; choose from "
                     f"{tuple(_MODEL_TOKENS)}")
    p = _resolve(args, parser, "p", required=True, convert=_parse_p)
    n = int(_resolve(args, parser, "n", required=True, convert=int))
    replicas = int(_resolve(args, parser, "replicas", required=True, convert=int))
    seed = int(_resolve(args, parser, "seed", default=DEFAULT_SEED, convert=int))
    checkpoints = _resolve(args, parser, "checkpoints",
                           convert=_parse_checkpoints)
    literal = bool(_resolve(args, parser, "literal", default=False))
    track = bool(_resolve(args, parser, "track", default=False))
    trajectory = bool(_resolve(args, parser, "trajectory", default=False))
    q_first = float(_resolve(args, parser, "q_first", default=0.5, convert=float))
    backend = _resolve(args, parser, "backend")
    threads = _resolve(args, parser, "threads", convert=int)
    if threads is not None:
        threads = int(threads)
    out_dir = _output_dir(args, parser)

    model = _MODEL_TOKENS[model_token]
    if checkpoints is None:
        checkpoints = list(dyadic_checkpoints(n))
        if not checkpoints:
            checkpoints = [n]
    started = ser.utc_now()
    try:
        result = ensemble_run(
            model, p, n, checkpoints, replicas, seed,
            literal=literal, track=track,
            q_first=q_first, backend=backend, threads=threads)
    except (ValueError, RuntimeError) as exc:
        parser.error(str(exc))
    header, rows = _ensemble_rows(result)
    csv_path = ser.write_csv(out_dir / "ensemble.csv", header, rows)
    outputs = [csv_path]

    if trajectory:
        if model != "walk":
            parser.error("--trajectory records the walk's sign counts and "
                         "applies to the two-channel model only")
        # replica 0's stream, step-resolved: matches the ensemble bit for bit
        path = simulate(p, n, np.arange(2, n + 1),
                        SeedSpec(seed).stream("walk", 0), literal=literal)
        outputs.append(ser.write_csv(
            out_dir / "trajectory.csv", ("n", "S", "n_plus", "n_minus"),
            zip(path.n, path.position, path.n_plus, path.n_minus)))

    manifest = ser.build_manifest(
        "simulate",
        {"model": model_token, "p": p, "n_max": n,
         "checkpoints": [int(c) for c in result.checkpoints],
         "replicas": replicas, "master_seed": seed, "literal": literal,
         "track": track, "trajectory": trajectory, "q_first": q_first,
         "backend_requested": backend, "backend_used": result.backend},
        outputs, started, ser.utc_now())
    ser.write_json(out_dir / "manifest.json", manifest)

    last = result.checkpoint_stats()[-1]
    print(f"{model_token}: p={_fmt(p)} n={n} replicas={replicas} "
          f"seed={seed} backend={result.backend}")
    print(f"final checkpoint n={last.n}: mean_S={_fmt(last.mean_position)} "
          f"var_S={_fmt(last.var_position)}")
    print(f"wrote {csv_path} and manifest.json")
    return 0


# ---------------------------------------------------------------------------
# verify
# ---------------------------------------------------------------------------

def _cmd_verify(args, parser) -> int:
    suite = args.suite
    preset = _resolve(args, parser, "preset", default="desk")
    if preset not in PRESETS:
        parser.error(f"unknown preset {preset!r}; choose from {tuple(PRESETS)}")
    seed = int(_resolve(args, parser, "seed", default=DEFAULT_SEED, convert=int))
    backend = _resolve(args, parser, "backend")
    threads = _resolve(args, parser, "threads", convert=int)
    if threads is not None:
        threads = int(threads)
    out_dir = _output_dir(args, parser)

    started = ser.utc_now()
    reports = run_suite(suite, preset=preset, seed=seed, backend=backend,
                        threads=threads)
    rows = [[r.name, r.theory_value, r.estimate, r.uncertainty, r.tolerance,
             r.verdict] for r in reports]
    csv_path = ser.write_csv(out_dir / "verification.csv",
                             _VERIFICATION_HEADER, rows)
    manifest = ser.build_manifest(
        "verify", {"suite": suite, "preset": preset, "master_seed": seed,
                   "backend_requested": backend},
        [csv_path], started, ser.utc_now())
    ser.write_json(out_dir / "manifest.json", manifest)

    width = max(len(r.name) for r in reports)
    for r in reports:
        print(f"{r.name:{width}s}  theory={_fmt(r.theory_value):>15s}  "
              f"estimate={_fmt(r.estimate):>15s}  {r.verdict}")
    gating = [r for r in reports if r.verdict != "DIAGNOSTIC"]
    failed = [r for r in gating if not r.passed]
    print(f"{len(gating) - len(failed)}/{len(gating)} gated checks passed "
          f"({len(reports) - len(gating)} diagnostic); wrote {csv_path}")
    return 1 if failed else 0


# ---------------------------------------------------------------------------
# scan
# ---------------------------------------------------------------------------

def _cmd_scan(args, parser) -> int:
    from .stats import variance_exponent

    grid = _resolve(args, parser, "p_grid", required=True, convert=_parse_grid)
    n = int(_resolve(args, parser, "n", required=True, convert=int))
    replicas = int(_resolve(args, parser, "replicas", required=True, convert=int))
    seed = int(_resolve(args, parser, "seed", default=DEFAULT_SEED, convert=int))
    backend = _resolve(args, parser, "backend")
    threads = _resolve(args, parser, "threads", convert=int)
    if threads is not None:
        threads = int(threads)
    out_dir = _output_dir(args, parser)

    checkpoints = list(dyadic_checkpoints(n))
    if len(checkpoints) < 4:
        parser.error(f"n={n} leaves fewer than four dyadic checkpoints; "
                     "the exponent fit needs at least 2^10")
    started = ser.utc_now()
    rows = []
    for index, p in enumerate(grid):
        near_threshold = [tok for tok, value in theory.THRESHOLDS.items()
                          if abs(p - value) < 1e-9]
        if near_threshold:
            print(f"notice: skipping p={_fmt(p)} (threshold "
                  f"{near_threshold[0]}: the growth exponent is "
                  "log-corrected there, not a pure power)")
            continue
        result = ensemble_run("walk", p, n, checkpoints, replicas,
                              seed + index, backend=backend, threads=threads)
        fit = variance_exponent(result)
        rows.append([p, fit.slope, fit.stderr, fit.r_squared,
                     theory.variance_growth_exponent(p)])
    if not rows:
        parser.error("every grid point was a threshold; nothing to scan")
    csv_path = ser.write_csv(
        out_dir / "scan.csv",
        ("p", "fitted_exponent", "stderr", "r_squared", "theory_exponent"),
        rows)
    plot_path = ser.write_plot_data(
        out_dir / "scan_plot.dat",
        ([row[0] for row in rows], [row[1] for row in rows]))
    manifest = ser.build_manifest(
        "scan", {"p_grid": [grid[0], grid[-1], len(grid)], "n_max": n,
                 "checkpoints": checkpoints, "replicas": replicas,
                 "master_seed": seed, "backend_requested": backend},
        [csv_path, plot_path], started, ser.utc_now())
    ser.write_json(out_dir / "manifest.json", manifest)
    print(f"wrote {csv_path} ({len(rows)} rows), {plot_path.name} "
          "and manifest.json")
    return 0


# ---------------------------------------------------------------------------
# ode
# ---------------------------------------------------------------------------

def _cmd_ode(args, parser) -> int:
    p = _resolve(args, parser, "p", required=True, convert=_parse_p)
    t_final = float(_resolve(args, parser, "t_final", default=200.0,
                             convert=float))
    dt = float(_resolve(args, parser, "dt", default=0.01, convert=float))
    start = _resolve(args, parser, "start", convert=_parse_point)
    spacing = _resolve(args, parser, "grid", convert=int)
    if start is not None and spacing is not None:
        parser.error("ode takes either --start or --grid, not both")
    out_dir = _output_dir(args, parser)
    started = ser.utc_now()

    if start is not None:
        try:
            trajectory = ode_integrate(p, start, t_final=t_final, dt=dt)
        except (ValueError, RuntimeError) as exc:
            parser.error(str(exc))
        rows = [[t, x[0], x[1]] for t, x in zip(trajectory.t, trajectory.x)]
        csv_path = ser.write_csv(out_dir / "ode.csv", ("t", "x1", "x2"), rows)
        manifest = ser.build_manifest(
            "ode", {"p": p, "start": list(start), "t_final": t_final, "dt": dt},
            [csv_path], started, ser.utc_now())
        ser.write_json(out_dir / "manifest.json", manifest)
        label = _zero_label(p, trajectory.nearest_zero)
        print(f"terminal ({', '.join(_fmt(v) for v in trajectory.terminal)}) "
              f"-> {label} (distance {_fmt(trajectory.distance)})")
        print(f"wrote {csv_path} and manifest.json")
        return 0

    from .stats import basin_terminals

    spacing = 21 if spacing is None else int(spacing)
    if spacing < 2:
        parser.error("--grid spacing must be at least 2")
    starts = interior_grid(spacing)
    try:
        finals = basin_terminals(p, starts, t_final=t_final, dt=dt)
    except RuntimeError as exc:
        parser.error(str(exc))
    zeros = np.stack([r.location for r in theory.fixed_points(p)])
    gaps = np.linalg.norm(
        finals[:, np.newaxis, :] - zeros[np.newaxis, :, :], axis=2)
    nearest = gaps.argmin(axis=1)
    labels = [_zero_label(p, zeros[i]) for i in nearest]
    rows = [[s[0], s[1], f[0], f[1], label, float(g[i])]
            for s, f, label, g, i
            in zip(starts, finals, labels, gaps, nearest)]
    csv_path = ser.write_csv(
        out_dir / "basin.csv",
        ("start_x1", "start_x2", "terminal_x1", "terminal_x2",
         "label", "distance"),
        rows)
    manifest = ser.build_manifest(
        "ode", {"p": p, "grid_spacing": spacing, "starts": len(starts),
                "t_final": t_final, "dt": dt},
        [csv_path], started, ser.utc_now())
    ser.write_json(out_dir / "manifest.json", manifest)
    print(f"basin summary over {len(starts)} starts:")
    for label in sorted(set(labels)):
        print(f"  {label:15s} {labels.count(label)}")
    print(f"wrote {csv_path} and manifest.json")
    return 0


# ---------------------------------------------------------------------------
# parser assembly
# ---------------------------------------------------------------------------

def _add_common(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("--out", help="output directory (default: "
                     f"${OUTPUT_DIR_ENV} or the working directory)")
    sub.add_argument("--config", type=_load_config, default=None,
                     help="JSON file of flag values; flags override it")


def _add_engine_knobs(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("--backend", choices=("kernel", "fallback"),
                     help="force a simulation backend (default: kernel "
                     "when compiled, fallback otherwise)")
    sub.add_argument("--threads", type=int,
                     help="worker threads for ensemble chunks")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="m2walk",
        description="Two-memory-channel random walk: theory, simulation, "
                    "verification.")
    commands = parser.add_subparsers(dest="command", required=True)

    p_theory = commands.add_parser(
        "theory", help="closed-form regimes, fixed points, and constants")
    p_theory.add_argument("--p", type=_parse_p,
                          help="memory parameter (number or p1/p2/p3)")
    p_theory.add_argument("--grid", type=_parse_grid,
                          help="start:stop:step grid; writes theory_grid.csv")
    _add_common(p_theory)

    p_sim = commands.add_parser(
        "simulate", help="run an ensemble and write ensemble.csv + manifest")
    p_sim.add_argument("--model", choices=tuple(_MODEL_TOKENS),
                       help="walk variant to simulate")
    p_sim.add_argument("--p", type=_parse_p)
    p_sim.add_argument("--n", type=int, help="steps per replica")
    p_sim.add_argument("--replicas", type=int)
    p_sim.add_argument("--seed", type=int,
                       help=f"master seed (default {DEFAULT_SEED})")
    p_sim.add_argument("--checkpoints", type=_parse_checkpoints,
                       help="comma-separated recording epochs "
                       "(default: powers of two from 128)")
    p_sim.add_argument("--literal", action="store_true", default=None,
                       help="four-draw per-channel sampling (walk only)")
    p_sim.add_argument("--track", action="store_true", default=None,
                       help="accumulate running statistics (walk only)")
    p_sim.add_argument("--trajectory", action="store_true", default=None,
                       help="also write replica 0's step-resolved path "
                       "to trajectory.csv (walk only)")
    p_sim.add_argument("--q-first", dest="q_first", type=float,
                       help="first-step bias of the classical baseline")
    _add_engine_knobs(p_sim)
    _add_common(p_sim)

    p_verify = commands.add_parser(
        "verify", help="run a verification suite; exit 1 on any FAIL")
    p_verify.add_argument("suite", choices=SUITES)
    p_verify.add_argument("--preset", choices=tuple(PRESETS),
                          help="scale preset (default desk)")
    p_verify.add_argument("--seed", type=int)
    _add_engine_knobs(p_verify)
    _add_common(p_verify)

    p_scan = commands.add_parser(
        "scan", help="fitted vs predicted variance exponent across a p grid")
    p_scan.add_argument("--p-grid", dest="p_grid", type=_parse_grid,
                        help="start:stop:step memory grid")
    p_scan.add_argument("--n", type=int)
    p_scan.add_argument("--replicas", type=int)
    p_scan.add_argument("--seed", type=int)
    _add_engine_knobs(p_scan)
    _add_common(p_scan)

    p_ode = commands.add_parser(
        "ode", help="drift-flow trajectory or basin map")
    p_ode.add_argument("--p", type=_parse_p)
    p_ode.add_argument("--start", type=_parse_point,
                       help="single trajectory from x1,x2; writes ode.csv")
    p_ode.add_argument("--grid", type=int,
                       help="interior lattice spacing for a basin map "
                       "(default 21; writes basin.csv)")
    p_ode.add_argument("--t-final", dest="t_final", type=float)
    p_ode.add_argument("--dt", type=float)
    _add_common(p_ode)

    return parser


_DISPATCH = {
    "theory": _cmd_theory,
    "simulate": _cmd_simulate,
    "verify": _cmd_verify,
    "scan": _cmd_scan,
    "ode": _cmd_ode,
}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.config is None:
        args.config = {}
    return _DISPATCH[args.command](args, parser)


if __name__ == "__main__":
    sys.exit(main())

"""Command line front end.

Subcommands:
  trajectory    run a scenario described by a JSON config file
  figure        run one of the built-in preset scenarios (1-5)
  oracle-check  compare the grid-search measurement optimizer against the
                closed form on random states
  engine-check  compare the operator-sum channel action against the
                closed-form coefficient map on random states

Exit codes: 0 success, 1 tolerance failure in a check command,
2 malformed config, 3 unphysical initial state.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
import warnings

import numpy as np

from .channels import (
    ChannelPair,
    ChannelSpec,
    FlipType,
    MarkovianSchedule,
    NonMarkovianSchedule,
    PairingMismatchError,
    apply_flip_pair,
    coefficient_map_factors,
    verify_pairing,
)
from .correlations import GridTooCoarseWarning, correlations, correlations_oracle
from .scenario import (
    ConfigError,
    config_to_dict,
    figure_preset,
    load_config,
    run_scenario,
)
from .states import (
    BellDiagonalState,
    UnphysicalStateError,
    extract_coefficients,
    sample_bell_diagonal,
    to_density_matrix,
)

EXIT_OK = 0
EXIT_TOLERANCE = 1
EXIT_CONFIG = 2
EXIT_UNPHYSICAL = 3


def _cmd_trajectory(args: argparse.Namespace) -> int:
    try:
        config = load_config(args.config)
    except FileNotFoundError:
        print(f"error: config file not found: {args.config}", file=sys.stderr)
        return EXIT_CONFIG
    except json.JSONDecodeError as exc:
        print(
            f"error: {args.config}:{exc.lineno}:{exc.colno}: invalid JSON: {exc.msg}",
            file=sys.stderr,
        )
        return EXIT_CONFIG
    except UnphysicalStateError as exc:
        print(f"error: initial_state: {exc}", file=sys.stderr)
        return EXIT_UNPHYSICAL
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG

    summary = run_scenario(config, base_dir=args.out)
    n_points = len(summary["change_points"])
    n_frozen = len(summary["frozen_intervals"])
    print(f"wrote {config.output_path} ({len(config.x_values)} x values)")
    print(f"change points: {n_points}, frozen intervals: {n_frozen}")
    return EXIT_OK


def _cmd_figure(args: argparse.Namespace) -> int:
    try:
        config = figure_preset(args.number)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    summary = run_scenario(config, base_dir=args.out)
    config_path = f"{args.out}/fig{args.number}.config.json"
    with open(config_path, "w", encoding="utf-8", newline="\n") as fh:
        json.dump(config_to_dict(config), fh, indent=1, sort_keys=True)
        fh.write("\n")
    print(f"wrote fig{args.number}.csv, fig{args.number}.summary.json, fig{args.number}.config.json in {args.out}")
    print(
        f"change points: {len(summary['change_points'])}, "
        f"frozen intervals: {len(summary['frozen_intervals'])}"
    )
    return EXIT_OK


def _parse_grid(text: str) -> tuple[int, int]:
    parts = text.lower().split("x")
    if len(parts) != 2:
        raise argparse.ArgumentTypeError(f"grid must look like '181x361', got {text!r}")
    try:
        n_theta, n_phi = int(parts[0]), int(parts[1])
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from exc
    if n_theta < 2 or n_phi < 2:
        raise argparse.ArgumentTypeError("grid needs at least 2 points per angle")
    return n_theta, n_phi


def _cmd_oracle_check(args: argparse.Namespace) -> int:
    rng = np.random.default_rng(args.seed)
    states = sample_bell_diagonal(args.samples, rng)
    deviations = np.empty(args.samples)
    coarse_hits = 0
    t0 = time.perf_counter()
    for i, state in enumerate(states):
        with warnings.catch_warnings(record=True) as caught:
            warnings.simplefilter("always", GridTooCoarseWarning)
            grid_triple = correlations_oracle(state, grid=args.grid)
            coarse_hits += sum(
                issubclass(w.category, GridTooCoarseWarning) for w in caught
            )
        closed = correlations(state)
        deviations[i] = max(
            abs(grid_triple.mutual_info - closed.mutual_info),
            abs(grid_triple.classical - closed.classical),
            abs(grid_triple.quantum - closed.quantum),
        )
    elapsed = time.perf_counter() - t0

    worst = float(deviations.max())
    print(f"samples:        {args.samples}")
    print(f"grid:           {args.grid[0]}x{args.grid[1]}")
    print(f"max deviation:  {worst:.3e}")
    print(f"mean deviation: {float(deviations.mean()):.3e}")
    print(f"coarse-grid warnings: {coarse_hits}")
    print(f"elapsed: {elapsed:.2f}s")
    if worst > args.tol:
        print(f"FAIL: max deviation {worst:.3e} exceeds {args.tol:.1e}", file=sys.stderr)
        return EXIT_TOLERANCE
    print(f"PASS: all deviations within {args.tol:.1e}")
    return EXIT_OK


def _engine_corner_check(rng: np.random.Generator) -> float:
    """Exercise exact endpoint probabilities the schedules never reach."""
    worst = 0.0
    flips = list(FlipType)
    states = sample_bell_diagonal(4, rng)
    for flip_a in flips:
        for flip_b in flips:
            for p_a in (0.0, 1.0):
                for p_b in (0.0, 1.0):
                    for state in states:
                        rho = apply_flip_pair(
                            to_density_matrix(state), flip_a, flip_b, p_a, p_b
                        )
                        got = extract_coefficients(rho).coefficients
                        want = coefficient_map_factors(state, flip_a, flip_b, p_a, p_b)
                        worst = max(
                            worst,
                            max(abs(g - w) for g, w in zip(got, want.coefficients)),
                        )
    return worst


def _cmd_engine_check(args: argparse.Namespace) -> int:
    rng = np.random.default_rng(args.seed)
    flips = list(FlipType)
    schedules = [
        ("markovian", MarkovianSchedule(gamma=1.0)),
        ("non_markovian", NonMarkovianSchedule(a=1.0, tau=5.0)),
    ]
    print(f"{'pairing':<28}{'schedule':<15}{'max deviation':>14}")
    worst_overall = 0.0
    failed = False
    t0 = time.perf_counter()
    for flip_a in flips:
        for flip_b in flips:
            for label, schedule in schedules:
                pair = ChannelPair(
                    channel_a=ChannelSpec(flip_a, schedule),
                    channel_b=ChannelSpec(flip_b, schedule),
                    x=float(rng.uniform(0.1, 1.0)),
                )
                name = f"{flip_a.value}+{flip_b.value}"
                try:
                    report = verify_pairing(pair, samples=args.samples, rng=rng, tol=args.tol)
                    dev = report.max_deviation
                except PairingMismatchError as exc:
                    dev = exc.worst[2] if exc.worst else float("nan")
                    failed = True
                worst_overall = max(worst_overall, dev)
                print(f"{name:<28}{label:<15}{dev:>14.3e}")
    corner_dev = _engine_corner_check(rng)
    worst_overall = max(worst_overall, corner_dev)
    print(f"{'endpoint probabilities':<28}{'exact':<15}{corner_dev:>14.3e}")
    if corner_dev > args.tol:
        failed = True
    elapsed = time.perf_counter() - t0
    print(f"elapsed: {elapsed:.2f}s")
    if failed:
        print(f"FAIL: max deviation {worst_overall:.3e} exceeds {args.tol:.1e}", file=sys.stderr)
        return EXIT_TOLERANCE
    print(f"PASS: all pairings within {args.tol:.1e}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="belldyn",
        description="Two-qubit Bell-diagonal correlation dynamics under local noise",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_traj = sub.add_parser("trajectory", help="run a scenario from a JSON config")
    p_traj.add_argument("--config", required=True, help="path to JSON config file")
    p_traj.add_argument("--out", default=".", help="output directory (default: cwd)")
    p_traj.set_defaults(func=_cmd_trajectory)

    p_fig = sub.add_parser("figure", help="run a built-in preset scenario")
    p_fig.add_argument("number", type=int, choices=range(1, 6), help="preset number")
    p_fig.add_argument("--out", default=".", help="output directory (default: cwd)")
    p_fig.set_defaults(func=_cmd_figure)

    p_oracle = sub.add_parser(
        "oracle-check",
        help="grid optimizer vs closed form on random states",
    )
    p_oracle.add_argument("--samples", type=int, default=200)
    p_oracle.add_argument("--grid", type=_parse_grid, default=(181, 361), metavar="NTHETAxNPHI")
    p_oracle.add_argument("--seed", type=int, default=20240915)
    p_oracle.add_argument("--tol", type=float, default=1e-6)
    p_oracle.set_defaults(func=_cmd_oracle_check)

    p_engine = sub.add_parser(
        "engine-check",
        help="operator-sum evolution vs closed-form coefficient map",
    )
    p_engine.add_argument("--samples", type=int, default=50)
    p_engine.add_argument("--seed", type=int, default=20240915)
    p_engine.add_argument("--tol", type=float, default=1e-12)
    p_engine.set_defaults(func=_cmd_engine_check)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except UnphysicalStateError as exc:
        print(f"error: unphysical state: {exc}", file=sys.stderr)
        return EXIT_UNPHYSICAL
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())

"""Scenario configuration, figure presets, and trajectory export.

A scenario is one initial state, one channel pair shape, a list of
coupling values x, and a sweep grid.  Running it produces a flat CSV of
per-sample rows for every x plus a JSON summary with refined change
points, regime labels, and frozen-discord intervals.  Output is
deterministic: identical configs produce byte-identical files.
"""

from __future__ import annotations

import json
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from pathlib import Path

from .channels import (
    ChannelPair,
    ChannelSpec,
    FlipType,
    MarkovianSchedule,
    NonMarkovianSchedule,
    NoiseSchedule,
)
from .dynamics import (
    ChangeKind,
    ChangePoint,
    FrozenInterval,
    SweepSpec,
    Trajectory,
    classify_regime,
    detect_frozen_discord,
    find_change_points,
    find_oscillation_zeros,
    simulate,
)
from .states import BellDiagonalState

__all__ = [
    "ConfigError",
    "ScenarioConfig",
    "config_from_dict",
    "config_to_dict",
    "load_config",
    "figure_preset",
    "FIGURE_PRESETS",
    "run_scenario",
    "CSV_HEADER",
]

CSV_HEADER = "x,sweep_value,c1,c2,c3,I,C,Q,chi_axis"

_FLIP_NAMES = {f.value: f for f in FlipType}
_DEFAULT_X_GRID = (0.0, 0.25, 0.5, 0.75, 1.0)


class ConfigError(ValueError):
    """Config validation failure; carries the offending field path."""

    def __init__(self, field: str, message: str) -> None:
        super().__init__(f"{field}: {message}")
        self.field = field


@dataclass(frozen=True)
class ScenarioConfig:
    initial_state: BellDiagonalState
    flip_a: FlipType
    flip_b: FlipType
    schedule_a: NoiseSchedule
    schedule_b: NoiseSchedule
    x_values: tuple[float, ...]
    sweep: SweepSpec
    output_format: str
    output_path: str

    def pair_for(self, x: float) -> ChannelPair:
        return ChannelPair(
            channel_a=ChannelSpec(self.flip_a, self.schedule_a),
            channel_b=ChannelSpec(self.flip_b, self.schedule_b),
            x=x,
        )


def _require(mapping: dict, key: str, path: str):
    if key not in mapping:
        raise ConfigError(f"{path}{key}", "missing required field")
    return mapping[key]


def _schedule_from_dict(raw: dict, path: str) -> NoiseSchedule:
    if not isinstance(raw, dict):
        raise ConfigError(path, "schedule must be an object")
    kind = _require(raw, "kind", f"{path}.")
    try:
        if kind == "markovian":
            return MarkovianSchedule(gamma=float(_require(raw, "gamma", f"{path}.")))
        if kind == "non_markovian":
            return NonMarkovianSchedule(
                a=float(_require(raw, "a", f"{path}.")),
                tau=float(_require(raw, "tau", f"{path}.")),
            )
    except (TypeError, ValueError) as exc:
        raise ConfigError(path, str(exc)) from exc
    raise ConfigError(f"{path}.kind", f"unknown schedule kind {kind!r}")


def _channel_from_dict(raw: dict, path: str) -> tuple[FlipType, NoiseSchedule]:
    if not isinstance(raw, dict):
        raise ConfigError(path, "channel must be an object")
    flip_name = _require(raw, "flip", f"{path}.")
    if flip_name not in _FLIP_NAMES:
        raise ConfigError(f"{path}.flip", f"unknown flip type {flip_name!r}; expected one of {sorted(_FLIP_NAMES)}")
    schedule = _schedule_from_dict(_require(raw, "schedule", f"{path}."), f"{path}.schedule")
    return _FLIP_NAMES[flip_name], schedule


def config_from_dict(raw: dict) -> ScenarioConfig:
    """Build and validate a ScenarioConfig from parsed JSON."""
    if not isinstance(raw, dict):
        raise ConfigError("<root>", "config must be a JSON object")

    state_raw = _require(raw, "initial_state", "")
    if not (isinstance(state_raw, (list, tuple)) and len(state_raw) == 3):
        raise ConfigError("initial_state", "must be a list of three coefficients")
    try:
        coeffs = tuple(float(v) for v in state_raw)
    except (TypeError, ValueError) as exc:
        raise ConfigError("initial_state", str(exc)) from exc
    flip_a, schedule_a = _channel_from_dict(_require(raw, "channel_a", ""), "channel_a")
    flip_b, schedule_b = _channel_from_dict(_require(raw, "channel_b", ""), "channel_b")

    x_raw = _require(raw, "x_values", "")
    if not (isinstance(x_raw, (list, tuple)) and len(x_raw) >= 1):
        raise ConfigError("x_values", "must be a non-empty list")
    x_values = []
    for i, v in enumerate(x_raw):
        try:
            xv = float(v)
        except (TypeError, ValueError) as exc:
            raise ConfigError(f"x_values[{i}]", str(exc)) from exc
        if not 0.0 <= xv <= 1.0:
            raise ConfigError(f"x_values[{i}]", f"x must lie in [0, 1], got {xv}")
        x_values.append(xv)
    if sorted(x_values) != x_values:
        raise ConfigError("x_values", "must be sorted ascending")
    if len(set(x_values)) != len(x_values):
        raise ConfigError("x_values", "must not contain duplicates")

    sweep_raw = _require(raw, "sweep", "")
    if not isinstance(sweep_raw, dict):
        raise ConfigError("sweep", "must be an object")
    try:
        sweep = SweepSpec(
            variable=str(_require(sweep_raw, "variable", "sweep.")),
            start=float(_require(sweep_raw, "start", "sweep.")),
            stop=float(_require(sweep_raw, "stop", "sweep.")),
            steps=int(_require(sweep_raw, "steps", "sweep.")),
        )
    except ConfigError:
        raise
    except (TypeError, ValueError) as exc:
        raise ConfigError("sweep", str(exc)) from exc

    markovian = isinstance(schedule_a, MarkovianSchedule)
    if isinstance(schedule_b, MarkovianSchedule) != markovian:
        raise ConfigError("channel_b.schedule", "both schedules must have the same kind")
    if markovian and sweep.variable == "nu":
        raise ConfigError("sweep.variable", "'nu' requires non-Markovian schedules")
    if not markovian and sweep.variable in ("p", "t"):
        raise ConfigError("sweep.variable", f"{sweep.variable!r} requires Markovian schedules")

    output_raw = raw.get("output", {})
    if not isinstance(output_raw, dict):
        raise ConfigError("output", "must be an object")
    output_format = output_raw.get("format", "csv")
    if output_format not in ("csv", "json"):
        raise ConfigError("output.format", f"must be 'csv' or 'json', got {output_format!r}")
    output_path = output_raw.get("path", f"trajectory.{output_format}")
    if not isinstance(output_path, str) or not output_path:
        raise ConfigError("output.path", "must be a non-empty string")

    # UnphysicalStateError propagates as-is; the CLI maps it to its own
    # exit code, distinct from structural config errors
    state = BellDiagonalState(*coeffs)

    return ScenarioConfig(
        initial_state=state,
        flip_a=flip_a,
        flip_b=flip_b,
        schedule_a=schedule_a,
        schedule_b=schedule_b,
        x_values=tuple(x_values),
        sweep=sweep,
        output_format=output_format,
        output_path=output_path,
    )


def _schedule_to_dict(schedule: NoiseSchedule) -> dict:
    if isinstance(schedule, MarkovianSchedule):
        return {"kind": "markovian", "gamma": schedule.gamma}
    return {"kind": "non_markovian", "a": schedule.a, "tau": schedule.tau}


def config_to_dict(config: ScenarioConfig) -> dict:
    return {
        "initial_state": list(config.initial_state.coefficients),
        "channel_a": {"flip": config.flip_a.value, "schedule": _schedule_to_dict(config.schedule_a)},
        "channel_b": {"flip": config.flip_b.value, "schedule": _schedule_to_dict(config.schedule_b)},
        "x_values": list(config.x_values),
        "sweep": {
            "variable": config.sweep.variable,
            "start": config.sweep.start,
            "stop": config.sweep.stop,
            "steps": config.sweep.steps,
        },
        "output": {"format": config.output_format, "path": config.output_path},
    }


def load_config(path: str | Path) -> ScenarioConfig:
    """Parse a JSON config file; JSON syntax errors propagate with line info."""
    with open(path, encoding="utf-8") as fh:
        raw = json.load(fh)
    return config_from_dict(raw)


def _preset(
    name: str,
    coeffs: tuple[float, float, float],
    flip_a: FlipType,
    flip_b: FlipType,
    markovian: bool,
) -> ScenarioConfig:
    if markovian:
        schedule: NoiseSchedule = MarkovianSchedule(gamma=1.0)
        sweep = SweepSpec(variable="p", start=0.0, stop=1.0, steps=1001)
    else:
        schedule = NonMarkovianSchedule(a=1.0, tau=5.0)
        sweep = SweepSpec(variable="nu", start=0.0, stop=40.0, steps=4001)
    return ScenarioConfig(
        initial_state=BellDiagonalState(*coeffs),
        flip_a=flip_a,
        flip_b=flip_b,
        schedule_a=schedule,
        schedule_b=schedule,
        x_values=_DEFAULT_X_GRID,
        sweep=sweep,
        output_format="csv",
        output_path=f"{name}.csv",
    )


FIGURE_PRESETS: dict[int, ScenarioConfig] = {
    1: _preset("fig1", (0.1, 0.5, 0.3), FlipType.PHASE, FlipType.PHASE, markovian=True),
    2: _preset("fig2", (1.0, -0.5, 0.5), FlipType.PHASE, FlipType.PHASE, markovian=True),
    3: _preset("fig3", (0.1, 0.5, 0.3), FlipType.BIT, FlipType.PHASE, markovian=True),
    4: _preset("fig4", (0.1, 0.5, 0.3), FlipType.PHASE, FlipType.PHASE, markovian=False),
    5: _preset("fig5", (1.0, -0.5, 0.5), FlipType.PHASE, FlipType.PHASE, markovian=False),
}


def figure_preset(number: int) -> ScenarioConfig:
    if number not in FIGURE_PRESETS:
        raise ConfigError("figure", f"unknown figure number {number}; expected 1-5")
    return FIGURE_PRESETS[number]


def _fmt(value: float) -> str:
    return f"{value:.17g}"


def _csv_rows(x: float, traj: Trajectory) -> list[str]:
    rows = []
    for s in traj.samples:
        st, corr = s.state, s.corr
        rows.append(
            ",".join(
                [
                    _fmt(x),
                    _fmt(s.sweep_value),
                    _fmt(st.c1),
                    _fmt(st.c2),
                    _fmt(st.c3),
                    _fmt(corr.mutual_info),
                    _fmt(corr.classical),
                    _fmt(corr.quantum),
                    str(int(s.chi_axis)),
                ]
            )
        )
    return rows


def _json_rows(x: float, traj: Trajectory) -> list[dict]:
    return [
        {
            "x": x,
            "sweep_value": s.sweep_value,
            "c1": s.state.c1,
            "c2": s.state.c2,
            "c3": s.state.c3,
            "I": s.corr.mutual_info,
            "C": s.corr.classical,
            "Q": s.corr.quantum,
            "chi_axis": int(s.chi_axis),
        }
        for s in traj.samples
    ]


def _change_point_dict(x: float, cp: ChangePoint) -> dict:
    return {
        "x": x,
        "sweep_value": cp.sweep_value,
        "kind": cp.kind.value,
        "axes": [int(a) for a in cp.axes] if cp.axes is not None else None,
    }


def _frozen_dict(x: float, fi: FrozenInterval) -> dict:
    return {
        "x": x,
        "start": fi.start,
        "stop": fi.stop,
        "Q": fi.quantum_value,
        "special_family": fi.special_family,
        "degenerate": fi.degenerate,
    }


def _worker_count(n_tasks: int) -> int:
    env = os.environ.get("BELLDYN_THREADS", "")
    if env:
        try:
            cap = int(env)
        except ValueError as exc:
            raise ConfigError("BELLDYN_THREADS", f"must be an integer, got {env!r}") from exc
        if cap < 1:
            raise ConfigError("BELLDYN_THREADS", f"must be >= 1, got {cap}")
    else:
        cap = os.cpu_count() or 1
    return max(1, min(cap, n_tasks))


def run_scenario(config: ScenarioConfig, base_dir: str | Path = ".") -> dict:
    """Simulate all x values, write the trajectory file and JSON summary.

    Trajectories for distinct x run on a small thread pool capped by
    BELLDYN_THREADS; rows are assembled in ascending x order regardless of
    completion order, so outputs are byte-identical across worker counts.
    Returns the summary dict.
    """
    base = Path(base_dir)
    base.mkdir(parents=True, exist_ok=True)

    def one(x: float) -> tuple[float, Trajectory]:
        return x, simulate(config.initial_state, config.pair_for(x), config.sweep)

    workers = _worker_count(len(config.x_values))
    if workers == 1:
        results = [one(x) for x in config.x_values]
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(one, config.x_values))
    results.sort(key=lambda pair: pair[0])

    change_points: list[dict] = []
    frozen: list[dict] = []
    regimes: dict[str, str] = {}
    for x, traj in results:
        pair = config.pair_for(x)
        regimes[_fmt(x)] = classify_regime(config.initial_state, pair).value
        points = find_change_points(traj) + find_oscillation_zeros(pair, config.sweep)
        intervals = detect_frozen_discord(traj)
        frozen.extend(_frozen_dict(x, fi) for fi in intervals)
        points.extend(
            ChangePoint(sweep_value=fi.start, kind=ChangeKind.FROZEN_DISCORD_ONSET, axes=None)
            for fi in intervals
        )
        points.sort(key=lambda cp: (cp.sweep_value, cp.kind.value))
        change_points.extend(_change_point_dict(x, cp) for cp in points)

    out_path = base / config.output_path
    if config.output_format == "csv":
        lines = [CSV_HEADER]
        for x, traj in results:
            lines.extend(_csv_rows(x, traj))
        out_path.write_text("\n".join(lines) + "\n", encoding="utf-8", newline="\n")
    else:
        rows: list[dict] = []
        for x, traj in results:
            rows.extend(_json_rows(x, traj))
        out_path.write_text(
            json.dumps(rows, indent=1, sort_keys=True) + "\n", encoding="utf-8", newline="\n"
        )

    summary = {
        "initial_state": list(config.initial_state.coefficients),
        "sweep_variable": config.sweep.variable,
        "regime": regimes,
        "change_points": change_points,
        "frozen_intervals": frozen,
    }
    summary_path = out_path.with_name(out_path.stem + ".summary.json")
    summary_path.write_text(
        json.dumps(summary, indent=1, sort_keys=True) + "\n", encoding="utf-8", newline="\n"
    )
    return summary

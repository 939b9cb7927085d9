"""Correlation trajectories, sudden-change detection, and regime labels.

A trajectory samples the closed-form coefficient decay on a uniform sweep
grid and evaluates (I, C, Q) at every sample.  Sudden changes of the
classical correlation happen where the argmax coefficient switches axis;
those points are refined by bisection on the closed forms rather than read
off the sampled data, because the closed forms are exact and cheap.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum

import numpy as np
from scipy.optimize import brentq

from .channels import (
    ChannelPair,
    DomainError,
    MarkovianSchedule,
    coefficient_map_factors,
    memory_kernel,
)
from .correlations import CorrelationTriple, correlations
from .states import BellDiagonalState, PauliAxis

__all__ = [
    "SweepSpec",
    "TrajectorySample",
    "Trajectory",
    "ChangeKind",
    "ChangePoint",
    "RegimeLabel",
    "FrozenInterval",
    "simulate",
    "find_change_points",
    "find_oscillation_zeros",
    "classify_regime",
    "detect_frozen_discord",
]

# sweep-value resolution for refined change points
REFINE_TOL = 1e-10
# default Q-constancy tolerance, per unit of sweep variable
FROZEN_TOL = 1e-9
# plateau confirmation: total Q variation over a frozen interval must stay
# at double-precision rounding level, which separates exact plateaus from
# the smooth quartic flattening every same-type trajectory has at the
# sweep end (there Q' -> 0 without Q being constant)
FROZEN_EXACTNESS = 1e-13


@dataclass(frozen=True)
class SweepSpec:
    """Uniform sweep grid.  variable is 'p', 't', or 'nu'."""

    variable: str
    start: float
    stop: float
    steps: int

    def __post_init__(self) -> None:
        if self.variable not in ("p", "t", "nu"):
            raise DomainError(f"sweep variable must be 'p', 't', or 'nu', got {self.variable!r}")
        if self.steps < 2:
            raise DomainError(f"sweep needs at least 2 steps, got {self.steps}")
        if not (math.isfinite(self.start) and math.isfinite(self.stop) and self.start < self.stop):
            raise DomainError(f"sweep range [{self.start}, {self.stop}] is empty or not finite")
        if self.start < 0.0:
            raise DomainError(f"sweep start must be >= 0, got {self.start}")
        if self.variable == "p" and self.stop > 1.0:
            raise DomainError(f"sweep in p must stop at <= 1, got {self.stop}")

    def values(self) -> np.ndarray:
        return np.linspace(self.start, self.stop, self.steps)


@dataclass(frozen=True)
class TrajectorySample:
    sweep_value: float
    t_equivalent: float
    state: BellDiagonalState
    corr: CorrelationTriple
    chi_axis: PauliAxis


@dataclass(frozen=True)
class Trajectory:
    initial_state: BellDiagonalState
    pair: ChannelPair
    sweep: SweepSpec
    samples: list[TrajectorySample] = field(repr=False)


class ChangeKind(Enum):
    ARGMAX_SWITCH = "argmax_switch"
    FROZEN_DISCORD_ONSET = "frozen_discord_onset"
    OSCILLATION_ZERO = "oscillation_zero"


@dataclass(frozen=True)
class ChangePoint:
    """Refined sweep location of a non-analytic point of C or Q.

    axes is the (from, to) argmax pair for switches and None for kernel
    zeros and frozen-discord onsets, where no axis change is involved.
    """

    sweep_value: float
    kind: ChangeKind
    axes: tuple[PauliAxis, PauliAxis] | None = None


class RegimeLabel(Enum):
    MONOTONE_DECAY = "MonotoneDecay"
    CLASSICAL_CONSTANT = "ClassicalConstant"
    SINGLE_SUDDEN_CHANGE = "SingleSuddenChange"
    DOUBLE_SUDDEN_CHANGE = "DoubleSuddenChange"
    OSCILLATORY_SAME_TYPE = "OscillatorySameType"
    OSCILLATORY_MIXED = "OscillatoryMixed"


@dataclass(frozen=True)
class FrozenInterval:
    """Maximal sweep interval on which Q stays constant.

    special_family marks initial states with c2 = -c1 c3 and |c1| > |c3|,
    the family whose discord freezes exactly while the decaying axes carry
    chi.  degenerate marks the all-zero state, where the whole sweep is
    trivially constant at Q = 0.
    """

    start: float
    stop: float
    quantum_value: float
    special_family: bool
    degenerate: bool


def _t_equivalent(pair: ChannelPair, variable: str, value: float) -> float:
    if variable == "t":
        return value
    if variable == "nu":
        # nu = t / (2 tau) on side A
        return 2.0 * pair.channel_a.schedule.tau * value
    gamma = pair.channel_a.schedule.gamma
    if value <= 0.0:
        return 0.0
    if gamma <= 0.0 or value >= 1.0:
        return math.inf
    return -math.log1p(-value) / gamma


def _state_at(initial: BellDiagonalState, pair: ChannelPair, variable: str, value: float) -> BellDiagonalState:
    p_a, p_b = pair.probabilities_at(variable, value)
    return coefficient_map_factors(
        initial, pair.channel_a.flip, pair.channel_b.flip, p_a, p_b
    )


def simulate(initial: BellDiagonalState, pair: ChannelPair, sweep: SweepSpec) -> Trajectory:
    """Closed-form trajectory of coefficients and correlations on the grid."""
    if sweep.variable == "nu" and pair.markovian:
        raise DomainError("sweep in nu requires non-Markovian schedules")
    if sweep.variable == "p" and not pair.markovian:
        raise DomainError("sweep in p is defined for Markovian pairs only")
    if sweep.variable == "t" and not pair.markovian:
        raise DomainError("sweep non-Markovian pairs in nu, not t")
    samples = []
    for value in sweep.values():
        state = _state_at(initial, pair, sweep.variable, float(value))
        samples.append(
            TrajectorySample(
                sweep_value=float(value),
                t_equivalent=_t_equivalent(pair, sweep.variable, float(value)),
                state=state,
                corr=correlations(state),
                chi_axis=state.chi_axis,
            )
        )
    return Trajectory(initial_state=initial, pair=pair, sweep=sweep, samples=samples)


def find_change_points(traj: Trajectory) -> list[ChangePoint]:
    """Argmax switches of |c_i|, refined on the closed forms.

    Adjacent samples whose chi_axis differs bracket a switch; bisection on
    |c_from| - |c_to| tightens the bracket to 1e-10 in the sweep value.
    Axes that touch without the argmax changing on either side never
    produce a bracket, so tangencies are dropped by construction.
    """
    initial, pair, variable = traj.initial_state, traj.pair, traj.sweep.variable
    points: list[ChangePoint] = []
    for left, right in zip(traj.samples, traj.samples[1:]):
        if left.chi_axis == right.chi_axis:
            continue
        axis_from, axis_to = left.chi_axis, right.chi_axis

        def gap(value: float) -> float:
            s = _state_at(initial, pair, variable, value)
            return abs(s.coefficient(axis_from)) - abs(s.coefficient(axis_to))

        lo, hi = left.sweep_value, right.sweep_value
        g_lo = gap(lo)
        # a switch can sit exactly on a grid sample; the tie-broken argmax
        # already moved, so the gap vanishes at an endpoint and bisection
        # would drift off the root
        exact = lo if g_lo == 0.0 else (hi if gap(hi) == 0.0 else None)
        if exact is not None:
            points.append(
                ChangePoint(
                    sweep_value=exact,
                    kind=ChangeKind.ARGMAX_SWITCH,
                    axes=(axis_from, axis_to),
                )
            )
            continue
        for _ in range(200):
            if hi - lo <= REFINE_TOL:
                break
            mid = 0.5 * (lo + hi)
            g_mid = gap(mid)
            if (g_mid > 0.0) == (g_lo > 0.0):
                lo, g_lo = mid, g_mid
            else:
                hi = mid
        points.append(
            ChangePoint(
                sweep_value=0.5 * (lo + hi),
                kind=ChangeKind.ARGMAX_SWITCH,
                axes=(axis_from, axis_to),
            )
        )
    return points


def find_oscillation_zeros(pair: ChannelPair, sweep: SweepSpec) -> list[ChangePoint]:
    """Roots of either side's memory kernel inside the sweep range.

    Zeros of Lambda flip the sign of the decaying coefficients, producing
    kinks in |c_i|.  Only meaningful for non-Markovian pairs; coincident
    roots of the two sides (x = 1) are reported once.
    """
    if pair.markovian:
        return []

    sides: list[tuple] = [(pair.channel_a.schedule, 1.0)]
    if pair.x > 0.0:
        sides.append((pair.channel_b.schedule, pair.x))

    zeros: list[float] = []
    for sched, scale in sides:
        product = 4.0 * sched.a * sched.tau
        if product <= 1.0:
            continue  # overdamped and critical kernels stay positive
        mu_scaled = math.sqrt(product * product - 1.0) * scale

        def kernel(nu: float, _s=sched, _k=scale) -> float:
            return memory_kernel(_k * nu, _s.a, _s.tau)

        # bracket on a grid with several points per root spacing pi/mu
        n = max(sweep.steps, int(8.0 * (sweep.stop - sweep.start) * mu_scaled / math.pi) + 2)
        grid = np.linspace(sweep.start, sweep.stop, n)
        vals = np.array([kernel(float(g)) for g in grid])
        for i in np.nonzero(np.sign(vals[:-1]) * np.sign(vals[1:]) < 0)[0]:
            root = brentq(kernel, grid[i], grid[i + 1], xtol=1e-14)
            zeros.append(float(root))
    zeros.sort()
    deduped: list[float] = []
    for z in zeros:
        if not deduped or z - deduped[-1] > 1e-12:
            deduped.append(z)
    return [ChangePoint(sweep_value=z, kind=ChangeKind.OSCILLATION_ZERO, axes=None) for z in deduped]


def _mixed_roles(pair: ChannelPair) -> tuple[PauliAxis, PauliAxis, PauliAxis]:
    """(slow, mid, fast) axes of a mixed-type Markovian pair.

    Side B runs at p' = x p <= p, so the axis only B touches decays
    slowest, the axis only A touches is in between, and the axis both
    sides touch decays fastest.
    """
    axis_a = pair.channel_a.flip.axis
    axis_b = pair.channel_b.flip.axis
    fast = next(ax for ax in PauliAxis if ax not in (axis_a, axis_b))
    return axis_a, axis_b, fast


def classify_regime(initial: BellDiagonalState, pair: ChannelPair) -> RegimeLabel:
    """Decay regime from the initial coefficient relations.

    Markovian same-type: zero flip-axis coefficient gives MonotoneDecay;
    a dominant flip-axis coefficient pins chi and gives ClassicalConstant;
    otherwise the argmax switches once (SingleSuddenChange).

    Markovian mixed-type, with (slow, mid, fast) the axes ordered by decay
    rate: a dominant slow coefficient decays without any switch; a
    dominant mid coefficient, or fast >= slow >= mid, switches once; for
    fast >= mid >= slow the count depends on the coupling, with two
    switches iff x >= (|c_fast| - |c_mid|) / (|c_fast| - |c_slow|).

    Non-Markovian pairs oscillate and are labeled by pairing type only.
    """
    if not pair.markovian:
        return (
            RegimeLabel.OSCILLATORY_SAME_TYPE
            if pair.same_type()
            else RegimeLabel.OSCILLATORY_MIXED
        )
    if pair.same_type():
        flip_axis = pair.channel_a.flip.axis
        pinned = abs(initial.coefficient(flip_axis))
        decayed = max(
            abs(initial.coefficient(ax)) for ax in PauliAxis if ax != flip_axis
        )
        if pinned <= 1e-12:
            return RegimeLabel.MONOTONE_DECAY
        if pinned >= decayed:
            return RegimeLabel.CLASSICAL_CONSTANT
        return RegimeLabel.SINGLE_SUDDEN_CHANGE

    slow_ax, mid_ax, fast_ax = _mixed_roles(pair)
    slow = abs(initial.coefficient(slow_ax))
    mid = abs(initial.coefficient(mid_ax))
    fast = abs(initial.coefficient(fast_ax))
    if slow >= mid and slow >= fast:
        return RegimeLabel.MONOTONE_DECAY
    if mid >= slow and mid >= fast:
        return RegimeLabel.SINGLE_SUDDEN_CHANGE
    # fast is the strict maximum from here on
    if slow >= mid:
        return RegimeLabel.SINGLE_SUDDEN_CHANGE
    threshold = (fast - mid) / (fast - slow)
    if pair.x >= threshold:
        return RegimeLabel.DOUBLE_SUDDEN_CHANGE
    return RegimeLabel.SINGLE_SUDDEN_CHANGE


def _is_special_family(initial: BellDiagonalState) -> bool:
    return (
        abs(initial.c2 + initial.c1 * initial.c3) <= 1e-12
        and abs(initial.c1) > abs(initial.c3)
    )


def detect_frozen_discord(traj: Trajectory, tol: float = FROZEN_TOL) -> list[FrozenInterval]:
    """Maximal sweep intervals with constant Q.

    A pair of adjacent samples is flat when |dQ| <= tol * dv (tol is per
    unit of sweep variable).  Runs of flat pairs become intervals, then
    each interval must also hold Q within 1e-13 total variation, which
    keeps genuine plateaus (constant to rounding) and rejects slow smooth
    drift that merely undercuts the rate tolerance.  Interval endpoints
    are reported at grid resolution.
    """
    q = np.array([s.corr.quantum for s in traj.samples])
    v = np.array([s.sweep_value for s in traj.samples])
    flat = np.abs(np.diff(q)) <= tol * np.diff(v)
    intervals: list[FrozenInterval] = []
    special = _is_special_family(traj.initial_state)
    degenerate = traj.initial_state.chi <= 1e-12
    i = 0
    n = len(flat)
    while i < n:
        if not flat[i]:
            i += 1
            continue
        j = i
        while j < n and flat[j]:
            j += 1
        segment = q[i : j + 1]
        if float(np.max(segment) - np.min(segment)) <= FROZEN_EXACTNESS:
            intervals.append(
                FrozenInterval(
                    start=float(v[i]),
                    stop=float(v[j]),
                    quantum_value=float(np.median(segment)),
                    special_family=special,
                    degenerate=degenerate,
                )
            )
        i = j
    return intervals

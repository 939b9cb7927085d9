"""Local flip channels, noise schedules, and their closed-form action.

Each side of the pair applies one of three Pauli flip channels with Kraus
operators E1 = sqrt(1 - p/2) I and E2 = sqrt(p/2) sigma.  A Markovian
schedule drives p(t) = 1 - exp(-gamma t); a non-Markovian schedule drives
p = 1 - Lambda(nu) with the damped-oscillator memory kernel Lambda, which
takes p through [0, 2).  Both cases share the same Kraus shape, so one
engine covers them.

On Bell-diagonal states the action is diagonal in the coefficients: each
side multiplies every c_i whose Pauli anticommutes with the flip axis by
that side's survival factor (1 - p), and leaves the flip-axis coefficient
alone.  The generic operator-sum engine and this closed-form map are
verified against each other rather than trusted.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .states import (
    IDENTITY_2,
    PAULI,
    BellDiagonalState,
    PauliAxis,
    check_density_matrix,
    extract_coefficients,
    sample_bell_diagonal,
    to_density_matrix,
)

__all__ = [
    "FlipType",
    "MarkovianSchedule",
    "NonMarkovianSchedule",
    "NoiseSchedule",
    "ChannelSpec",
    "ChannelPair",
    "DomainError",
    "WeightOutOfRangeError",
    "PairingMismatchError",
    "PairingReport",
    "memory_kernel",
    "kernel_frequency",
    "noise_probability",
    "kraus_set",
    "apply_channel_pair",
    "apply_flip_pair",
    "coefficient_map",
    "coefficient_map_factors",
    "verify_pairing",
]


class DomainError(ValueError):
    """Negative time or malformed schedule parameters."""


class WeightOutOfRangeError(ValueError):
    """Flip probability outside [0, 2]."""


class PairingMismatchError(AssertionError):
    """Engine and closed-form map disagree beyond tolerance."""

    def __init__(self, message: str, worst: tuple | None = None) -> None:
        super().__init__(message)
        self.worst = worst


class FlipType(Enum):
    """The three local flip channels, keyed by their Pauli axis."""

    BIT = "bit_flip"
    BIT_PHASE = "bit_phase_flip"
    PHASE = "phase_flip"

    @property
    def axis(self) -> PauliAxis:
        return {
            FlipType.BIT: PauliAxis.X,
            FlipType.BIT_PHASE: PauliAxis.Y,
            FlipType.PHASE: PauliAxis.Z,
        }[self]


@dataclass(frozen=True)
class MarkovianSchedule:
    """Exponential flip schedule p(t) = 1 - exp(-gamma t), gamma >= 0."""

    gamma: float

    def __post_init__(self) -> None:
        if not (math.isfinite(self.gamma) and self.gamma >= 0.0):
            raise DomainError(f"gamma must be finite and >= 0, got {self.gamma}")


@dataclass(frozen=True)
class NonMarkovianSchedule:
    """Memory-kernel schedule p(nu) = 1 - Lambda(nu; a, tau), a, tau > 0."""

    a: float
    tau: float

    def __post_init__(self) -> None:
        if not (math.isfinite(self.a) and self.a > 0.0):
            raise DomainError(f"a must be finite and > 0, got {self.a}")
        if not (math.isfinite(self.tau) and self.tau > 0.0):
            raise DomainError(f"tau must be finite and > 0, got {self.tau}")


NoiseSchedule = MarkovianSchedule | NonMarkovianSchedule


def kernel_frequency(a: float, tau: float) -> float:
    """Oscillation frequency mu = sqrt((4 a tau)^2 - 1) of the kernel.

    Only defined in the oscillatory regime 4 a tau > 1.
    """
    product = 4.0 * a * tau
    if product <= 1.0:
        raise DomainError(f"kernel is not oscillatory: 4*a*tau = {product} <= 1")
    return math.sqrt(product * product - 1.0)


def memory_kernel(nu: float, a: float, tau: float) -> float:
    """Damped-oscillator decay envelope Lambda(nu) with Lambda(0) = 1.

    nu is dimensionless time t / (2 tau).  For 4 a tau > 1:

        Lambda = exp(-nu) (cos(mu nu) + sin(mu nu) / mu),  mu = sqrt((4 a tau)^2 - 1)

    For 4 a tau < 1 the analytic continuation swaps cos/sin for cosh/sinh
    with mu~ = sqrt(1 - (4 a tau)^2); at 4 a tau = 1 it degenerates to
    exp(-nu) (1 + nu).  |Lambda| <= 1 everywhere.
    """
    if not (math.isfinite(nu) and nu >= 0.0):
        raise DomainError(f"nu must be finite and >= 0, got {nu}")
    if not (math.isfinite(a) and a > 0.0) or not (math.isfinite(tau) and tau > 0.0):
        raise DomainError(f"a and tau must be positive, got a={a}, tau={tau}")
    product = 4.0 * a * tau
    disc = product * product - 1.0
    if disc > 0.0:
        mu = math.sqrt(disc)
        return math.exp(-nu) * (math.cos(mu * nu) + math.sin(mu * nu) / mu)
    if disc < 0.0:
        mu = math.sqrt(-disc)
        # cosh/sinh overflow protection is unnecessary: the exp(-nu) factor
        # dominates because mu < 1, but compute in log space anyway for
        # large nu
        if mu * nu > 700.0:
            # Lambda = (1/2)(1 + 1/mu) exp((mu - 1) nu) + (1/2)(1 - 1/mu) exp(-(mu + 1) nu)
            return 0.5 * (1.0 + 1.0 / mu) * math.exp((mu - 1.0) * nu)
        return math.exp(-nu) * (math.cosh(mu * nu) + math.sinh(mu * nu) / mu)
    return math.exp(-nu) * (1.0 + nu)


def noise_probability(schedule: NoiseSchedule, t: float) -> float:
    """Flip probability at sweep time t (dimensionless nu when non-Markovian)."""
    if not (math.isfinite(t) and t >= 0.0):
        raise DomainError(f"t must be finite and >= 0, got {t}")
    if isinstance(schedule, MarkovianSchedule):
        return -math.expm1(-schedule.gamma * t)
    return 1.0 - memory_kernel(t, schedule.a, schedule.tau)


@dataclass(frozen=True)
class ChannelSpec:
    flip: FlipType
    schedule: NoiseSchedule


@dataclass(frozen=True)
class ChannelPair:
    """Independent local channels on A and B with coupling x = ratio of
    the B-side sweep argument to the A-side one (p' = x p or nu' = x nu).
    Both schedules must be of the same kind; the coupling is defined
    through a shared sweep variable.
    """

    channel_a: ChannelSpec
    channel_b: ChannelSpec
    x: float

    def __post_init__(self) -> None:
        if not (math.isfinite(self.x) and 0.0 <= self.x <= 1.0):
            raise DomainError(f"x must lie in [0, 1], got {self.x}")
        if isinstance(self.channel_a.schedule, MarkovianSchedule) != isinstance(
            self.channel_b.schedule, MarkovianSchedule
        ):
            raise DomainError("channel pair mixes Markovian and non-Markovian schedules")

    @property
    def markovian(self) -> bool:
        return isinstance(self.channel_a.schedule, MarkovianSchedule)

    def same_type(self) -> bool:
        return self.channel_a.flip == self.channel_b.flip

    def probabilities_at(self, variable: str, value: float) -> tuple[float, float]:
        """Resolve the sweep coordinate to per-side flip probabilities.

        variable 'p': value is the A-side probability itself and B gets
        x * value (Markovian closed-form sweep; schedule rates unused).
        variable 't' or 'nu': schedules evaluated at value and x * value.
        """
        if variable == "p":
            if not self.markovian:
                raise DomainError("sweep in p is defined for Markovian pairs only")
            if not 0.0 <= value <= 1.0:
                raise DomainError(f"p must lie in [0, 1], got {value}")
            return value, self.x * value
        if variable in ("t", "nu"):
            if variable == "nu" and self.markovian:
                raise DomainError("sweep in nu requires non-Markovian schedules")
            if variable == "t" and not self.markovian:
                raise DomainError("sweep non-Markovian pairs in nu, not t")
            return (
                noise_probability(self.channel_a.schedule, value),
                noise_probability(self.channel_b.schedule, self.x * value),
            )
        raise DomainError(f"unknown sweep variable {variable!r}")


def kraus_set(flip: FlipType, p: float) -> list[np.ndarray]:
    """Kraus operators {sqrt(1 - p/2) I, sqrt(p/2) sigma} for one qubit.

    p in [0, 2]: the upper half is reached by non-Markovian schedules when
    the kernel goes negative.  Completeness sum(E^dag E) = I holds for the
    whole range.
    """
    if not (math.isfinite(p) and 0.0 <= p <= 2.0):
        raise WeightOutOfRangeError(f"flip probability must lie in [0, 2], got {p}")
    return [
        math.sqrt(1.0 - p / 2.0) * IDENTITY_2,
        math.sqrt(p / 2.0) * PAULI[flip.axis],
    ]


def apply_flip_pair(
    rho: np.ndarray,
    flip_a: FlipType,
    flip_b: FlipType,
    p_a: float,
    p_b: float,
) -> np.ndarray:
    """Operator-sum over all Kraus pairs, with explicit probabilities.

    Works on any 4x4 density matrix; output is re-validated (trace,
    Hermiticity, positivity at the loose -1e-10 gate).
    """
    rho = check_density_matrix(np.asarray(rho, dtype=complex))
    out = np.zeros((4, 4), dtype=complex)
    for ea in kraus_set(flip_a, p_a):
        for eb in kraus_set(flip_b, p_b):
            k = np.kron(ea, eb)
            out += k @ rho @ k.conj().T
    return check_density_matrix(out)


def apply_channel_pair(rho: np.ndarray, pair: ChannelPair, t: float) -> np.ndarray:
    """Generic engine at sweep time t: p_A at t, p_B at x*t."""
    variable = "t" if pair.markovian else "nu"
    p_a, p_b = pair.probabilities_at(variable, t)
    return apply_flip_pair(rho, pair.channel_a.flip, pair.channel_b.flip, p_a, p_b)


def coefficient_map_factors(
    state: BellDiagonalState,
    flip_a: FlipType,
    flip_b: FlipType,
    p_a: float,
    p_b: float,
) -> BellDiagonalState:
    """Closed-form coefficient decay for explicit probabilities.

    Each side leaves its own flip-axis coefficient untouched and scales
    the other two coefficients by its survival factor (1 - p).
    """
    coeffs = []
    for axis in PauliAxis:
        # single combined factor keeps the (p_a, p_b) swap symmetry of
        # same-type pairs exact at the bit level
        factor = 1.0
        if flip_a.axis != axis:
            factor *= 1.0 - p_a
        if flip_b.axis != axis:
            factor *= 1.0 - p_b
        coeffs.append(state.coefficient(axis) * factor)
    return BellDiagonalState(*coeffs)


def coefficient_map(state: BellDiagonalState, pair: ChannelPair, t: float) -> BellDiagonalState:
    """Closed-form coefficients at sweep time t (same resolution as the engine)."""
    variable = "t" if pair.markovian else "nu"
    p_a, p_b = pair.probabilities_at(variable, t)
    return coefficient_map_factors(state, pair.channel_a.flip, pair.channel_b.flip, p_a, p_b)


@dataclass(frozen=True)
class PairingReport:
    flip_a: FlipType
    flip_b: FlipType
    markovian: bool
    samples: int
    max_deviation: float


def verify_pairing(
    pair: ChannelPair,
    samples: int,
    rng: np.random.Generator,
    tol: float = 1e-12,
    t_max: float | None = None,
) -> PairingReport:
    """Engine vs closed-form map on random states and times.

    Draws `samples` random valid states and sweep times (t = 0 always
    included), pushes each state through apply_channel_pair, extracts the
    coefficients, and compares with coefficient_map.  Raises
    PairingMismatchError carrying the worst counterexample if any
    deviation exceeds tol.
    """
    if t_max is None:
        t_max = 40.0 if not pair.markovian else 5.0
    states = sample_bell_diagonal(samples, rng)
    times = rng.uniform(0.0, t_max, size=samples)
    times[0] = 0.0
    worst_dev = 0.0
    worst: tuple | None = None
    for state, t in zip(states, times):
        evolved = apply_channel_pair(to_density_matrix(state), pair, float(t))
        measured = extract_coefficients(evolved)
        expected = coefficient_map(state, pair, float(t))
        dev = max(
            abs(measured.c1 - expected.c1),
            abs(measured.c2 - expected.c2),
            abs(measured.c3 - expected.c3),
        )
        if dev > worst_dev:
            worst_dev = dev
            worst = (state, float(t), dev)
    if worst_dev > tol:
        raise PairingMismatchError(
            f"engine and closed form disagree by {worst_dev:.3e} (tol {tol:.1e}) "
            f"for pairing ({pair.channel_a.flip.value}, {pair.channel_b.flip.value}) "
            f"at state {worst[0]}, t = {worst[1]}",
            worst=worst,
        )
    return PairingReport(
        flip_a=pair.channel_a.flip,
        flip_b=pair.channel_b.flip,
        markovian=pair.markovian,
        samples=samples,
        max_deviation=worst_dev,
    )

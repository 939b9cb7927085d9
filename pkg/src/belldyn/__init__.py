"""Correlation dynamics of two-qubit Bell-diagonal states under local noise.

The package computes mutual information, classical correlation, and
quantum discord along closed-form noise trajectories, locates the sudden
changes where the classical correlation switches branch, and detects
intervals of frozen discord.  Channels act independently on each qubit
with possibly different strengths, either with an exponential (memoryless)
schedule or with an oscillating memory-kernel schedule that revives
correlations.
"""

from .channels import (
    ChannelPair,
    ChannelSpec,
    DomainError,
    FlipType,
    MarkovianSchedule,
    NonMarkovianSchedule,
    PairingMismatchError,
    PairingReport,
    WeightOutOfRangeError,
    apply_channel_pair,
    apply_flip_pair,
    coefficient_map,
    coefficient_map_factors,
    kernel_frequency,
    kraus_set,
    memory_kernel,
    noise_probability,
    verify_pairing,
)
from .correlations import (
    CorrelationTriple,
    GridTooCoarseWarning,
    MeasurementBasis,
    classical_correlation_closed,
    classical_correlation_oracle,
    conditional_entropy,
    correlations,
    correlations_oracle,
    mutual_information,
    quantum_discord_closed,
)
from .dynamics import (
    ChangeKind,
    ChangePoint,
    FrozenInterval,
    RegimeLabel,
    SweepSpec,
    Trajectory,
    TrajectorySample,
    classify_regime,
    detect_frozen_discord,
    find_change_points,
    find_oscillation_zeros,
    simulate,
)
from .scenario import (
    ConfigError,
    FIGURE_PRESETS,
    ScenarioConfig,
    config_from_dict,
    config_to_dict,
    figure_preset,
    load_config,
    run_scenario,
)
from .states import (
    BellDiagonalState,
    NotBellDiagonalError,
    PauliAxis,
    UnphysicalStateError,
    bell_spectrum,
    check_density_matrix,
    extract_coefficients,
    reduced_state,
    sample_bell_diagonal,
    to_density_matrix,
    von_neumann_entropy,
)

__version__ = "0.1.0"

__all__ = [
    "__version__",
    "BellDiagonalState",
    "PauliAxis",
    "UnphysicalStateError",
    "NotBellDiagonalError",
    "bell_spectrum",
    "check_density_matrix",
    "extract_coefficients",
    "reduced_state",
    "sample_bell_diagonal",
    "to_density_matrix",
    "von_neumann_entropy",
    "CorrelationTriple",
    "GridTooCoarseWarning",
    "MeasurementBasis",
    "classical_correlation_closed",
    "classical_correlation_oracle",
    "conditional_entropy",
    "correlations",
    "correlations_oracle",
    "mutual_information",
    "quantum_discord_closed",
    "ChannelPair",
    "ChannelSpec",
    "DomainError",
    "FlipType",
    "MarkovianSchedule",
    "NonMarkovianSchedule",
    "PairingMismatchError",
    "PairingReport",
    "WeightOutOfRangeError",
    "apply_channel_pair",
    "apply_flip_pair",
    "coefficient_map",
    "coefficient_map_factors",
    "kernel_frequency",
    "kraus_set",
    "memory_kernel",
    "noise_probability",
    "verify_pairing",
    "ChangeKind",
    "ChangePoint",
    "FrozenInterval",
    "RegimeLabel",
    "SweepSpec",
    "Trajectory",
    "TrajectorySample",
    "classify_regime",
    "detect_frozen_discord",
    "find_change_points",
    "find_oscillation_zeros",
    "simulate",
    "ConfigError",
    "FIGURE_PRESETS",
    "ScenarioConfig",
    "config_from_dict",
    "config_to_dict",
    "figure_preset",
    "load_config",
    "run_scenario",
]

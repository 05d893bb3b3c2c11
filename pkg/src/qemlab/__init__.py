"""Desk-scale laboratory for benchmarking quantum error mitigation pipelines."""

__version__ = "0.1.0"

from .circuit import (  # noqa: E402
    Circuit,
    DurationTable,
    Gate,
    Observable,
    QaoaParams,
    build_qaoa_maxcut,
    ideal_expectation,
    maxcut_observable,
)
from .config import ExperimentConfig, builtin_profile, load_config  # noqa: E402
from .simulator import NoiseModel, exact_expectation, expectation_from_counts, simulate_counts  # noqa: E402

__all__ = [
    "Circuit",
    "DurationTable",
    "Gate",
    "Observable",
    "QaoaParams",
    "build_qaoa_maxcut",
    "ideal_expectation",
    "maxcut_observable",
    "ExperimentConfig",
    "builtin_profile",
    "load_config",
    "NoiseModel",
    "exact_expectation",
    "expectation_from_counts",
    "simulate_counts",
]

"""Experiment configuration, profiles and seed derivation."""

from __future__ import annotations

import hashlib
import json
import math
from dataclasses import dataclass, field, replace
from importlib import resources
from pathlib import Path
from typing import Sequence

import numpy as np

from .circuit import DurationTable, QaoaParams, build_qaoa_maxcut, ideal_expectation, maxcut_observable
from .simulator import NoiseModel, exact_expectation

__all__ = [
    "SCHEMA_VERSION",
    "ConfigError",
    "ExperimentConfig",
    "load_config",
    "builtin_profile",
    "derive_seed",
    "select_param_pairs",
    "DEFAULT_TARGETS",
]

SCHEMA_VERSION = 1

# ideal-value targets for the default pairs; the top end is the p=1 maximum
DEFAULT_TARGETS = (-0.62, -0.45, -0.3, 0.25, 0.45, 0.65, 0.85, 1.05, 1.25, 1.38)


class ConfigError(ValueError):
    """Invalid or inconsistent experiment configuration."""


@dataclass(frozen=True)
class ExperimentConfig:
    param_pairs: tuple[QaoaParams, ...]
    repeats: int = 15
    shots: int = 10_000
    scales: tuple[int, ...] = (1, 3, 5)
    rc_duplicates: int = 50
    rc_shots_per_duplicate: int = 200
    calibration_shots: int = 10_000
    n_boot: int = 10_000
    median_n_boot: int = 10_000
    algorithm1_per_param: int = 1000
    estimation_floor: float = 0.05
    noise: NoiseModel = field(default_factory=NoiseModel)
    durations: DurationTable = field(default_factory=DurationTable)
    master_seed: int = 20230101
    exact: bool = False
    profile: str = "custom"
    schema_version: int = SCHEMA_VERSION

    def __post_init__(self):
        object.__setattr__(self, "param_pairs", tuple(self.param_pairs))
        object.__setattr__(self, "scales", tuple(int(s) for s in self.scales))
        self.validate()

    def validate(self) -> None:
        if self.schema_version != SCHEMA_VERSION:
            raise ConfigError(f"unsupported config schema {self.schema_version}")
        if not self.param_pairs:
            raise ConfigError("need at least one parameter pair")
        if self.repeats < 2:
            raise ConfigError("repeats must be at least 2")
        if not self.scales or self.scales[0] != 1 or any(b <= a for a, b in zip(self.scales, self.scales[1:])):
            raise ConfigError("scales must start at 1 and increase")
        if any(s % 2 == 0 for s in self.scales):
            raise ConfigError("folding scales must be odd")
        if self.rc_duplicates * self.rc_shots_per_duplicate != self.shots:
            raise ConfigError("rc_duplicates * rc_shots_per_duplicate must equal shots")
        for name in ("shots", "calibration_shots", "algorithm1_per_param"):
            if getattr(self, name) < 1:
                raise ConfigError(f"{name} must be positive")
        if self.n_boot < 100 or self.median_n_boot < 100:
            raise ConfigError("bootstrap sizes must be at least 100")
        if not 0 < self.estimation_floor < 1:
            raise ConfigError("estimation_floor must lie in (0, 1)")

    def replace(self, **changes) -> "ExperimentConfig":
        return replace(self, **changes)

    def to_dict(self) -> dict:
        return {
            "schema_version": self.schema_version,
            "profile": self.profile,
            "param_pairs": [[p.gamma, p.beta] for p in self.param_pairs],
            "repeats": self.repeats,
            "shots": self.shots,
            "scales": list(self.scales),
            "rc_duplicates": self.rc_duplicates,
            "rc_shots_per_duplicate": self.rc_shots_per_duplicate,
            "calibration_shots": self.calibration_shots,
            "n_boot": self.n_boot,
            "median_n_boot": self.median_n_boot,
            "algorithm1_per_param": self.algorithm1_per_param,
            "estimation_floor": self.estimation_floor,
            "noise": self.noise.to_dict(),
            "durations": self.durations.to_dict(),
            "master_seed": self.master_seed,
            "exact": self.exact,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "ExperimentConfig":
        data = dict(data)
        try:
            data["param_pairs"] = tuple(QaoaParams(float(g), float(b)) for g, b in data["param_pairs"])
            if "noise" in data:
                data["noise"] = NoiseModel.from_dict(data["noise"])
            if "durations" in data:
                data["durations"] = DurationTable.from_dict(data["durations"])
            return cls(**data)
        except ConfigError:
            raise
        except (KeyError, TypeError, ValueError) as exc:
            raise ConfigError(str(exc)) from exc

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True)

    @property
    def hash(self) -> str:
        canon = json.dumps(self.to_dict(), sort_keys=True, separators=(",", ":"))
        return hashlib.sha256(canon.encode()).hexdigest()[:16]


def builtin_profile(name: str) -> ExperimentConfig:
    """Load a shipped profile: ``desk`` or ``full``."""
    try:
        text = resources.files("qemlab.data").joinpath(f"{name}.json").read_text()
    except FileNotFoundError:
        raise ConfigError(f"no built-in profile {name!r}") from None
    return ExperimentConfig.from_dict(json.loads(text))


def load_config(path_or_profile: str | Path) -> ExperimentConfig:
    """Read a JSON config file, or a built-in profile by name."""
    p = Path(path_or_profile)
    if not p.exists() and str(path_or_profile) in ("desk", "full"):
        return builtin_profile(str(path_or_profile))
    try:
        data = json.loads(p.read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise ConfigError(f"cannot read config {p}: {exc}") from exc
    return ExperimentConfig.from_dict(data)


def _coord_int(c) -> int:
    if isinstance(c, (int, np.integer)) and c >= 0:
        return int(c)
    digest = hashlib.sha256(repr(c).encode()).digest()
    return int.from_bytes(digest[:8], "little")


def derive_seed(master_seed: int, *coords) -> np.random.SeedSequence:
    """Stable per-task seed from the master seed and task coordinates."""
    return np.random.SeedSequence([int(master_seed), *(_coord_int(c) for c in coords)])


# reference channel for the noisy-gap screen in select_param_pairs
SCREEN_NOISE = NoiseModel.noiseless().replace(depol_1q=0.001, depol_2q=0.01)


def select_param_pairs(
    targets: Sequence[float] = DEFAULT_TARGETS,
    step_deg: float = 5.0,
    min_abs: float = 0.2,
    min_rel_gap: float = 0.025,
    durations: DurationTable | None = None,
) -> tuple[QaoaParams, ...]:
    """Coarse grid search for (gamma, beta) pairs hitting the target ideals.

    Two screens keep REM denominators away from zero: grid points with
    ``|ideal| < min_abs`` are skipped, and so are points whose value under
    :data:`SCREEN_NOISE` lies within ``min_rel_gap * |ideal|`` of the ideal.
    Local depolarizing noise does not simply shrink the expectation, so a few
    points have a noisy value that sits on top of the ideal one. Ties keep
    the first grid point in row-major order.
    """
    durations = durations or DurationTable()
    obs = maxcut_observable(4)
    angles = np.deg2rad(np.arange(0.0, 180.0, step_deg))
    grid = []
    for g in angles:
        for b in angles:
            p = QaoaParams(float(g), float(b))
            grid.append((p, ideal_expectation(build_qaoa_maxcut(p, durations), obs)))
    gap_ok: dict[QaoaParams, bool] = {}

    def separated(p: QaoaParams, ideal: float) -> bool:
        if p not in gap_ok:
            noisy = exact_expectation(build_qaoa_maxcut(p, durations), SCREEN_NOISE, obs)
            gap_ok[p] = abs(noisy - ideal) >= min_rel_gap * abs(ideal)
        return gap_ok[p]

    chosen: list[QaoaParams] = []
    for t in targets:
        ranked = sorted(
            (item for item in grid if abs(item[1]) >= min_abs and item[0] not in chosen),
            key=lambda item: abs(item[1] - t),
        )
        best = next(item for item in ranked if separated(*item))
        chosen.append(best[0])
    return tuple(chosen)


def _default_profile(name: str) -> ExperimentConfig:
    pairs = select_param_pairs()
    if name == "full":
        return ExperimentConfig(param_pairs=pairs, profile="full")
    if name == "desk":
        return ExperimentConfig(
            param_pairs=pairs,
            repeats=5,
            shots=2000,
            rc_duplicates=50,
            rc_shots_per_duplicate=40,
            calibration_shots=2000,
            n_boot=2000,
            median_n_boot=2000,
            algorithm1_per_param=1000,
            profile="desk",
        )
    raise ConfigError(name)


def write_default_profiles(directory: Path) -> None:
    """Regenerate the shipped profile files."""
    for name in ("desk", "full"):
        (Path(directory) / f"{name}.json").write_text(_default_profile(name).to_json() + "\n")

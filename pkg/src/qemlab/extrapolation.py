"""Zero-noise extrapolation and bootstrap of the zero-noise intercept."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

__all__ = ["ORDERS", "ScaledSamples", "ZneEstimate", "fit_extrapolate", "bootstrap_zero_noise"]

ORDERS = {"linear": 1, "quadratic": 2}


def _degree(order: str) -> int:
    try:
        return ORDERS[order]
    except KeyError:
        raise ValueError(f"unknown fit order {order!r}") from None


@dataclass(frozen=True)
class ScaledSamples:
    """Repeat-level expectation values at each noise scale."""

    scales: tuple[float, ...]
    samples: tuple[tuple[float, ...], ...]

    def __post_init__(self):
        scales = tuple(float(s) for s in self.scales)
        samples = tuple(tuple(float(v) for v in row) for row in self.samples)
        if not scales or scales[0] != 1.0 or any(b <= a for a, b in zip(scales, scales[1:])):
            raise ValueError("scales must start at 1 and increase strictly")
        if len(samples) != len(scales):
            raise ValueError("need one sample list per scale")
        lengths = {len(r) for r in samples}
        if 0 in lengths or len(lengths) != 1:
            raise ValueError("per-scale sample lists must be non-empty and of equal length")
        object.__setattr__(self, "scales", scales)
        object.__setattr__(self, "samples", samples)

    def as_array(self) -> np.ndarray:
        return np.array(self.samples)


@dataclass(frozen=True)
class ZneEstimate:
    mu_lambda0: float
    sigma_lambda0: float
    mu_lambda1: float
    sigma_lambda1: float

    def to_dict(self) -> dict:
        return dict(self.__dict__)


def _design(scales: np.ndarray, degree: int) -> np.ndarray:
    if len(np.unique(scales)) < degree + 1:
        raise ValueError(f"a degree-{degree} fit needs at least {degree + 1} distinct scales")
    return np.vander(scales, degree + 1, increasing=True)


def fit_extrapolate(points: Sequence[tuple[float, float]], order: str = "linear") -> float:
    """Least-squares polynomial fit; returns the value at scale 0."""
    pts = np.asarray(points, dtype=float)
    a = _design(pts[:, 0], _degree(order))
    coef, *_ = np.linalg.lstsq(a, pts[:, 1], rcond=None)
    return float(coef[0])


def bootstrap_zero_noise(
    samples: ScaledSamples,
    order: str = "linear",
    n_boot: int = 10_000,
    seed=None,
) -> ZneEstimate:
    """Resample each scale's repeats independently, fit per-scale means,
    and summarise the intercepts. Scale-1 statistics come from the raw
    repeats (sample std, ddof=1)."""
    if n_boot < 100:
        raise ValueError("n_boot must be at least 100")
    scales = np.array(samples.scales)
    data = samples.as_array()  # (n_scales, n_rep)
    a = _design(scales, _degree(order))
    rng = np.random.default_rng(seed)
    n_scales, n_rep = data.shape
    idx = rng.integers(0, n_rep, size=(n_boot, n_scales, n_rep))
    means = np.take_along_axis(np.broadcast_to(data, (n_boot, n_scales, n_rep)), idx, axis=2).mean(axis=2)
    # row 0 of pinv(A) maps per-scale values to the intercept
    intercepts = means @ np.linalg.pinv(a)[0]
    raw1 = data[0]
    sigma1 = float(raw1.std(ddof=1)) if n_rep > 1 else 0.0
    return ZneEstimate(
        mu_lambda0=float(intercepts.mean()),
        sigma_lambda0=float(intercepts.std(ddof=1)),
        mu_lambda1=float(raw1.mean()),
        sigma_lambda1=sigma1,
    )

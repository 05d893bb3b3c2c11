"""Relative error mitigation and proportion tests on binarised REM samples."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np
from scipy import stats as _st

__all__ = [
    "DegenerateBaselineError",
    "ZeroVarianceError",
    "SampleSizeError",
    "ExpectationTriple",
    "RemPopulation",
    "TestReport",
    "rem",
    "sample_rem_population",
    "critical_value",
    "z_star",
    "one_sample_prop_test",
    "prop_ci",
    "two_sample_prop_test",
    "two_sample_ci",
    "psr",
    "median_rem_upper",
    "power_one_sample",
    "MIN_N",
]

MIN_N = 30


class DegenerateBaselineError(ValueError):
    """Noisy and ideal expectation coincide, so REM is undefined."""


class ZeroVarianceError(ValueError):
    """Pooled proportion is 0 or 1; the two-sample statistic is undefined."""


class SampleSizeError(ValueError):
    """Too few trials for the normal approximation."""


@dataclass(frozen=True)
class ExpectationTriple:
    ideal: float
    mitigated: tuple[float, float]  # (mu, sigma) at lambda = 0
    noisy: tuple[float, float]  # (mu, sigma) at lambda = 1

    def __post_init__(self):
        if self.mitigated[1] < 0 or self.noisy[1] < 0:
            raise ValueError("sigmas must be non-negative")


@dataclass(frozen=True)
class RemPopulation:
    successes: int
    failures: int
    rem_values: np.ndarray = field(repr=False, compare=False)

    def __post_init__(self):
        if self.successes < 0 or self.failures < 0 or self.n == 0:
            raise ValueError("population needs a positive number of trials")

    @property
    def n(self) -> int:
        return self.successes + self.failures

    @property
    def proportion(self) -> float:
        return self.successes / self.n


@dataclass(frozen=True)
class TestReport:
    z: float
    p_hat: float
    alpha: float
    reject: bool
    ci_low: float
    ci_high: float
    p_hat_b: float | None = None
    p0: float | None = None
    critical: float | None = None

    def to_dict(self) -> dict:
        return {k: v for k, v in self.__dict__.items() if v is not None}


def rem(ideal: float, mitigated: float, noisy: float) -> float:
    """|ideal - mitigated| / |ideal - noisy|."""
    denom = abs(ideal - noisy)
    if denom == 0:
        raise DegenerateBaselineError("noisy value equals the ideal value")
    return abs(ideal - mitigated) / denom


def sample_rem_population(
    triples: Sequence[ExpectationTriple], per_param: int = 1000, seed=None
) -> RemPopulation:
    """Draw Gaussian mitigated/noisy values per triple, binarise REM at 1."""
    if per_param < 1:
        raise ValueError("per_param must be positive")
    if not triples:
        raise ValueError("need at least one expectation triple")
    rng = np.random.default_rng(seed)
    values = []
    for t in triples:
        mit = rng.normal(t.mitigated[0], t.mitigated[1], size=per_param)
        noisy = rng.normal(t.noisy[0], t.noisy[1], size=per_param)
        bad = noisy == t.ideal
        if bad.any():
            noisy[bad] = rng.normal(t.noisy[0], t.noisy[1], size=int(bad.sum()))
            if (noisy == t.ideal).any():
                raise DegenerateBaselineError("sampled noisy value equals the ideal value")
        values.append(np.abs(t.ideal - mit) / np.abs(t.ideal - noisy))
    rems = np.concatenate(values)
    successes = int((rems < 1).sum())
    return RemPopulation(successes, rems.size - successes, rems)


def critical_value(alpha: float = 0.05) -> float:
    """One-sided standard-normal critical value (1.645 at alpha = 0.05)."""
    return float(_st.norm.ppf(1 - alpha))


def z_star(level: float = 0.95) -> float:
    """Two-sided CI multiplier; exactly 1.96 at 95%."""
    if math.isclose(level, 0.95):
        return 1.96
    return float(_st.norm.ppf((1 + level) / 2))


def _check_counts(x: int, n: int) -> None:
    if not 0 <= x <= n:
        raise ValueError(f"need 0 <= x <= n, got x={x}, n={n}")
    if n < MIN_N:
        raise SampleSizeError(f"n={n} is below the normal-approximation floor of {MIN_N}")


def prop_ci(x: int, n: int, level: float = 0.95) -> tuple[float, float]:
    """Wald interval for a proportion, in percent, clamped to [0, 100]."""
    _check_counts(x, n)
    p = x / n
    half = z_star(level) * math.sqrt(p * (1 - p) / n)
    return max(0.0, 100 * (p - half)), min(100.0, 100 * (p + half))


def one_sample_prop_test(
    x: int, n: int, p0: float = 0.5, alpha: float = 0.05, level: float = 0.95
) -> TestReport:
    """H0: p = p0 against H_A: p > p0."""
    _check_counts(x, n)
    if not 0 < p0 < 1:
        raise ValueError("p0 must lie strictly between 0 and 1")
    p_hat = x / n
    z = (p_hat - p0) / math.sqrt(p0 * (1 - p0) / n)
    crit = critical_value(alpha)
    lo, hi = prop_ci(x, n, level)
    return TestReport(z=z, p_hat=p_hat, alpha=alpha, reject=z > crit, ci_low=lo, ci_high=hi, p0=p0, critical=crit)


def two_sample_ci(xa: int, na: int, xb: int, nb: int, level: float = 0.95) -> tuple[float, float]:
    """CI of p_A - p_B in percent, unpooled standard error."""
    _check_counts(xa, na)
    _check_counts(xb, nb)
    pa, pb = xa / na, xb / nb
    se = math.sqrt(pa * (1 - pa) / na + pb * (1 - pb) / nb)
    d = pa - pb
    half = z_star(level) * se
    return 100 * (d - half), 100 * (d + half)


def two_sample_prop_test(
    xa: int, na: int, xb: int, nb: int, alpha: float = 0.05, level: float = 0.95
) -> TestReport:
    """H0: p_A = p_B against H_A: p_A > p_B, pooled standard error."""
    _check_counts(xa, na)
    _check_counts(xb, nb)
    pooled = (xa + xb) / (na + nb)
    if pooled in (0.0, 1.0):
        raise ZeroVarianceError("pooled proportion is 0 or 1")
    pa, pb = xa / na, xb / nb
    z = (pa - pb) / math.sqrt(pooled * (1 - pooled) * (1 / na + 1 / nb))
    crit = critical_value(alpha)
    lo, hi = two_sample_ci(xa, na, xb, nb, level)
    return TestReport(z=z, p_hat=pa, p_hat_b=pb, alpha=alpha, reject=z > crit, ci_low=lo, ci_high=hi, critical=crit)


def psr(x: int, n: int, level: float = 0.95) -> float:
    """Pipeline success rate: lower CI bound of the success proportion."""
    return prop_ci(x, n, level)[0] / 100


def median_rem_upper(
    rem_values: Sequence[float], n_boot: int = 10_000, seed=None, level: float = 0.95, chunk: int = 256
) -> float:
    """Upper end of the bootstrap percentile CI of the median."""
    values = np.asarray(rem_values, dtype=float)
    if values.size == 0:
        raise ValueError("no REM values")
    rng = np.random.default_rng(seed)
    medians = np.empty(n_boot)
    for start in range(0, n_boot, chunk):
        stop = min(n_boot, start + chunk)
        idx = rng.integers(0, values.size, size=(stop - start, values.size))
        medians[start:stop] = np.median(values[idx], axis=1)
    upper = float(np.quantile(medians, (1 + level) / 2))
    # never report an upper bound below the point estimate
    return max(upper, float(np.median(values)))


def power_one_sample(p_true: float, p0: float = 0.5, n: int = 10_000, alpha: float = 0.05) -> float:
    """Normal-approximation power of the one-sided one-sample test."""
    if not (0 < p_true < 1 and 0 < p0 < 1):
        raise ValueError("proportions must lie strictly between 0 and 1")
    threshold = p0 + critical_value(alpha) * math.sqrt(p0 * (1 - p0) / n)
    return float(_st.norm.sf((threshold - p_true) / math.sqrt(p_true * (1 - p_true) / n)))

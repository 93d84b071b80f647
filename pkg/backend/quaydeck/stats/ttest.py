"""
Paired comparison statistics for benchmark runs: two-tailed paired t-test,
Pearson correlation and improvement percentages.
"""

import logging
import math
from dataclasses import dataclass
from typing import Dict, Sequence

import numpy as np
from scipy.special import betainc, stdtrit

from quaydeck.exceptions import ZeroVariance

logger = logging.getLogger(__name__)

# Relative spread below which a sample counts as constant
ZERO_SPREAD = 1e-12


@dataclass(frozen=True)
class PairedSample:
    """Index-matched operation times (minutes) of two strategies."""

    a: Sequence[float]
    b: Sequence[float]

    def __post_init__(self):
        object.__setattr__(self, 'a', tuple(float(x) for x in self.a))
        object.__setattr__(self, 'b', tuple(float(x) for x in self.b))
        if len(self.a) != len(self.b):
            raise ValueError(f"Paired samples differ in length ({len(self.a)} vs {len(self.b)})")
        if len(self.a) < 2:
            raise ValueError(f"Paired samples need at least 2 pairs, got {len(self.a)}")

    @property
    def n(self) -> int:
        return len(self.a)


@dataclass(frozen=True)
class TTestResult:
    t_statistic: float
    degrees_of_freedom: int
    p_value: float
    significant: bool
    pearson_r: float
    mean_a: float
    mean_b: float
    sd_a: float
    sd_b: float

    def as_dict(self) -> Dict:
        return {
            't': self.t_statistic,
            'df': self.degrees_of_freedom,
            'p': self.p_value,
            'significant': self.significant,
            'r': self.pearson_r,
            'mean_a': self.mean_a,
            'mean_b': self.mean_b,
            'sd_a': self.sd_a,
            'sd_b': self.sd_b,
        }


def seconds_to_minutes(seconds: float) -> float:
    return seconds / 60.0


def describe(values: Sequence[float]) -> Dict[str, float]:
    """min, max, mean and sample standard deviation."""
    arr = np.asarray(values, dtype=float)
    return {
        'min': float(arr.min()),
        'max': float(arr.max()),
        'mean': float(arr.mean()),
        'sd': float(arr.std(ddof=1)) if arr.size > 1 else 0.0,
    }


def _is_constant(arr: np.ndarray) -> bool:
    scale = max(1.0, float(np.abs(arr).max()))
    return float(arr.std()) <= ZERO_SPREAD * scale


def two_tailed_p(t: float, df: int) -> float:
    """P(|T| > |t|) for Student's t, via the regularized incomplete beta function."""
    if math.isinf(t):
        return 0.0
    return float(min(1.0, max(0.0, betainc(df / 2.0, 0.5, df / (df + t * t)))))


def critical_value(df: int, alpha: float = 0.05) -> float:
    """Two-tailed critical value of Student's t."""
    return float(stdtrit(df, 1.0 - alpha / 2.0))


def pearson_r(sample: PairedSample) -> float:
    """
    Product-moment correlation of the paired sample.

    Raises:
        ZeroVariance: either sample is constant
    """
    a = np.asarray(sample.a)
    b = np.asarray(sample.b)
    if _is_constant(a) or _is_constant(b):
        raise ZeroVariance("Pearson r is undefined for a constant sample")
    da, db = a - a.mean(), b - b.mean()
    r = float(np.dot(da, db) / math.sqrt(float(np.dot(da, da)) * float(np.dot(db, db))))
    return max(-1.0, min(1.0, r))


def paired_t_test(sample: PairedSample, alpha: float = 0.05) -> TTestResult:
    """
    Two-tailed paired t-test on d = b - a; positive t means A is faster.

    Args:
        sample: paired operation times
        alpha: significance level

    Returns:
        TTestResult; pearson_r is NaN when either sample is constant

    Raises:
        ZeroVariance: all differences are equal
    """
    a = np.asarray(sample.a)
    b = np.asarray(sample.b)
    d = b - a
    if _is_constant(d):
        raise ZeroVariance("Paired differences have zero variance")

    n = sample.n
    df = n - 1
    t = float(d.mean() / (d.std(ddof=1) / math.sqrt(n)))
    p = two_tailed_p(t, df)

    try:
        r = pearson_r(sample)
    except ZeroVariance:
        r = math.nan

    return TTestResult(
        t_statistic=t,
        degrees_of_freedom=df,
        p_value=p,
        significant=abs(t) > critical_value(df, alpha),
        pearson_r=r,
        mean_a=float(a.mean()),
        mean_b=float(b.mean()),
        sd_a=float(a.std(ddof=1)),
        sd_b=float(b.std(ddof=1)),
    )


def improvement_pct(baseline_mean: float, candidate_mean: float) -> float:
    if baseline_mean <= 0:
        raise ValueError(f"baseline_mean must be positive, got {baseline_mean}")
    return 100.0 * (baseline_mean - candidate_mean) / baseline_mean

"""Summary analysis of episode traces: die-out detection, oscillation period,
monotonicity with a bounded-inversion tolerance."""
from __future__ import annotations

import numpy as np

from .engine import EpisodeTrace


def first_clear_day(trace: EpisodeTrace) -> int | None:
    """First day whose final tick has zero infected nodes (None if never).

    Once the count hits zero it stays zero (no re-seeding), so this is the
    die-out day.
    """
    daily = trace.daily_last(trace.infected_now)
    clear = np.flatnonzero(daily == 0)
    return int(clear[0]) if clear.size else None


def autocorrelation(series: np.ndarray, max_lag: int) -> np.ndarray:
    """Normalized autocorrelation for lags 0..max_lag of a detrended series."""
    x = np.asarray(series, dtype=float)
    x = x - x.mean()
    denom = float(np.dot(x, x))
    if denom == 0.0:
        return np.zeros(max_lag + 1)
    return np.array([np.dot(x[: x.size - lag], x[lag:]) / denom for lag in range(max_lag + 1)])


def dominant_period_days(daily_series: np.ndarray, min_lag: int = 2,
                         max_lag: int | None = None) -> int | None:
    """Lag (days) of the highest autocorrelation local maximum, or None.

    A lag qualifies as a peak when its autocorrelation is positive and not
    smaller than both neighbors; the strongest such peak wins.
    """
    series = np.asarray(daily_series, dtype=float)
    if max_lag is None:
        max_lag = series.size // 2
    max_lag = min(max_lag, series.size - 1)
    if max_lag < min_lag + 1:
        return None
    ac = autocorrelation(series, max_lag)
    best_lag, best_value = None, 0.0
    for lag in range(min_lag, max_lag):
        if ac[lag] > 0 and ac[lag] >= ac[lag - 1] and ac[lag] >= ac[lag + 1]:
            if ac[lag] > best_value:
                best_lag, best_value = lag, ac[lag]
    return best_lag


def monotone_nondecreasing(values, tolerance_fraction: float = 0.05) -> bool:
    """True when the sequence is non-decreasing, allowing at most one inversion
    no deeper than tolerance_fraction of the value range."""
    arr = np.asarray(values, dtype=float)
    if arr.size < 2:
        return True
    span = float(arr.max() - arr.min())
    drops = np.diff(arr)
    inversions = drops < 0
    if not inversions.any():
        return True
    if inversions.sum() > 1:
        return False
    depth = float(-drops[inversions][0])
    return depth <= tolerance_fraction * span


def monotone_nonincreasing(values, tolerance_fraction: float = 0.05) -> bool:
    return monotone_nondecreasing(-np.asarray(values, dtype=float), tolerance_fraction)

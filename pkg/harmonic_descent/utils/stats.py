from __future__ import annotations
import typing as ty
import math
import numpy as np


def proportion_estimate(hits: int, reps: int) -> ty.Tuple[float, float]:
    "Sample proportion and its binomial standard error"
    p = hits / reps
    return p, math.sqrt(p * (1.0 - p) / reps)


def mean_estimate(samples: np.ndarray) -> ty.Tuple[float, float]:
    "Sample mean and its standard error"
    samples = np.asarray(samples, dtype=float)
    if samples.size < 2:
        return float(samples.mean()), 0.0
    return float(samples.mean()), float(samples.std(ddof=1) / math.sqrt(samples.size))


def pmf_from_counts(values: ty.Iterable[int], support: int) -> np.ndarray:
    """Empirical pmf of integer values in 1..support; entry k-1 holds the
    frequency of k"""
    counts = np.bincount(np.asarray(list(values), dtype=np.int64), minlength=support + 1)
    counts = counts[1 : support + 1]
    return counts / counts.sum()


def total_variation(p: np.ndarray, q: np.ndarray) -> float:
    return 0.5 * float(np.abs(np.asarray(p) - np.asarray(q)).sum())

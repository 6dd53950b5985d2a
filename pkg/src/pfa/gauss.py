"""Standard normal kernel: CDF, density, quantile, two-sided p-values.

Everything tail-sensitive is phrased through Phi(-|x|) so that thresholds
far in the tail (t down to ~1e-9) never suffer cancellation against 1.
"""

from __future__ import annotations

import numpy as np
from scipy.special import ndtr, ndtri

__all__ = ["norm_cdf", "norm_pdf", "norm_quantile", "two_sided_pvalue"]

_SQRT_2PI = np.sqrt(2.0 * np.pi)


def norm_cdf(x):
    """Standard normal CDF; accepts scalars or arrays, saturates at 0/1."""
    return ndtr(x)


def norm_pdf(x):
    """Standard normal density (2*pi)^(-1/2) * exp(-x^2/2)."""
    return np.exp(-0.5 * np.square(x)) / _SQRT_2PI


def norm_quantile(q: float) -> float:
    """Inverse standard normal CDF for q strictly inside (0, 1)."""
    q = float(q)
    if not 0.0 < q < 1.0:
        raise ValueError(f"quantile argument must lie in (0, 1), got {q}")
    return float(ndtri(q))


def two_sided_pvalue(z):
    """Two-sided p-value 2*Phi(-|z|) of a standard normal test statistic."""
    return 2.0 * ndtr(-np.abs(z))

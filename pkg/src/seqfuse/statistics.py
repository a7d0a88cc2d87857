"""Statistical utilities used by the harness and its acceptance tests:
standard-normal cdf/quantile, a one-sample Kolmogorov-Smirnov test against
N(0,1), and mean confidence intervals.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import ConfigError

_SQRT2 = math.sqrt(2.0)
_INV_SQRT_2PI = 1.0 / math.sqrt(2.0 * math.pi)


def normal_cdf(z: float) -> float:
    """Standard normal cdf via the complementary error function."""
    return 0.5 * math.erfc(-z / _SQRT2)


def normal_pdf(z: float) -> float:
    return _INV_SQRT_2PI * math.exp(-0.5 * z * z)


# Acklam's rational approximation of the inverse normal cdf, refined below by
# one Newton step against the erfc-based cdf.
_A = (-3.969683028665376e+01, 2.209460984245205e+02, -2.759285104469687e+02,
      1.383577518672690e+02, -3.066479806614716e+01, 2.506628277459239e+00)
_B = (-5.447609879822406e+01, 1.615858368580409e+02, -1.556989798598866e+02,
      6.680131188771972e+01, -1.328068155288572e+01)
_C = (-7.784894002430293e-03, -3.223964580411365e-01, -2.400758277161838e+00,
      -2.549732539343734e+00, 4.374664141464968e+00, 2.938163982698783e+00)
_D = (7.784695709041462e-03, 3.224671290700398e-01, 2.445134137142996e+00,
      3.754408661907416e+00)


def normal_quantile(p: float) -> float:
    """Inverse standard normal cdf, accurate to ~1e-15 over (0, 1)."""
    if not 0.0 < p < 1.0:
        raise ConfigError(f"quantile needs p in (0,1), got {p!r}")
    p_low = 0.02425
    if p < p_low:
        q = math.sqrt(-2.0 * math.log(p))
        z = ((((((_C[0] * q + _C[1]) * q + _C[2]) * q + _C[3]) * q + _C[4]) * q + _C[5]) /
             ((((_D[0] * q + _D[1]) * q + _D[2]) * q + _D[3]) * q + 1.0))
    elif p <= 1.0 - p_low:
        q = p - 0.5
        r = q * q
        z = ((((((_A[0] * r + _A[1]) * r + _A[2]) * r + _A[3]) * r + _A[4]) * r + _A[5]) * q /
             (((((_B[0] * r + _B[1]) * r + _B[2]) * r + _B[3]) * r + _B[4]) * r + 1.0))
    else:
        q = math.sqrt(-2.0 * math.log(1.0 - p))
        z = -((((((_C[0] * q + _C[1]) * q + _C[2]) * q + _C[3]) * q + _C[4]) * q + _C[5]) /
              ((((_D[0] * q + _D[1]) * q + _D[2]) * q + _D[3]) * q + 1.0))
    # one Newton refinement
    err = normal_cdf(z) - p
    pdf = normal_pdf(z)
    if pdf > 0.0:
        z -= err / pdf
    return z


def kolmogorov_sf(lam: float) -> float:
    """Survival function of the Kolmogorov distribution (asymptotic series)."""
    if lam <= 0.0:
        return 1.0
    if lam < 1.18:
        # theta-function form, accurate for small arguments
        t = math.exp(-math.pi ** 2 / (8.0 * lam * lam))
        cdf = (math.sqrt(2.0 * math.pi) / lam) * (t + t ** 9 + t ** 25 + t ** 49)
        return min(1.0, max(0.0, 1.0 - cdf))
    total = 0.0
    for j in range(1, 101):
        term = math.exp(-2.0 * j * j * lam * lam)
        total += -term if j % 2 == 0 else term
        if term < 1e-16:
            break
    return min(1.0, max(0.0, 2.0 * total))


@dataclass(frozen=True)
class KsResult:
    statistic: float
    p_value: float
    n: int


def ks_test_standard_normal(samples) -> KsResult:
    """One-sample KS test of ``samples`` against N(0,1) with asymptotic p-value."""
    x = np.sort(np.asarray(samples, dtype=float))
    n = x.size
    if n < 100:
        raise ConfigError(f"KS test needs n >= 100, got {n}")
    cdf = 0.5 * np.vectorize(math.erfc)(-x / _SQRT2)
    grid = np.arange(1, n + 1) / n
    d_plus = np.max(grid - cdf)
    d_minus = np.max(cdf - (grid - 1.0 / n))
    d = float(max(d_plus, d_minus))
    return KsResult(d, kolmogorov_sf(math.sqrt(n) * d), n)


def mean_ci95(samples) -> tuple[float, float]:
    """Sample mean and its 95% half-width (1.96 * sd / sqrt(n))."""
    x = np.asarray(samples, dtype=float)
    n = x.size
    if n == 0:
        raise ConfigError("empty sample")
    m = float(np.mean(x))
    if n == 1:
        return m, 0.0
    return m, 1.96 * float(np.std(x, ddof=1)) / math.sqrt(n)

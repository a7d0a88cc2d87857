"""Quantizer ranges and sampling thresholds.

Quantizer spans phi_k / theta_k are empirical 99th percentiles of the
relevant increment magnitudes.  Level-trigger thresholds d_k / e_k are found
by bisection so that the mean first-passage time of the local process matches
a target sampling interval; every bisection evaluation reuses one pre-drawn
bundle of increment paths (common random numbers), which makes the
interval-vs-threshold map monotone.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import CalibrationError, ConfigError
from .signal_model import Awgn, SensorModel, draw_channel_gain, draw_observation, local_increments

PERCENTILE = 99.0


@dataclass(frozen=True)
class VProcess:
    """Calibrate against the observed-correlation increments at parameter x."""

    x: complex


@dataclass(frozen=True)
class UProcess:
    """Calibrate against the observed-information increments."""


def worst_case_x(bound: float) -> complex:
    """Calibration point on the magnitude bound, split evenly between components."""
    c = bound / math.sqrt(2.0)
    return complex(c, c)


def _draw_v_increments(sensor: SensorModel, x: complex, n: int, rng) -> np.ndarray:
    h = draw_channel_gain(sensor, rng, size=n)
    y = draw_observation(x, h, sensor.noise_variance, rng)
    return local_increments(y, h, sensor.noise_variance).v_inc


def _draw_u_increments(sensor: SensorModel, n: int, rng) -> np.ndarray:
    h = draw_channel_gain(sensor, rng, size=n)
    return 2.0 * np.abs(h) ** 2 / sensor.noise_variance


def percentile_phi(sensor: SensorModel, x_bound: float, n: int, rng) -> float:
    """99th percentile of |v_inc| with the parameter at the worst case
    |x| = bound.  Spans are a design-time choice driven by the uncertainty
    bound; only the sampling thresholds may be re-anchored at the realized
    message rates."""
    if n < 10_000:
        raise ConfigError("percentile estimation needs n >= 10^4")
    v = _draw_v_increments(sensor, worst_case_x(x_bound), n, rng)
    return float(np.percentile(np.abs(v), PERCENTILE))


def mean_trigger_count(process, sensor: SensorModel, threshold: float, horizon: int,
                       rng, n_paths: int = 2000) -> float:
    """Mean number of level-trigger firings within the first ``horizon`` steps.

    Used to size final-block bit budgets: the fixed-time and singly
    sequential schemes spend the same average number of bits a level-trigger
    stream would have spent by the stop time.
    """
    if horizon < 1:
        raise ConfigError("horizon must be >= 1")
    if isinstance(process, VProcess):
        inc = _draw_v_increments(sensor, process.x, n_paths * horizon, rng)
        crossed = lambda diff: np.abs(diff) >= threshold
    elif isinstance(process, UProcess):
        inc = _draw_u_increments(sensor, n_paths * horizon, rng)
        crossed = lambda diff: diff >= threshold
    else:
        raise ConfigError(f"unknown process {process!r}")
    cum = np.cumsum(inc.reshape(n_paths, horizon), axis=1)
    ref = np.zeros(n_paths)
    pos = np.zeros(n_paths, dtype=np.int64)
    counts = np.zeros(n_paths, dtype=np.int64)
    active = np.ones(n_paths, dtype=bool)
    cols = np.arange(horizon)
    while active.any():
        hit = crossed(cum - ref[:, None]) & (cols[None, :] >= pos[:, None])
        has = hit.any(axis=1) & active
        if not has.any():
            break
        idx = np.argmax(hit, axis=1)
        rows = np.nonzero(has)[0]
        counts[rows] += 1
        ref[rows] = cum[rows, idx[rows]]
        pos[rows] = idx[rows] + 1
        active = has
    return float(counts.mean())


def percentile_theta(sensor: SensorModel, n: int, rng) -> float:
    """99th percentile of u_inc; degenerate (exact) for a fixed-gain channel."""
    if isinstance(sensor.channel, Awgn):
        return 2.0 * abs(sensor.channel.gain) ** 2 / sensor.noise_variance
    if n < 10_000:
        raise ConfigError("percentile estimation needs n >= 10^4")
    return float(np.percentile(_draw_u_increments(sensor, n, rng), PERCENTILE))


class _PathBundle:
    """Fixed bundle of increment paths, extended on demand.

    Extending appends columns, so the first-passage time of any path that has
    already crossed a given threshold never changes; evaluations at all
    thresholds therefore stay mutually consistent.
    """

    def __init__(self, draw, n_paths: int, init_len: int):
        self._draw = draw
        self.n_paths = n_paths
        self.paths = draw(n_paths, max(16, init_len))

    def extend(self):
        extra = self._draw(self.n_paths, self.paths.shape[1])
        self.paths = np.concatenate([self.paths, extra], axis=1)

    def mean_first_passage(self, crossed) -> float:
        """Mean 1-based index of the first step where ``crossed(cumsum)`` holds."""
        for _ in range(64):
            cum = np.cumsum(self.paths, axis=1)
            hit = crossed(cum)
            if hit.any(axis=1).all():
                idx = np.argmax(hit, axis=1)
                return float(np.mean(idx + 1))
            if self.paths.shape[1] > 1 << 24:
                break
            self.extend()
        raise CalibrationError("first passage not reached on simulated paths")


def calibrate_threshold(process, sensor: SensorModel, target_interval: float,
                        rel_tol: float = 0.02, rng=None, n_paths: int = 8000) -> float:
    """Threshold whose mean inter-sample time matches ``target_interval``.

    V-process passages exit the symmetric band (-d, d); U-process passages
    reach a single upper threshold e.  The bracket is grown geometrically (at
    most 60 doublings each way), then bisection runs to bracket convergence
    and keeps the evaluation closest to the target, so the returned threshold
    is not biased toward a tolerance edge.
    """
    if target_interval < 1.0:
        raise ConfigError("target_interval must be >= 1")
    if not 0.0 < rel_tol <= 0.1:
        raise ConfigError("rel_tol must lie in (0, 0.1]")
    if rng is None:
        raise ConfigError("calibration needs an explicit random stream")
    if n_paths < 2000:
        raise ConfigError("need at least 2000 first-passage paths")

    if isinstance(process, VProcess):
        x = process.x
        draw = lambda m, n: _draw_v_increments(sensor, x, m * n, rng).reshape(m, n)
        crossed = lambda cum, th: np.abs(cum) >= th
    elif isinstance(process, UProcess):
        draw = lambda m, n: _draw_u_increments(sensor, m * n, rng).reshape(m, n)
        crossed = lambda cum, th: cum >= th
    else:
        raise ConfigError(f"unknown process {process!r}")

    init_len = int(4 * target_interval) + 16
    bundle = _PathBundle(draw, n_paths, init_len)
    base = float(np.mean(np.abs(bundle.paths)))
    if not base > 0.0:
        raise CalibrationError("increments have zero scale")

    def achieved(th: float) -> float:
        return bundle.mean_first_passage(lambda cum: crossed(cum, th))

    lo = hi = base * target_interval
    tol = rel_tol * target_interval
    for _ in range(61):
        if achieved(lo) <= target_interval:
            break
        lo /= 2.0
    else:
        raise CalibrationError("cannot bracket target interval from below")
    for _ in range(61):
        if achieved(hi) >= target_interval:
            break
        hi *= 2.0
    else:
        raise CalibrationError("cannot bracket target interval from above")

    best_th = hi
    best_val = achieved(hi)
    for _ in range(60):
        mid = 0.5 * (lo + hi)
        m = achieved(mid)
        if abs(m - target_interval) < abs(best_val - target_interval):
            best_th, best_val = mid, m
        if m < target_interval:
            lo = mid
        else:
            hi = mid
        if hi - lo <= 1e-9 * max(1.0, hi):
            break
    if abs(best_val - target_interval) <= tol:
        return best_th
    raise CalibrationError(
        f"bisection stalled: achieved {best_val:.4f} vs target {target_interval:.4f}")


def measure_mean_interval(process, sensor: SensorModel, threshold: float, rng,
                          n_paths: int = 10_000) -> float:
    """Validation-side estimate of the mean inter-sample time at a threshold."""
    if isinstance(process, VProcess):
        x = process.x
        draw = lambda m, n: _draw_v_increments(sensor, x, m * n, rng).reshape(m, n)
        crossed = lambda cum: np.abs(cum) >= threshold
    elif isinstance(process, UProcess):
        draw = lambda m, n: _draw_u_increments(sensor, m * n, rng).reshape(m, n)
        crossed = lambda cum: cum >= threshold
    else:
        raise ConfigError(f"unknown process {process!r}")
    bundle = _PathBundle(draw, n_paths, 32)
    return bundle.mean_first_passage(crossed)


@dataclass(frozen=True)
class CalibrationReport:
    """Per-sensor quantizer spans and thresholds with validation diagnostics."""

    phi: tuple
    theta: tuple
    d: tuple | None
    e: tuple | None
    achieved_mean_interval_v: tuple | None
    achieved_mean_interval_u: tuple | None
    sample_count: int

    def to_text(self) -> str:
        def fmt(name, values):
            if values is None:
                return f"{name}="
            return name + "=" + ",".join(format(v, ".12g") for v in values)

        lines = [
            fmt("phi", self.phi),
            fmt("theta", self.theta),
            fmt("d", self.d),
            fmt("e", self.e),
            fmt("achieved_mean_interval_v", self.achieved_mean_interval_v),
            fmt("achieved_mean_interval_u", self.achieved_mean_interval_u),
            f"sample_count={self.sample_count}",
        ]
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "CalibrationReport":
        fields = {}
        for line in text.splitlines():
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            key, _, raw = line.partition("=")
            fields[key.strip()] = raw.strip()
        def tup(key):
            raw = fields.get(key, "")
            if not raw:
                return None
            return tuple(float(v) for v in raw.split(","))
        return cls(phi=tup("phi"), theta=tup("theta"), d=tup("d"), e=tup("e"),
                   achieved_mean_interval_v=tup("achieved_mean_interval_v"),
                   achieved_mean_interval_u=tup("achieved_mean_interval_u"),
                   sample_count=int(fields.get("sample_count", "0")))

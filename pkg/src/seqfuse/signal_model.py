"""Observation model, channel draws, sufficient-statistic increments, and the
centralized sequential estimator.

The model per sensor k and time t is y = x*h + w with complex Gaussian noise
w of total variance sigma_k^2 (each real component has variance sigma_k^2/2).
All estimation runs on two running sums per sensor:

    v_inc = 2*Re(conj(h)*y) / sigma^2      (observed-correlation increment)
    u_inc = 2*|h|^2 / sigma^2              (observed-Fisher-information increment)

The centralized estimate of Re(x) is V/U; the run stops once U reaches the
target information level.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import ConfigError, NonTerminatingError
from .rng import sensor_generators

DEFAULT_STEP_CAP = 10_000_000


@dataclass(frozen=True)
class Awgn:
    """Fixed channel gain, identical at every observation time."""

    gain: complex

    def __post_init__(self):
        g = abs(complex(self.gain))
        if not (0.0 < g < math.inf):
            raise ConfigError(f"Awgn gain must satisfy 0 < |h| < inf, got {self.gain!r}")


@dataclass(frozen=True)
class Rayleigh:
    """Rayleigh-fading gain: Re and Im are i.i.d. N(0, gain_variance/2)."""

    gain_variance: float

    def __post_init__(self):
        if not (self.gain_variance > 0.0 and math.isfinite(self.gain_variance)):
            raise ConfigError(f"Rayleigh gain_variance must be positive, got {self.gain_variance!r}")


@dataclass(frozen=True)
class SensorModel:
    """Per-sensor noise level and channel description."""

    noise_variance: float
    channel: Awgn | Rayleigh

    def __post_init__(self):
        if not (self.noise_variance > 0.0 and math.isfinite(self.noise_variance)):
            raise ConfigError(f"noise_variance must be positive, got {self.noise_variance!r}")
        if not isinstance(self.channel, (Awgn, Rayleigh)):
            raise ConfigError(f"unknown channel model: {self.channel!r}")


@dataclass(frozen=True)
class GroundTruth:
    """True parameter with its configured magnitude bound.

    Both components must be nonzero and finite, and |x| may not exceed the
    bound.  The bound itself is attained by the worst-case calibration point,
    so the comparison is inclusive.
    """

    x: complex
    bound: float

    def __post_init__(self):
        xr, xi = self.x.real, self.x.imag
        if not (0.0 < abs(xr) < math.inf and 0.0 < abs(xi) < math.inf):
            raise ConfigError(f"ground truth needs nonzero finite components, got {self.x!r}")
        if not (self.bound > 0.0 and abs(self.x) <= self.bound * (1.0 + 1e-12)):
            raise ConfigError(f"|x|={abs(self.x):g} exceeds bound {self.bound:g}")


@dataclass(frozen=True)
class LocalIncrements:
    """One time step's contribution to the local running sums."""

    v_inc: float
    vbar_inc: float
    u_inc: float


def draw_channel_gain(model: SensorModel, rng: np.random.Generator, size=None):
    """Draw the channel gain(s) for one sensor.

    AWGN returns the fixed gain every call; Rayleigh draws fresh gains with
    independent N(0, gain_variance/2) components.  With ``size`` given the
    result is a complex array.
    """
    ch = model.channel
    if isinstance(ch, Awgn):
        if size is None:
            return complex(ch.gain)
        return np.full(size, complex(ch.gain), dtype=np.complex128)
    s = math.sqrt(ch.gain_variance / 2.0)
    if size is None:
        return complex(rng.normal(0.0, s), rng.normal(0.0, s))
    return s * (rng.standard_normal(size) + 1j * rng.standard_normal(size))


def draw_observation(x, h, noise_variance: float, rng: np.random.Generator):
    """Return y = x*h + w with complex Gaussian noise of total variance
    ``noise_variance`` (each component N(0, noise_variance/2)).

    A pure formula: assumption checks on x live at configuration load, not here.
    """
    if not noise_variance > 0.0:
        raise ConfigError("noise_variance must be positive")
    s = math.sqrt(noise_variance / 2.0)
    if np.ndim(h) == 0:
        w = complex(rng.normal(0.0, s), rng.normal(0.0, s))
        return complex(x) * complex(h) + w
    h = np.asarray(h)
    w = s * (rng.standard_normal(h.shape) + 1j * rng.standard_normal(h.shape))
    return x * h + w


def local_increments(y, h, noise_variance: float) -> LocalIncrements:
    """Per-step summands of the local V, V-bar, and U processes.

    v_inc = 2*Re(h* y)/sigma^2, vbar_inc = 2*Im(h* y)/sigma^2,
    u_inc = 2*|h|^2/sigma^2.  Works elementwise on arrays.
    """
    hy = np.conj(h) * y if np.ndim(h) else complex(h).conjugate() * complex(y)
    scale = 2.0 / noise_variance
    if np.ndim(hy) == 0:
        return LocalIncrements(scale * hy.real, scale * hy.imag, scale * abs(complex(h)) ** 2)
    return LocalIncrements(scale * hy.real, scale * hy.imag, scale * np.abs(h) ** 2)


def centralized_estimate(v: float, u: float) -> float:
    """MLE of Re(x) from the accumulated statistics: V/U."""
    if not u > 0.0:
        raise ConfigError(f"degenerate Fisher information: U={u!r}")
    return v / u


def _u_rate(sensors) -> float:
    rate = 0.0
    for s in sensors:
        if not isinstance(s.channel, Awgn):
            raise ConfigError("stopping time random under fading")
        rate += 2.0 * abs(s.channel.gain) ** 2 / s.noise_variance
    return rate


def awgn_stopping_time(target_info: float, sensors) -> int:
    """Deterministic stop time under fixed gains: smallest t with t*rate >= target."""
    if not target_info > 0.0:
        raise ConfigError("target_info must be positive")
    rate = _u_rate(sensors)
    t = math.ceil(target_info / rate)
    # guard the ceiling against float drift on exact divisions
    while t > 1 and (t - 1) * rate >= target_info:
        t -= 1
    while t * rate < target_info:
        t += 1
    return t


class IncrementStream:
    """Buffered per-sensor increment source with a fixed internal block size.

    Draw order within a block is fixed (gains first, then noise), and blocks
    always have BLOCK steps, so a stream produces identical values no matter
    how callers chunk their reads.  A single stream must not be shared across
    concurrent consumers.
    """

    BLOCK = 128

    def __init__(self, x: complex, sensor: SensorModel, rng: np.random.Generator,
                 keep_raw: bool = False):
        self.x = complex(x)
        self.sensor = sensor
        self.rng = rng
        self.keep_raw = keep_raw
        self._v = np.empty(0)
        self._u = np.empty(0)
        self._y = np.empty(0, dtype=np.complex128)
        self._h = np.empty(0, dtype=np.complex128)
        self._pos = 0

    def _refill(self):
        n = self.BLOCK
        rng = self.rng
        ch = self.sensor.channel
        if isinstance(ch, Awgn):
            h = np.full(n, complex(ch.gain), dtype=np.complex128)
        else:
            s = math.sqrt(ch.gain_variance / 2.0)
            h = s * rng.standard_normal(n) + 1j * (s * rng.standard_normal(n))
        sw = math.sqrt(self.sensor.noise_variance / 2.0)
        w = sw * rng.standard_normal(n) + 1j * (sw * rng.standard_normal(n))
        y = self.x * h + w
        hy = np.conj(h) * y
        scale = 2.0 / self.sensor.noise_variance
        v = scale * hy.real
        u = scale * np.abs(h) ** 2
        keep = self._v[self._pos:]
        self._v = np.concatenate([keep, v])
        self._u = np.concatenate([self._u[self._pos:], u])
        if self.keep_raw:
            self._y = np.concatenate([self._y[self._pos:], y])
            self._h = np.concatenate([self._h[self._pos:], h])
        self._pos = 0

    def take(self, n: int):
        """Return the next n (v_inc, u_inc) arrays; with keep_raw also (y, h)."""
        while len(self._v) - self._pos < n:
            self._refill()
        i, j = self._pos, self._pos + n
        self._pos = j
        if self.keep_raw:
            return self._v[i:j], self._u[i:j], self._y[i:j], self._h[i:j]
        return self._v[i:j], self._u[i:j]


def _cumsum_from(prev: float, block: np.ndarray) -> np.ndarray:
    # sequential accumulation starting at prev; rounding matches a scalar loop
    return np.cumsum(np.concatenate(([prev], block)))[1:]


@dataclass(frozen=True)
class CentralizedRun:
    stop_time: int
    estimate: float
    fisher: float


def run_centralized(truth: GroundTruth, sensors, target_info: float, seed: int | None = None,
                    streams=None, step_cap: int = DEFAULT_STEP_CAP) -> CentralizedRun:
    """Run the centralized sequential MLE until U_t >= target_info.

    Accumulates V_t and U_t over all sensors on per-sensor streams (built from
    ``seed`` unless ``streams`` is supplied) and returns the first time the
    observed information reaches the target, together with V/U at that time.
    """
    if not target_info > 0.0:
        raise ConfigError("target_info must be positive")
    if streams is None:
        if seed is None:
            raise ConfigError("need seed or streams")
        gens = sensor_generators(seed, len(sensors))
        streams = [IncrementStream(truth.x, s, g) for s, g in zip(sensors, gens)]
    v_prev = 0.0
    u_prev = 0.0
    t_base = 0
    block = IncrementStream.BLOCK
    while t_base < step_cap:
        v_tot = np.zeros(block)
        u_tot = np.zeros(block)
        for st in streams:
            v, u = st.take(block)
            v_tot += v
            u_tot += u
        u_cum = _cumsum_from(u_prev, u_tot)
        v_cum = _cumsum_from(v_prev, v_tot)
        hit = np.nonzero(u_cum >= target_info)[0]
        if hit.size:
            i = int(hit[0])
            stop = t_base + i + 1
            return CentralizedRun(stop, centralized_estimate(float(v_cum[i]), float(u_cum[i])),
                                  float(u_cum[i]))
        v_prev = float(v_cum[-1])
        u_prev = float(u_cum[-1])
        t_base += block
    raise NonTerminatingError(f"non-terminating run: no stop within {step_cap} steps")

"""Sensor-side and fusion-center state machines for the seven estimation
schemes, plus the bit-exact message codec.

Scheme overview (all estimate Re(x) as a ratio of accumulated statistics):

==========  =====================  =====================  ==================
kind        V transport            U transport            stop rule
==========  =====================  =====================  ==================
dmle        final block (R_k bits) none (U deterministic) fixed time
lt-dmle     level-triggered        none (U deterministic) fixed time
lt-sdmle    final block            level-triggered        approx U >= target
lt-dsdmle   level-triggered        level-triggered        approx U >= target
u-sdmle     final block            uniform, period T_U    approx U >= target
u-dsdmle    uniform, period T_V    uniform, period T_U    approx U >= target
obs-mle     4 sign bits per step   (exact-U side channel) exact U >= target
==========  =====================  =====================  ==================

A "centralized" control kind runs the unquantized estimator through the same
trial harness for benchmark curves.

Same-instant ordering: within a time step, messages are generated and applied
in ascending sensor id with U before V, and the stop check runs after the
whole step.
"""

from __future__ import annotations

import enum
import struct
from dataclasses import dataclass, field
from functools import lru_cache

from .errors import ConfigError, ProtocolError
from .quantization import (
    MidRiserQuantizer,
    QuantIndex,
    dequantize,
    final_v_quantizer,
    lt_u_overshoot_quantizer,
    lt_v_overshoot_quantizer,
    pack_fields,
    quantize,
    uniform_u_quantizer,
    uniform_v_quantizer,
    unpack_fields,
)
from .signal_model import LocalIncrements
from .statistics import normal_quantile


class SchemeKind(str, enum.Enum):
    CENTRALIZED = "centralized"
    DMLE = "dmle"
    LT_DMLE = "lt-dmle"
    LT_SDMLE = "lt-sdmle"
    LT_DSDMLE = "lt-dsdmle"
    U_SDMLE = "u-sdmle"
    U_DSDMLE = "u-dsdmle"
    OBS_MLE = "obs-mle"


_LT_V_KINDS = {SchemeKind.LT_DMLE, SchemeKind.LT_DSDMLE}
_LT_U_KINDS = {SchemeKind.LT_SDMLE, SchemeKind.LT_DSDMLE}
_UNI_U_KINDS = {SchemeKind.U_SDMLE, SchemeKind.U_DSDMLE}
_UNI_V_KINDS = {SchemeKind.U_DSDMLE}
_FINAL_V_KINDS = {SchemeKind.DMLE, SchemeKind.LT_SDMLE, SchemeKind.U_SDMLE}
_EXACT_U_STOP = {SchemeKind.CENTRALIZED, SchemeKind.DMLE, SchemeKind.LT_DMLE, SchemeKind.OBS_MLE}


def _positive_tuple(name, values):
    t = tuple(float(v) for v in values)
    if any(not v > 0.0 for v in t):
        raise ConfigError(f"{name} entries must be positive, got {t}")
    return t


@dataclass(frozen=True)
class SchemeConfig:
    """Protocol parameters for one scheme instance.

    Per-sensor fields (d, e, phi, theta, bits_final) are tuples indexed by
    sensor id.  Fields a kind does not use may be None, but any value given
    must still validate.
    """

    kind: SchemeKind
    target_info: float
    d: tuple | None = None
    e: tuple | None = None
    period_u: int | None = None
    period_v: int | None = None
    bits_v: int | None = None
    bits_u: int | None = None
    bits_final: tuple | None = None
    phi: tuple | None = None
    theta: tuple | None = None
    obs_theta: float | None = None
    obs_sigma: float | None = None

    def __post_init__(self):
        if not self.target_info > 0.0:
            raise ConfigError("target_info must be positive")
        for name in ("d", "e", "phi", "theta"):
            v = getattr(self, name)
            if v is not None:
                object.__setattr__(self, name, _positive_tuple(name, v))
        for name in ("period_u", "period_v"):
            v = getattr(self, name)
            if v is not None and (not isinstance(v, int) or v < 1):
                raise ConfigError(f"{name} must be an integer >= 1, got {v!r}")
        for name in ("bits_v", "bits_u"):
            v = getattr(self, name)
            if v is not None and (not isinstance(v, int) or v < 1):
                raise ConfigError(f"{name} must be an integer >= 1, got {v!r}")
        if self.bits_final is not None:
            bf = tuple(int(b) for b in self.bits_final)
            if any(b < 1 for b in bf):
                raise ConfigError(f"bits_final entries must be >= 1, got {bf}")
            object.__setattr__(self, "bits_final", bf)
        for name in ("obs_theta", "obs_sigma"):
            v = getattr(self, name)
            if v is not None and not v > 0.0:
                raise ConfigError(f"{name} must be positive, got {v!r}")
        self._require()

    def _require(self):
        k = self.kind
        need = []
        if k in _LT_V_KINDS:
            need += ["d", "phi", "bits_v"]
        if k in _LT_U_KINDS:
            need += ["e", "theta", "bits_u"]
        if k in _UNI_U_KINDS:
            need += ["period_u", "theta", "bits_u"]
        if k in _UNI_V_KINDS:
            need += ["period_v", "phi", "bits_v"]
        if k in _FINAL_V_KINDS:
            need += ["phi", "bits_final"]
        if k is SchemeKind.OBS_MLE:
            need += ["obs_theta", "obs_sigma"]
        missing = [n for n in need if getattr(self, n) is None]
        if missing:
            raise ConfigError(f"{k.value} requires {missing}")

    # transport predicates used by the harness
    @property
    def uses_lt_v(self):
        return self.kind in _LT_V_KINDS

    @property
    def uses_lt_u(self):
        return self.kind in _LT_U_KINDS

    @property
    def uses_uni_u(self):
        return self.kind in _UNI_U_KINDS

    @property
    def uses_uni_v(self):
        return self.kind in _UNI_V_KINDS

    @property
    def uses_final_v(self):
        return self.kind in _FINAL_V_KINDS

    @property
    def stops_on_exact_u(self):
        return self.kind in _EXACT_U_STOP


@dataclass
class SensorState:
    """Running local sums and the last-sample anchors for one sensor."""

    sensor: int
    v_acc: float = 0.0
    u_acc: float = 0.0
    v_ref: float = 0.0
    u_ref: float = 0.0
    msg_count_v: int = 0
    msg_count_u: int = 0


@dataclass(frozen=True)
class VLt:
    sensor: int
    t: int
    sign: int
    q_index: QuantIndex


@dataclass(frozen=True)
class ULt:
    sensor: int
    t: int
    p_index: QuantIndex


@dataclass(frozen=True)
class VUni:
    sensor: int
    t: int
    index: QuantIndex


@dataclass(frozen=True)
class UUni:
    sensor: int
    t: int
    index: QuantIndex


@dataclass(frozen=True)
class VFinal:
    sensor: int
    t: int
    index: QuantIndex


@dataclass(frozen=True)
class ObsBits:
    """Sign bits (1 for >= 0) of Re y, Im y, Re h, Im h."""

    sensor: int
    t: int
    re_y: int
    im_y: int
    re_h: int
    im_h: int


Message = VLt | ULt | VUni | UUni | VFinal | ObsBits


@dataclass
class FcState:
    """Fusion-center accumulators and message accounting."""

    n_sensors: int
    v_tilde: float = 0.0
    u_tilde: float = 0.0
    u_exact: float = 0.0
    n_agree: int = 0
    v_final: list = field(default_factory=list)
    n_msgs_v: list = field(default_factory=list)
    n_msgs_u: list = field(default_factory=list)
    bits_v: int = 0
    bits_u: int = 0
    bits_final: int = 0
    stopped_at: int | None = None

    def __post_init__(self):
        if not self.v_final:
            self.v_final = [None] * self.n_sensors
        if not self.n_msgs_v:
            self.n_msgs_v = [0] * self.n_sensors
        if not self.n_msgs_u:
            self.n_msgs_u = [0] * self.n_sensors

    @property
    def bits_received(self) -> int:
        return self.bits_v + self.bits_u + self.bits_final


# quantizer caches; configs and their scalar fields are immutable
@lru_cache(maxsize=4096)
def _ltv_q(phi: float, bits_v: int) -> MidRiserQuantizer:
    return lt_v_overshoot_quantizer(phi, bits_v)


@lru_cache(maxsize=4096)
def _ltu_q(theta: float, bits_u: int) -> MidRiserQuantizer:
    return lt_u_overshoot_quantizer(theta, bits_u)


@lru_cache(maxsize=4096)
def _uniu_q(theta: float, period: int, bits_u: int) -> MidRiserQuantizer:
    return uniform_u_quantizer(theta, period, bits_u)


@lru_cache(maxsize=4096)
def _univ_q(phi: float, period: int, bits_v: int) -> MidRiserQuantizer:
    return uniform_v_quantizer(phi, period, bits_v)


@lru_cache(maxsize=4096)
def _final_q(phi: float, stop_time: int, bits: int) -> MidRiserQuantizer:
    return final_v_quantizer(phi, stop_time, bits)


def sensor_step(config: SchemeConfig, state: SensorState, inc: LocalIncrements, t: int,
                observation=None) -> list:
    """Advance one sensor by one time step and return its outgoing messages.

    Accumulators absorb the increment first; triggers compare against the
    last-sample anchors and, when they fire, re-anchor at the current
    accumulator value.  At most one U-message and one V-message are produced,
    in that order.
    """
    k = state.sensor
    state.v_acc += inc.v_inc
    state.u_acc += inc.u_inc
    out = []
    if config.uses_lt_u:
        gap = state.u_acc - state.u_ref
        if gap >= config.e[k]:
            p = gap - config.e[k]
            assert p < inc.u_inc  # overshoot bounded by the last sample
            out.append(ULt(k, t, quantize(_ltu_q(config.theta[k], config.bits_u), p)))
            state.u_ref = state.u_acc
            state.msg_count_u += 1
    elif config.uses_uni_u:
        if t % config.period_u == 0:
            val = state.u_acc - state.u_ref
            out.append(UUni(k, t, quantize(_uniu_q(config.theta[k], config.period_u,
                                                   config.bits_u), val)))
            state.u_ref = state.u_acc
            state.msg_count_u += 1
    if config.uses_lt_v:
        diff = state.v_acc - state.v_ref
        if diff >= config.d[k] or diff <= -config.d[k]:
            sign = 1 if diff > 0 else -1
            q_val = abs(diff) - config.d[k]
            assert q_val < abs(inc.v_inc)
            out.append(VLt(k, t, sign, quantize(_ltv_q(config.phi[k], config.bits_v), q_val)))
            state.v_ref = state.v_acc
            state.msg_count_v += 1
    elif config.uses_uni_v:
        if t % config.period_v == 0:
            val = state.v_acc - state.v_ref
            out.append(VUni(k, t, quantize(_univ_q(config.phi[k], config.period_v,
                                                   config.bits_v), val)))
            state.v_ref = state.v_acc
            state.msg_count_v += 1
    if config.kind is SchemeKind.OBS_MLE:
        if observation is None:
            raise ConfigError("obs-mle sensor_step needs the raw (y, h) observation")
        y, h = observation
        out.append(ObsBits(k, t, int(y.real >= 0), int(y.imag >= 0),
                           int(h.real >= 0), int(h.imag >= 0)))
    return out


def payload_bits(config: SchemeConfig, msg) -> int:
    if isinstance(msg, VLt):
        return config.bits_v
    if isinstance(msg, ULt):
        return config.bits_u
    if isinstance(msg, VUni):
        return config.bits_v
    if isinstance(msg, UUni):
        return config.bits_u
    if isinstance(msg, VFinal):
        return config.bits_final[msg.sensor]
    if isinstance(msg, ObsBits):
        return 4
    raise ProtocolError(f"unknown message {msg!r}")


def fc_apply(config: SchemeConfig, fc: FcState, msg) -> None:
    """Decode one message into the fusion-center state.

    Only the final-block message may arrive once the state is stopped; the
    final block is part of the stop-time handshake and its quantizer range
    depends on the realized stop time.
    """
    if fc.stopped_at is not None and not isinstance(msg, VFinal):
        raise ProtocolError("message applied after stop")
    k = msg.sensor
    if not 0 <= k < fc.n_sensors:
        raise ProtocolError(f"sensor id {k} out of range")
    if isinstance(msg, VLt):
        fc.v_tilde += msg.sign * (config.d[k] + dequantize(_ltv_q(config.phi[k], config.bits_v),
                                                           msg.q_index))
        fc.n_msgs_v[k] += 1
        fc.bits_v += config.bits_v
    elif isinstance(msg, ULt):
        fc.u_tilde += config.e[k] + dequantize(_ltu_q(config.theta[k], config.bits_u), msg.p_index)
        fc.n_msgs_u[k] += 1
        fc.bits_u += config.bits_u
    elif isinstance(msg, VUni):
        fc.v_tilde += dequantize(_univ_q(config.phi[k], config.period_v, config.bits_v), msg.index)
        fc.n_msgs_v[k] += 1
        fc.bits_v += config.bits_v
    elif isinstance(msg, UUni):
        fc.u_tilde += dequantize(_uniu_q(config.theta[k], config.period_u, config.bits_u),
                                 msg.index)
        fc.n_msgs_u[k] += 1
        fc.bits_u += config.bits_u
    elif isinstance(msg, VFinal):
        if fc.stopped_at is None:
            raise ProtocolError("final block before stop")
        fc.v_final[k] = dequantize(_final_q(config.phi[k], fc.stopped_at,
                                            config.bits_final[k]), msg.index)
        fc.bits_final += config.bits_final[k]
    elif isinstance(msg, ObsBits):
        fc.n_agree += int(msg.re_y == msg.re_h) + int(msg.im_y == msg.im_h)
        fc.bits_v += 4
    else:
        raise ProtocolError(f"unknown message {msg!r}")


def fc_should_stop(config: SchemeConfig, fc: FcState, t: int) -> bool:
    """Stop decision, evaluated once per step after all messages are applied.

    Schemes with deterministic or side-channel information compare the exact
    U_t to the target (under fixed gains this reproduces the closed-form stop
    time); the fading schemes compare their reconstruction of U.
    """
    if config.stops_on_exact_u:
        return fc.u_exact >= config.target_info
    return fc.u_tilde >= config.target_info


def obs_mle_estimate(n_agree: int, sensor_count: int, t: int, sigma: float, theta: float) -> float:
    """Invert the sign-agreement fraction through the Gaussian quantile.

    The count is clamped to [1, 2Kt-1] so the quantile stays finite at the
    extremes.
    """
    if t < 1 or sensor_count < 1:
        raise ConfigError("need t >= 1 and sensor_count >= 1")
    total = 2 * sensor_count * t
    if not 0 <= n_agree <= total:
        raise ConfigError(f"agreement count {n_agree} outside [0, {total}]")
    n = min(max(n_agree, 1), total - 1)
    return (2.0 * sigma / theta) * normal_quantile(n / total)


def finalize(config: SchemeConfig, fc: FcState, sensor_states, stop_time: int) -> float:
    """Produce the final estimate once the run has stopped.

    Final-block schemes quantize each sensor's V total over
    [-stop_time*phi_k, stop_time*phi_k] with R_k bits and divide by the exact
    (fixed-gain schemes) or reconstructed information.
    """
    if fc.stopped_at is None:
        raise ProtocolError("finalize before stop")
    kind = config.kind
    if kind is SchemeKind.CENTRALIZED:
        raise ConfigError("centralized control bypasses fusion-center finalize")
    if kind is SchemeKind.OBS_MLE:
        return obs_mle_estimate(fc.n_agree, fc.n_sensors, stop_time,
                                config.obs_sigma, config.obs_theta)
    if config.uses_final_v:
        for st in sensor_states:
            k = st.sensor
            q = _final_q(config.phi[k], stop_time, config.bits_final[k])
            fc_apply(config, fc, VFinal(k, stop_time, quantize(q, st.v_acc)))
        v = sum(fc.v_final)
    else:
        v = fc.v_tilde
    u = fc.u_exact if kind in (SchemeKind.DMLE, SchemeKind.LT_DMLE) else fc.u_tilde
    if not u > 0.0:
        raise ProtocolError("divide-by-zero Fisher approximation")
    return v / u


# ---------------------------------------------------------------------------
# wire format: frame = [kind: 3 bits][sensor: 8 bits][payload], big-endian.
# The time index is carried by the transcript grouping, not the frame.

_KIND_CODES = {VLt: 0, ULt: 1, VUni: 2, UUni: 3, VFinal: 4, ObsBits: 5}
_CODE_KINDS = {v: k for k, v in _KIND_CODES.items()}


def encode_message(msg, config: SchemeConfig) -> tuple[bytes, int]:
    """Encode a message into (bytes, bit_length); payload length equals the
    scheme's declared per-message bit budget."""
    code = _KIND_CODES.get(type(msg))
    if code is None:
        raise ProtocolError(f"unknown message {msg!r}")
    if not 0 <= msg.sensor < 256:
        raise ProtocolError("sensor id does not fit in 8 bits")
    fields = [(code, 3), (msg.sensor, 8)]
    if isinstance(msg, VLt):
        fields += [(1 if msg.sign > 0 else 0, 1), (msg.q_index.value, config.bits_v - 1)]
    elif isinstance(msg, ULt):
        fields += [(msg.p_index.value, config.bits_u)]
    elif isinstance(msg, VUni):
        fields += [(msg.index.value, config.bits_v)]
    elif isinstance(msg, UUni):
        fields += [(msg.index.value, config.bits_u)]
    elif isinstance(msg, VFinal):
        fields += [(msg.index.value, config.bits_final[msg.sensor])]
    else:
        fields += [(msg.re_y, 1), (msg.im_y, 1), (msg.re_h, 1), (msg.im_h, 1)]
    return pack_fields(fields)


def decode_message(data: bytes, nbits: int, config: SchemeConfig, t: int = 0):
    """Decode a frame back into a message; the step index comes from the
    transcript grouping."""
    if nbits < 11:
        raise ProtocolError("frame shorter than its header")
    if len(data) != (nbits + 7) // 8:
        raise ProtocolError("frame length does not match declared bit count")
    # header first, then the payload with kind-specific widths
    head = int.from_bytes(data, "big") >> (len(data) * 8 - nbits)
    code = (head >> (nbits - 3)) & 0b111
    sensor = (head >> (nbits - 11)) & 0xFF
    cls = _CODE_KINDS.get(code)
    if cls is None:
        raise ProtocolError(f"unknown kind code {code}")
    if cls is VLt:
        widths = [3, 8, 1, config.bits_v - 1]
    elif cls is ULt:
        widths = [3, 8, config.bits_u]
    elif cls is VUni:
        widths = [3, 8, config.bits_v]
    elif cls is UUni:
        widths = [3, 8, config.bits_u]
    elif cls is VFinal:
        if config.bits_final is None or sensor >= len(config.bits_final):
            raise ProtocolError(f"no final-block width for sensor {sensor}")
        widths = [3, 8, config.bits_final[sensor]]
    else:
        widths = [3, 8, 1, 1, 1, 1]
    parts = unpack_fields(data, nbits, widths)
    if cls is VLt:
        return VLt(sensor, t, 1 if parts[2] else -1, QuantIndex(parts[3], config.bits_v - 1))
    if cls is ULt:
        return ULt(sensor, t, QuantIndex(parts[2], config.bits_u))
    if cls is VUni:
        return VUni(sensor, t, QuantIndex(parts[2], config.bits_v))
    if cls is UUni:
        return UUni(sensor, t, QuantIndex(parts[2], config.bits_u))
    if cls is VFinal:
        return VFinal(sensor, t, QuantIndex(parts[2], config.bits_final[sensor]))
    return ObsBits(sensor, t, parts[2], parts[3], parts[4], parts[5])


def write_transcript(path, steps) -> None:
    """Persist [(t, [(bytes, nbits), ...]), ...] as length-prefixed frames."""
    with open(path, "wb") as fh:
        for t, frames in steps:
            fh.write(struct.pack(">IH", t, len(frames)))
            for data, nbits in frames:
                fh.write(struct.pack(">B", nbits))
                fh.write(data)


def read_transcript(path):
    """Yield (t, [(bytes, nbits), ...]) groups from a transcript file."""
    out = []
    with open(path, "rb") as fh:
        while True:
            head = fh.read(6)
            if not head:
                return out
            if len(head) != 6:
                raise ProtocolError("truncated transcript header")
            t, count = struct.unpack(">IH", head)
            frames = []
            for _ in range(count):
                (nbits,) = struct.unpack(">B", fh.read(1))
                data = fh.read((nbits + 7) // 8)
                if len(data) != (nbits + 7) // 8:
                    raise ProtocolError("truncated transcript frame")
                frames.append((data, nbits))
            out.append((t, frames))

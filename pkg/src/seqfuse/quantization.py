"""Mid-riser uniform quantization and bit-index packing.

One quantizer abstraction backs every quantized value in the system: the
final-block V quantizer, both level-trigger overshoot quantizers, and both
uniform-sampling increment quantizers.  Reconstruction levels sit at
subinterval midpoints, so no level equals an interval endpoint.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import ConfigError, ProtocolError

MAX_BITS = 16


@dataclass(frozen=True)
class MidRiserQuantizer:
    """Uniform mid-riser quantizer on [lower, upper] with level_count cells.

    level_count is a power of two; the degenerate one-level quantizer
    (level_count == 1, reconstruction at the interval midpoint) is allowed for
    the zero-bit overshoot codebook.
    """

    lower: float
    upper: float
    level_count: int

    def __post_init__(self):
        if not (self.lower < self.upper and math.isfinite(self.lower) and math.isfinite(self.upper)):
            raise ConfigError(f"degenerate interval [{self.lower!r}, {self.upper!r}]")
        n = self.level_count
        if n < 1 or (n & (n - 1)) != 0 or n > (1 << MAX_BITS):
            raise ConfigError(f"level_count must be a power of two in [1, 2^{MAX_BITS}], got {n}")

    @property
    def step(self) -> float:
        return (self.upper - self.lower) / self.level_count

    @property
    def bit_width(self) -> int:
        return self.level_count.bit_length() - 1

    def level(self, index: int) -> float:
        return self.lower + (index + 0.5) * self.step


@dataclass(frozen=True)
class QuantIndex:
    """A quantization-level index plus the exact bit width it travels in."""

    value: int
    bit_width: int

    def __post_init__(self):
        if not 0 <= self.bit_width <= MAX_BITS:
            raise ConfigError(f"bit_width out of range: {self.bit_width}")
        if not 0 <= self.value < (1 << self.bit_width):
            raise ConfigError(f"index {self.value} does not fit in {self.bit_width} bits")


def make_midriser(lower: float, upper: float, bits: int) -> MidRiserQuantizer:
    """Quantizer with 2**bits uniform subintervals of [lower, upper]."""
    if not isinstance(bits, int) or bits < 1:
        raise ConfigError(f"bits must be a positive integer, got {bits!r}")
    if bits > MAX_BITS:
        raise ConfigError(f"bits capped at {MAX_BITS}, got {bits}")
    return MidRiserQuantizer(float(lower), float(upper), 1 << bits)


def quantize(q: MidRiserQuantizer, value: float) -> QuantIndex:
    """Bin a value; out-of-range values clamp to the nearest extreme level.

    Subintervals are half-open [l, l+step) with the top one closed at upper.
    """
    if math.isnan(value):
        raise ConfigError("cannot quantize NaN")
    idx = math.floor((value - q.lower) / q.step)
    if idx < 0:
        idx = 0
    elif idx > q.level_count - 1:
        idx = q.level_count - 1
    return QuantIndex(idx, q.bit_width)


def dequantize(q: MidRiserQuantizer, index: QuantIndex | int) -> float:
    """Reconstruction level for an index (midpoint of its subinterval)."""
    i = index.value if isinstance(index, QuantIndex) else int(index)
    if not 0 <= i < q.level_count:
        raise ProtocolError(f"index {i} out of range for {q.level_count} levels")
    return q.level(i)


# ---------------------------------------------------------------------------
# named constructors for the five quantizer uses

def final_v_quantizer(phi: float, stop_time: int, bits: int) -> MidRiserQuantizer:
    """Final-block quantizer for a local V total over [-T*phi, T*phi]."""
    span = stop_time * phi
    return make_midriser(-span, span, bits)


def lt_v_overshoot_quantizer(phi: float, bits_v: int) -> MidRiserQuantizer:
    """Overshoot codebook for level-triggered V messages: [0, phi] split into
    2**(bits_v - 1) cells; with a single message bit this degenerates to the
    lone level phi/2."""
    if bits_v < 1:
        raise ConfigError("bits_v must be >= 1")
    if bits_v - 1 > MAX_BITS:
        raise ConfigError(f"bits capped at {MAX_BITS}")
    return MidRiserQuantizer(0.0, float(phi), 1 << (bits_v - 1))


def lt_u_overshoot_quantizer(theta: float, bits_u: int) -> MidRiserQuantizer:
    """Overshoot codebook for level-triggered U messages: [0, theta], 2**bits_u cells."""
    return make_midriser(0.0, theta, bits_u)


def uniform_u_quantizer(theta: float, period: int, bits_u: int) -> MidRiserQuantizer:
    """Uniform-sampling U increment quantizer: [0, T_U*theta], 2**bits_u cells."""
    return make_midriser(0.0, period * theta, bits_u)


def uniform_v_quantizer(phi: float, period: int, bits_v: int) -> MidRiserQuantizer:
    """Uniform-sampling V increment quantizer: [-T_V*phi, T_V*phi], 2**bits_v cells."""
    span = period * phi
    return make_midriser(-span, span, bits_v)


# ---------------------------------------------------------------------------
# bit packing (big-endian, left-aligned)

def pack_fields(fields) -> tuple[bytes, int]:
    """Pack (value, width) pairs big-endian into left-aligned bytes."""
    acc = 0
    nbits = 0
    for value, width in fields:
        if width < 0 or (width == 0 and value != 0) or (width > 0 and not 0 <= value < (1 << width)):
            raise ProtocolError(f"value {value} does not fit in {width} bits")
        acc = (acc << width) | value
        nbits += width
    nbytes = (nbits + 7) // 8
    return (acc << (nbytes * 8 - nbits)).to_bytes(nbytes, "big"), nbits


def unpack_fields(data: bytes, nbits: int, widths) -> list[int]:
    """Inverse of pack_fields for a known width layout."""
    if sum(widths) != nbits:
        raise ProtocolError(f"widths sum to {sum(widths)}, frame has {nbits} bits")
    if len(data) != (nbits + 7) // 8:
        raise ProtocolError("frame length does not match declared bit count")
    acc = int.from_bytes(data, "big") >> (len(data) * 8 - nbits)
    out = []
    shift = nbits
    for w in widths:
        shift -= w
        out.append((acc >> shift) & ((1 << w) - 1) if w else 0)
    return out

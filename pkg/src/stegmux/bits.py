"""Bit stream and chunk header codecs.

A bit stream is a plain list of ints, each 0 or 1.  Bytes are serialized
most-significant-bit first so streams are comparable across platforms.

Every embedded chunk is prefixed by a 32-bit header: two unsigned 16-bit
fields (bit_count, then start_index), each big-endian.  The header is what
makes out-of-order reassembly possible at extraction time.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, List, Sequence

from .errors import NonByteAlignedError, TruncatedHeaderError

HEADER_BITS = 32
_FIELD_MAX = 0xFFFF


@dataclass(frozen=True)
class ChunkHeader:
    """Per-chunk wire header: payload bit count and stream start offset."""

    bit_count: int
    start_index: int

    def __post_init__(self) -> None:
        for name, value in (("bit_count", self.bit_count),
                            ("start_index", self.start_index)):
            if not 0 <= value <= _FIELD_MAX:
                raise ValueError(f"{name} must be in [0, 65535], got {value}")


def _check_bits(bits: Iterable[int]) -> List[int]:
    out = []
    for b in bits:
        if b not in (0, 1):
            raise ValueError(f"bit values must be 0 or 1, got {b!r}")
        out.append(int(b))
    return out


def string_to_bits(data: bytes) -> List[int]:
    """Expand a byte string into bits, MSB first within each byte."""
    bits: List[int] = []
    for byte in data:
        for shift in range(7, -1, -1):
            bits.append((byte >> shift) & 1)
    return bits


def bits_to_string(bits: Sequence[int]) -> bytes:
    """Pack a bit stream back into bytes; inverse of string_to_bits."""
    bits = _check_bits(bits)
    if len(bits) % 8:
        raise NonByteAlignedError(
            f"stream of {len(bits)} bits is not byte aligned")
    out = bytearray()
    for i in range(0, len(bits), 8):
        byte = 0
        for b in bits[i:i + 8]:
            byte = (byte << 1) | b
        out.append(byte)
    return bytes(out)


def _int_to_bits(value: int, width: int) -> List[int]:
    return [(value >> shift) & 1 for shift in range(width - 1, -1, -1)]


def _bits_to_int(bits: Sequence[int]) -> int:
    value = 0
    for b in bits:
        value = (value << 1) | b
    return value


def encode_header(header: ChunkHeader) -> List[int]:
    """Serialize a header to exactly 32 bits (bit_count, then start_index)."""
    return _int_to_bits(header.bit_count, 16) + _int_to_bits(header.start_index, 16)


def decode_header(bits: Sequence[int]) -> ChunkHeader:
    """Decode a header from the first 32 bits of a stream."""
    bits = _check_bits(bits[:HEADER_BITS])
    if len(bits) < HEADER_BITS:
        raise TruncatedHeaderError(
            f"need {HEADER_BITS} bits for a header, got {len(bits)}")
    return ChunkHeader(bit_count=_bits_to_int(bits[:16]),
                       start_index=_bits_to_int(bits[16:32]))

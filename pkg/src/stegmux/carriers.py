"""Carrier domain types: the cover media that payload bits hide inside.

Three modalities are supported:

* images  -- 8-bit pixel grids, grayscale or RGB, row-major and
  channel-interleaved (the flat layout of a binary PGM/PPM body);
* audio   -- signed 16-bit PCM, mono;
* text    -- UTF-8 strings, tokenized on whitespace.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import List, Union

import numpy as np

MODALITY_IMAGE = "image"
MODALITY_AUDIO = "audio"
MODALITY_TEXT = "text"
MODALITIES = (MODALITY_IMAGE, MODALITY_AUDIO, MODALITY_TEXT)


@dataclass
class ImageCarrier:
    """Uncompressed 8-bit image; ``pixels`` is flat, length w*h*channels."""

    width: int
    height: int
    channels: int
    pixels: np.ndarray

    def __post_init__(self) -> None:
        if self.channels not in (1, 3):
            raise ValueError(f"channels must be 1 or 3, got {self.channels}")
        if self.width < 0 or self.height < 0:
            raise ValueError("width and height must be non-negative")
        px = np.asarray(self.pixels)
        if px.dtype != np.uint8:
            if px.size and (px.min() < 0 or px.max() > 255):
                raise ValueError("pixel values must lie in [0, 255]")
            px = px.astype(np.uint8)
        px = px.reshape(-1)
        expected = self.width * self.height * self.channels
        if px.size != expected:
            raise ValueError(
                f"expected {expected} pixel values, got {px.size}")
        self.pixels = px

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ImageCarrier):
            return NotImplemented
        return (self.width == other.width and self.height == other.height
                and self.channels == other.channels
                and np.array_equal(self.pixels, other.pixels))


@dataclass
class AudioCarrier:
    """Mono 16-bit PCM clip."""

    sample_rate: int
    samples: np.ndarray

    def __post_init__(self) -> None:
        if self.sample_rate <= 0:
            raise ValueError(f"sample_rate must be > 0, got {self.sample_rate}")
        s = np.asarray(self.samples)
        if s.dtype != np.int16:
            if s.size and (s.min() < -32768 or s.max() > 32767):
                raise ValueError("samples must lie in [-32768, 32767]")
            s = s.astype(np.int16)
        self.samples = s.reshape(-1)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, AudioCarrier):
            return NotImplemented
        return (self.sample_rate == other.sample_rate
                and np.array_equal(self.samples, other.samples))


@dataclass(frozen=True)
class TextCarrier:
    """UTF-8 text; tokens are the whitespace-delimited words."""

    text: str

    @property
    def tokens(self) -> List[str]:
        return self.text.split()


Carrier = Union[ImageCarrier, AudioCarrier, TextCarrier]


def modality_of(carrier: Carrier) -> str:
    """Return the modality name for a carrier instance."""
    if isinstance(carrier, ImageCarrier):
        return MODALITY_IMAGE
    if isinstance(carrier, AudioCarrier):
        return MODALITY_AUDIO
    if isinstance(carrier, TextCarrier):
        return MODALITY_TEXT
    raise TypeError(f"not a carrier: {type(carrier).__name__}")

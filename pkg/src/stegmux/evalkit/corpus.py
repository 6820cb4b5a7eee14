"""Seeded reference corpus: two carriers per modality, one high quality
and one low quality, reproducible byte for byte from the seed.

Images and audio are synthesized (uniform noise vs. a smooth gradient,
full-scale white noise vs. a 440 Hz sine); the two texts ship as package
data (a varied technical essay vs. a repetitive narrative).  Real media
can be fed through the PGM/WAV loaders instead; nothing is downloaded.
"""

from __future__ import annotations

import math
from importlib import resources
from typing import Dict, List

import numpy as np

from ..carriers import AudioCarrier, Carrier, ImageCarrier, TextCarrier

IMAGE_SIDE = 128
AUDIO_RATE = 8000
AUDIO_SECONDS = 1.0
SINE_HZ = 440.0
SINE_AMPLITUDE = 16384  # half scale

_TECHNICAL_RESOURCE = "text_technical.txt"
_REPETITIVE_RESOURCE = "text_repetitive.txt"


def _bundled_text(name: str) -> TextCarrier:
    text = resources.files("stegmux").joinpath("data", name).read_text("utf-8")
    return TextCarrier(text)


def noise_image(seed: int, side: int = IMAGE_SIDE) -> ImageCarrier:
    rng = np.random.default_rng(seed)
    pixels = rng.integers(0, 256, size=side * side, dtype=np.uint8)
    return ImageCarrier(side, side, 1, pixels)


def gradient_image(side: int = IMAGE_SIDE) -> ImageCarrier:
    row = np.rint(np.linspace(0.0, 255.0, side)).astype(np.uint8)
    return ImageCarrier(side, side, 1, np.tile(row, side))


def noise_audio(seed: int, rate: int = AUDIO_RATE,
                seconds: float = AUDIO_SECONDS) -> AudioCarrier:
    rng = np.random.default_rng(seed)
    n = int(rate * seconds)
    samples = rng.integers(-32768, 32768, size=n, dtype=np.int16)
    return AudioCarrier(rate, samples)


def sine_audio(rate: int = AUDIO_RATE, seconds: float = AUDIO_SECONDS,
               hz: float = SINE_HZ, amplitude: int = SINE_AMPLITUDE,
               ) -> AudioCarrier:
    n = int(rate * seconds)
    t = np.arange(n, dtype=np.float64)
    wave = amplitude * np.sin(2.0 * math.pi * hz * t / rate)
    return AudioCarrier(rate, np.rint(wave).astype(np.int16))


def technical_text() -> TextCarrier:
    return _bundled_text(_TECHNICAL_RESOURCE)


def repetitive_text() -> TextCarrier:
    return _bundled_text(_REPETITIVE_RESOURCE)


def generate_corpus(seed: int) -> Dict[str, List[Carrier]]:
    """Build the reference corpus; index 0 is the higher-quality carrier."""
    return {
        "image": [noise_image(seed), gradient_image()],
        "audio": [noise_audio(seed + 1), sine_audio()],
        "text": [technical_text(), repetitive_text()],
    }

"""Fidelity and robustness metrics: PSNR, SNR, and bit error rate.

Identical signals yield ``math.inf``; an all-zero reference signal with
nonzero noise yields ``-math.inf``.  Both sentinels serialize as the
strings "inf" / "-inf" in reports.
"""

from __future__ import annotations

import math
from typing import Sequence

import numpy as np

from ..carriers import AudioCarrier, ImageCarrier
from ..errors import EmptyInputError, LengthMismatchError, ShapeMismatchError


def psnr(original: ImageCarrier, stego: ImageCarrier) -> float:
    """Peak signal-to-noise ratio in dB for 8-bit images (higher is better)."""
    if (original.width, original.height, original.channels) != \
            (stego.width, stego.height, stego.channels):
        raise ShapeMismatchError("images differ in shape")
    diff = original.pixels.astype(np.float64) - stego.pixels.astype(np.float64)
    mse = float((diff * diff).mean())
    if mse == 0.0:
        return math.inf
    return 10.0 * math.log10(255.0 ** 2 / mse)


def snr(original: AudioCarrier, stego: AudioCarrier) -> float:
    """Signal-to-noise ratio in dB for PCM clips (higher is better)."""
    if original.samples.size != stego.samples.size:
        raise ShapeMismatchError("clips differ in length")
    s = original.samples.astype(np.float64)
    noise = s - stego.samples.astype(np.float64)
    noise_energy = float((noise * noise).sum())
    if noise_energy == 0.0:
        return math.inf
    signal_energy = float((s * s).sum())
    if signal_energy == 0.0:
        return -math.inf
    return 10.0 * math.log10(signal_energy / noise_energy)


def ber(a: Sequence[int], b: Sequence[int]) -> float:
    """Fraction of positions at which two equal-length bit streams differ."""
    x = np.asarray(a, dtype=np.uint8)
    y = np.asarray(b, dtype=np.uint8)
    if x.size != y.size:
        raise LengthMismatchError(f"streams differ in length: {x.size} vs {y.size}")
    if x.size == 0:
        raise EmptyInputError("cannot compute BER of empty streams")
    return float((x != y).mean())

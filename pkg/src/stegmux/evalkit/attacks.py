"""Simulated channel attacks, one per modality, all deterministic.

Lossy image re-encoding is modeled as uniform requantization rather than
a real DCT codec: it reproduces the essential LSB-destroying behavior
without a codec dependency, with quality mapped to a step size.  Audio is
low-pass filtered with a centered moving average.  Text is damaged by
re-substituting a seeded fraction of its synonym slots.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np

from ..carriers import AudioCarrier, ImageCarrier, TextCarrier
from ..embedders import SynonymDictionary, _split_token, substitute_slots, text_slots


@dataclass(frozen=True)
class AttackSpec:
    """Parameters of the per-modality attack suite."""

    image_quality: int = 20
    audio_window: int = 3
    text_flip_fraction: float = 0.1
    seed: int = 0

    def __post_init__(self) -> None:
        if not 1 <= self.image_quality <= 100:
            raise ValueError("image quality must lie in [1, 100]")
        if self.audio_window < 1 or self.audio_window % 2 == 0:
            raise ValueError("audio window must be odd and >= 1")
        if not 0.0 <= self.text_flip_fraction <= 1.0:
            raise ValueError("text flip fraction must lie in [0, 1]")

    def to_json(self) -> str:
        return json.dumps({
            "image": {"quality": self.image_quality},
            "audio": {"window": self.audio_window},
            "text": {"flip_fraction": self.text_flip_fraction},
            "seed": self.seed,
        }, indent=2)

    @classmethod
    def from_json(cls, text: str) -> "AttackSpec":
        doc = json.loads(text)
        return cls(image_quality=doc.get("image", {}).get("quality", 20),
                   audio_window=doc.get("audio", {}).get("window", 3),
                   text_flip_fraction=doc.get("text", {}).get("flip_fraction", 0.1),
                   seed=doc.get("seed", 0))


def requant_step(quality: int) -> int:
    """Quantization step for a quality setting; never below 2."""
    return max(2, round((100 - quality) / 10) + 1)


def attack_image(img: ImageCarrier, quality: int, seed: int = 0) -> ImageCarrier:
    """Requantize pixel values as a lossy re-encoding stand-in.

    Every pixel snaps to the nearest multiple of the quality-derived step,
    clamped to [0, 255].  Deterministic; ``seed`` is reserved for future
    stochastic attacks.
    """
    if not 1 <= quality <= 100:
        raise ValueError("quality must lie in [1, 100]")
    q = requant_step(quality)
    px = np.rint(img.pixels.astype(np.float64) / q) * q
    px = np.clip(px, 0, 255).astype(np.uint8)
    return ImageCarrier(img.width, img.height, img.channels, px)


def attack_audio(audio: AudioCarrier, window: int, seed: int = 0) -> AudioCarrier:
    """Low-pass filter: centered moving average re-rounded to 16 bits.

    Edge positions use shrunken windows; window 1 is the identity.
    """
    if window < 1 or window % 2 == 0:
        raise ValueError("window must be odd and >= 1")
    if window == 1:
        return AudioCarrier(audio.sample_rate, audio.samples.copy())
    half = window // 2
    s = audio.samples.astype(np.float64)
    n = s.size
    csum = np.concatenate(([0.0], np.cumsum(s)))
    idx = np.arange(n)
    lo = np.maximum(idx - half, 0)
    hi = np.minimum(idx + half + 1, n)
    averaged = (csum[hi] - csum[lo]) / (hi - lo)
    out = np.clip(np.rint(averaged), -32768, 32767).astype(np.int16)
    return AudioCarrier(audio.sample_rate, out)


def attack_text(text: TextCarrier, flip_fraction: float, seed: int,
                dictionary: SynonymDictionary) -> TextCarrier:
    """Swap a seeded uniform choice of synonym slots to their pair partner."""
    if not 0.0 <= flip_fraction <= 1.0:
        raise ValueError("flip_fraction must lie in [0, 1]")
    slots = text_slots(text, dictionary)
    count = int(flip_fraction * len(slots))
    if count == 0:
        return TextCarrier(text.text)
    rng = np.random.default_rng(seed)
    chosen = rng.choice(len(slots), size=count, replace=False)
    tokens = text.tokens
    replacements = {}
    for k in chosen:
        token_index = slots[int(k)]
        _, core, _ = _split_token(tokens[token_index])
        replacements[token_index] = 1 - dictionary.role(core)
    return substitute_slots(text, dictionary, replacements)

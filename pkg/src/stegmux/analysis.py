"""Carrier quality analysis and the unified reliability score.

Each modality gets its own feature extractor (entropy, structural
complexity, capacity), and the four sub-scores are fused into a single
[0, 1] reliability value by a weighted sum so carriers of different
modalities can be compared head to head:

    reliability = 0.4*robustness + 0.3*imperceptibility
                + 0.2*entropy    + 0.1*complexity

Robustness has no closed-form estimator here; it is a per-modality prior
(defaults: image 0.90, audio 0.70, text 0.50) surfaced in the pipeline
config so it can be retuned.  Imperceptibility is the geometric mean of
entropy and complexity: a carrier masks changes well only when it is both
statistically random and structurally textured.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .carriers import AudioCarrier, ImageCarrier, TextCarrier
from .embedders import SynonymDictionary, text_slots
from .errors import EmptyCarrierError, EmptyInputError

# Normalizers that put every modality's entropy on a common [0, 1] scale:
# 8 bits for 256-bin image/audio histograms, log2(95) for printable ASCII.
_IMAGE_AUDIO_ENTROPY_MAX = 8.0
_TEXT_ENTROPY_MAX = math.log2(95)

# Default robustness priors per modality.
DEFAULT_ROBUSTNESS = {"image": 0.90, "audio": 0.70, "text": 0.50}

# A signal whose standard deviation reaches half of full scale is treated
# as maximally roomy for LSB noise; anything beyond clamps to 1.
_AUDIO_COMPLEXITY_SCALE = 16384.0


@dataclass(frozen=True)
class ScoreWeights:
    """Weights of the four sub-scores; must be in [0, 1] and sum to 1."""

    w_robustness: float = 0.4
    w_imperceptibility: float = 0.3
    w_entropy: float = 0.2
    w_complexity: float = 0.1

    def __post_init__(self) -> None:
        values = (self.w_robustness, self.w_imperceptibility,
                  self.w_entropy, self.w_complexity)
        if any(not 0.0 <= w <= 1.0 for w in values):
            raise ValueError(f"weights must lie in [0, 1]: {values}")
        if abs(sum(values) - 1.0) > 1e-12:
            raise ValueError(f"weights must sum to 1, got {sum(values)!r}")


DEFAULT_WEIGHTS = ScoreWeights()


@dataclass(frozen=True)
class QualityMetrics:
    """Per-carrier capacity plus the four sub-scores and their fusion."""

    capacity: int
    entropy: float
    complexity: float
    robustness: float
    imperceptibility: float
    reliability: float

    def __post_init__(self) -> None:
        if self.capacity < 0:
            raise ValueError("capacity must be non-negative")
        for name in ("entropy", "complexity", "robustness",
                     "imperceptibility", "reliability"):
            value = getattr(self, name)
            if not 0.0 <= value <= 1.0:
                raise ValueError(f"{name} must lie in [0, 1], got {value}")


def reliability_score(robustness: float, imperceptibility: float,
                      entropy: float, complexity: float,
                      weights: ScoreWeights = DEFAULT_WEIGHTS) -> float:
    """Fuse the four sub-scores into the unified reliability value."""
    for name, v in (("robustness", robustness),
                    ("imperceptibility", imperceptibility),
                    ("entropy", entropy), ("complexity", complexity)):
        if not 0.0 <= v <= 1.0:
            raise ValueError(f"{name} must lie in [0, 1], got {v}")
    return (weights.w_robustness * robustness
            + weights.w_imperceptibility * imperceptibility
            + weights.w_entropy * entropy
            + weights.w_complexity * complexity)


def histogram_entropy(values: Sequence[int], bins: int,
                      value_range: Optional[tuple] = None) -> float:
    """Shannon entropy (bits) of a histogram of integer values.

    Empty bins contribute nothing (the p*log p -> 0 limit).  Result lies
    in [0, log2(bins)].  ``value_range`` fixes the bin edges; when omitted
    the observed min/max span is used.
    """
    arr = np.asarray(values)
    if arr.size == 0:
        raise EmptyInputError("cannot compute entropy of no values")
    if bins < 2:
        raise ValueError(f"bins must be >= 2, got {bins}")
    counts, _ = np.histogram(arr, bins=bins, range=value_range)
    p = counts[counts > 0] / arr.size
    return float(-(p * np.log2(p)).sum())


def _fuse(capacity: int, entropy: float, complexity: float,
          robustness: float, weights: ScoreWeights) -> QualityMetrics:
    entropy = min(max(entropy, 0.0), 1.0)
    complexity = min(max(complexity, 0.0), 1.0)
    imperceptibility = math.sqrt(entropy * complexity)
    return QualityMetrics(
        capacity=capacity,
        entropy=entropy,
        complexity=complexity,
        robustness=robustness,
        imperceptibility=imperceptibility,
        reliability=reliability_score(robustness, imperceptibility,
                                      entropy, complexity, weights),
    )


def analyze_image_carrier(img: ImageCarrier,
                          weights: ScoreWeights = DEFAULT_WEIGHTS,
                          robustness: float = DEFAULT_ROBUSTNESS["image"],
                          ) -> QualityMetrics:
    """Profile an image: capacity, histogram entropy, edge density.

    Capacity is one bit per pixel value.  Entropy comes from the 256-bin
    value histogram.  Complexity is the mean absolute horizontal first
    difference (within each row and channel) scaled by 255.
    """
    if img.pixels.size == 0:
        raise EmptyCarrierError("image has no pixels")
    entropy = histogram_entropy(img.pixels, 256, (0, 256)) / _IMAGE_AUDIO_ENTROPY_MAX
    grid = img.pixels.reshape(img.height, img.width, img.channels)
    if img.width >= 2:
        hdiff = np.diff(grid.astype(np.int16), axis=1)
        complexity = float(np.abs(hdiff).mean()) / 255.0
    else:
        complexity = 0.0
    return _fuse(int(img.pixels.size), entropy, complexity, robustness, weights)


def analyze_audio_carrier(audio: AudioCarrier,
                          weights: ScoreWeights = DEFAULT_WEIGHTS,
                          robustness: float = DEFAULT_ROBUSTNESS["audio"],
                          ) -> QualityMetrics:
    """Profile an audio clip: capacity, amplitude entropy, dynamic range.

    Capacity is one bit per sample.  Entropy uses 256 equal-width bins
    spanning the full 16-bit range.  Complexity is the sample standard
    deviation scaled by half of full scale, clamped to [0, 1].
    """
    if audio.samples.size < 2:
        raise EmptyCarrierError("audio clip needs at least 2 samples")
    entropy = histogram_entropy(audio.samples, 256,
                                (-32768, 32768)) / _IMAGE_AUDIO_ENTROPY_MAX
    complexity = float(audio.samples.astype(np.float64).std()) / _AUDIO_COMPLEXITY_SCALE
    return _fuse(int(audio.samples.size), entropy, complexity, robustness, weights)


def analyze_text_carrier(text: TextCarrier, dictionary: SynonymDictionary,
                         weights: ScoreWeights = DEFAULT_WEIGHTS,
                         robustness: float = DEFAULT_ROBUSTNESS["text"],
                         ) -> QualityMetrics:
    """Profile a text: synonym-slot capacity, character entropy, TTR.

    Capacity is the number of synonym slots under ``dictionary``.  Entropy
    is character-level Shannon entropy normalized by log2(95).  Complexity
    is vocabulary richness: distinct lowercased tokens over total tokens.
    """
    tokens = text.tokens
    if not tokens:
        raise EmptyCarrierError("text has no tokens")
    codepoints = np.frombuffer(text.text.encode("utf-32-le"), dtype=np.uint32)
    _, counts = np.unique(codepoints, return_counts=True)
    p = counts / codepoints.size
    entropy = float(-(p * np.log2(p)).sum()) / _TEXT_ENTROPY_MAX
    complexity = len({t.lower() for t in tokens}) / len(tokens)
    capacity = len(text_slots(text, dictionary))
    return _fuse(capacity, entropy, complexity, robustness, weights)

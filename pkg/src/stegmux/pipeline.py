"""End-to-end hide/extract orchestration.

``hide_data`` profiles every carrier, computes an allocation plan, and
embeds each chunk behind its 32-bit header, returning the stego bundle
plus the extraction-info sidecar.  ``extract_data`` reassembles the
payload into a blank bit array using the headers, cross-validates each
chunk against the plan, and applies trust-based placement: chunks whose
headers are implausible fall back to their planned range, and no chunk
overwrites bits claimed by a higher-confidence one.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from .allocation import (AllocationPlan, optimize_bit_distribution,
                         static_distribution)
from .analysis import (DEFAULT_ROBUSTNESS, QualityMetrics, ScoreWeights,
                       analyze_audio_carrier, analyze_image_carrier,
                       analyze_text_carrier)
from .bits import (HEADER_BITS, ChunkHeader, bits_to_string, decode_header,
                   string_to_bits)
from .carrier_io import AssignmentRecord, ExtractionInfo
from .carriers import (MODALITY_AUDIO, MODALITY_IMAGE, MODALITY_TEXT,
                       AudioCarrier, Carrier, ImageCarrier, TextCarrier)
from .embedders import (SynonymDictionary, audio_lsb_stream, embed_audio_lsb,
                        embed_image_lsb, embed_text_synonym, image_lsb_stream,
                        text_slot_bits)
from .errors import (CapacityExceededError, NoCarriersError,
                     NonByteAlignedError)

StegoBundle = Dict[str, Carrier]

STRATEGY_ADAPTIVE = "adaptive"
STRATEGY_STATIC = "static"


@dataclass
class PipelineConfig:
    """Tunables for scoring, validation, and the text channel."""

    weights: ScoreWeights = field(default_factory=ScoreWeights)
    robustness_priors: Dict[str, float] = field(
        default_factory=lambda: dict(DEFAULT_ROBUSTNESS))
    suspect_threshold: float = 0.5
    confidence_base: float = 0.25
    confidence_per_field: float = 0.375
    synonym_dictionary_path: Optional[str] = None

    def __post_init__(self) -> None:
        if not 0.0 <= self.suspect_threshold <= 1.0:
            raise ValueError("suspect_threshold must lie in [0, 1]")
        self._dictionary: Optional[SynonymDictionary] = None

    @property
    def dictionary(self) -> SynonymDictionary:
        if self._dictionary is None:
            if self.synonym_dictionary_path:
                self._dictionary = SynonymDictionary.load(self.synonym_dictionary_path)
            else:
                self._dictionary = SynonymDictionary.default()
        return self._dictionary

    def to_json(self) -> str:
        doc = {
            "weights": {
                "w_robustness": self.weights.w_robustness,
                "w_imperceptibility": self.weights.w_imperceptibility,
                "w_entropy": self.weights.w_entropy,
                "w_complexity": self.weights.w_complexity,
            },
            "robustness_priors": dict(self.robustness_priors),
            "suspect_threshold": self.suspect_threshold,
            "confidence_base": self.confidence_base,
            "confidence_per_field": self.confidence_per_field,
            "synonym_dictionary_path": self.synonym_dictionary_path,
        }
        return json.dumps(doc, indent=2)

    @classmethod
    def from_json(cls, text: str) -> "PipelineConfig":
        doc = json.loads(text)
        weights = ScoreWeights(**doc.get("weights", {}))
        kwargs = {k: doc[k] for k in ("robustness_priors", "suspect_threshold",
                                      "confidence_base", "confidence_per_field",
                                      "synonym_dictionary_path") if k in doc}
        return cls(weights=weights, **kwargs)

    @classmethod
    def load(cls, path) -> "PipelineConfig":
        with open(path, "r", encoding="utf-8") as fh:
            return cls.from_json(fh.read())


@dataclass(frozen=True)
class CarrierValidation:
    """Cross-validation outcome for one carrier's chunk."""

    modality: str
    expected_bit_count: int
    expected_start: int
    actual_bit_count: Optional[int]
    actual_start: Optional[int]
    reliability: float
    confidence: float
    suspect: bool


@dataclass(frozen=True)
class ValidationReport:
    """Per-carrier validation plus overall recovery accounting."""

    carriers: List[CarrierValidation]
    recovered_bits: int
    missing_ranges: List[Tuple[int, int]]


@dataclass(frozen=True)
class ExtractedChunk:
    """A revealed chunk paired with its planned assignment."""

    expected: AssignmentRecord
    actual: ChunkHeader
    bits: List[int]
    confidence: float


@dataclass(frozen=True)
class ChunkPlacement:
    """Where a chunk's bits land in the reassembled stream."""

    modality: str
    start_index: int
    bits: List[int]
    follows_plan: bool


def _analyze(modality: str, carrier: Carrier,
             cfg: PipelineConfig) -> QualityMetrics:
    prior = cfg.robustness_priors[modality]
    if modality == MODALITY_IMAGE:
        return analyze_image_carrier(carrier, cfg.weights, prior)
    if modality == MODALITY_AUDIO:
        return analyze_audio_carrier(carrier, cfg.weights, prior)
    if modality == MODALITY_TEXT:
        return analyze_text_carrier(carrier, cfg.dictionary, cfg.weights, prior)
    raise ValueError(f"unknown modality {modality!r}")


def _embed(modality: str, carrier: Carrier, header: ChunkHeader,
           chunk: List[int], cfg: PipelineConfig) -> Carrier:
    if modality == MODALITY_IMAGE:
        return embed_image_lsb(carrier, header, chunk)
    if modality == MODALITY_AUDIO:
        return embed_audio_lsb(carrier, header, chunk)
    return embed_text_synonym(carrier, cfg.dictionary, header, chunk)


def _raw_bits(modality: str, carrier: Carrier,
              cfg: PipelineConfig) -> np.ndarray:
    if modality == MODALITY_IMAGE:
        return image_lsb_stream(carrier)
    if modality == MODALITY_AUDIO:
        return audio_lsb_stream(carrier)
    return text_slot_bits(carrier, cfg.dictionary)


def hide_data(carriers: Dict[str, Carrier], secret: bytes,
              cfg: Optional[PipelineConfig] = None,
              strategy: str = STRATEGY_ADAPTIVE,
              ) -> Tuple[StegoBundle, ExtractionInfo]:
    """Distribute a secret across carriers and embed each chunk.

    ``carriers`` maps modality name to carrier; insertion order is the
    listing order the static strategy uses.  Returns the stego bundle
    (only modalities that received bits) and the extraction-info sidecar.
    """
    if cfg is None:
        cfg = PipelineConfig()
    if not carriers:
        raise NoCarriersError("no carriers given")
    payload = string_to_bits(secret)
    if len(payload) > 0xFFFF:
        raise CapacityExceededError(
            f"payload of {len(payload)} bits exceeds the 65535-bit header range")

    profiles = [(name, _analyze(name, carrier, cfg))
                for name, carrier in carriers.items()]
    if strategy == STRATEGY_ADAPTIVE:
        plan = optimize_bit_distribution(profiles, len(payload))
    elif strategy == STRATEGY_STATIC:
        plan = static_distribution([name for name, _ in profiles], len(payload),
                                   capacities={n: m.capacity for n, m in profiles})
    else:
        raise ValueError(f"unknown strategy {strategy!r}")

    metrics = dict(profiles)
    bundle: StegoBundle = {}
    records = []
    for a in plan.assignments:
        chunk = payload[a.start_index:a.start_index + a.bit_count]
        header = ChunkHeader(bit_count=a.bit_count, start_index=a.start_index)
        bundle[a.modality] = _embed(a.modality, carriers[a.modality],
                                    header, chunk, cfg)
        records.append(AssignmentRecord(
            modality=a.modality, start_index=a.start_index,
            bit_count=a.bit_count,
            reliability_score=metrics[a.modality].reliability,
            quality_metrics=metrics[a.modality]))
    info = ExtractionInfo(total_bits=len(payload), assignments=records)
    info.validate()
    return bundle, info


def cross_validate_extraction(expected, actual: ChunkHeader, reliability: float,
                              suspect_threshold: float = 0.5,
                              base: float = 0.25, per_field: float = 0.375,
                              ) -> Tuple[float, bool]:
    """Score how well a revealed header matches its planned assignment.

    Confidence is ``reliability * (base + per_field per matching field)``;
    with the defaults a full match scores exactly the reliability and a
    total mismatch still scores a quarter of it.  The chunk is suspect
    when confidence falls below ``suspect_threshold``.
    """
    if not 0.0 <= reliability <= 1.0:
        raise ValueError("reliability must lie in [0, 1]")
    factor = base
    if actual.bit_count == expected.bit_count:
        factor += per_field
    if actual.start_index == expected.start_index:
        factor += per_field
    confidence = reliability * factor
    return confidence, confidence < suspect_threshold


def adaptive_error_correction(chunks: Sequence[ExtractedChunk],
                              total_bits: int) -> List[ChunkPlacement]:
    """Decide where each extracted chunk lands, most trusted first.

    A chunk whose header matches its assignment goes to its planned range.
    A mismatched header that is still self-consistent (its claimed bits
    were all readable and its claimed range fits the stream) is honored,
    enabling out-of-order reassembly.  Anything else falls back to the
    plan: the bits are truncated or zero-padded to the expected count and
    placed at the expected start.  Placements are ordered by descending
    confidence (ties by modality name); apply them first-writer-wins so
    lower-confidence chunks never overwrite higher-confidence ranges.
    """
    order = sorted(chunks, key=lambda c: (-c.confidence, c.expected.modality))
    placements = []
    for c in order:
        exp, act = c.expected, c.actual
        matches = (act.bit_count == exp.bit_count
                   and act.start_index == exp.start_index)
        consistent = (len(c.bits) == act.bit_count
                      and act.start_index + act.bit_count <= total_bits)
        if matches or consistent:
            bits = list(c.bits)
            start = act.start_index
        else:
            bits = list(c.bits[:exp.bit_count])
            bits += [0] * (exp.bit_count - len(bits))
            start = exp.start_index
        placements.append(ChunkPlacement(modality=exp.modality,
                                         start_index=start, bits=bits,
                                         follows_plan=matches or not consistent))
    return placements


def apply_placements(placements: Sequence[ChunkPlacement],
                     total_bits: int) -> Tuple[np.ndarray, int]:
    """Write placements into a blank bit array, first writer wins."""
    stream = np.zeros(total_bits, dtype=np.uint8)
    claimed = np.zeros(total_bits, dtype=bool)
    for p in placements:
        end = min(p.start_index + len(p.bits), total_bits)
        if end <= p.start_index:
            continue
        span = slice(p.start_index, end)
        free = ~claimed[span]
        stream[span][free] = np.asarray(p.bits[:end - p.start_index],
                                        dtype=np.uint8)[free]
        claimed[span] = True
    return stream, int(claimed.sum())


def extract_data(bundle: StegoBundle, info: ExtractionInfo,
                 cfg: Optional[PipelineConfig] = None,
                 ) -> Tuple[bytes, ValidationReport]:
    """Reassemble the payload from a stego bundle, best effort.

    Missing carriers leave their planned ranges zero-filled and reported
    in ``missing_ranges``; everything else is recovered independently, so
    the result does not depend on carrier iteration order.
    """
    if cfg is None:
        cfg = PipelineConfig()
    info.validate()
    if info.total_bits % 8:
        raise NonByteAlignedError(
            f"total_bits {info.total_bits} is not a multiple of 8")

    chunks = []
    validations = []
    missing: List[Tuple[int, int]] = []
    for a in info.assignments:
        carrier = bundle.get(a.modality)
        if carrier is None:
            missing.append((a.start_index, a.bit_count))
            validations.append(CarrierValidation(
                modality=a.modality, expected_bit_count=a.bit_count,
                expected_start=a.start_index, actual_bit_count=None,
                actual_start=None, reliability=a.reliability_score,
                confidence=0.0, suspect=True))
            continue
        raw = _raw_bits(a.modality, carrier, cfg)
        header = decode_header(raw[:HEADER_BITS].tolist())
        bits = raw[HEADER_BITS:HEADER_BITS + header.bit_count].tolist()
        confidence, suspect = cross_validate_extraction(
            a, header, a.reliability_score, cfg.suspect_threshold,
            cfg.confidence_base, cfg.confidence_per_field)
        chunks.append(ExtractedChunk(expected=a, actual=header, bits=bits,
                                     confidence=confidence))
        validations.append(CarrierValidation(
            modality=a.modality, expected_bit_count=a.bit_count,
            expected_start=a.start_index, actual_bit_count=header.bit_count,
            actual_start=header.start_index, reliability=a.reliability_score,
            confidence=confidence, suspect=suspect))

    placements = adaptive_error_correction(chunks, info.total_bits)
    stream, recovered = apply_placements(placements, info.total_bits)
    report = ValidationReport(carriers=validations, recovered_bits=recovered,
                              missing_ranges=missing)
    return bits_to_string(stream.tolist()), report

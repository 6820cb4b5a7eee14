"""Bit-exact carrier file I/O and the extraction-info JSON sidecar.

Supported containers are deliberately codec-free so LSB semantics are
unambiguous: binary PGM (P5) / PPM (P6) with maxval 255, mono 16-bit PCM
WAV, and UTF-8 text.  Lossy formats would destroy LSB payloads and are
modeled only as attacks (see :mod:`stegmux.evalkit`).

All saves are atomic: data is written to a temp file in the target
directory and renamed into place.
"""

from __future__ import annotations

import json
import os
import tempfile
import wave
from dataclasses import dataclass
from typing import List

import numpy as np

from .analysis import QualityMetrics
from .carriers import AudioCarrier, ImageCarrier, TextCarrier
from .errors import (InvalidEncodingError, MalformedFileError,
                     SchemaViolationError, UnsupportedFormatError)

_WHITESPACE = b" \t\n\r\x0b\x0c"


def _atomic_write(path, data: bytes) -> None:
    path = os.fspath(path)
    directory = os.path.dirname(path) or "."
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".stegmux-")
    try:
        with os.fdopen(fd, "wb") as fh:
            fh.write(data)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


# --- netpbm (PGM P5 / PPM P6) ---

def _read_pnm_token(data: bytes, pos: int) -> tuple:
    """Skip whitespace and '#' comments, return (token, next_pos)."""
    n = len(data)
    while pos < n:
        if data[pos:pos + 1] in (b"#",):
            while pos < n and data[pos] not in b"\n\r":
                pos += 1
        elif data[pos] in _WHITESPACE:
            pos += 1
        else:
            break
    start = pos
    while pos < n and data[pos] not in _WHITESPACE and data[pos:pos + 1] != b"#":
        pos += 1
    if start == pos:
        raise MalformedFileError("unexpected end of netpbm header")
    return data[start:pos], pos


def load_image(path) -> ImageCarrier:
    """Load a binary PGM (P5) or PPM (P6) file with maxval 255."""
    with open(path, "rb") as fh:
        data = fh.read()
    magic = data[:2]
    if magic not in (b"P5", b"P6"):
        raise UnsupportedFormatError(
            f"{path}: not a binary PGM/PPM (magic {magic!r})")
    channels = 1 if magic == b"P5" else 3
    pos = 2
    fields = []
    for _ in range(3):
        token, pos = _read_pnm_token(data, pos)
        try:
            fields.append(int(token))
        except ValueError:
            raise MalformedFileError(f"{path}: bad header token {token!r}")
    width, height, maxval = fields
    if maxval != 255:
        raise UnsupportedFormatError(f"{path}: maxval {maxval}, only 255 supported")
    if width <= 0 or height <= 0:
        raise MalformedFileError(f"{path}: bad dimensions {width}x{height}")
    pos += 1  # exactly one whitespace byte separates header from raster
    count = width * height * channels
    raster = data[pos:pos + count]
    if len(raster) < count:
        raise MalformedFileError(
            f"{path}: raster truncated ({len(raster)} of {count} bytes)")
    pixels = np.frombuffer(raster, dtype=np.uint8)
    return ImageCarrier(width, height, channels, pixels)


def save_image(img: ImageCarrier, path) -> None:
    """Write a canonical binary PGM/PPM (no comments, maxval 255)."""
    magic = b"P5" if img.channels == 1 else b"P6"
    header = b"%s\n%d %d\n255\n" % (magic, img.width, img.height)
    _atomic_write(path, header + img.pixels.tobytes())


# --- WAV (RIFF, PCM, mono, 16-bit) ---

def load_wav(path) -> AudioCarrier:
    """Load a mono 16-bit PCM WAV file."""
    try:
        with wave.open(os.fspath(path), "rb") as wav:
            channels = wav.getnchannels()
            sampwidth = wav.getsampwidth()
            comptype = wav.getcomptype()
            rate = wav.getframerate()
            nframes = wav.getnframes()
            frames = wav.readframes(nframes)
    except wave.Error as exc:
        if "unknown format" in str(exc).lower():
            raise UnsupportedFormatError(f"{path}: {exc}") from exc
        raise MalformedFileError(f"{path}: {exc}") from exc
    except EOFError as exc:
        raise MalformedFileError(f"{path}: truncated WAV") from exc
    if comptype != "NONE":
        raise UnsupportedFormatError(f"{path}: compression {comptype!r} unsupported")
    if channels != 1:
        raise UnsupportedFormatError(f"{path}: {channels} channels, mono required")
    if sampwidth != 2:
        raise UnsupportedFormatError(
            f"{path}: {8 * sampwidth}-bit samples, 16-bit required")
    if len(frames) < 2 * nframes:
        raise MalformedFileError(f"{path}: data chunk truncated")
    samples = np.frombuffer(frames, dtype="<i2")
    return AudioCarrier(rate, samples)


def save_wav(audio: AudioCarrier, path) -> None:
    """Write a canonical mono 16-bit PCM WAV file."""
    path = os.fspath(path)
    directory = os.path.dirname(path) or "."
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".stegmux-")
    os.close(fd)
    try:
        with wave.open(tmp, "wb") as wav:
            wav.setnchannels(1)
            wav.setsampwidth(2)
            wav.setframerate(audio.sample_rate)
            wav.writeframes(audio.samples.astype("<i2").tobytes())
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


# --- text ---

def load_text(path) -> TextCarrier:
    with open(path, "rb") as fh:
        raw = fh.read()
    try:
        return TextCarrier(raw.decode("utf-8"))
    except UnicodeDecodeError as exc:
        raise InvalidEncodingError(f"{path}: {exc}") from exc


def save_text(text: TextCarrier, path) -> None:
    _atomic_write(path, text.text.encode("utf-8"))


# --- extraction-info sidecar ---

_METRIC_KEYS = ("capacity", "entropy", "complexity", "robustness",
                "imperceptibility")
_ASSIGNMENT_KEYS = ("modality", "start_index", "bit_count",
                    "reliability_score", "quality_metrics")
_MODALITIES = ("image", "audio", "text")


@dataclass(frozen=True)
class AssignmentRecord:
    """One carrier's share of the payload plus its hide-time scores."""

    modality: str
    start_index: int
    bit_count: int
    reliability_score: float
    quality_metrics: QualityMetrics


@dataclass(frozen=True)
class ExtractionInfo:
    """Sidecar metadata produced at hide time and consumed at extract time.

    The assignments' bit ranges are disjoint and together cover exactly
    [0, total_bits).
    """

    total_bits: int
    assignments: List[AssignmentRecord]

    def validate(self) -> None:
        if self.total_bits < 0:
            raise SchemaViolationError("total_bits must be non-negative")
        spans = sorted((a.start_index, a.bit_count) for a in self.assignments)
        cursor = 0
        for start, count in spans:
            if count <= 0:
                raise SchemaViolationError("assignments must carry at least 1 bit")
            if start < cursor:
                raise SchemaViolationError(
                    f"assignment ranges overlap near bit {start}")
            if start > cursor:
                raise SchemaViolationError(
                    f"assignments leave bits [{cursor}, {start}) uncovered")
            cursor = start + count
        if cursor != self.total_bits:
            raise SchemaViolationError(
                f"assignments cover {cursor} bits, total_bits is {self.total_bits}")


def write_info(info: ExtractionInfo, path) -> None:
    """Serialize extraction info as JSON (lower_snake_case keys)."""
    info.validate()
    doc = {
        "total_bits": info.total_bits,
        "assignments": [
            {
                "modality": a.modality,
                "start_index": a.start_index,
                "bit_count": a.bit_count,
                "reliability_score": a.reliability_score,
                "quality_metrics": {
                    k: getattr(a.quality_metrics, k) for k in _METRIC_KEYS
                },
            }
            for a in info.assignments
        ],
    }
    _atomic_write(path, (json.dumps(doc, indent=2) + "\n").encode("utf-8"))


def _require(mapping: dict, keys, where: str) -> None:
    missing = [k for k in keys if k not in mapping]
    if missing:
        raise SchemaViolationError(f"{where}: missing keys {missing}")
    unknown = [k for k in mapping if k not in keys]
    if unknown:
        raise SchemaViolationError(f"{where}: unknown keys {unknown}")


def read_info(path) -> ExtractionInfo:
    """Parse and validate an extraction_info.json file."""
    with open(path, "rb") as fh:
        raw = fh.read()
    try:
        doc = json.loads(raw)
    except (json.JSONDecodeError, UnicodeDecodeError) as exc:
        raise MalformedFileError(f"{path}: {exc}") from exc
    if not isinstance(doc, dict):
        raise SchemaViolationError(f"{path}: top level must be an object")
    _require(doc, ("total_bits", "assignments"), "info")
    if not isinstance(doc["total_bits"], int) or isinstance(doc["total_bits"], bool):
        raise SchemaViolationError("total_bits must be an integer")
    if not isinstance(doc["assignments"], list):
        raise SchemaViolationError("assignments must be a list")
    assignments = []
    for i, entry in enumerate(doc["assignments"]):
        where = f"assignments[{i}]"
        if not isinstance(entry, dict):
            raise SchemaViolationError(f"{where}: must be an object")
        _require(entry, _ASSIGNMENT_KEYS, where)
        if entry["modality"] not in _MODALITIES:
            raise SchemaViolationError(
                f"{where}: unknown modality {entry['modality']!r}")
        metrics = entry["quality_metrics"]
        if not isinstance(metrics, dict):
            raise SchemaViolationError(f"{where}: quality_metrics must be an object")
        _require(metrics, _METRIC_KEYS, f"{where}.quality_metrics")
        try:
            qm = QualityMetrics(reliability=float(entry["reliability_score"]),
                                capacity=int(metrics["capacity"]),
                                entropy=float(metrics["entropy"]),
                                complexity=float(metrics["complexity"]),
                                robustness=float(metrics["robustness"]),
                                imperceptibility=float(metrics["imperceptibility"]))
            assignments.append(AssignmentRecord(
                modality=entry["modality"],
                start_index=int(entry["start_index"]),
                bit_count=int(entry["bit_count"]),
                reliability_score=float(entry["reliability_score"]),
                quality_metrics=qm,
            ))
        except (TypeError, ValueError) as exc:
            raise SchemaViolationError(f"{where}: {exc}") from exc
    info = ExtractionInfo(total_bits=doc["total_bits"], assignments=assignments)
    info.validate()
    return info

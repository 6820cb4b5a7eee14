"""Modality-specific embed/reveal primitives.

Images and audio carry one payload bit in the least significant bit of
each pixel value / PCM sample, in storage order, starting at position 0.
Text carries one bit per synonym slot: a token whose word belongs to a
synonym pair encodes 0 as the pair's base word and 1 as its synonym.

Every embedded chunk is prefixed by the 32-bit header from
:mod:`stegmux.bits`, so a carrier is self-describing at reveal time.
Embedding never mutates the input carrier; a new carrier is returned.
"""

from __future__ import annotations

import re
import string
from importlib import resources
from typing import Dict, List, Sequence, Tuple

import numpy as np

from .bits import HEADER_BITS, ChunkHeader, decode_header, encode_header
from .carriers import AudioCarrier, ImageCarrier, TextCarrier
from .errors import (CapacityExceededError, TruncatedHeaderError,
                     TruncatedPayloadError)

_TOKEN_RE = re.compile(r"\S+")
_DEFAULT_DICTIONARY_RESOURCE = "synonyms.txt"


class SynonymDictionary:
    """Word pairs (base, synonym); each word appears once across the table.

    Global distinctness makes slot detection unambiguous: any occurrence of
    a member word identifies its pair and its role.
    """

    def __init__(self, pairs: Sequence[Tuple[str, str]]):
        self.pairs: List[Tuple[str, str]] = []
        self._role: Dict[str, int] = {}      # word -> 0 (base) / 1 (synonym)
        self._partner: Dict[str, str] = {}
        for base, synonym in pairs:
            base, synonym = base.strip().lower(), synonym.strip().lower()
            if not base or not synonym:
                raise ValueError("empty word in synonym pair")
            for word in (base, synonym):
                if word in self._role:
                    raise ValueError(f"word appears twice in dictionary: {word!r}")
            self.pairs.append((base, synonym))
            self._role[base] = 0
            self._role[synonym] = 1
            self._partner[base] = synonym
            self._partner[synonym] = base

    def __contains__(self, word: str) -> bool:
        return word.lower() in self._role

    def __len__(self) -> int:
        return len(self.pairs)

    def role(self, word: str) -> int:
        """0 if the word is a pair's base, 1 if it is the synonym."""
        return self._role[word.lower()]

    def partner(self, word: str) -> str:
        return self._partner[word.lower()]

    def word_for(self, word: str, bit: int) -> str:
        """The member of this word's pair encoding ``bit``."""
        base, synonym = self.pair_of(word)
        return synonym if bit else base

    def pair_of(self, word: str) -> Tuple[str, str]:
        word = word.lower()
        return (word, self._partner[word]) if self._role[word] == 0 \
            else (self._partner[word], word)

    @classmethod
    def load(cls, path) -> "SynonymDictionary":
        """Read a "base,synonym" per-line file; '#' starts a comment."""
        with open(path, "r", encoding="utf-8") as fh:
            return cls._parse(fh.read())

    @classmethod
    def default(cls) -> "SynonymDictionary":
        """The dictionary of 64 common pairs shipped with the package."""
        text = resources.files("stegmux").joinpath(
            "data", _DEFAULT_DICTIONARY_RESOURCE).read_text("utf-8")
        return cls._parse(text)

    @classmethod
    def _parse(cls, text: str) -> "SynonymDictionary":
        pairs = []
        for lineno, raw in enumerate(text.splitlines(), start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            parts = [p.strip() for p in line.split(",")]
            if len(parts) != 2 or not all(parts):
                raise ValueError(f"line {lineno}: expected 'base,synonym', got {raw!r}")
            pairs.append((parts[0], parts[1]))
        return cls(pairs)


# --- image / audio LSB ---

def _check_chunk(header: ChunkHeader, chunk: Sequence[int], capacity: int,
                 what: str) -> List[int]:
    if header.bit_count != len(chunk):
        raise ValueError(
            f"header bit_count {header.bit_count} != chunk length {len(chunk)}")
    if HEADER_BITS + len(chunk) > capacity:
        raise CapacityExceededError(
            f"{what} holds {capacity} bits; need {HEADER_BITS + len(chunk)}")
    return encode_header(header) + list(chunk)


def _write_lsbs(values: np.ndarray, bits: List[int]) -> np.ndarray:
    out = values.copy()
    payload = np.asarray(bits, dtype=out.dtype)
    np.bitwise_and(out[:len(bits)], out.dtype.type(-2), out=out[:len(bits)])
    np.bitwise_or(out[:len(bits)], payload, out=out[:len(bits)])
    return out


def _read_payload(lsbs: np.ndarray) -> Tuple[ChunkHeader, List[int]]:
    if lsbs.size < HEADER_BITS:
        raise TruncatedHeaderError(
            f"carrier holds {lsbs.size} bits, header needs {HEADER_BITS}")
    header = decode_header(lsbs[:HEADER_BITS].tolist())
    end = HEADER_BITS + header.bit_count
    if end > lsbs.size:
        raise TruncatedPayloadError(
            f"header claims {header.bit_count} bits but only "
            f"{lsbs.size - HEADER_BITS} remain")
    return header, lsbs[HEADER_BITS:end].tolist()


def image_lsb_stream(img: ImageCarrier) -> np.ndarray:
    """All pixel LSBs in storage order (used for raw forensics too)."""
    return (img.pixels & np.uint8(1)).astype(np.uint8)


def audio_lsb_stream(audio: AudioCarrier) -> np.ndarray:
    """All sample LSBs in order; LSB of the two's-complement 16-bit word."""
    return (audio.samples & np.int16(1)).astype(np.uint8)


def embed_image_lsb(img: ImageCarrier, header: ChunkHeader,
                    chunk: Sequence[int]) -> ImageCarrier:
    """Write header + chunk into the LSBs of the leading pixel values."""
    bits = _check_chunk(header, chunk, img.pixels.size, "image")
    return ImageCarrier(img.width, img.height, img.channels,
                        _write_lsbs(img.pixels, bits))


def reveal_image_lsb(img: ImageCarrier) -> Tuple[ChunkHeader, List[int]]:
    """Read the header from the first 32 LSBs, then its chunk."""
    return _read_payload(image_lsb_stream(img))


def embed_audio_lsb(audio: AudioCarrier, header: ChunkHeader,
                    chunk: Sequence[int]) -> AudioCarrier:
    """Write header + chunk into the LSBs of the leading samples."""
    bits = _check_chunk(header, chunk, audio.samples.size, "audio clip")
    return AudioCarrier(audio.sample_rate, _write_lsbs(audio.samples, bits))


def reveal_audio_lsb(audio: AudioCarrier) -> Tuple[ChunkHeader, List[int]]:
    return _read_payload(audio_lsb_stream(audio))


# --- text synonym substitution ---

def _split_token(token: str) -> Tuple[str, str, str]:
    """Split leading/trailing ASCII punctuation off a token."""
    core = token.lstrip(string.punctuation)
    prefix = token[:len(token) - len(core)]
    stripped = core.rstrip(string.punctuation)
    suffix = core[len(stripped):]
    return prefix, stripped, suffix


def _style_like(original: str, replacement: str) -> str:
    if original[:1].isupper():
        return replacement[:1].upper() + replacement[1:]
    return replacement


def text_slots(text: TextCarrier, dictionary: SynonymDictionary) -> List[int]:
    """Token indices whose (punctuation-stripped) word is in the dictionary.

    The slot count is the text's embedding capacity in bits.  Slot
    positions are stable under embedding, since substitution swaps a word
    for its pair partner, which is itself a dictionary member.
    """
    slots = []
    for i, token in enumerate(text.tokens):
        _, core, _ = _split_token(token)
        if core and core in dictionary:
            slots.append(i)
    return slots


def substitute_slots(text: TextCarrier, dictionary: SynonymDictionary,
                     replacements: Dict[int, int]) -> TextCarrier:
    """Rewrite the words at the given slot indices to encode bits.

    ``replacements`` maps token index -> bit.  Inter-token whitespace,
    adjacent punctuation, and a leading capital are preserved.  Token
    indices must be dictionary slots.
    """
    if not replacements:
        return TextCarrier(text.text)
    pieces = []
    last_end = 0
    for i, match in enumerate(_TOKEN_RE.finditer(text.text)):
        if i not in replacements:
            continue
        prefix, core, suffix = _split_token(match.group())
        word = _style_like(core, dictionary.word_for(core, replacements[i]))
        pieces.append(text.text[last_end:match.start()])
        pieces.append(prefix + word + suffix)
        last_end = match.end()
    pieces.append(text.text[last_end:])
    return TextCarrier("".join(pieces))


def embed_text_synonym(text: TextCarrier, dictionary: SynonymDictionary,
                       header: ChunkHeader,
                       chunk: Sequence[int]) -> TextCarrier:
    """Encode header + chunk into the text's synonym slots, in order."""
    slots = text_slots(text, dictionary)
    bits = _check_chunk(header, chunk, len(slots), "text")
    return substitute_slots(text, dictionary,
                            dict(zip(slots, bits)))


def text_slot_bits(text: TextCarrier,
                   dictionary: SynonymDictionary) -> np.ndarray:
    """The bit carried by every slot (base word -> 0, synonym -> 1)."""
    tokens = text.tokens
    roles = []
    for i in text_slots(text, dictionary):
        _, core, _ = _split_token(tokens[i])
        roles.append(dictionary.role(core))
    return np.asarray(roles, dtype=np.uint8)


def reveal_text_synonym(text: TextCarrier, dictionary: SynonymDictionary,
                        ) -> Tuple[ChunkHeader, List[int]]:
    """Read the header from the first 32 slots, then its chunk."""
    return _read_payload(text_slot_bits(text, dictionary))

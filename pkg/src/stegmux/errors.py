"""Exception hierarchy shared by all stegmux modules."""


class StegmuxError(Exception):
    """Base class for all errors raised by this package."""


# --- bit/byte codecs ---

class NonByteAlignedError(StegmuxError):
    """Bit stream length is not a multiple of 8."""


class TruncatedHeaderError(StegmuxError):
    """Fewer than 32 bits available where a chunk header was expected."""


# --- carrier file I/O ---

class UnsupportedFormatError(StegmuxError):
    """File is recognizable but outside the supported subset."""


class MalformedFileError(StegmuxError):
    """File is corrupt, truncated, or not parseable at all."""


class InvalidEncodingError(StegmuxError):
    """Text file is not valid UTF-8."""


class SchemaViolationError(StegmuxError):
    """Extraction-info JSON violates the sidecar schema or its invariants."""


# --- analysis ---

class EmptyInputError(StegmuxError):
    """An operation that needs at least one value received none."""


class EmptyCarrierError(StegmuxError):
    """Carrier has no analyzable content."""


# --- allocation / embedding ---

class NoCarriersError(StegmuxError):
    """An allocation was requested over an empty carrier set."""


class InsufficientCapacityError(StegmuxError):
    """Combined usable carrier capacity cannot hold the payload."""


class CapacityExceededError(StegmuxError):
    """A single carrier cannot hold its assigned header + chunk."""


class TruncatedPayloadError(StegmuxError):
    """A chunk header claims more payload bits than the carrier holds."""


# --- fidelity metrics ---

class ShapeMismatchError(StegmuxError):
    """Two carriers being compared do not have identical shape."""


class LengthMismatchError(StegmuxError):
    """Two bit streams being compared differ in length."""


# --- extraction ---

class MissingCarrierError(StegmuxError):
    """A modality referenced by extraction info is absent from the bundle."""

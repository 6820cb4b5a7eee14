"""Payload allocation: turn carrier scores into an exact bit partition.

The adaptive strategy weighs each carrier by reliability times relative
capacity and apportions the payload proportionally; the static baseline
splits it evenly regardless of quality.  Both produce plans whose chunks
are contiguous, disjoint, sum exactly to the payload size, and leave 32
bits of headroom per carrier for the chunk header.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

from .analysis import QualityMetrics
from .bits import HEADER_BITS
from .errors import InsufficientCapacityError, NoCarriersError

MAX_TOTAL_BITS = 0xFFFF


@dataclass(frozen=True)
class ChunkAssignment:
    """One carrier's contiguous slice of the payload bitstream."""

    modality: str
    start_index: int
    bit_count: int
    weight: float


@dataclass(frozen=True)
class AllocationPlan:
    """Ordered, disjoint chunk assignments covering [0, total_bits)."""

    total_bits: int
    assignments: List[ChunkAssignment]

    def validate(self, capacities: Optional[Dict[str, int]] = None) -> None:
        cursor = 0
        for a in sorted(self.assignments, key=lambda a: a.start_index):
            if a.start_index != cursor:
                raise ValueError(f"chunks not contiguous at bit {a.start_index}")
            if a.bit_count <= 0:
                raise ValueError("zero-bit assignments must be dropped")
            cursor += a.bit_count
            if capacities is not None:
                if a.bit_count + HEADER_BITS > capacities[a.modality]:
                    raise ValueError(
                        f"{a.modality}: {a.bit_count} bits exceed capacity headroom")
        if cursor != self.total_bits:
            raise ValueError(
                f"assignments cover {cursor} of {self.total_bits} bits")

    def share_of(self, modality: str) -> float:
        if self.total_bits == 0:
            return 0.0
        return sum(a.bit_count for a in self.assignments
                   if a.modality == modality) / self.total_bits


def apportion(weights: Sequence[float], total: int,
              caps: Optional[Sequence[int]] = None,
              tiebreak: Optional[Sequence[Tuple]] = None) -> List[int]:
    """Integer apportionment of ``total`` proportional to ``weights``.

    Largest-remainder rounding, generalized to honor per-entry caps: the
    result minimizes the total absolute deviation from the exact quotas
    ``total * w_i / sum(w)`` among all capped integer allocations that sum
    to ``total``.  With no binding cap this is plain Hamilton rounding.

    ``tiebreak`` supplies a sort key per entry for breaking equal
    remainders (lower key wins); entry order is the final tiebreaker.
    """
    k = len(weights)
    if k == 0:
        raise NoCarriersError("cannot apportion over zero entries")
    if total < 0:
        raise ValueError("total must be non-negative")
    if any(w < 0 for w in weights):
        raise ValueError("weights must be non-negative")
    caps = list(caps) if caps is not None else [total] * k
    if sum(caps) < total:
        raise InsufficientCapacityError(
            f"caps sum to {sum(caps)}, cannot hold {total}")
    keys = list(tiebreak) if tiebreak is not None else [()] * k

    weight_sum = float(sum(weights))
    if weight_sum == 0.0:
        quotas = [total / k] * k  # degenerate profile: treat as uniform
    else:
        quotas = [total * w / weight_sum for w in weights]

    counts = [min(math.floor(q), c) for q, c in zip(quotas, caps)]
    remaining = total - sum(counts)

    # Entries still at their quota floor take one extra unit each, largest
    # fractional part first; that is the cheapest way to absorb remainder.
    order = sorted(range(k), key=lambda i: (-(quotas[i] - math.floor(quotas[i])),
                                            keys[i], i))
    for i in order:
        if remaining == 0:
            break
        if counts[i] == math.floor(quotas[i]) and counts[i] < caps[i]:
            counts[i] += 1
            remaining -= 1

    # Any residue (possible only when caps bind) goes wherever room is
    # left; every further unit costs the same, so use the tiebreak order.
    if remaining:
        for i in sorted(range(k), key=lambda i: (keys[i], i)):
            room = caps[i] - counts[i]
            take = min(room, remaining)
            counts[i] += take
            remaining -= take
            if remaining == 0:
                break
    return counts


def optimize_bit_distribution(profiles: Sequence[Tuple[str, QualityMetrics]],
                              total_bits: int) -> AllocationPlan:
    """Partition the payload proportionally to reliability and capacity.

    Each carrier's raw weight is ``reliability * capacity / total
    capacity``; bits are apportioned over the normalized weights with
    largest-remainder rounding, capped at ``capacity - 32`` so no carrier
    is overstuffed.  Carriers assigned zero bits are dropped.  Start
    indices run contiguously from 0 in descending-weight order.
    """
    if not profiles:
        raise NoCarriersError("no carrier profiles given")
    if not 0 <= total_bits <= MAX_TOTAL_BITS:
        raise ValueError(f"total_bits must be in [0, {MAX_TOTAL_BITS}]")
    usable = [max(m.capacity - HEADER_BITS, 0) for _, m in profiles]
    if sum(usable) < total_bits:
        raise InsufficientCapacityError(
            f"carriers hold {sum(usable)} usable bits, payload is {total_bits}")

    capacity_sum = sum(m.capacity for _, m in profiles)
    raw = [m.reliability * m.capacity / capacity_sum for _, m in profiles]
    raw_sum = sum(raw)
    weights = [w / raw_sum for w in raw] if raw_sum > 0 else [1 / len(raw)] * len(raw)

    # Equal weights prefer the more reliable carrier, then the earlier name.
    tiebreak = [(-m.reliability, name) for name, m in profiles]
    counts = apportion(weights, total_bits, caps=usable, tiebreak=tiebreak)

    order = sorted(range(len(profiles)),
                   key=lambda i: (-weights[i], -profiles[i][1].reliability,
                                  profiles[i][0]))
    assignments = []
    cursor = 0
    for i in order:
        if counts[i] == 0:
            continue
        name = profiles[i][0]
        assignments.append(ChunkAssignment(modality=name, start_index=cursor,
                                           bit_count=counts[i],
                                           weight=weights[i]))
        cursor += counts[i]
    return AllocationPlan(total_bits=total_bits, assignments=assignments)


def static_distribution(modalities: Sequence[str], total_bits: int,
                        capacities: Optional[Dict[str, int]] = None,
                        ) -> AllocationPlan:
    """The rigid equal-split baseline: one even share per listed modality.

    Earlier-listed modalities absorb the remainder bits, and start indices
    follow list order.  When ``capacities`` is given, a share that does
    not fit (with header headroom) raises InsufficientCapacityError; the
    baseline never re-apportions around a small carrier.
    """
    if not modalities:
        raise NoCarriersError("no modalities given")
    if not 0 <= total_bits <= MAX_TOTAL_BITS:
        raise ValueError(f"total_bits must be in [0, {MAX_TOTAL_BITS}]")
    k = len(modalities)
    counts = apportion([1.0] * k, total_bits,
                       tiebreak=[(i,) for i in range(k)])
    if capacities is not None:
        for name, count in zip(modalities, counts):
            if count and count + HEADER_BITS > capacities[name]:
                raise InsufficientCapacityError(
                    f"{name}: static share of {count} bits exceeds capacity "
                    f"{capacities[name]} - {HEADER_BITS}")
    assignments = []
    cursor = 0
    for name, count in zip(modalities, counts):
        if count == 0:
            continue
        assignments.append(ChunkAssignment(modality=name, start_index=cursor,
                                           bit_count=count, weight=1.0 / k))
        cursor += count
    return AllocationPlan(total_bits=total_bits, assignments=assignments)

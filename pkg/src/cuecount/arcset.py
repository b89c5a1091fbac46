"""Counting windows: finite unions of half-open arcs on the circle."""

from __future__ import annotations

import json
import math
from dataclasses import dataclass

__all__ = ["ArcSet", "make_arcset", "symmetric_arc", "scale_arcset"]


@dataclass(frozen=True)
class ArcSet:
    """Sorted, pairwise-disjoint union of half-open intervals [lo, hi).

    Endpoints live in [-limit, limit] for whatever limit the set was built
    with (pi for angle windows, n/2 for sine-scale windows). The empty set
    is ArcSet(()).
    """

    intervals: tuple[tuple[float, float], ...]

    @property
    def is_empty(self) -> bool:
        return not self.intervals

    @property
    def measure(self) -> float:
        """Total length, sum of hi - lo."""
        return float(sum(hi - lo for lo, hi in self.intervals))

    @property
    def diam(self) -> float:
        """Linear diameter sup(A) - inf(A); 0 for the empty set."""
        if not self.intervals:
            return 0.0
        return self.intervals[-1][1] - self.intervals[0][0]

    def to_json(self) -> str:
        return json.dumps([[lo, hi] for lo, hi in self.intervals])

    @staticmethod
    def from_json(text: str, limit: float = math.pi) -> "ArcSet":
        pairs = json.loads(text)
        return make_arcset(pairs, limit=limit)


def make_arcset(intervals, limit: float = math.pi) -> ArcSet:
    """Canonicalize raw (lo, hi) pairs into an ArcSet.

    Pairs are sorted and overlapping or touching intervals are merged, so
    the result is a unique representation of the underlying point set.
    Raises ValueError for empty pairs (lo >= hi) or endpoints outside
    [-limit, limit].
    """
    cleaned = []
    for pair in intervals:
        lo, hi = (float(v) for v in pair)
        if not lo < hi:
            raise ValueError(f"interval ({lo}, {hi}) needs lo < hi")
        if lo < -limit or hi > limit:
            raise ValueError(
                f"interval ({lo}, {hi}) outside [{-limit:g}, {limit:g}]"
            )
        cleaned.append((lo, hi))
    cleaned.sort()
    merged: list[list[float]] = []
    for lo, hi in cleaned:
        # touching intervals ([a,b) + [b,c)) merge: the union is one arc
        if merged and lo <= merged[-1][1]:
            merged[-1][1] = max(merged[-1][1], hi)
        else:
            merged.append([lo, hi])
    return ArcSet(tuple((lo, hi) for lo, hi in merged))


def symmetric_arc(theta: float) -> ArcSet:
    """The window [-theta, theta); empty for theta = 0."""
    if not 0.0 <= theta <= math.pi:
        raise ValueError(f"theta must lie in [0, pi], got {theta}")
    if theta == 0.0:
        return ArcSet(())
    return ArcSet(((-float(theta), float(theta)),))


def scale_arcset(arcs: ArcSet, factor: float, limit: float = math.pi) -> ArcSet:
    """Dilate every endpoint by factor > 0; result revalidated against limit."""
    if factor <= 0.0:
        raise ValueError(f"scale factor must be positive, got {factor}")
    scaled = [(factor * lo, factor * hi) for lo, hi in arcs.intervals]
    return make_arcset(scaled, limit=limit)

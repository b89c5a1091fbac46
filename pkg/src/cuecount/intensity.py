"""Joint intensities of the circular processes and the pointwise
domination of the plain process by its stretched-window counterpart.

rho_k(x_1..x_k) = det[K(x_i, x_j)] for both kernel families; the
stretched-window determinant dominates the plain one at every tuple.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .counting import BoundViolation
from .kernels import TWO_PI, eval_dyson_kernel, sine_quotient

__all__ = [
    "IntensityQuery",
    "joint_intensity",
    "verify_conjugation_identity",
    "intensity_audit",
    "conjugation_audit",
]

K_CAP = 8

# determinants this far below zero are rounding noise and clip to 0
_NEG_CLIP = 1e-10


@dataclass(frozen=True)
class IntensityQuery:
    """A k-point intensity request; points in [-pi, pi), k <= 8."""

    n: int
    m: int
    k: int
    points: tuple

    def __post_init__(self):
        if self.n < 1 or self.m < 1:
            raise ValueError(
                f"n and m must be positive integers, got n={self.n}, m={self.m}"
            )
        if not 1 <= self.k <= K_CAP:
            raise ValueError(f"k must lie in 1..{K_CAP}, got {self.k}")
        if len(self.points) != self.k:
            raise ValueError(
                f"expected {self.k} points, got {len(self.points)}"
            )
        for p in self.points:
            if not -math.pi <= p < math.pi:
                raise ValueError(f"point {p} outside [-pi, pi)")


def _gram(n: int, m: int, pts: np.ndarray) -> np.ndarray:
    diff = pts[:, None] - pts[None, :]
    return sine_quotient(n, m, diff) / TWO_PI


def joint_intensity(query: IntensityQuery):
    """(rho_k for m = 1, rho_k for the stretched window), with tiny
    negative determinants clipped to 0."""
    pts = np.asarray(query.points, dtype=float)
    plain = float(np.linalg.det(_gram(query.n, 1, pts)))
    stretched = float(np.linalg.det(_gram(query.n, query.m, pts)))

    def clip(v: float) -> float:
        return 0.0 if -_NEG_CLIP <= v < 0.0 else v

    return clip(plain), clip(stretched)


def verify_conjugation_identity(n: int, m: int, k: int, points) -> float:
    """Max abs error of the averaged-conjugation identity

        T_stretched = (1/m) sum_{p<m} D^p T_plain (D^p)^*

    on the k x k Gram matrices at `points`, where T is the
    exponential-sum kernel of the (mn)-point (resp. n-point) process and
    D = diag(exp(i x_j / m)).
    """
    query = IntensityQuery(n=n, m=m, k=k, points=tuple(points))
    pts = np.asarray(query.points, dtype=float)
    lhs = eval_dyson_kernel(n, m, pts[:, None], pts[None, :])
    plain = eval_dyson_kernel(n, 1, pts[:, None], pts[None, :])
    rhs = np.zeros_like(lhs)
    for p in range(m):
        d = np.exp(1j * p * pts / m)
        rhs += d[:, None] * plain * d.conj()[None, :]
    rhs /= m
    return float(np.abs(lhs - rhs).max())


def intensity_audit(queries: int, seed: int, n_values=(2, 5, 10, 50), m_values=(2, 3, 5), k_max=4):
    """Random-tuple audit of the pointwise domination rho_stretched >=
    rho_plain; raises BoundViolation on any margin below -1e-10.

    Returns (rows, worst_margin) with one row per query:
    (n, m, k, points, rho_plain, rho_stretched, margin).
    """
    if queries < 1:
        raise ValueError(f"queries must be >= 1, got {queries}")
    rng = np.random.default_rng(seed)
    rows = []
    worst = math.inf
    for _ in range(queries):
        n = int(rng.choice(n_values))
        m = int(rng.choice(m_values))
        k = int(rng.integers(1, k_max + 1))
        pts = tuple(float(v) for v in rng.uniform(-math.pi, math.pi, size=k))
        query = IntensityQuery(n=n, m=m, k=k, points=pts)
        plain, stretched = joint_intensity(query)
        margin = stretched - plain
        worst = min(worst, margin)
        rows.append((n, m, k, pts, plain, stretched, margin))
        if margin < -_NEG_CLIP:
            raise BoundViolation(
                f"intensity domination failed: rho_stretched - rho_plain = "
                f"{margin:.3e} at n={n}, m={m}, k={k}, points={pts}"
            )
    return rows, worst


def conjugation_audit(queries: int, seed: int, n_values=(2, 5, 10, 50), m_values=(2, 3, 5), k_max=5):
    """Worst conjugation-identity error over random (n, m, k, points)."""
    if queries < 1:
        raise ValueError(f"queries must be >= 1, got {queries}")
    rng = np.random.default_rng(seed)
    worst = 0.0
    for _ in range(queries):
        n = int(rng.choice(n_values))
        m = int(rng.choice(m_values))
        k = int(rng.integers(1, k_max + 1))
        pts = tuple(float(v) for v in rng.uniform(-math.pi, math.pi, size=k))
        worst = max(worst, verify_conjugation_identity(n, m, k, pts))
    return worst

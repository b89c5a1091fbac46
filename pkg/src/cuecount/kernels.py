"""Pointwise kernels of the circular-ensemble eigenangle processes.

Three kernel families, all translation invariant in u = x - y:

  cue   K(x, y) = sin(n u / 2) / (2 pi m sin(u / (2 m)))
        m = 1 is the eigenangle process of a Haar-random n x n unitary;
        m > 1 is the same object read through an m-fold stretched window
        of an (mn) x (mn) unitary.
  dyson T(x, y) = (1/m) sum_{j<mn} exp(i j u / m), the exponential-sum
        (complex) form of the same projection; |T| = 2 pi |K|.
  sine  S(x, y) = sin(pi u) / (pi u), the bulk scaling limit.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

__all__ = [
    "KernelSpec",
    "eval_cue_kernel",
    "eval_dyson_kernel",
    "eval_sine_kernel",
    "kernel_matrix",
    "oscillation",
    "sine_quotient",
]

TWO_PI = 2.0 * math.pi

# below this |u| the sine quotient switches to its quadratic series
_DIAG_EPS = 1e-9

# frequency assigned to the sine kernel when sizing quadratures: it is the
# n -> infinity limit of sin(n u / 2)-type kernels sampled at u-scale 2 pi / n,
# so on its own axis it oscillates like sin(pi u), frequency 2 pi
SINE_OSCILLATION = TWO_PI

_KINDS = ("cue", "dyson", "sine")


@dataclass(frozen=True)
class KernelSpec:
    """Which kernel: kind in {"cue", "dyson", "sine"}, with n >= 1, m >= 1.

    n and m are ignored for kind="sine" (kept at the defaults).
    """

    kind: str
    n: int = 1
    m: int = 1

    def __post_init__(self):
        if self.kind not in _KINDS:
            raise ValueError(f"unknown kernel kind {self.kind!r}")
        if self.kind != "sine":
            if self.n < 1:
                raise ValueError(f"n must be a positive integer, got {self.n}")
            if self.m < 1:
                raise ValueError(f"m must be a positive integer, got {self.m}")

    @staticmethod
    def cue(n: int, m: int = 1) -> "KernelSpec":
        return KernelSpec("cue", n, m)

    @staticmethod
    def dyson(n: int, m: int = 1) -> "KernelSpec":
        return KernelSpec("dyson", n, m)

    @staticmethod
    def sine() -> "KernelSpec":
        return KernelSpec("sine")


def sine_quotient(n, m, u):
    """sin(n u / 2) / (m sin(u / (2 m))), series-evaluated near u = 0.

    The removable singularity at u = 0 has value n; for |u| < 1e-9 the
    quotient is replaced by n (1 - (n^2 - 1/m^2) u^2 / 24), whose next
    term is O(n^5 u^4) and far below double precision there.
    """
    u = np.asarray(u, dtype=float)
    small = np.abs(u) < _DIAG_EPS
    safe = np.where(small, 1.0, u)
    direct = np.sin(0.5 * n * safe) / (m * np.sin(safe / (2.0 * m)))
    series = n * (1.0 - (n * n - 1.0 / (m * m)) * u * u / 24.0)
    out = np.where(small, series, direct)
    return float(out) if out.ndim == 0 else out


def eval_cue_kernel(n: int, m: int, x, y):
    """Stretched-window CUE kernel sin(n u / 2) / (2 pi m sin(u / (2 m))).

    Diagonal value n / (2 pi). Satisfies the self-similarity identity
    K_{n,m}(x, y) = (1/m) K_{mn,1}(x/m, y/m).
    """
    u = np.asarray(x, dtype=float) - np.asarray(y, dtype=float)
    return sine_quotient(n, m, u) / TWO_PI


def eval_dyson_kernel(n: int, m: int, x, y):
    """Exponential-sum kernel (1/m) sum_{j=0}^{mn-1} exp(i j (x - y) / m).

    Evaluated in closed form as exp(i (mn - 1) u / (2m)) * sin(n u / 2)
    / (m sin(u / (2m))); diagonal value n.
    """
    u = np.asarray(x, dtype=float) - np.asarray(y, dtype=float)
    phase = np.exp(1j * (m * n - 1.0) * u / (2.0 * m))
    out = phase * sine_quotient(n, m, u)
    return complex(out) if np.ndim(out) == 0 else out


def eval_sine_kernel(x, y):
    """sin(pi (x - y)) / (pi (x - y)), 1 on the diagonal."""
    u = np.asarray(x, dtype=float) - np.asarray(y, dtype=float)
    out = np.sinc(u)
    return float(out) if out.ndim == 0 else out


def eval_kernel(spec: KernelSpec, x, y):
    """Dispatch on spec.kind."""
    if spec.kind == "cue":
        return eval_cue_kernel(spec.n, spec.m, x, y)
    if spec.kind == "dyson":
        return eval_dyson_kernel(spec.n, spec.m, x, y)
    return eval_sine_kernel(x, y)


def kernel_matrix(spec: KernelSpec, xs: np.ndarray) -> np.ndarray:
    """Dense Gram matrix [K(x_i, x_j)] on a node vector."""
    xs = np.asarray(xs, dtype=float)
    return eval_kernel(spec, xs[:, None], xs[None, :])


def oscillation(spec: KernelSpec) -> float:
    """Highest angular frequency present, used to size quadratures."""
    if spec.kind == "sine":
        return SINE_OSCILLATION
    return float(spec.n)

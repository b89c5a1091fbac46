"""Monte Carlo sampling of Haar-unitary eigenangles.

Each trial draws a complex Ginibre matrix, takes its QR factorization,
and rescales the columns of Q by diag(R)/|diag(R)|; the result is Haar
distributed and its eigenvalue angles form one sample of the n-point
process. Every trial owns an independent RNG stream derived from the
master seed and the trial index, and BLAS threading is pinned to one
thread around the linear algebra, so results are bit-identical for any
worker count.
"""

from __future__ import annotations

import csv
import json
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

import numpy as np
from threadpoolctl import threadpool_limits

from .arcset import ArcSet

__all__ = ["SampleBatch", "sample_cue", "count_in_window", "write_batch"]

# eigenvalues of a numerically unitary matrix must sit on the circle to this
UNIT_MODULUS_TOL = 1e-8


@dataclass(frozen=True)
class SampleBatch:
    """angles[t] holds the sorted eigenangles in [-pi, pi) of trial t."""

    dimension: int
    trials: int
    master_seed: int
    angles: np.ndarray


def _haar_angles(dimension: int, master_seed: int, trial: int) -> np.ndarray:
    seq = np.random.SeedSequence(entropy=master_seed, spawn_key=(trial,))
    rng = np.random.default_rng(seq)
    g = rng.standard_normal((dimension, dimension)) + 1j * rng.standard_normal(
        (dimension, dimension)
    )
    g /= math.sqrt(2.0)
    q, r = np.linalg.qr(g)
    d = np.diagonal(r)
    q = q * (d / np.abs(d))
    vals = np.linalg.eigvals(q)
    drift = float(np.abs(np.abs(vals) - 1.0).max())
    if drift > UNIT_MODULUS_TOL:
        raise ArithmeticError(
            f"eigenvalue modulus drifted {drift:.3e} from 1 (trial {trial})"
        )
    ang = np.angle(vals)
    # np.angle returns (-pi, pi]; fold the single excluded endpoint
    ang[ang == math.pi] = -math.pi
    ang.sort()
    return ang


def _trial_chunk(args) -> list:
    dimension, master_seed, trials = args
    with threadpool_limits(limits=1):
        return [_haar_angles(dimension, master_seed, t) for t in trials]


def sample_cue(dimension: int, trials: int, master_seed: int, workers: int = 1) -> SampleBatch:
    """Draw `trials` independent eigenangle samples of size `dimension`.

    workers > 1 fans trials out over processes; the per-trial streams make
    the output independent of the fan-out.
    """
    if dimension < 1:
        raise ValueError(f"dimension must be >= 1, got {dimension}")
    if trials < 1:
        raise ValueError(f"trials must be >= 1, got {trials}")
    if workers < 1:
        raise ValueError(f"workers must be >= 1, got {workers}")
    angles = np.empty((trials, dimension))
    if workers == 1:
        with threadpool_limits(limits=1):
            for t in range(trials):
                angles[t] = _haar_angles(dimension, master_seed, t)
    else:
        n_chunks = min(trials, 4 * workers)
        chunks = [
            (dimension, master_seed, list(rng))
            for rng in np.array_split(np.arange(trials), n_chunks)
            if len(rng)
        ]
        with ProcessPoolExecutor(max_workers=workers) as pool:
            for (_, _, idx), rows in zip(chunks, pool.map(_trial_chunk, chunks)):
                for t, row in zip(idx, rows):
                    angles[t] = row
    return SampleBatch(
        dimension=dimension, trials=trials, master_seed=int(master_seed), angles=angles
    )


def count_in_window(batch: SampleBatch, window: ArcSet, m: int = 1) -> np.ndarray:
    """Per-trial counts of eigenangles phi with m phi in A and |phi| < pi/m.

    m = 1 is the plain count in A; m > 1 reads the window through the
    m-fold stretch (batch dimension must be divisible by m).
    """
    if m < 1:
        raise ValueError(f"m must be >= 1, got {m}")
    if batch.dimension % m:
        raise ValueError(
            f"dimension {batch.dimension} not divisible by stretch factor {m}"
        )
    if window.is_empty:
        return np.zeros(batch.trials, dtype=np.int64)
    phi = batch.angles
    lim = math.pi / m
    inside = (phi >= -lim) & (phi < lim)
    scaled = m * phi
    member = np.zeros_like(inside)
    for lo, hi in window.intervals:
        member |= (scaled >= lo) & (scaled < hi)
    return (inside & member).sum(axis=1)


def write_batch(batch: SampleBatch, csv_path, json_path=None) -> None:
    """Persist a batch: (trial, angle) CSV plus a JSON sidecar of metadata."""
    with open(csv_path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["trial", "angle"])
        for t in range(batch.trials):
            for a in batch.angles[t]:
                writer.writerow([t, repr(float(a))])
    if json_path is not None:
        meta = {
            "dimension": batch.dimension,
            "trials": batch.trials,
            "master_seed": batch.master_seed,
        }
        with open(json_path, "w") as fh:
            json.dump(meta, fh, indent=2)
            fh.write("\n")

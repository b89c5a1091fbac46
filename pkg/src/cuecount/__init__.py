"""Counting statistics of circular-ensemble eigenvalue point processes.

Exact count distributions from windowed kernel-operator spectra, the
self-similarity distance chain between plain and stretched-window
counts, variance formulas and bounds, Gaussian-approximation rates,
joint-intensity domination, and seeded Monte Carlo cross-checks.
"""

from .arcset import ArcSet, make_arcset, scale_arcset, symmetric_arc
from .counting import (
    BoundViolation,
    CountDistribution,
    DistanceReport,
    count_distribution,
    distance_report,
    sine_comparison,
    tv_distance,
    variance_bounds,
    variance_by_formula,
    variance_difference,
    w1_distance,
)
from .intensity import (
    IntensityQuery,
    conjugation_audit,
    intensity_audit,
    joint_intensity,
    verify_conjugation_identity,
)
from .kernels import (
    KernelSpec,
    eval_cue_kernel,
    eval_dyson_kernel,
    eval_sine_kernel,
)
from .nystrom import (
    OperatorSpectrum,
    Quadrature,
    SpectrumError,
    build_quadrature,
    effective_rank,
    hs_distance,
    shared_quadrature,
    spectrum,
)
from .sampler import SampleBatch, count_in_window, sample_cue
from .stats import (
    CltReport,
    Figure1Result,
    KsReport,
    exact_gaussian_ks,
    ks_two_sample,
    ks_vs_gaussian,
    reproduce_figure1,
)

__version__ = "0.1.0"

__all__ = [
    "ArcSet",
    "BoundViolation",
    "CltReport",
    "CountDistribution",
    "DistanceReport",
    "Figure1Result",
    "IntensityQuery",
    "KernelSpec",
    "KsReport",
    "OperatorSpectrum",
    "Quadrature",
    "SampleBatch",
    "SpectrumError",
    "build_quadrature",
    "conjugation_audit",
    "count_distribution",
    "count_in_window",
    "distance_report",
    "effective_rank",
    "eval_cue_kernel",
    "eval_dyson_kernel",
    "eval_sine_kernel",
    "exact_gaussian_ks",
    "hs_distance",
    "intensity_audit",
    "joint_intensity",
    "ks_two_sample",
    "ks_vs_gaussian",
    "make_arcset",
    "reproduce_figure1",
    "sample_cue",
    "scale_arcset",
    "shared_quadrature",
    "sine_comparison",
    "spectrum",
    "symmetric_arc",
    "tv_distance",
    "variance_bounds",
    "variance_by_formula",
    "variance_difference",
    "verify_conjugation_identity",
    "w1_distance",
]

import math

import numpy as np
import pytest

from cuecount import (
    KernelSpec,
    build_quadrature,
    effective_rank,
    hs_distance,
    make_arcset,
    spectrum,
    symmetric_arc,
)
from cuecount.nystrom import (
    CLAMP_TOL,
    SpectrumError,
    shared_quadrature,
)

TWO_PI = 2.0 * math.pi


def test_weights_sum_to_measure():
    for window in [
        symmetric_arc(0.2),
        make_arcset([[-1.0, -0.5], [0.25, 1.0]]),
        make_arcset([[-math.pi, math.pi]]),
    ]:
        quad = build_quadrature(window, 50)
        assert quad.weights.sum() == pytest.approx(window.measure, rel=1e-12)
        assert np.all(quad.weights > 0)


def test_nodes_stay_inside_intervals():
    window = make_arcset([[-1.0, -0.5], [0.25, 1.0]])
    quad = build_quadrature(window, 80)
    for x in quad.nodes:
        assert any(lo < x < hi for lo, hi in window.intervals)


def test_default_order_scales_with_frequency():
    quad = build_quadrature(symmetric_arc(0.2), 100)
    assert quad.order >= 82
    assert build_quadrature(symmetric_arc(0.01), 5).order == 32  # floor kicks in


def test_order_hint_override():
    quad = build_quadrature(symmetric_arc(0.2), 100, order_hint=48)
    assert quad.order == 48
    assert quad.nodes.size == 48
    with pytest.raises(ValueError):
        build_quadrature(symmetric_arc(0.2), 100, order_hint=0)


def test_empty_window_rejected():
    from cuecount import ArcSet

    with pytest.raises(ValueError):
        build_quadrature(ArcSet(()), 10)


def test_rank_one_kernel_spectrum():
    # n = 1 kernel is constant 1/(2 pi): single eigenvalue theta/pi
    theta = 0.3
    spec = spectrum(KernelSpec.cue(1, 1), symmetric_arc(theta))
    assert spec.eigenvalues[0] == pytest.approx(theta / math.pi, rel=1e-12)
    assert np.all(spec.eigenvalues[1:] < 1e-12)


def test_full_circle_is_projection():
    # over the whole circle the operator is a rank-n projection
    spec = spectrum(KernelSpec.cue(5, 1), make_arcset([[-math.pi, math.pi]]))
    np.testing.assert_allclose(spec.eigenvalues[:5], 1.0, atol=1e-8)
    assert np.all(spec.eigenvalues[5:] < 1e-8)
    assert spec.trace == pytest.approx(5.0, abs=1e-8)


def test_sine_kernel_unit_trace():
    from cuecount.kernels import SINE_OSCILLATION

    window = make_arcset([[-0.5, 0.5]])
    spec = spectrum(
        KernelSpec.sine(), window, build_quadrature(window, SINE_OSCILLATION)
    )
    assert spec.trace == pytest.approx(1.0, abs=1e-10)


def test_trace_identity_on_grid():
    # trace = n |A| / (2 pi) for every (n, m, window)
    windows = [symmetric_arc(0.2), make_arcset([[-1.0, -0.5], [0.25, 1.0]])]
    for window in windows:
        for n in (5, 40):
            for m in (1, 2, 3):
                spec = spectrum(KernelSpec.cue(n, m), window)
                assert spec.trace == pytest.approx(
                    n * window.measure / TWO_PI, rel=1e-8
                )


def test_trace_equal_across_m_on_shared_grid():
    window = symmetric_arc(0.2)
    specs = [KernelSpec.cue(60, 1), KernelSpec.cue(60, 3)]
    quad = shared_quadrature(specs, window)
    traces = [spectrum(s, window, quad, adaptive=False).trace for s in specs]
    assert abs(traces[0] - traces[1]) < 1e-10


def test_spectrum_stable_under_doubling():
    window = symmetric_arc(0.2)
    spec_k = KernelSpec.cue(50, 2)
    base = build_quadrature(window, 50)
    fine = build_quadrature(window, 50, order_hint=2 * base.order)
    eig_k = spectrum(spec_k, window, base, adaptive=False).eigenvalues
    eig_2k = spectrum(spec_k, window, fine, adaptive=False).eigenvalues
    top = min(20, eig_k.size)
    np.testing.assert_allclose(eig_k[:top], eig_2k[:top], atol=1e-8)


def test_eigenvalues_clamped_to_unit_interval():
    spec = spectrum(KernelSpec.cue(100, 2), symmetric_arc(0.5))
    assert spec.eigenvalues.min() >= 0.0
    assert spec.eigenvalues.max() <= 1.0
    assert np.all(np.diff(spec.eigenvalues) <= 0)
    assert spec.clamp_report["worst"] <= CLAMP_TOL


def test_under_resolved_grid_raises():
    window = make_arcset([[-1.0, 1.0]])
    coarse = build_quadrature(window, 200, order_hint=8)
    with pytest.raises(SpectrumError):
        spectrum(KernelSpec.cue(200, 1), window, coarse, adaptive=False)


def test_node_budget_exhaustion_raises():
    window = symmetric_arc(0.2)
    huge = build_quadrature(window, 100, order_hint=5000)
    with pytest.raises(SpectrumError):
        shared_quadrature([KernelSpec.cue(100, 1)], window, huge)


def test_spectrum_rejects_dyson_and_foreign_quadrature():
    with pytest.raises(ValueError):
        spectrum(KernelSpec.dyson(5, 1), symmetric_arc(0.2))
    quad = build_quadrature(symmetric_arc(0.2), 10)
    with pytest.raises(ValueError):
        spectrum(KernelSpec.cue(10, 1), symmetric_arc(0.3), quad, adaptive=False)


def test_effective_rank_tracks_trace():
    spec = spectrum(KernelSpec.cue(100, 1), symmetric_arc(0.2))
    rank = effective_rank(spec)
    # transition band past the ~trace leading eigenvalues is narrow
    assert math.ceil(spec.trace) <= rank <= math.ceil(spec.trace) + 30


def test_hs_distance_identical_kernels_is_zero():
    window = symmetric_arc(0.2)
    quad = build_quadrature(window, 30)
    assert hs_distance(KernelSpec.cue(30, 1), KernelSpec.cue(30, 1), window, quad) == 0.0


def test_hs_distance_within_pointwise_bound():
    # |K_1 - K_m| <= |x - y| / (6 pi) pointwise, so the HS norm is at most
    # (1/6pi) sqrt(iint (x-y)^2) = (1/6pi) sqrt(8 theta^4 / 3) on [-theta, theta)
    theta = 0.2
    window = symmetric_arc(theta)
    val = hs_distance(KernelSpec.cue(100, 1), KernelSpec.cue(100, 2), window)
    cap = math.sqrt(8.0 * theta**4 / 3.0) / (6.0 * math.pi)
    assert 0.0 < val <= cap
    assert math.sqrt(200) * val <= 0.12004217548761417


def test_hs_distance_empty_window():
    from cuecount import ArcSet

    assert hs_distance(KernelSpec.cue(5, 1), KernelSpec.cue(5, 2), ArcSet(())) == 0.0


def test_spectrum_csv_export(tmp_path):
    spec = spectrum(KernelSpec.cue(10, 1), symmetric_arc(0.4))
    path = tmp_path / "spectrum.csv"
    spec.write_csv(path)
    lines = path.read_text().strip().splitlines()
    assert lines[0] == "index,eigenvalue"
    assert len(lines) == spec.eigenvalues.size + 1
    first = float(lines[1].split(",")[1])
    assert first == spec.eigenvalues[0]

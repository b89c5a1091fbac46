import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cuecount import (
    BoundViolation,
    KernelSpec,
    count_distribution,
    distance_report,
    make_arcset,
    sine_comparison,
    spectrum,
    symmetric_arc,
    tv_distance,
    variance_bounds,
    variance_by_formula,
    variance_difference,
    w1_distance,
)
from cuecount.counting import _csc_diff

TWO_PI = 2.0 * math.pi


# --- count laws ---


def test_all_ones_is_deterministic():
    d = count_distribution(np.array([1.0, 1.0, 1.0]))
    np.testing.assert_allclose(d.pmf, [0, 0, 0, 1])
    assert d.mean == 3.0
    assert d.variance == 0.0


def test_single_bernoulli():
    d = count_distribution(np.array([0.5]))
    np.testing.assert_allclose(d.pmf, [0.5, 0.5])
    assert d.variance == 0.25


def test_rank_one_window_is_bernoulli():
    theta = 0.3
    p = theta / math.pi
    d = count_distribution(spectrum(KernelSpec.cue(1, 1), symmetric_arc(theta)))
    assert d.pmf[0] == pytest.approx(1 - p, rel=1e-10)
    assert d.pmf[1] == pytest.approx(p, rel=1e-10)
    assert d.variance == pytest.approx(p * (1 - p), rel=1e-12)


def test_moments_match_pmf_moments():
    rng = np.random.default_rng(21)
    lam = rng.uniform(0.0, 1.0, 60)
    d = count_distribution(lam)
    k = np.arange(d.pmf.size)
    assert d.pmf.sum() == pytest.approx(1.0, abs=1e-12)
    assert (k * d.pmf).sum() == pytest.approx(d.mean, abs=1e-10)
    assert ((k - d.mean) ** 2 * d.pmf).sum() == pytest.approx(d.variance, abs=1e-10)


def test_skip_and_sure_thresholds():
    lam = np.array([1e-16, 1.0 - 1e-16, 0.25])
    d = count_distribution(lam)
    # one sure point shifts the support; the negligible one is dropped
    assert d.pmf.size == 3
    assert d.pmf[0] == 0.0
    np.testing.assert_allclose(d.pmf[1:], [0.75, 0.25])


def test_rejects_out_of_range_eigenvalues():
    with pytest.raises(ValueError):
        count_distribution(np.array([1.5]))
    with pytest.raises(ValueError):
        count_distribution(np.array([-0.2]))


def test_distances_trivial_cases():
    a = count_distribution(np.array([]))  # point mass at 0
    b = count_distribution(np.array([1.0, 1.0, 1.0]))
    assert tv_distance(a, a) == 0.0
    assert w1_distance(a, a) == 0.0
    assert tv_distance(a, b) == pytest.approx(1.0)
    assert w1_distance(a, b) == pytest.approx(3.0)


@settings(max_examples=150, deadline=None)
@given(
    st.lists(st.floats(0.0, 1.0, allow_nan=False), min_size=0, max_size=10),
    st.lists(st.floats(0.0, 1.0, allow_nan=False), min_size=0, max_size=10),
)
def test_distance_chain_on_random_spectra(lam_a, lam_b):
    # tv <= w1 <= sum |sorted differences| for any two Bernoulli-sum laws
    size = max(len(lam_a), len(lam_b))
    pa = np.zeros(size)
    pb = np.zeros(size)
    pa[: len(lam_a)] = np.sort(lam_a)[::-1]
    pb[: len(lam_b)] = np.sort(lam_b)[::-1]
    da = count_distribution(pa)
    db = count_distribution(pb)
    tv = tv_distance(da, db)
    w1 = w1_distance(da, db)
    coupling = np.abs(pa - pb).sum()
    assert tv <= w1 + 1e-12
    assert w1 <= coupling + 1e-12


# --- distance reports ---


def test_distance_report_m1_is_degenerate():
    rep = distance_report(20, 1, symmetric_arc(0.2))
    assert rep.tv_exact == 0.0
    assert rep.w1_exact == 0.0
    assert rep.coupling_bound == 0.0
    assert rep.hs_bound == 0.0


def test_distance_report_empty_window():
    from cuecount import ArcSet

    rep = distance_report(20, 2, ArcSet(()))
    assert rep.w1_exact == 0.0
    assert rep.closed_form_bound == 0.0


def test_distance_report_chain_and_frozen_bound():
    rep = distance_report(100, 2, symmetric_arc(0.2))
    slack = 1e-9
    assert rep.tv_exact <= rep.w1_exact + slack
    assert rep.w1_exact <= rep.coupling_bound + slack
    assert rep.coupling_bound <= rep.cs_bound + slack
    assert rep.cs_bound <= rep.hs_bound + slack
    assert rep.hs_bound <= rep.closed_form_bound + slack
    assert rep.closed_form_bound == pytest.approx(0.12004217548761417, abs=1e-12)
    assert 0.0 < rep.tv_exact < 0.01


def test_distance_report_two_interval_window():
    window = make_arcset([[-1.0, -0.5], [0.25, 1.0]])
    rep = distance_report(50, 3, window)
    rep.verify_chain()
    expected = math.sqrt(150) * window.measure * window.diam / (6.0 * math.pi)
    assert rep.closed_form_bound == pytest.approx(expected, rel=1e-12)


def test_distance_report_validates_inputs():
    with pytest.raises(ValueError):
        distance_report(0, 2, symmetric_arc(0.2))
    with pytest.raises(ValueError):
        distance_report(10, 0, symmetric_arc(0.2))


# --- variance formula and bounds ---


def test_variance_formula_n1_closed_form():
    for theta in (0.01, 0.3, 1.0, math.pi / 2):
        expected = theta / math.pi - (theta / math.pi) ** 2
        assert variance_by_formula(1, theta) == pytest.approx(expected, abs=1e-10)


def test_variance_formula_matches_spectrum_route():
    for n, theta in [(5, 0.5), (20, 0.2), (100, 0.2)]:
        v_pmf = count_distribution(
            spectrum(KernelSpec.cue(n, 1), symmetric_arc(theta))
        ).variance
        assert variance_by_formula(n, theta) == pytest.approx(v_pmf, abs=1e-6)


def test_variance_formula_frozen_value():
    assert variance_by_formula(100, 0.2) == pytest.approx(0.532929144769099, abs=1e-8)


def test_variance_formula_domain():
    with pytest.raises(ValueError):
        variance_by_formula(0, 0.2)
    with pytest.raises(ValueError):
        variance_by_formula(10, 0.0)
    with pytest.raises(ValueError):
        variance_by_formula(10, 1.8)


def test_variance_bounds_frozen_values():
    lower, upper = variance_bounds(100, 1, 0.2)
    assert lower == pytest.approx(0.04882118272261163, abs=1e-12)
    assert upper == pytest.approx(2.247866136776995, abs=1e-12)
    # small window: quadratic upper regime, no lower bound
    lower2, upper2 = variance_bounds(100, 2, 0.005)
    assert lower2 is None
    assert upper2 == pytest.approx(0.5625, abs=1e-15)


def test_variance_bounds_m_invariant():
    # both bounds depend only on n theta, so m never changes them
    for m in (1, 2, 3):
        assert variance_bounds(100, m, 0.2) == variance_bounds(100, 1, 0.2)


def test_variance_bounds_branches_continuous_at_regime_switch():
    lo_a, up_a = variance_bounds(100, 1, 0.01)  # theta = 1/n exactly
    assert up_a == pytest.approx(0.75, abs=1e-15)


def test_variance_sandwich_with_rescaling():
    for n, theta in [(20, 0.5), (100, 0.2), (100, 1.0)]:
        for m in (1, 2, 3):
            var = variance_by_formula(m * n, theta / m)
            lower, upper = variance_bounds(n, m, theta)
            if lower is not None:
                assert lower <= var + 1e-9
            assert var <= upper + 1e-9


# --- variance difference ---


def test_variance_difference_degenerate_cases():
    from cuecount import ArcSet

    assert variance_difference(50, 1, symmetric_arc(0.3)) == 0.0
    assert variance_difference(50, 3, ArcSet(())) == 0.0


def test_variance_difference_matches_spectra_and_cap():
    window = symmetric_arc(0.2)
    gap = variance_difference(100, 2, window)
    cap = window.measure**2 / (4.0 * math.pi**2)
    assert 0.0 <= gap <= cap
    v1 = count_distribution(spectrum(KernelSpec.cue(100, 1), window)).variance
    v2 = count_distribution(spectrum(KernelSpec.cue(100, 2), window)).variance
    assert gap == pytest.approx(v2 - v1, abs=1e-6)


def test_variance_difference_two_interval_window():
    window = make_arcset([[-0.4, -0.1], [0.2, 0.5]])
    gap = variance_difference(60, 3, window)
    cap = window.measure**2 / (4.0 * math.pi**2)
    assert 0.0 <= gap <= cap
    v1 = count_distribution(spectrum(KernelSpec.cue(60, 1), window)).variance
    v2 = count_distribution(spectrum(KernelSpec.cue(60, 3), window)).variance
    assert gap == pytest.approx(v2 - v1, abs=1e-6)


def test_csc_diff_series_meets_direct_branch():
    # the series takes over below |u| = 0.1; at a point just inside that
    # region it must agree with the naively cancelling formula
    for m in (2, 3, 5):
        u = 0.09
        naive = 1.0 / math.sin(0.5 * u) ** 2 - 1.0 / (
            m * m * math.sin(u / (2 * m)) ** 2
        )
        assert float(_csc_diff(m, np.array(u))) == pytest.approx(naive, rel=1e-10)
        u = 0.25  # direct branch
        naive = 1.0 / math.sin(0.5 * u) ** 2 - 1.0 / (
            m * m * math.sin(u / (2 * m)) ** 2
        )
        assert float(_csc_diff(m, np.array(u))) == pytest.approx(naive, rel=1e-12)
        assert float(_csc_diff(m, np.array(0.0))) == pytest.approx(
            (1.0 - 1.0 / m**2) / 3.0, rel=1e-14
        )


# --- sine comparison ---


def test_sine_comparison_bound_and_traces():
    window = make_arcset([[-1.0, 1.0]], limit=100.0)
    w1, bound = sine_comparison(200, window)
    assert bound == pytest.approx(0.007071067811865475, abs=1e-15)
    assert 0.0 <= w1 <= bound
    # both operators carry the same expected count |A|
    from cuecount import scale_arcset
    from cuecount.kernels import SINE_OSCILLATION
    from cuecount.nystrom import build_quadrature

    shrunk = scale_arcset(window, TWO_PI / 200)
    tr_cue = spectrum(KernelSpec.cue(200, 1), shrunk).trace
    tr_sine = spectrum(
        KernelSpec.sine(), window, build_quadrature(window, SINE_OSCILLATION)
    ).trace
    assert tr_cue == pytest.approx(window.measure, abs=1e-8)
    assert tr_sine == pytest.approx(window.measure, abs=1e-8)
    assert abs(tr_cue - tr_sine) < 1e-8


def test_sine_comparison_validation():
    from cuecount import ArcSet

    assert sine_comparison(50, ArcSet(())) == (0.0, 0.0)
    with pytest.raises(ValueError):
        sine_comparison(10, make_arcset([[-6.0, 6.0]], limit=10.0))
    with pytest.raises(ValueError):
        # inside the box but diameter over n/2
        sine_comparison(10, make_arcset([[-4.0, -3.5], [3.5, 4.0]], limit=5.0))


def test_chain_violation_raises():
    rep = distance_report(10, 2, symmetric_arc(0.1))
    bad = rep.__class__(**{**rep.__dict__, "tv_exact": 10.0})
    with pytest.raises(BoundViolation):
        bad.verify_chain()

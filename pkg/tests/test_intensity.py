import math

import numpy as np
import pytest

from cuecount import (
    IntensityQuery,
    conjugation_audit,
    intensity_audit,
    joint_intensity,
    verify_conjugation_identity,
)

TWO_PI = 2.0 * math.pi


def test_query_validation():
    with pytest.raises(ValueError):
        IntensityQuery(n=5, m=2, k=0, points=())
    with pytest.raises(ValueError):
        IntensityQuery(n=5, m=2, k=9, points=tuple(range(9)))
    with pytest.raises(ValueError):
        IntensityQuery(n=5, m=2, k=2, points=(0.1,))
    with pytest.raises(ValueError):
        IntensityQuery(n=5, m=2, k=1, points=(3.5,))
    with pytest.raises(ValueError):
        IntensityQuery(n=0, m=2, k=1, points=(0.1,))


def test_one_point_intensity_is_density():
    plain, stretched = joint_intensity(IntensityQuery(n=7, m=3, k=1, points=(0.4,)))
    assert plain == pytest.approx(7 / TWO_PI, rel=1e-14)
    assert stretched == pytest.approx(7 / TWO_PI, rel=1e-14)


def test_repeated_points_give_zero():
    plain, stretched = joint_intensity(
        IntensityQuery(n=6, m=2, k=2, points=(0.5, 0.5))
    )
    # LU-based det of a rank-deficient Gram lands within an ulp of zero
    assert plain == pytest.approx(0.0, abs=1e-12)
    assert stretched == pytest.approx(0.0, abs=1e-12)


def test_two_point_closed_form():
    # rho_2(x, y) = K(x,x) K(y,y) - K(x,y)^2
    from cuecount import eval_cue_kernel

    plain, _ = joint_intensity(IntensityQuery(n=5, m=3, k=2, points=(0.0, 0.7)))
    diag = 5 / TWO_PI
    off = eval_cue_kernel(5, 1, 0.0, 0.7)
    assert plain == pytest.approx(diag * diag - off * off, rel=1e-12)


def test_permutation_invariance():
    pts = (0.1, -0.8, 1.4)
    a = joint_intensity(IntensityQuery(n=9, m=2, k=3, points=pts))
    b = joint_intensity(IntensityQuery(n=9, m=2, k=3, points=pts[::-1]))
    assert a[0] == pytest.approx(b[0], rel=1e-10, abs=1e-14)
    assert a[1] == pytest.approx(b[1], rel=1e-10, abs=1e-14)


def test_stretched_intensity_dominates_on_random_queries():
    rows, worst = intensity_audit(200, seed=31)
    assert len(rows) == 200
    assert worst >= -1e-10


def test_kth_root_domination():
    # positive case of the size-comparison in root form
    rng = np.random.default_rng(6)
    for _ in range(50):
        k = int(rng.integers(1, 5))
        pts = tuple(float(v) for v in rng.uniform(-math.pi, math.pi, k))
        plain, stretched = joint_intensity(
            IntensityQuery(n=10, m=3, k=k, points=pts)
        )
        if plain > 0.0 and stretched > 0.0:
            assert stretched ** (1.0 / k) >= plain ** (1.0 / k) - 1e-10


def test_density_integrates_to_point_count():
    # rho_1 is constant n / (2 pi): integrating over the circle returns n
    n = 23
    plain, _ = joint_intensity(IntensityQuery(n=n, m=2, k=1, points=(0.0,)))
    assert plain * TWO_PI == pytest.approx(n, rel=1e-8)


def test_conjugation_identity_trivial_cases():
    # m = 1: both sides are literally the same matrix
    assert verify_conjugation_identity(8, 1, 2, (0.3, -1.1)) < 1e-14
    # k = 1 diagonal entry: phases cancel exactly
    assert verify_conjugation_identity(12, 4, 1, (0.9,)) < 1e-12


def test_conjugation_identity_random_cases():
    assert verify_conjugation_identity(10, 4, 5, (0.1, -0.5, 1.1, 2.2, -3.0)) < 1e-10
    assert conjugation_audit(100, seed=8) < 1e-10


def test_audit_validates():
    with pytest.raises(ValueError):
        intensity_audit(0, seed=1)
    with pytest.raises(ValueError):
        conjugation_audit(0, seed=1)

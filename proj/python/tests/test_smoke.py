import cmath
import math

import pytest

import _adsnull as ads


def test_classification_tags():
    assert ads.classify(0.0, 0.0) == ["RationalDegenerate", "RationalDegenerate"]
    assert ads.classify(4.0, 0.0) == ["WpNegDisc", "Wp3NegDisc"]
    assert ads.classify(12.0, 8.0) == ["TanDegenerate"]


def test_wp_ode_residual():
    z = 0.31 + 0.17j
    g2, g3 = 5.0, 1.0
    p = ads.wp(z, g2, g3)
    dp = ads.wp_prime(z, g2, g3)
    assert abs(dp * dp - (4 * p**3 - g2 * p - g3)) < 1e-9


def test_elliptic_k_value():
    # K(0) = pi/2 exactly.
    assert ads.elliptic_k(0.0) == pytest.approx(math.pi / 2, abs=1e-14)
    assert ads.elliptic_k(0.5) == pytest.approx(1.6857503548125961, abs=1e-12)


def test_potential_and_trajectory():
    p = ads.potential("rational")
    assert p.case_name == "RationalDegenerate"
    h, h1, h2, h3 = p.eval(1.0)
    assert (h, h1, h2, h3) == pytest.approx((1.0, -2.0, 6.0, -24.0), abs=1e-12)

    grid = [0.5 + 3.0 * i / 120 for i in range(121)]
    rows = ads.trajectory(-3.0, p, 1.2, grid)
    assert len(rows) == 121
    for row in rows:
        g = row["gamma"]
        det = g[0] * g[3] - g[1] * g[2]
        assert det == pytest.approx(1.0, abs=1e-9)


def test_geometry_report():
    p = ads.potential("qp", ell=0.25, e1=10.0)
    grid = [-1.0 + 2.0 * i / 1200 for i in range(1201)]
    rep = ads.verify_geometry(0.0, p, 0.1, grid)
    assert rep["max_det_err"] < 1e-9
    assert rep["max_nullity"] < 1e-7
    assert rep["max_k_err"] < 1e-5


def test_period_map_reference():
    assert ads.period_p(0.25, 10.0) == pytest.approx(0.81131, abs=5e-5)
    pm = ads.period_map(0.0, 0.25, 10.0)
    assert pm["pi_plus"] == pytest.approx(-2.43553, abs=5e-5)
    assert pm["pi_minus"] == pytest.approx(-2.69346, abs=5e-5)
    assert ads.jacobian_psi(0.0, 0.25, 10.0) == pytest.approx(-0.0011312, rel=1e-3)


def test_closure_generic_params_open():
    assert ads.closure_test(0.0, 0.25, 10.0, n_max=200, tol=1e-5) is None


def test_momentum_residuals():
    p = ads.potential("qp", ell=0.25, e1=10.0)
    grid = [-3.0 + 6.0 * i / 199 for i in range(200)]
    r1, r2, r3 = ads.el_system_max_residuals(0.0, p, grid)
    assert max(r1, r2, r3) < 1e-7


def test_errors_raise():
    with pytest.raises(ads.AdsNullError):
        ads.potential("qp", ell=1.5, e1=10.0)

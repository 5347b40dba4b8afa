import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.integrate import quad

from fracasym import kernels
from fracasym.params import FracParams
from fracasym.potentials import riesz_constant
from fracasym.radialtransform import radial_integral
from fracasym.special import mittag_leffler, ml_tail_coefficient


def test_g_profile_mass_ref(g_profile_ref):
    # total integral of G equals its transform at 0: E_{a,a}(0) = 1/Gamma(a)
    mass = radial_integral(g_profile_ref.values, 3)
    assert mass == pytest.approx(1.0 / math.sqrt(math.pi), rel=1e-6)


def test_g_profile_mass_beta1(g_profile_beta1):
    mass = radial_integral(g_profile_beta1.values, 5)
    assert mass == pytest.approx(1.0 / math.sqrt(math.pi), rel=1e-6)


def test_kappa_ref(g_profile_ref):
    # kappa = C * c_{4 beta} with C the Mittag-Leffler tail coefficient:
    # 0.2820948 / (4 pi) ~ 0.0224489 for (alpha, beta, N) = (0.5, 0.5, 3)
    expected = ml_tail_coefficient(0.5) * riesz_constant(2.0, 3)
    assert expected == pytest.approx(0.022448390, rel=1e-6)
    assert g_profile_ref.kappa == pytest.approx(expected, rel=1e-2)
    assert g_profile_ref.kappa_variation < 1e-2


def test_kappa_beta1(g_profile_beta1):
    # 0.2820948 / (16 pi^2) ~ 0.0017865 for (0.5, 1, 5)
    expected = ml_tail_coefficient(0.5) * riesz_constant(4.0, 5)
    assert expected == pytest.approx(0.00178650, rel=1e-4)
    assert g_profile_beta1.kappa == pytest.approx(expected, rel=1e-2)
    assert g_profile_beta1.kappa_variation < 1e-2


def test_constant_A_ref(g_profile_ref):
    assert g_profile_ref.constant_A == pytest.approx(
        riesz_constant(1.0, 3), rel=1e-3
    )


def test_constant_A_beta1(g_profile_beta1):
    assert g_profile_beta1.constant_A == pytest.approx(
        riesz_constant(2.0, 5), rel=1e-3
    )


def test_constant_A_validation_mode(g_profile_heat):
    # alpha = beta = 1, N = 5: the identity A = c_2 = 1/(8 pi^2) holds with
    # classical kernels and is reproduced to quadrature accuracy
    assert g_profile_heat.constant_A == pytest.approx(
        1.0 / (8.0 * math.pi**2), rel=1e-6
    )


def test_validate_bounds_ref(g_profile_ref):
    report = g_profile_ref.bound_report
    assert report["interior_pass"]
    assert report["global_pass"]
    assert report["exterior_pass"]
    # algebraic tail G ~ rho^{-(N + 2 beta)} = rho^{-4}
    assert report["exterior_slope"] == pytest.approx(-4.0, rel=0.03)
    # interior two-sided bound: rho^{N-4b} G stays within a modest ratio
    assert report["interior_ratio"] < 3.0


def test_validate_bounds_beta1(g_profile_beta1):
    report = g_profile_beta1.bound_report
    assert report["interior_pass"]
    assert report["exterior_pass"]  # exponential-type tail: no slope clause
    assert report["exterior_slope"] is None


def test_heat_profiles(f_profile_heat, g_profile_heat):
    # alpha = 1: F-hat = G-hat = e^{-r^2}, so both slices are the Gaussian
    # (4 pi)^{-5/2} e^{-rho^2/4} with F(0+) ~ 0.0017865 and unit mass
    v = float(f_profile_heat.values(1e-3))
    assert v == pytest.approx((4.0 * math.pi) ** -2.5, rel=1e-6)
    assert radial_integral(f_profile_heat.values, 5) == pytest.approx(1.0, rel=1e-6)
    assert g_profile_heat.kappa is None  # singular-profile limit not applicable


def test_evaluate_Y_self_similarity(g_profile_ref):
    # Y(rho, t) = t^{-sigma_*} G(rho t^{-theta}) by definition; check the
    # scaling collapses two times onto the same profile point
    rho = 2.0
    t1, t2 = 4.0, 9.0
    y1 = kernels.evaluate_Y(g_profile_ref, rho, t1)
    # same similarity variable at the second time
    rho2 = rho * (t2 / t1) ** g_profile_ref.exps.theta
    y2 = kernels.evaluate_Y(g_profile_ref, rho2, t2)
    ratio = (t2 / t1) ** -g_profile_ref.exps.sigma_star
    assert float(y2) == pytest.approx(float(y1) * ratio, rel=1e-12)


def test_evaluate_Y_l1_law(g_profile_ref, params_ref):
    # int Y(., t) = t^{alpha-1}/Gamma(alpha): at t = 100, alpha = 1/2 this is
    # 0.1/sqrt(pi)
    t = 100.0
    grid = g_profile_ref.values.grid
    from fracasym.radialtransform import RadialFunction

    y = RadialFunction(grid, kernels.evaluate_Y(g_profile_ref, grid.nodes, t))
    got = radial_integral(y, 3)
    # the rescaled profile leans on the fitted power-law tails of G outside
    # the grid, so the accuracy here is tail-fit limited
    assert got == pytest.approx(0.1 / math.sqrt(math.pi), rel=2e-3)


def test_evaluate_Z_scaling(f_profile_heat):
    rho, t = 1.0, 16.0
    z = kernels.evaluate_Z(f_profile_heat, rho, t)
    e = f_profile_heat.exps
    ref = t ** (-5.0 * e.theta) * float(f_profile_heat.values(rho * t**-e.theta))
    assert float(z) == pytest.approx(ref, rel=1e-12)


def test_subtraction_route_agreement(params_ref, g_profile_ref):
    # independent construction: transform of the tail-subtracted symbol plus
    # the exact Riesz term must reproduce G
    alt = kernels.build_y_profile_subtracted(params_ref)
    nodes = g_profile_ref.values.grid.nodes
    sel = (nodes > 1e-2) & (nodes < 1e2)
    a = g_profile_ref.values.samples[sel]
    b = alt.values(nodes[sel])
    assert np.max(np.abs(b / a - 1.0)) < 1e-5


def test_subtraction_route_guards(params_beta1, params_heat):
    with pytest.raises(kernels.KernelError):
        kernels.build_y_profile_subtracted(params_beta1)  # beta = 1
    with pytest.raises(kernels.KernelError):
        kernels.build_y_profile_subtracted(params_heat)  # alpha = 1


@given(
    a=st.floats(0.2, 0.9),
    lam=st.floats(0.05, 20.0),
    T=st.floats(0.5, 20.0),
)
@settings(max_examples=10)
def test_time_integral_identity(a, lam, T):
    # int_0^T t^{a-1} E_{a,a}(-lam t^a) dt = (1 - E_a(-lam T^a)) / lam,
    # cross-checked against adaptive quadrature of the left-hand side in the
    # substituted variable tau = t^a (removes the endpoint singularity)
    lhs, err = quad(
        lambda tau: mittag_leffler(a, a, -lam * tau) / a,
        0.0,
        T**a,
        limit=200,
    )
    rhs = (1.0 - mittag_leffler(a, 1.0, -lam * T**a)) / lam
    assert lhs == pytest.approx(rhs, rel=1e-8)


def test_cache_reuse(params_ref, tmp_path):
    cdir = str(tmp_path)
    p1 = kernels.build_y_profile(params_ref, cache_dir=cdir)
    p2 = kernels.build_y_profile(params_ref, cache_dir=cdir)  # loaded from disk
    assert np.array_equal(p1.values.samples, p2.values.samples)
    assert p2.kappa == pytest.approx(p1.kappa, rel=1e-14)
    assert p2.constant_A == pytest.approx(p1.constant_A, rel=1e-14)
    assert p2.bound_report["exterior_slope"] == pytest.approx(
        p1.bound_report["exterior_slope"], rel=1e-12
    )


def test_profile_positivity(g_profile_ref, g_profile_beta1):
    for prof in (g_profile_ref, g_profile_beta1):
        assert prof.values.samples[0] > 0
        assert np.all(prof.values.samples >= 0)

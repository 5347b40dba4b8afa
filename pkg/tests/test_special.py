import math

import mpmath
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.special import erfcx

from fracasym.special import (
    SpecialFunctionError,
    bessel_j_half,
    gamma_fn,
    ml_tail_coefficient,
    mittag_leffler,
)


def test_gamma_basic():
    assert gamma_fn(0.5) == pytest.approx(math.sqrt(math.pi), rel=1e-14)
    assert gamma_fn(5.0) == pytest.approx(24.0, rel=1e-14)
    with pytest.raises(SpecialFunctionError):
        gamma_fn(-2.0)
    with pytest.raises(SpecialFunctionError):
        gamma_fn(0.0)


def test_ml_half_order_vs_erfcx():
    # E_{1/2,1}(-x) = e^{x^2} erfc(x) = erfcx(x)
    x = np.geomspace(1e-3, 50.0, 200)
    got = mittag_leffler(0.5, 1.0, -x)
    ref = erfcx(x)
    assert np.max(np.abs(got - ref) / ref) < 1e-10


def test_ml_classical_exponential():
    x = np.geomspace(1e-3, 30.0, 50)
    got = mittag_leffler(1.0, 1.0, -x)
    assert np.max(np.abs(got - np.exp(-x))) < 1e-12


@pytest.mark.parametrize("a", [0.3, 0.5, 0.7, 0.9])
@pytest.mark.parametrize("second", ["one", "a"])
def test_ml_vs_mpmath(a, second):
    b = 1.0 if second == "one" else a
    rng = np.random.default_rng(12345)
    xs = 10.0 ** rng.uniform(-3, 4, size=12)
    got = mittag_leffler(a, b, -xs)
    for x, g in zip(xs, got):
        ref = float(mpmath.re(mpmath.mp.mpf(1) * _mp_ml(a, b, -x)))
        assert g == pytest.approx(ref, rel=1e-8, abs=1e-14)


def _mp_ml(a, b, z):
    with mpmath.workdps(40):
        return mpmath.nsum(
            lambda k: mpmath.mpf(z) ** k / mpmath.gamma(b + a * k),
            [0, mpmath.inf],
            method="d",
        ) if abs(z) < 5 else _mp_ml_int(a, b, z)


def _mp_ml_int(a, b, z):
    # collapsed contour integral for z < 0, same representation as the
    # implementation but in 40-digit arithmetic with adaptive quadrature
    y = -z
    with mpmath.workdps(40):
        def f(r):
            ra = r**a
            num = y * mpmath.sin(mpmath.pi * (b - a)) + ra * mpmath.sin(mpmath.pi * b)
            den = ra * ra + 2 * y * ra * mpmath.cos(mpmath.pi * a) + y * y
            return mpmath.e ** (-r) * r ** (a - b) * num / den

        return mpmath.quad(f, [0, 1, 10, 60]) / mpmath.pi


def test_ml_tail_coefficient_values():
    # C = -1/Gamma(-a); at a = 1/2, Gamma(-1/2) = -2 sqrt(pi)
    C = ml_tail_coefficient(0.5)
    assert C == pytest.approx(1.0 / (2.0 * math.sqrt(math.pi)), rel=1e-14)
    # large-argument law x^2 E_{a,a}(-x) -> C, e.g. ~0.2820948 at a = 1/2
    x = 1e6
    assert mittag_leffler(0.5, 0.5, -x) * x**2 == pytest.approx(C, rel=1e-3)


def test_ml_tail_second_order():
    # E_{a,a}(-x) ~ C/x^2 exactly at leading order (the 1/x term vanishes
    # since 1/Gamma(0) = 0); check the ratio at large x
    for a in (0.3, 0.5, 0.8):
        x = 1e8
        lead = ml_tail_coefficient(a) / x**2
        assert mittag_leffler(a, a, -x) == pytest.approx(lead, rel=1e-3)


def test_ml_domain_errors():
    with pytest.raises(SpecialFunctionError):
        mittag_leffler(1.5, 1.0, -1.0)
    with pytest.raises(SpecialFunctionError):
        mittag_leffler(0.5, 2.0, -1.0)
    with pytest.raises(SpecialFunctionError):
        mittag_leffler(0.5, 1.0, 1.0)  # positive argument
    with pytest.raises(SpecialFunctionError):
        mittag_leffler(1.0, 0.5, -1.0)
    with pytest.raises(SpecialFunctionError):
        ml_tail_coefficient(1.0)


def test_bessel_half_closed_forms():
    # J_{1/2}(x) = sqrt(2/(pi x)) sin x
    assert bessel_j_half(0.5, math.pi / 2.0) == pytest.approx(2.0 / math.pi, rel=1e-13)
    # J_{3/2}(x) = sqrt(2/(pi x)) (sin x / x - cos x); at x = pi: sqrt(2/pi^2)*1
    assert bessel_j_half(1.5, math.pi) == pytest.approx(
        math.sqrt(2.0) / math.pi, rel=1e-13
    )


def test_bessel_series_matches_recurrence():
    # the two branches must agree across the switch point x = 1.5
    from scipy.special import jv

    x = np.linspace(0.05, 3.0, 60)
    for order in (0.5, 1.5, 2.5, 3.5):
        got = bessel_j_half(order, x)
        assert np.max(np.abs(got - jv(order, x))) < 1e-12


def test_bessel_domain_errors():
    with pytest.raises(SpecialFunctionError):
        bessel_j_half(1.0, 1.0)
    with pytest.raises(SpecialFunctionError):
        bessel_j_half(0.5, -1.0)


@given(a=st.floats(0.05, 0.99), x=st.floats(1e-6, 1e9))
def test_ml_positive_and_bounded(a, x):
    # E_a(-x) is completely monotone: in (0, 1] and positive
    v = mittag_leffler(a, 1.0, -x)
    assert 0.0 < v <= 1.0


@given(a=st.floats(0.1, 0.95))
@settings(max_examples=15)
def test_ml_monotone_in_x(a):
    x = np.geomspace(1e-4, 1e6, 200)
    v = mittag_leffler(a, 1.0, -x)
    assert np.all(np.diff(v) < 0)
    vaa = mittag_leffler(a, a, -x)
    assert np.all(vaa > 0)


@given(
    a=st.floats(0.2, 0.9),
    lam=st.floats(0.01, 100.0),
    t=st.floats(0.5, 50.0),
)
@settings(max_examples=15)
def test_ml_derivative_identity(a, lam, t):
    # d/dt E_a(-lam t^a) = -lam t^{a-1} E_{a,a}(-lam t^a), checked by a
    # centered difference
    h = 1e-5 * t
    num = (
        mittag_leffler(a, 1.0, -lam * (t + h) ** a)
        - mittag_leffler(a, 1.0, -lam * (t - h) ** a)
    ) / (2.0 * h)
    ana = -lam * t ** (a - 1.0) * mittag_leffler(a, a, -lam * t**a)
    assert num == pytest.approx(ana, rel=1e-5, abs=1e-12)

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from awgnbound.specfun import binary_entropy, g, g_derivatives, pdf_std_normal, q_function
from awgnbound import verify

from conftest import mp_g, mp_psi, mp_q

# expected values below were produced with mpmath at 50 digits


def test_pdf_values():
    assert pdf_std_normal(0.0) == pytest.approx(0.3989422804014327, rel=1e-15)
    assert pdf_std_normal(1.7) == pdf_std_normal(-1.7)
    assert pdf_std_normal(2.0) == pytest.approx(0.05399096651318806, rel=1e-15)


def test_q_values():
    assert q_function(0.0) == 0.5
    assert q_function(2.0) == pytest.approx(0.022750131948179207, rel=1e-14)
    tail = q_function(40.0)
    assert 0.0 <= tail <= 1e-300


@pytest.mark.parametrize("x", [-3.0, -0.5, 0.0, 0.3, 1.0, 5.0])
def test_scalar_and_array_paths_agree(x):
    arr = np.array([x])
    assert q_function(x) == pytest.approx(q_function(arr)[0], rel=1e-15)
    assert g(x) == pytest.approx(g(arr)[0], rel=1e-13, abs=1e-300)


def test_q_relative_accuracy_against_mpmath():
    xs = np.linspace(0.0, 37.5, 751)
    got = q_function(xs)
    worst = max(abs(float((got[i] - mp_q(x)) / mp_q(x))) for i, x in enumerate(xs))
    assert worst <= 1e-12


def test_q_deep_tail_never_negative():
    xs = np.linspace(37.5, 60.0, 50)
    vals = q_function(xs)
    assert np.all(vals >= 0)
    assert np.all(np.diff(vals) <= 0)


def test_g_values():
    assert g(0.0) == 0.0
    assert g(2.0) == pytest.approx(-0.016981405233659275, rel=1e-13)
    assert abs(g(30.0)) < 1e-100
    assert g(30.0) < 0


def test_g_relative_accuracy_against_mpmath():
    us = np.concatenate([np.linspace(1e-4, 10, 400), np.linspace(10, 37.5, 200)])
    got = g(us)
    worst = max(abs(float((got[i] - mp_g(u)) / mp_g(u))) for i, u in enumerate(us))
    assert worst <= 1e-9


def test_g_negative_argument_matches_formula():
    for u in (-0.5, -2.0, -6.0):
        assert g(u) == pytest.approx(float(mp_g(u)), rel=1e-14)


def test_g_derivative_values():
    assert g_derivatives(0.0, 1) == pytest.approx(-0.3989422804014327, rel=1e-15)
    assert g_derivatives(0.0, 4) == 0.0
    assert g_derivatives(1.0, 1) == pytest.approx(0.07533978334377075, rel=1e-13)
    assert g_derivatives(1.0, 1) == pytest.approx(float(2 * mp_q(1) - mp_psi(1)), rel=1e-13)


@pytest.mark.parametrize("order", [0, 5, -1, 2.5])
def test_g_derivative_rejects_order(order):
    with pytest.raises(ValueError):
        g_derivatives(1.0, order)


def test_g_higher_derivatives_by_differencing_lower_ones():
    # g''' and g'''' from central differences of the closed-form g'' and g'''
    u = np.linspace(0.1, 5.0, 50)
    h = 1e-5
    d3 = (g_derivatives(u + h, 2) - g_derivatives(u - h, 2)) / (2 * h)
    d4 = (g_derivatives(u + h, 3) - g_derivatives(u - h, 3)) / (2 * h)
    np.testing.assert_allclose(d3, g_derivatives(u, 3), atol=1e-8)
    np.testing.assert_allclose(d4, g_derivatives(u, 4), atol=1e-8)


def test_binary_entropy_values():
    assert binary_entropy(0.5) == pytest.approx(math.log(2), rel=1e-15)
    assert binary_entropy(0.0) == 0.0
    assert binary_entropy(1.0) == 0.0
    assert binary_entropy(0.1) == pytest.approx(0.3250829733914482, rel=1e-14)


@pytest.mark.parametrize("p", [-0.1, 1.1, float("nan")])
def test_binary_entropy_rejects(p):
    with pytest.raises(ValueError):
        binary_entropy(p)


@given(st.floats(0.0, 1.0))
def test_binary_entropy_symmetric_and_bounded(p):
    h = binary_entropy(p)
    assert 0.0 <= h <= math.log(2) + 1e-15
    assert h == pytest.approx(binary_entropy(1.0 - p), abs=1e-15)


@given(st.floats(-8.0, 8.0))
def test_q_reflection(x):
    assert q_function(x) + q_function(-x) == pytest.approx(1.0, abs=1e-14)


@given(st.floats(1e-6, 30.0))
@settings(max_examples=200)
def test_tail_bounds_bracket_q(x):
    q, psi = q_function(x), pdf_std_normal(x)
    assert x * q < psi
    assert q > x * psi / (1 + x * x)


@pytest.mark.parametrize(
    "suite",
    [verify.g_properties, verify.tail_inequalities, verify.g_finite_differences, verify.q_symmetry],
    ids=lambda s: s.__name__,
)
def test_property_suites(suite):
    res = suite()
    assert res.passed, res.line()

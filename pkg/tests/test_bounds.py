import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from awgnbound import bounds, verify
from awgnbound.bounds import (
    Regime,
    beta_star,
    mckellips_bound,
    r_of_p,
    shannon_bound,
    sigma2_star,
    thangaraj_bound,
    theorem_bound,
    w_objective,
    w_term,
)

from conftest import mp_g, mp_q

# mpmath (50 digits) reference values at P = 1
THANGARAJ_1 = 0.34572785880413218
SIGMA2_1 = 0.96751525404618614
W_1 = -0.0086316731134711427
THEOREM_1 = 0.33709618569066104


def test_shannon_values():
    assert shannon_bound(1.0) == pytest.approx(0.34657359027997264, rel=1e-15)
    assert shannon_bound(3.0) == pytest.approx(math.log(2), rel=1e-15)
    assert shannon_bound(math.e ** 2 - 1) == pytest.approx(1.0, rel=1e-15)


def test_mckellips_values():
    assert mckellips_bound(math.pi * math.e / 2) == pytest.approx(math.log(2), rel=1e-15)
    assert mckellips_bound(1.0) == pytest.approx(0.39470168914087423, rel=1e-14)
    assert 0 < mckellips_bound(1e-12) < 1e-5


def test_beta_values():
    assert beta_star(1e6) == pytest.approx(0.5, abs=1e-12)
    assert beta_star(1.0) == pytest.approx(0.4772498680518208, rel=1e-14)
    assert 0 < beta_star(1e-12) < 1e-5


def test_thangaraj_values(mp):
    assert thangaraj_bound(1.0) == pytest.approx(THANGARAJ_1, rel=1e-13)
    p = math.pi * math.e / 2
    b = 0.5 - float(mp_q(2 * mp.sqrt(p)))
    assert thangaraj_bound(p) == pytest.approx(-b * math.log(b) - (1 - b) * math.log(1 - b), rel=1e-12)
    assert thangaraj_bound(p) < math.log(2)
    assert -1e-4 < thangaraj_bound(1e-10) < 1e-3


def test_sigma2_values():
    assert sigma2_star(1e-16) == pytest.approx(1.0, abs=1e-7)
    assert sigma2_star(1.0) == pytest.approx(SIGMA2_1, abs=1e-12)
    assert sigma2_star(1e6) == pytest.approx(1.0, abs=1e-12)


def test_sigma2_from_definition():
    two_a = 2.0
    expect = 1 + 2 * float(mp_g(two_a)) / (1 + 2 * float(mp_q(two_a)))
    assert sigma2_star(1.0) == pytest.approx(expect, rel=1e-13)


def test_w_values():
    assert abs(w_term(1e6)) <= 1e-12
    assert w_term(1.0) == pytest.approx(W_1, abs=1e-12)
    at_one = w_objective(1.0, 1.0)
    assert at_one == pytest.approx(float(mp_g(2)) / 2, rel=1e-12)
    assert w_term(1.0) <= at_one


def test_regime_switch():
    assert r_of_p(10.0) == (mckellips_bound(10.0), Regime.HIGH_P)
    assert r_of_p(1.0) == (thangaraj_bound(1.0), Regime.LOW_P)
    boundary = 10 ** (bounds.REGIME_THRESHOLD_DB / 10)
    assert r_of_p(boundary)[1] is Regime.HIGH_P
    assert r_of_p(boundary * (1 - 1e-12))[1] is Regime.LOW_P


def test_theorem_point_at_zero_db():
    bp = theorem_bound(1.0)
    assert bp.theorem_nats == pytest.approx(THEOREM_1, abs=1e-12)
    assert bp.theorem_nats == pytest.approx(0.33705, abs=1e-4)
    assert bp.combined_nats == bp.theorem_nats < bp.shannon_nats
    assert bp.combined_nats == min(bp.theorem_nats, bp.shannon_nats)
    assert bp.regime is Regime.LOW_P
    assert 0 < bp.sigma2 <= 1 and 0 <= bp.beta < 0.5


def test_theorem_tiny_and_large_power():
    bp = theorem_bound(1e-8)
    assert abs(bp.combined_nats) < 1e-6
    bp = theorem_bound(100.0)
    assert bp.combined_nats < shannon_bound(100.0)
    assert bp.regime is Regime.HIGH_P


@pytest.mark.parametrize(
    "fn", [shannon_bound, mckellips_bound, beta_star, thangaraj_bound, sigma2_star, w_term,
           r_of_p, theorem_bound]
)
@pytest.mark.parametrize("p", [0.0, -1.0, float("nan"), float("inf")])
def test_rejects_nonpositive_power(fn, p):
    with pytest.raises(ValueError):
        fn(p)


def test_array_inputs_match_scalar():
    p = np.array([1e-3, 0.5, 1.0, 10.0])
    np.testing.assert_allclose(w_term(p), [w_term(float(x)) for x in p], rtol=1e-14)
    np.testing.assert_allclose(thangaraj_bound(p), [thangaraj_bound(float(x)) for x in p], rtol=1e-14)


@given(st.floats(-30.0, 40.0))
def test_monotone_in_power(p_db):
    p = 10 ** (p_db / 10)
    q = p * 1.01
    assert shannon_bound(q) > shannon_bound(p)
    assert mckellips_bound(q) > mckellips_bound(p)
    assert beta_star(q) >= beta_star(p)


@given(st.floats(-30.0, 40.0))
def test_bound_point_invariants(p_db):
    bp = theorem_bound(10 ** (p_db / 10))
    assert bp.combined_nats == min(bp.theorem_nats, bp.shannon_nats)
    assert bp.theorem_nats <= bp.prior_nats
    assert 0 < bp.sigma2 <= 1
    assert 0 <= bp.beta <= 0.5


def test_low_power_w_decays_like_sqrt_p():
    # W ~ g(2 sqrt P)/2 ~ -sqrt(P) psi(0): it vanishes, but only like sqrt(P)
    for p in (1e-12, 1e-10, 1e-8):
        assert w_term(p) / math.sqrt(p) == pytest.approx(-1 / math.sqrt(2 * math.pi), rel=1e-3)


def test_high_power_limits():
    for p in (1e4, 1e5, 1e8):
        assert abs(w_term(p)) <= 1e-6
        assert abs(sigma2_star(p) - 1) <= 1e-6


@pytest.mark.parametrize(
    "suite",
    [verify.w_sign, verify.dominance, verify.sigma2_optimality, verify.asymptotic_collapse,
     verify.regime_jump],
    ids=lambda s: s.__name__,
)
def test_property_suites(suite):
    res = suite()
    assert res.passed, res.line()

import math

import numpy as np
import pytest

from awgnbound import bounds
from awgnbound.oracle import blahut_arimoto, build_grid, capacity_nats, eb_n0_db


@pytest.fixture(scope="module")
def unit_run():
    return blahut_arimoto(build_grid(1.0, 201, 4000), tol=1e-9)


def test_grid_validation():
    with pytest.raises(ValueError):
        build_grid(1.0, 200, 4000)
    with pytest.raises(ValueError):
        build_grid(1.0, 201, 100)
    with pytest.raises(ValueError):
        build_grid(1.0, 201, 4000, y_lo=-5.0)
    with pytest.raises(ValueError):
        build_grid(0.0, 201, 4000)


def test_grid_shape_and_rows():
    grid = build_grid(2.0, 101, 1000)
    assert grid.kernel.shape == (101, 1000)
    np.testing.assert_allclose(grid.kernel.sum(axis=1), 1.0, rtol=1e-14)
    assert grid.inputs[50] == 0.0
    assert grid.inputs[0] == -2.0 and grid.inputs[-1] == 2.0
    assert grid.y_lo == -10.0 and grid.y_hi == 10.0


def test_regression_unit_amplitude(unit_run):
    assert unit_run.converged
    assert unit_run.value_nats == pytest.approx(0.33683082034683, abs=1e-9)
    assert unit_run.lower_nats <= unit_run.upper_nats <= unit_run.lower_nats + 1e-9


def test_optimal_law_sits_on_the_edges(unit_run):
    # at A = 1 the capacity-achieving input is (essentially) equiprobable +/-A
    r = unit_run.input_distribution
    assert r[0] + r[-1] > 0.99


def test_law_is_symmetric(unit_run):
    r = unit_run.input_distribution
    assert 0.5 * np.abs(r - r[::-1]).sum() <= 1e-6


def test_lower_certificate_is_monotone(unit_run):
    h = np.array(unit_run.history)
    assert np.all(np.diff(h) >= -1e-15)


def test_plain_mode_monotone_and_consistent():
    grid = build_grid(0.5, 21, 1000)
    plain = blahut_arimoto(grid, tol=1e-6, accelerate=False)
    fast = blahut_arimoto(grid, tol=1e-9)
    assert plain.converged and fast.converged
    assert np.all(np.diff(plain.history) >= -1e-15)
    assert plain.lower_nats <= fast.upper_nats + 1e-12
    assert fast.lower_nats <= plain.upper_nats + 1e-12


def test_non_convergence_is_reported():
    res = blahut_arimoto(build_grid(1.0, 21, 1000), tol=1e-12, max_iter=3, accelerate=False)
    assert not res.converged
    assert res.iterations <= 3


def test_init_validated():
    grid = build_grid(1.0, 21, 1000)
    with pytest.raises(ValueError):
        blahut_arimoto(grid, init=np.ones(5))
    with pytest.raises(ValueError):
        blahut_arimoto(grid, init=-np.ones(21))
    with pytest.raises(ValueError):
        blahut_arimoto(grid, tol=0.0)


@pytest.mark.parametrize("a", [0.5, 1.0, 2.0, 4.0])
def test_grid_refinement_is_stable(a):
    coarse = capacity_nats(a, tol=1e-9, max_doublings=0)
    fine = capacity_nats(a, tol=1e-9, max_doublings=1)
    assert abs(fine.value_nats - coarse.value_nats) <= 1e-5


def test_small_amplitude_quadratic_regime():
    # capacity ~ A^2 / 2 when A is small
    res = capacity_nats(0.05, tol=1e-10)
    assert res.value_nats == pytest.approx(0.05 ** 2 / 2, rel=2e-3)


@pytest.mark.parametrize("a", [0.5, 2.0])
def test_capacity_below_bounds(a):
    c = capacity_nats(a, tol=1e-9).value_nats
    bp = bounds.theorem_bound(a * a)
    assert c <= bp.combined_nats + 1e-6
    assert c <= bp.prior_nats + 1e-6


def test_eb_n0():
    assert eb_n0_db(1.0, 0.5) == pytest.approx(0.0, abs=1e-15)
    assert eb_n0_db(2.0, 0.5) == pytest.approx(10 * math.log10(2))
    with pytest.raises(ValueError):
        eb_n0_db(0.0, 1.0)
    with pytest.raises(ValueError):
        eb_n0_db(1.0, 0.0)


def test_unit_amplitude_matches_binary_input_capacity(unit_run):
    # at A = 1 the optimal law is +/-1 equiprobable, whose rate is a 1-D integral
    from scipy import integrate

    def integrand(y):
        return math.exp(-0.5 * (y - 1) ** 2) / math.sqrt(2 * math.pi) * (
            math.log(2.0) - math.log1p(math.exp(-2 * y)))

    binary = integrate.quad(integrand, -40, 40, epsabs=1e-14)[0]
    assert binary == pytest.approx(0.33683082034683165, abs=1e-13)
    assert unit_run.value_nats == pytest.approx(binary, abs=1e-9)

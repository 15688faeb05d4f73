"""Uniform-body / Gaussian-tail test densities and the divergence bound they give.

For a test output density ``q`` the capacity is at most
``max_x D(N(x, 1) || q)`` over admissible inputs ``|x| <= A``. This module
evaluates that divergence in closed form and by quadrature for the family

    q(y) = beta / (2A)                                     |y| <= A
    q(y) = (1 - beta) N(|y| - A; 0, sigma2)                |y| >  A

and solves the min over ``(beta, sigma2)`` of the max over ``x`` numerically.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy import integrate

from . import bounds
from ._optim import golden_section_max, golden_section_min
from .errors import QuadratureError
from .specfun import g, q_function

__all__ = [
    "TestDensityParams",
    "q_density",
    "log_q_density",
    "kl_conditional_closed",
    "kl_conditional_numeric",
    "lemma_gap",
    "max_divergence",
    "minmax_bound_numeric",
    "MinMaxResult",
    "minmax_solve",
]

_LOG_SQRT_2PI = 0.5 * math.log(2.0 * math.pi)
_LOG_SQRT_2PI_E = 0.5 * math.log(2.0 * math.pi * math.e)

BETA_BOX = (0.01, 0.99)
SIGMA2_BOX = (0.5, 1.5)


@dataclass(frozen=True)
class TestDensityParams:
    """Amplitude ``a``, body mass ``beta`` and tail variance ``sigma2``."""

    __test__ = False  # keep pytest from collecting this as a test class

    a: float
    beta: float
    sigma2: float

    def __post_init__(self):
        if not self.a > 0:
            raise ValueError(f"a must be > 0, got {self.a}")
        if not 0.0 < self.beta < 1.0:
            raise ValueError(f"beta must lie in (0, 1), got {self.beta}")
        if not self.sigma2 > 0:
            raise ValueError(f"sigma2 must be > 0, got {self.sigma2}")


def log_q_density(y, params: TestDensityParams):
    y = np.abs(np.asarray(y, dtype=float))
    a, beta, s2 = params.a, params.beta, params.sigma2
    body = math.log(beta / (2.0 * a))
    tail = (
        math.log1p(-beta)
        - _LOG_SQRT_2PI
        - 0.5 * math.log(s2)
        - (y - a) ** 2 / (2.0 * s2)
    )
    val = np.where(y <= a, body, tail)
    return float(val) if val.ndim == 0 else val


def q_density(y, params: TestDensityParams):
    """Test density value at ``y`` (even in ``y``)."""
    val = np.exp(log_q_density(y, params))
    return float(val) if np.ndim(val) == 0 else val


def _check_x(x, a):
    if np.any(np.abs(np.asarray(x)) > a):
        raise ValueError(f"input must satisfy |x| <= A = {a}")


def _kl_closed(x, a, beta, sigma2):
    # unchecked, broadcasting core of kl_conditional_closed
    s = q_function(a - x) + q_function(a + x)
    gs = g(a - x) + g(a + x)
    d = sigma2 - 1.0
    penalty = math.log1p(d) - d / sigma2  # log s + 1/s - 1
    return (
        math.log(2.0 * a / beta) - _LOG_SQRT_2PI_E
        + (math.log(beta / (1.0 - beta)) + _LOG_SQRT_2PI_E - math.log(2.0 * a)) * s
        + 0.5 * penalty * s
        + gs / (2.0 * sigma2)
    )


def kl_conditional_closed(x, params: TestDensityParams):
    """``D(N(x, 1) || q)`` in nats, in closed form.

    Four pieces: the uniform-body cost, the tail-mass correction
    ``log(beta sqrt(2 pi e) / ((1 - beta) 2A)) [Q(A-x) + Q(A+x)]``, the tail
    variance penalty ``(log s + 1/s - 1) [Q(A-x) + Q(A+x)] / 2`` and the tail
    moment term ``[g(A-x) + g(A+x)] / (2 s)``.
    """
    _check_x(x, params.a)
    x = np.asarray(x, dtype=float)
    val = _kl_closed(x, params.a, params.beta, params.sigma2)
    return float(val) if val.ndim == 0 else val


def kl_conditional_numeric(x: float, params: TestDensityParams, epsabs: float = 1e-10) -> float:
    """Same divergence as :func:`kl_conditional_closed`, by adaptive quadrature.

    Integrates ``psi(y - x) log(psi(y - x) / q(y))`` over the hull of
    ``x +/- 12`` and ``+/-(A + 12 sigma)`` with ``+/-A`` as breakpoints.
    """
    _check_x(x, params.a)
    x = float(x)
    a = params.a
    sig = math.sqrt(params.sigma2)
    lo = min(x - 12.0, -a - 12.0 * sig)
    hi = max(x + 12.0, a + 12.0 * sig)

    def integrand(y):
        z = y - x
        log_psi = -_LOG_SQRT_2PI - 0.5 * z * z
        return math.exp(log_psi) * (log_psi - log_q_density(y, params))

    # three pieces so each is smooth; tolerance shared between them
    edges = [lo, -a, a, hi]
    total = 0.0
    err = 0.0
    for left, right in zip(edges[:-1], edges[1:]):
        val, e = integrate.quad(integrand, left, right, epsabs=epsabs / 3, epsrel=0.0, limit=500)
        total += val
        err += e
    if err > epsabs:
        raise QuadratureError(f"quadrature error estimate {err:.3g} exceeds {epsabs:.3g}")
    return total


def lemma_gap(a, x):
    """``g(2a) - g(a - x) - g(a + x)``; non-negative on ``0 <= x <= a``."""
    a_arr = np.asarray(a, dtype=float)
    x_arr = np.asarray(x, dtype=float)
    if np.any(a_arr <= 0):
        raise ValueError("a must be > 0")
    if np.any((x_arr < 0) | (x_arr > a_arr)):
        raise ValueError("x must lie in [0, a]")
    val = g(2.0 * a_arr) - (g(a_arr - x_arr) + g(a_arr + x_arr))
    return float(val) if np.ndim(val) == 0 else val


def max_divergence(a: float, beta: float, sigma2: float, n_grid: int = 401, tol: float = 1e-10):
    """Max over ``x in [0, a]`` of the closed-form divergence.

    Dense grid, then golden-section refinement between the neighbours of the
    best grid point. Returns ``(x_max, value)``.
    """
    xs = np.linspace(0.0, a, n_grid)
    vals = _kl_closed(xs, a, beta, sigma2)
    k = int(np.argmax(vals))
    lo, hi = xs[max(k - 1, 0)], xs[min(k + 1, n_grid - 1)]
    x_best, v_best = golden_section_max(
        lambda t: float(_kl_closed(float(t), a, beta, sigma2)), lo, hi, tol=tol * max(a, 1.0)
    )
    if vals[k] > v_best:
        return float(xs[k]), float(vals[k])
    return x_best, v_best


@dataclass(frozen=True)
class MinMaxResult:
    a: float
    value: float
    beta: float
    sigma2: float
    x_max: float


def minmax_solve(a: float, tol: float = 1e-8, n_grid: int = 401) -> MinMaxResult:
    """Minimise the worst-case divergence over ``(beta, sigma2)`` in the box.

    The worst-case divergence is jointly convex in ``(beta, 1/sigma2)``, so an
    exact line search over ``beta`` nested inside a golden-section search over
    ``sigma2`` converges to the box minimum. The analytic relaxed optimum
    seeds the result and the search never returns anything worse.
    """
    if not a > 0:
        raise ValueError("a must be > 0")

    def worst(beta, s2):
        return max_divergence(a, beta, s2, n_grid=n_grid)[1]

    def best_beta(s2):
        return golden_section_min(lambda b: worst(b, s2), *BETA_BOX, tol=tol)

    p = a * a
    s2_0 = float(np.clip(bounds.sigma2_star(p), *SIGMA2_BOX))
    k = math.sqrt(2.0 * p / (math.pi * math.e))
    warm = []
    for b0 in (bounds.beta_star(p), k / (1.0 + k)):
        b0 = float(np.clip(b0, *BETA_BOX))
        warm.append((worst(b0, s2_0), b0, s2_0))

    s2_opt, _ = golden_section_min(lambda s2: best_beta(s2)[1], *SIGMA2_BOX, tol=tol)
    b_opt, v_opt = best_beta(s2_opt)
    candidates = warm + [(v_opt, b_opt, s2_opt)]
    v, b, s2 = min(candidates)
    x_max, v = max_divergence(a, b, s2, n_grid=n_grid)
    return MinMaxResult(a=a, value=v, beta=b, sigma2=s2, x_max=x_max)


def minmax_bound_numeric(a: float, tol: float = 1e-8) -> float:
    """Direct min-max divergence bound on the capacity at amplitude ``a``, in nats."""
    return minmax_solve(a, tol=tol).value

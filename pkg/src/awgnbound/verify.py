"""Property suites: inequalities, closed-form identities and dominance checks.

Each suite returns a :class:`SuiteResult` carrying its worst-case margin
(positive means the property holds with room to spare). ``awgnbound verify``
runs :data:`SUITES`; the test-suite calls the same functions.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy import optimize

from . import bounds
from .specfun import g, g_derivatives, pdf_std_normal, q_function
from .testdensity import (
    TestDensityParams,
    kl_conditional_closed,
    kl_conditional_numeric,
    lemma_gap,
)


@dataclass(frozen=True)
class SuiteResult:
    name: str
    passed: bool
    margin: float
    detail: str

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"{status}  {self.name:<24} margin={self.margin:.3e}  {self.detail}"


def p_grid_db(lo=-30.0, hi=40.0, step=0.1) -> np.ndarray:
    n = int(round((hi - lo) / step)) + 1
    return np.linspace(lo, hi, n)


def g_properties() -> SuiteResult:
    u = np.round(np.arange(1, 1001) * 0.01, 10)  # (0, 10]
    worst_neg = float(np.max(g(u)))  # must be < 0
    u1 = u[u >= 1.0]
    worst_d1 = float(np.min(g_derivatives(u1, 1)))  # must be >= 0
    u4 = np.arange(0, 224) * 0.01  # [0, sqrt 5)
    d4 = g_derivatives(u4, 4)
    worst_d4 = float(np.min(d4[1:]))
    margin = min(-worst_neg, worst_d1, worst_d4)
    passed = worst_neg < 0 and worst_d1 >= 0 and worst_d4 > 0 and d4[0] == 0.0
    return SuiteResult(
        "g_properties", passed, margin,
        f"max g={worst_neg:.3e}, min g'={worst_d1:.3e} on [1,10], min g''''={worst_d4:.3e} on (0,sqrt5)",
    )


def tail_inequalities() -> SuiteResult:
    x = np.arange(1, 1001) * 0.01
    q, psi = q_function(x), pdf_std_normal(x)
    # relative margins; both sides decay like psi
    m1 = float(np.min((psi - x * q) / psi))
    m2 = float(np.min((q - x * psi / (1 + x * x)) / psi))
    return SuiteResult(
        "tail_inequalities", m1 > 0 and m2 > 0, min(m1, m2),
        f"min (psi-xQ)/psi={m1:.3e}, min (Q-x psi/(1+x^2))/psi={m2:.3e}",
    )


def g_finite_differences(h=1e-5, atol=1e-6) -> SuiteResult:
    u = np.linspace(0.0, 5.0, 501)
    d1 = (g(u + h) - g(u - h)) / (2 * h)
    d2 = (g(u + h) - 2 * g(u) + g(u - h)) / (h * h)
    e1 = float(np.max(np.abs(d1 - g_derivatives(u, 1))))
    e2 = float(np.max(np.abs(d2 - g_derivatives(u, 2))))
    err = max(e1, e2)
    return SuiteResult("g_finite_differences", err <= atol, atol - err,
                       f"max |fd-g'|={e1:.2e}, max |fd-g''|={e2:.2e}")


def q_symmetry(atol=1e-14) -> SuiteResult:
    x = np.linspace(-8, 8, 1601)
    err = float(np.max(np.abs(q_function(x) + q_function(-x) - 1.0)))
    return SuiteResult("q_symmetry", err <= atol, atol - err, f"max |Q(x)+Q(-x)-1|={err:.2e}")


def lemma_sweep(slack=1e-12, endpoint_tol=1e-13) -> SuiteResult:
    a = 0.05 * np.arange(1, 101)
    j = np.arange(201)
    aa = a[:, None]
    xx = aa * j[None, :] / 200.0
    gap = lemma_gap(aa, xx)
    k = np.unravel_index(np.argmin(gap), gap.shape)
    worst = float(gap[k])
    endpoint = float(np.max(np.abs(lemma_gap(a, a))))
    passed = worst >= -slack and endpoint <= endpoint_tol
    return SuiteResult(
        "lemma_sweep", passed, min(worst + slack, endpoint_tol - endpoint),
        f"min gap={worst:.3e} at a={a[k[0]]:.2f}, x/a={j[k[1]] / 200:.3f}; max |gap(a,a)|={endpoint:.1e}",
    )


def kl_closed_vs_numeric(atol=1e-7, n=5) -> SuiteResult:
    worst, where = 0.0, None
    for a in np.linspace(0.2, 5.0, n):
        for frac in np.linspace(0.0, 1.0, n):
            for beta in np.linspace(0.1, 0.9, n):
                for s2 in np.linspace(0.7, 1.3, n):
                    prm = TestDensityParams(float(a), float(beta), float(s2))
                    x = float(a * frac)
                    err = abs(kl_conditional_closed(x, prm) - kl_conditional_numeric(x, prm))
                    if err > worst:
                        worst, where = err, (round(float(a), 4), round(float(frac), 4), round(float(beta), 4), round(float(s2), 4))
    return SuiteResult("kl_closed_vs_numeric", worst <= atol, atol - worst,
                       f"{n**4} points, max err={worst:.2e} at (A,x/A,beta,s2)={where}")


def sigma2_optimality(arg_tol=1e-6, val_tol=1e-10) -> SuiteResult:
    worst_arg = worst_val = 0.0
    for pdb in p_grid_db():
        p = 10.0 ** (pdb / 10.0)
        res = optimize.minimize_scalar(
            lambda s: bounds.w_objective(s, p), bounds=(0.5, 1.5), method="bounded",
            options={"xatol": 1e-10},
        )
        worst_arg = max(worst_arg, abs(res.x - bounds.sigma2_star(p)))
        worst_val = max(worst_val, abs(res.fun - bounds.w_term(p)))
    passed = worst_arg <= arg_tol and worst_val <= val_tol
    return SuiteResult(
        "sigma2_optimality", passed, min(arg_tol - worst_arg, val_tol - worst_val),
        f"max |argmin-sigma2*|={worst_arg:.2e}, max |min-W|={worst_val:.2e}",
    )


def w_sign() -> SuiteResult:
    p = 10.0 ** (p_grid_db() / 10.0)
    w = bounds.w_term(p)
    at_one = bounds.w_objective(1.0, p)  # = g(2A)/2
    m1 = float(-np.max(w))
    m2 = float(np.min(at_one + 1e-12 - w))
    return SuiteResult("w_sign", m1 >= 0 and m2 >= 0, min(m1, m2),
                       f"max W={-m1:.2e}, min (g(2A)/2 - W)={m2 - 1e-12:.2e}")


def dominance(slack=1e-12) -> SuiteResult:
    worst = math.inf
    worst_p = None
    for pdb in p_grid_db():
        p = 10.0 ** (pdb / 10.0)
        new = bounds.theorem_bound(p).combined_nats
        thang, mck = bounds.prior_combined_bounds(p)
        m = min(thang - new, mck - thang)
        if m < worst:
            worst, worst_p = m, pdb
    return SuiteResult("dominance", worst >= -slack, worst + slack,
                       f"min margin={worst:.2e} at {worst_p:.1f} dB")


def asymptotic_collapse(atol=1e-6) -> SuiteResult:
    """Refined bound against the prior bounds at extreme powers.

    At high power W and sigma2 - 1 vanish outright. At low power W only
    decays like -0.4 sqrt(P), so what collapses there is the combined bound:
    both combined bounds sit on the Shannon curve.
    """
    worst_hi = 0.0
    for p in (1e4, 1e5, 1e6):
        bp = bounds.theorem_bound(p)
        worst_hi = max(worst_hi, abs(bp.theorem_nats - bp.prior_nats), abs(bp.sigma2 - 1.0),
                       abs(bp.w_nats))
    worst_lo = 0.0
    rate_ok = True
    for p in (1e-8, 1e-7, 1e-6):
        bp = bounds.theorem_bound(p)
        thang_comb, _ = bounds.prior_combined_bounds(p)
        worst_lo = max(worst_lo, abs(bp.combined_nats - thang_comb))
        # W -> g(2 sqrt P)/2 ~ -sqrt(P) psi(0) as P -> 0
        rate_ok &= abs(bp.w_nats) <= 0.4 * math.sqrt(p)
    worst = max(worst_hi, worst_lo)
    lit = abs(bounds.w_term(1e-6))
    return SuiteResult(
        "asymptotic_collapse", worst <= atol and rate_ok, atol - worst,
        f"P>=1e4: max |theorem-R|,|sigma2-1|,|W|={worst_hi:.1e}; "
        f"P<=1e-6: max |combined-prior combined|={worst_lo:.1e}, |W(1e-6)|={lit:.2e} <= 0.4 sqrt(P)",
    )


def regime_jump(limit=5e-3) -> SuiteResult:
    p0 = 10.0 ** (bounds.REGIME_THRESHOLD_DB / 10.0)
    below = bounds.thangaraj_bound(p0) + bounds.w_term(p0)
    above = bounds.theorem_bound(p0).theorem_nats
    jump = abs(above - below)
    return SuiteResult("regime_jump", jump < limit, limit - jump,
                       f"|McKellips-Thangaraj| at {bounds.REGIME_THRESHOLD_DB} dB = {jump:.2e}")


def tail_mass_monotone() -> SuiteResult:
    worst = math.inf
    for a in (0.1, 0.5, 1.0, 2.0, 5.0):
        x = np.linspace(0.0, a, 401)
        s = q_function(a - x) + q_function(a + x)
        worst = min(worst, float(np.min(np.diff(s))))
    pen_s = np.linspace(0.01, 3.0, 300)
    pen = np.log(pen_s) + 1 / pen_s - 1
    pen_ok = bool(np.all(pen >= 0)) and float(np.min(pen)) == float(pen[np.argmin(np.abs(pen_s - 1))])
    return SuiteResult("tail_mass_monotone", worst >= -1e-15 and pen_ok, worst,
                       f"min step of Q(A-x)+Q(A+x)={worst:.2e}; log s+1/s-1 >= 0 on (0,3]")


SUITES = [
    g_properties,
    tail_inequalities,
    g_finite_differences,
    q_symmetry,
    lemma_sweep,
    tail_mass_monotone,
    kl_closed_vs_numeric,
    sigma2_optimality,
    w_sign,
    dominance,
    asymptotic_collapse,
    regime_jump,
]


def run_all(suites=SUITES):
    return [suite() for suite in suites]

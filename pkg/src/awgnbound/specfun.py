"""Scalar special functions: normal density, Gaussian tail, the tail-moment
function ``g(u) = u**2 Q(u) - u psi(u)`` and its derivatives, binary entropy.

Everything here accepts floats or numpy arrays and returns the same shape.
Entropies are in nats.

Accuracy contract for :func:`q_function`: relative error below 1e-12 on
``[0, 37.5]`` (backed by the Cephes ``erfc``/``erfcx`` kernels in scipy).
Past that the result is subnormal and only degrades gradually; it never goes
negative. :func:`g` keeps relative error below 1e-12 wherever its value is a
normal double (``u`` up to about 37.5).
"""
import math

import numpy as np
from scipy import special

__all__ = [
    "pdf_std_normal",
    "q_function",
    "g",
    "g_derivatives",
    "binary_entropy",
]

_INV_SQRT_2PI = 1.0 / math.sqrt(2.0 * math.pi)
_SQRT_HALF_PI = math.sqrt(math.pi / 2.0)
_SQRT1_2 = 1.0 / math.sqrt(2.0)
_erfcx = special.erfcx


def _out(value, like):
    if np.ndim(like) == 0:
        return float(value)
    return value


def pdf_std_normal(x):
    """Standard normal density ``exp(-x**2/2) / sqrt(2 pi)``."""
    if isinstance(x, float):
        return _INV_SQRT_2PI * math.exp(-0.5 * x * x)
    x = np.asarray(x, dtype=float)
    return _out(_INV_SQRT_2PI * np.exp(-0.5 * x * x), x)


def q_function(x):
    """Upper tail probability of the standard normal, ``P(N > x)``.

    Never negative; underflows to exactly 0 beyond ``x ~ 38.5``.
    """
    if isinstance(x, float):
        if x > 0:
            return 0.5 * _erfcx(x * _SQRT1_2) * math.exp(-0.5 * x * x)
        return 0.5 * math.erfc(x * _SQRT1_2)
    x = np.asarray(x, dtype=float)
    # right tail through erfcx keeps full relative accuracy down to the
    # bottom of the normal double range
    with np.errstate(under="ignore"):
        tail = 0.5 * special.erfcx(np.abs(x) * _SQRT1_2) * np.exp(-0.5 * x * x)
    return _out(np.where(x > 0, tail, 0.5 * special.erfc(x * _SQRT1_2)), x)


def _mills_ratio(u):
    # Q(u)/psi(u), stable for all u >= 0
    return _SQRT_HALF_PI * special.erfcx(u * _SQRT1_2)


def g(u):
    """Tail-moment function ``u**2 Q(u) - u psi(u)``.

    The two terms cancel for positive ``u``. Arrays use an extended
    precision (80-bit) series on ``0 < u < 4`` and a continued fraction for
    ``u R(u) - 1`` (``R`` the Mills ratio) above that. Absolute error stays
    near 1e-19, so second differences at step 1e-5 stay clean. Python
    floats take a faster double-precision route through ``erfcx`` that agrees
    to a few ulp.
    """
    if isinstance(u, float):
        if u > 0:
            return u * pdf_std_normal(u) * _ur_minus_one_scalar(u)
        return u * u * q_function(u) - u * pdf_std_normal(u)
    u = np.asarray(u, dtype=float)
    out = u * u * q_function(u) - u * pdf_std_normal(u)  # exact enough for u <= 0
    mid = (u > 0) & (u < 4.0)
    if np.any(mid):
        out[mid] = _g_extended(u[mid])
    big = u >= 4.0
    if np.any(big):
        ub = u[big]
        out[big] = ub * pdf_std_normal(ub) * _ur_minus_one(ub)
    return _out(out, u)


_LD_SQRT2 = np.sqrt(np.longdouble(2))
_LD_PI = np.longdouble("3.14159265358979323846264338327950288")
_LD_INV_SQRT_2PI = 1 / np.sqrt(2 * _LD_PI)


def _g_extended(u):
    # erf(x) = 2/sqrt(pi) exp(-x^2) sum_k 2^k x^(2k+1) / (2k+1)!!, all terms positive
    u = u.astype(np.longdouble)
    x = u / _LD_SQRT2
    x2 = x * x
    term = x.copy()
    total = x.copy()
    for k in range(1, 90):
        term = term * (2 * x2) / (2 * k + 1)
        total += term
    e = np.exp(-x2)
    q = (1 - 2 / np.sqrt(_LD_PI) * e * total) / 2
    return (u * u * q - u * e * _LD_INV_SQRT_2PI).astype(float)


def _ur_minus_one(u):
    """``u R(u) - 1`` for ``u >= 0`` without cancellation.

    With ``R(u) = 1/(u + 1/K)`` and ``K = u + 2/(u + 3/(u + ...))``,
    ``u R(u) - 1 = -1 / (K (u + 1/K)) = -1 / (K u + 1)``.
    """
    u = np.asarray(u, dtype=float)
    res = np.empty_like(u)
    small = u < 4.0
    if np.any(small):
        us = u[small]
        res[small] = us * _mills_ratio(us) - 1.0
    if np.any(~small):
        ul = u[~small]
        # Lentz-free backward evaluation; 60 terms is ample for u >= 4
        k = ul.copy()
        for n in range(60, 1, -1):
            k = ul + n / k
        res[~small] = -1.0 / (k * ul + 1.0)
    return res


def _ur_minus_one_scalar(u: float) -> float:
    if u < 4.0:
        return u * _SQRT_HALF_PI * _erfcx(u * _SQRT1_2) - 1.0
    k = u
    for n in range(60, 1, -1):
        k = u + n / k
    return -1.0 / (k * u + 1.0)


def g_derivatives(u, order: int):
    """Derivative of :func:`g` of the given order (1 to 4), in closed form.

    ``g'   = 2u Q(u) - psi(u)``
    ``g''  = 2Q(u) - u psi(u)``
    ``g''' = (u**2 - 3) psi(u)``
    ``g''''= u (5 - u**2) psi(u)``
    """
    if order not in (1, 2, 3, 4):
        raise ValueError(f"order must be 1, 2, 3 or 4, got {order!r}")
    u = np.asarray(u, dtype=float)
    psi = pdf_std_normal(u)
    if order == 1:
        val = 2.0 * u * q_function(u) - psi
    elif order == 2:
        val = 2.0 * q_function(u) - u * psi
    elif order == 3:
        val = (u * u - 3.0) * psi
    else:
        val = u * (5.0 - u * u) * psi
    return _out(val, u)


def binary_entropy(p):
    """Binary entropy in nats with ``0 log 0 = 0``."""
    p = np.asarray(p, dtype=float)
    if np.any(~((p >= 0.0) & (p <= 1.0))):
        raise ValueError("binary_entropy needs p in [0, 1]")
    return _out(special.entr(p) + special.entr(1.0 - p), p)

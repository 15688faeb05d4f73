"""Closed-form capacity upper bounds for the amplitude-constrained AWGN channel.

Noise variance is 1 and ``p`` is the peak power ``A**2``. All values are in
nats. The scalar functions also accept numpy arrays.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .errors import DegenerateParameterError
from .specfun import binary_entropy, g, q_function

__all__ = [
    "REGIME_THRESHOLD_DB",
    "Regime",
    "BoundPoint",
    "shannon_bound",
    "mckellips_bound",
    "beta_star",
    "thangaraj_bound",
    "sigma2_star",
    "w_term",
    "w_objective",
    "r_of_p",
    "theorem_bound",
    "prior_combined_bounds",
]

#: R(P) switches to the McKellips form at and above this peak power (dB).
REGIME_THRESHOLD_DB = 6.303

_TWO_OVER_PI_E = 2.0 / (math.pi * math.e)


class Regime(enum.Enum):
    LOW_P = "LOW_P"
    HIGH_P = "HIGH_P"


@dataclass(frozen=True)
class BoundPoint:
    """Every bound at one peak power, in nats."""

    p: float
    shannon_nats: float
    mckellips_nats: float
    thangaraj_nats: float
    theorem_nats: float
    combined_nats: float
    sigma2: float
    w_nats: float
    beta: float
    regime: Regime

    @property
    def p_db(self) -> float:
        return 10.0 * math.log10(self.p)

    @property
    def prior_nats(self) -> float:
        """The regime-matched prior bound R(P)."""
        if self.regime is Regime.HIGH_P:
            return self.mckellips_nats
        return self.thangaraj_nats


def _check_p(p):
    arr = np.asarray(p, dtype=float)
    if not np.all(np.isfinite(arr)) or np.any(arr <= 0):
        raise ValueError("peak power must be finite and > 0")
    return arr


def _out(value, like):
    return float(value) if np.ndim(like) == 0 else value


def shannon_bound(p):
    """Average-power capacity ``log(1 + P) / 2``."""
    p = _check_p(p)
    return _out(0.5 * np.log1p(p), p)


def mckellips_bound(p):
    """``log(1 + sqrt(2P / (pi e)))``."""
    p = _check_p(p)
    return _out(np.log1p(np.sqrt(_TWO_OVER_PI_E * p)), p)


def beta_star(p):
    """Optimal uniform-body mass ``1/2 - Q(2 sqrt(P))``."""
    p = _check_p(p)
    two_a = 2.0 * np.sqrt(p)
    # 1/2 - Q(x) = P(0 < N < x); erf keeps this accurate for tiny x
    from scipy.special import erf

    return _out(0.5 * erf(two_a / math.sqrt(2.0)), p)


def thangaraj_bound(p):
    """``beta log sqrt(2P/(pi e)) + H(beta)`` with ``beta = beta_star(P)``.

    Defined for every ``P > 0``; only :func:`r_of_p` restricts it to low power.
    """
    p = _check_p(p)
    beta = np.asarray(beta_star(p))
    val = beta * 0.5 * np.log(_TWO_OVER_PI_E * p) + binary_entropy(beta)
    return _out(val, p)


def sigma2_star(p):
    """Tail variance minimising the refinement term,
    ``1 + 2 g(2 sqrt(P)) / (1 + 2 Q(2 sqrt(P)))``.
    """
    p = _check_p(p)
    two_a = 2.0 * np.sqrt(p)
    s2 = 1.0 + 2.0 * g(two_a) / (1.0 + 2.0 * q_function(two_a))
    if np.any(np.asarray(s2) <= 0):
        raise DegenerateParameterError(f"tail variance {s2} is not positive")
    return _out(s2, p)


def w_objective(sigma2, p):
    """Relaxed tail contribution as a function of the tail variance.

    ``(log s + 1/s - 1)(1/2 + Q(2A)) / 2 + g(2A) / (2 s)`` with ``s = sigma2``.
    Its minimiser over ``s`` is :func:`sigma2_star`, its minimum :func:`w_term`.
    """
    p = _check_p(p)
    s = np.asarray(sigma2, dtype=float)
    two_a = 2.0 * np.sqrt(p)
    # log s + 1/s - 1 loses everything to cancellation near s = 1
    d = s - 1.0
    penalty = np.log1p(d) - d / s
    val = 0.5 * penalty * (0.5 + q_function(two_a)) + g(two_a) / (2.0 * s)
    return _out(val, np.broadcast(s, p))


def w_term(p):
    """Refinement term W(P) (never positive)."""
    p = _check_p(p)
    return _out(w_objective(sigma2_star(p), p), p)


def r_of_p(p: float) -> tuple[float, Regime]:
    """Regime-switched prior bound: McKellips at or above 6.303 dB, else Thangaraj."""
    p = float(_check_p(p))
    if 10.0 * math.log10(p) >= REGIME_THRESHOLD_DB:
        return mckellips_bound(p), Regime.HIGH_P
    return thangaraj_bound(p), Regime.LOW_P


def theorem_bound(p: float) -> BoundPoint:
    """All bounds at peak power ``p``, including ``min(R + W, Shannon)``."""
    p = float(_check_p(p))
    r, regime = r_of_p(p)
    w = w_term(p)
    theorem = r + w
    shannon = shannon_bound(p)
    return BoundPoint(
        p=p,
        shannon_nats=shannon,
        mckellips_nats=mckellips_bound(p),
        thangaraj_nats=thangaraj_bound(p),
        theorem_nats=theorem,
        combined_nats=min(theorem, shannon),
        sigma2=sigma2_star(p),
        w_nats=w,
        beta=beta_star(p),
        regime=regime,
    )


def prior_combined_bounds(p: float) -> tuple[float, float]:
    """Combined prior bounds ``(thangaraj_combined, mckellips_combined)``.

    The Thangaraj combined bound uses R(P) (Thangaraj form below the regime
    threshold, McKellips above); both are capped by the Shannon bound.
    """
    r, _ = r_of_p(p)
    shannon = shannon_bound(p)
    return min(r, shannon), min(mckellips_bound(p), shannon)

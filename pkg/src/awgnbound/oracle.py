"""Blahut-Arimoto capacity oracle for the amplitude-constrained AWGN channel.

The channel ``Y = X + N``, ``N ~ N(0, 1)``, ``|X| <= A`` is discretised on a
uniform input grid spanning ``[-A, A]`` and a uniform output grid covering at
least 8 noise standard deviations past the support. Kernel rows are
trapezoid-weighted Gaussian densities, renormalised to exact distributions.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import OracleDegeneracyError

__all__ = [
    "ChannelGrid",
    "CapacityEstimate",
    "build_grid",
    "blahut_arimoto",
    "capacity_nats",
    "eb_n0_db",
]

COVERAGE_SIGMAS = 8.0
LOG_FLOOR = 1e-300


@dataclass(frozen=True)
class ChannelGrid:
    a: float
    inputs: np.ndarray
    outputs: np.ndarray
    kernel: np.ndarray  # kernel[i, j] ~ psi(y_j - x_i) dy, rows sum to 1

    @property
    def n_inputs(self) -> int:
        return self.inputs.size

    @property
    def n_outputs(self) -> int:
        return self.outputs.size

    @property
    def y_lo(self) -> float:
        return float(self.outputs[0])

    @property
    def y_hi(self) -> float:
        return float(self.outputs[-1])


@dataclass
class CapacityEstimate:
    """Result of a Blahut-Arimoto run, in nats.

    ``lower_nats`` is the mutual information of the final input law and
    ``upper_nats`` the largest per-input divergence from its output law; the
    discretised channel's capacity lies between them.
    """

    value_nats: float
    lower_nats: float
    upper_nats: float
    iterations: int
    converged: bool
    input_distribution: np.ndarray
    inputs: np.ndarray | None = None
    history: list = field(default_factory=list, repr=False)

    @property
    def value_bits(self) -> float:
        return self.value_nats / math.log(2.0)


def build_grid(a: float, n_inputs: int, n_outputs: int, y_lo: float | None = None,
               y_hi: float | None = None) -> ChannelGrid:
    """Discretise the channel at amplitude ``a``.

    ``n_inputs`` must be odd so that ``0`` and ``+/-a`` are grid points. The
    output range defaults to ``[-a - 8, a + 8]``.
    """
    if not a > 0:
        raise ValueError("a must be > 0")
    if n_inputs < 3 or n_inputs % 2 == 0:
        raise ValueError(f"n_inputs must be odd and >= 3, got {n_inputs}")
    if n_outputs < 200:
        raise ValueError(f"n_outputs must be >= 200, got {n_outputs}")
    y_lo = -a - COVERAGE_SIGMAS if y_lo is None else y_lo
    y_hi = a + COVERAGE_SIGMAS if y_hi is None else y_hi
    # small slack for the default range computed in floating point
    if y_lo > -a - COVERAGE_SIGMAS + 1e-12 or y_hi < a + COVERAGE_SIGMAS - 1e-12:
        raise ValueError("output range must cover 8 noise standard deviations past +/-a")

    x = np.linspace(-a, a, n_inputs)
    x[n_inputs // 2] = 0.0
    y = np.linspace(y_lo, y_hi, n_outputs)
    dy = (y_hi - y_lo) / (n_outputs - 1)
    weights = np.full(n_outputs, dy)
    weights[[0, -1]] *= 0.5
    z = y[None, :] - x[:, None]
    kernel = np.exp(-0.5 * z * z) / math.sqrt(2.0 * math.pi) * weights
    kernel /= kernel.sum(axis=1, keepdims=True)
    return ChannelGrid(a=float(a), inputs=x, outputs=y, kernel=kernel)


def _row_entropy_terms(kernel):
    with np.errstate(divide="ignore", invalid="ignore"):
        wlogw = np.where(kernel > 0, kernel * np.log(kernel), 0.0)
    return wlogw.sum(axis=1)


def _evaluate(w, neg_row_entropy, r):
    """Output law, per-input divergences and mutual information of ``r``."""
    q = r @ w
    if np.any(q == 0.0):
        zero = q == 0.0
        if np.any(w[r > 0][:, zero] > 0):
            raise OracleDegeneracyError("output probability underflowed to 0 under a used input")
    d = neg_row_entropy - w @ np.log(np.maximum(q, LOG_FLOOR))
    return q, d, float(r @ d)


class _Run:
    """Mutable iteration state shared by the plain and accelerated loops."""

    def __init__(self, w, r, tol, max_iter, symmetric):
        self.w = w
        self.h = _row_entropy_terms(w)
        self.tol = tol
        self.max_iter = max_iter
        self.symmetric = symmetric
        self.iterations = 0
        self.history = []
        self.set(self._sym(r))

    def _sym(self, r):
        if self.symmetric:
            # I is concave and mirror invariant, so symmetrising never lowers it
            r = 0.5 * (r + r[::-1])
        return r / r.sum()

    def set(self, r):
        self.r = r
        self.q, self.d, self.lower = _evaluate(self.w, self.h, r)
        self.upper = float(self.d.max())

    def try_set(self, r) -> bool:
        r = self._sym(r)
        q, d, lower = _evaluate(self.w, self.h, r)
        if lower < self.lower:
            return False
        self.r, self.q, self.d, self.lower = r, q, d, lower
        self.upper = float(d.max())
        return True

    @property
    def done(self) -> bool:
        return self.upper - self.lower <= self.tol

    def record(self):
        self.iterations += 1
        self.history.append(self.lower)

    def ba_step(self, mu=1.0) -> float:
        """Over-relaxed Blahut-Arimoto update ``r *= exp(mu d)``.

        ``mu`` is halved until the mutual information does not drop; the
        plain update (``mu = 1``) is always accepted. Returns the ``mu`` used.
        """
        while True:
            cand = self.r * np.exp(mu * (self.d - self.upper))
            if mu <= 1.0:
                cand = self._sym(cand)
                self.set(cand)
                return 1.0
            if self.try_set(cand):
                return mu
            mu = max(1.0, 0.5 * mu)

    def newton_step(self, max_added=50):
        """Newton step for the mutual information on the active support.

        The support is every input with non-negligible mass plus the inputs
        whose divergence exceeds the current mutual information (they would
        gain mass at the optimum). The step keeps the total mass fixed and is
        accepted only if it does not lower the mutual information.
        """
        r = self.r.copy()
        used = r > 1e-12 * r.max()
        r[~used] = 0.0
        viol = np.flatnonzero((self.d > self.lower) & ~used)
        if viol.size > max_added:
            viol = viol[np.argsort(self.d[viol])[-max_added:]]
        support = np.union1d(np.flatnonzero(used), viol)
        q = np.maximum(self.q, LOG_FLOOR)
        step = None
        while support.size > 1:
            ws = self.w[support]
            k = support.size
            kkt = np.zeros((k + 1, k + 1))
            kkt[:k, :k] = -(ws / q) @ ws.T
            kkt[:k, k] = 1.0
            kkt[k, :k] = 1.0
            rhs = np.append(-self.d[support], 0.0)
            step = np.linalg.lstsq(kkt, rhs, rcond=1e-13)[0][:k]
            # inputs at zero mass that the step would push negative leave the set
            leaving = (r[support] == 0.0) & (step < 0.0)
            if not leaving.any():
                break
            support = support[~leaving]
        if step is None or support.size < 2:
            return
        falling = step < 0.0
        t_ratio = 1.0
        if falling.any():
            t_ratio = min(1.0, float(np.min(r[support][falling] / -step[falling])))
        # projected full step first, then ratio-limited backtracking
        for t in [1.0] + [t_ratio * 0.5**j for j in range(40)]:
            cand = r.copy()
            cand[support] += t * step
            if self.try_set(np.maximum(cand, 0.0)):
                return


def _accelerated(run: _Run):
    mu = 1.0
    while not run.done and run.iterations < run.max_iter:
        mu = min(2.0 * run.ba_step(mu), 1e12)
        if not run.done:
            run.newton_step()
        run.record()


def _plain(run: _Run):
    while not run.done and run.iterations < run.max_iter:
        run.ba_step(1.0)
        run.record()


def blahut_arimoto(grid: ChannelGrid, tol: float = 1e-9, max_iter: int = 100_000,
                   init: np.ndarray | None = None, accelerate: bool = True) -> CapacityEstimate:
    """Capacity of the discretised channel by Blahut-Arimoto.

    Every iteration computes the mutual information of the current input law
    (lower certificate) and the largest per-input divergence from its output
    law (upper certificate), and stops once they are within ``tol``. Running
    out of ``max_iter`` gives ``converged=False`` rather than an exception.

    With ``accelerate=False`` this is the textbook alternating update. The
    default accelerated mode solves on every 2nd/4th/... input first and
    refines, over-relaxes the update and adds Newton steps on the active
    support; each step is accepted only if the mutual information does not
    decrease, so the lower certificate stays monotone either way.
    """
    if not tol > 0:
        raise ValueError("tol must be > 0")
    n = grid.n_inputs
    w = grid.kernel
    symmetric = np.allclose(w, w[::-1, ::-1], rtol=0, atol=1e-15)

    if init is not None:
        r0 = np.asarray(init, dtype=float).copy()
        if r0.shape != (n,) or np.any(r0 < 0) or not r0.sum() > 0:
            raise ValueError("init must be a non-negative vector over the input grid")
        levels = [1]
    elif accelerate:
        levels = [1]
        while (n - 1) % (2 * levels[-1]) == 0 and (n - 1) // (2 * levels[-1]) + 1 >= 21:
            levels.append(2 * levels[-1])
        levels.reverse()
        r0 = None
    else:
        levels = [1]
        r0 = np.full(n, 1.0 / n)

    history = []
    iterations = 0
    run = None
    for step in levels:
        sub = w[::step]
        if r0 is None:
            r0 = np.full(sub.shape[0], 1.0 / sub.shape[0])
        elif r0.size != sub.shape[0]:
            # coarse law embedded in the finer grid; new inputs start empty
            fine = np.zeros(sub.shape[0])
            fine[::2] = r0
            r0 = fine
        level_tol = tol if step == 1 else max(tol, 1e-6)
        run = _Run(sub, r0, level_tol, max_iter - iterations, symmetric)
        (_accelerated if accelerate else _plain)(run)
        iterations += run.iterations
        history.extend(run.history)
        r0 = run.r

    return CapacityEstimate(
        value_nats=0.5 * (run.lower + run.upper),
        lower_nats=run.lower,
        upper_nats=run.upper,
        iterations=iterations,
        converged=run.done,
        input_distribution=run.r,
        inputs=grid.inputs,
        history=history,
    )


def _odd_at_least(n: int) -> int:
    n = int(n)
    return n if n % 2 else n + 1


def capacity_nats(a: float, tol: float = 1e-9, max_iter: int = 20_000,
                  max_doublings: int = 4) -> CapacityEstimate:
    """Capacity at amplitude ``a`` with automatic grid refinement.

    Starts from ``max(201, 50 a)`` inputs and ``max(4000, 400 (a + 16))``
    outputs, doubling both until two successive estimates agree to within
    ``max(tol, 1e-6)``. After ``max_doublings`` refinements the finest
    estimate is returned with ``converged=False``.
    """
    if not a > 0:
        raise ValueError("a must be > 0")
    n_in = _odd_at_least(max(201, math.ceil(50 * a)))
    n_out = max(4000, math.ceil(400 * (a + 16)))
    agree = max(tol, 1e-6)

    prev = blahut_arimoto(build_grid(a, n_in, n_out), tol=tol, max_iter=max_iter)
    total = prev.iterations
    for _ in range(max_doublings):
        n_in = 2 * n_in - 1  # keeps the previous inputs on the grid
        n_out *= 2
        # warm start: the coarse law embedded in the refined grid
        init = np.zeros(n_in)
        init[::2] = prev.input_distribution
        cur = blahut_arimoto(build_grid(a, n_in, n_out), tol=tol, max_iter=max_iter, init=init)
        total += cur.iterations
        cur.iterations = total
        if abs(cur.value_nats - prev.value_nats) <= agree and cur.converged and prev.converged:
            return cur
        prev = cur
    prev.converged = False
    return prev


def eb_n0_db(p: float, c_bits: float) -> float:
    """Energy per bit over N0 in dB, ``10 log10(P / (2 C_bits))``.

    Unit-variance real noise means ``N0 = 2``. Passing a rate in nats instead
    gives the energy per nat on the same scale.
    """
    if not p > 0:
        raise ValueError("p must be > 0")
    if not c_bits > 0:
        raise ValueError("c_bits must be > 0")
    return 10.0 * math.log10(p / (2.0 * c_bits))

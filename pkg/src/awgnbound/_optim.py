"""Golden-section search on a bracket."""
import math

from .errors import OptimizationError

_INVPHI = (math.sqrt(5.0) - 1.0) / 2.0


def golden_section_min(f, lo, hi, tol=1e-8, max_iter=200):
    """Minimise a unimodal ``f`` on ``[lo, hi]``.

    Returns ``(x, f(x))``. The endpoints are also compared so a monotone ``f``
    returns the better end exactly.
    """
    if hi < lo:
        lo, hi = hi, lo
    a, b = lo, hi
    c = b - _INVPHI * (b - a)
    d = a + _INVPHI * (b - a)
    fc, fd = f(c), f(d)
    for _ in range(max_iter):
        if b - a <= tol:
            break
        if fc <= fd:
            b, d, fd = d, c, fc
            c = b - _INVPHI * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + _INVPHI * (b - a)
            fd = f(d)
    else:
        raise OptimizationError(
            f"golden section did not reach tol={tol} in {max_iter} steps"
        )
    x, fx = (c, fc) if fc <= fd else (d, fd)
    for end in (lo, hi):
        fe = f(end)
        if fe < fx:
            x, fx = end, fe
    return x, fx


def golden_section_max(f, lo, hi, tol=1e-8, max_iter=200):
    x, fx = golden_section_min(lambda t: -f(t), lo, hi, tol, max_iter)
    return x, -fx

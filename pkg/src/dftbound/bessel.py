"""Modified Bessel functions of the second kind at half-integer order.

For ``nu = n + 1/2`` the function is elementary. We start from
``K_{1/2}(x) = K_{-1/2}(x) = sqrt(pi / 2x) exp(-x)`` and run the upward
recurrence ``K_{nu+1}(x) = K_{nu-1}(x) + (2 nu / x) K_nu(x)``, which is
stable in the increasing direction. Everything is kept exponentially
scaled (``exp(x) K_nu(x)``) so large arguments do not underflow.
"""
from __future__ import annotations

import numpy as np
from scipy.special import gammaln

# below this argument the small-x limit of x^nu K_nu(alpha x) is exact to double precision
_TINY = 1e-30


def _check_order(order):
    n = order - 0.5
    if n < 0 or n != int(n):
        raise ValueError(f"order must be a nonnegative half-integer, got {order}")
    return int(n)


def kve_half_integer(order: float, x):
    """``exp(x) * K_order(x)`` for half-integer ``order >= 1/2`` and ``x > 0``."""
    n = _check_order(order)
    x = np.asarray(x, dtype=float)
    prev = np.sqrt(np.pi / (2.0 * x))  # K_{-1/2}
    cur = prev.copy()  # K_{1/2}
    nu = 0.5
    for _ in range(n):
        prev, cur = cur, prev + (2.0 * nu / x) * cur
        nu += 1.0
    return cur


def kv_half_integer(order: float, x):
    """``K_order(x)`` for half-integer ``order``."""
    x = np.asarray(x, dtype=float)
    return kve_half_integer(order, x) * np.exp(-x)


def log_power_bessel_k(order: float, alpha: float, s):
    """``log(|s|^order * K_order(alpha |s|))``, finite at ``s = 0``.

    The removable singularity uses
    ``|s|^nu K_nu(alpha |s|) -> 2^(nu-1) Gamma(nu) / alpha^nu``.
    """
    _check_order(order)
    a = np.abs(np.asarray(s, dtype=float))
    limit = (order - 1.0) * np.log(2.0) + gammaln(order) - order * np.log(alpha)
    small = alpha * a < _TINY
    safe = np.where(small, 1.0, a)
    z = alpha * safe
    with np.errstate(divide="ignore"):
        val = order * np.log(safe) + np.log(kve_half_integer(order, z)) - z
    return np.where(small, limit, val)

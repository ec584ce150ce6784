"""The maximal (entropy-maximising) DFT-compliant distribution and its bound.

The maximal distribution is

    P_M(S) = exp(S/2 - lam * (S/2) * tanh(S/2)) / Z(lam)

on a symmetric support (finite, lattice, or the real line). Its Lagrange
multiplier ``lam`` is fixed by the mean through
``-d ln Z / d lam = <S tanh(S/2)> / 2 = <S> / 2`` and the resulting bound on
Shannon or differential entropy is ``ln Z(lam) + (lam - 1) <S> / 2``.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy import optimize, special

from .core import CONTINUOUS, DensitySpec, Pmf, SymmetricSupport, normalized_density
from .errors import DegenerateMean, DivergentPartition, DomainError, UnattainableMean
from .quadrature import DEFAULT_QUADRATURE, QuadratureConfig, integrate

_LATTICE_REL_CUTOFF = 1e-16
_LATTICE_RUN = 50


@dataclass(frozen=True)
class LambdaSolution:
    lam: float
    log_Z: float
    achieved_mean: float
    support_kind: str


@dataclass(frozen=True)
class BoundValue:
    mean: float
    bound_nats: float
    lam: float


def exponent(s, lam):
    """``S/2 - lam * (S/2) * tanh(S/2)``."""
    s = np.asarray(s, dtype=float)
    return 0.5 * s - 0.5 * lam * s * np.tanh(0.5 * s)


def _kind(support):
    if isinstance(support, str):
        if support != CONTINUOUS:
            raise DomainError(f"unknown support flag {support!r}")
        return CONTINUOUS
    return support.kind


def _require_normalizable(support, lam):
    if _kind(support) != "finite" and not lam > 1.0:
        raise DivergentPartition(f"lambda={lam} <= 1 on an unbounded support")


def lattice_extent(spacing: float, lam: float) -> int:
    """Largest ``m`` kept when summing over the lattice ``m * spacing``.

    Terms are added for ``m = 0, 1, 2, ...`` until 50 consecutive terms each
    fall below ``1e-16`` of the running sum.
    """
    rate = 0.5 * (lam - 1.0) * spacing
    n = int(np.ceil(45.0 / rate)) + 2 * _LATTICE_RUN
    while True:
        m = np.arange(n, dtype=float)
        s = m * spacing
        terms = np.exp(exponent(s, lam)) + np.where(m > 0, np.exp(exponent(-s, lam)), 0.0)
        small = terms < _LATTICE_REL_CUTOFF * np.cumsum(terms)
        runs = np.convolve(small, np.ones(_LATTICE_RUN), mode="valid") >= _LATTICE_RUN
        hits = np.flatnonzero(runs)
        if hits.size:
            return int(hits[0]) + _LATTICE_RUN - 1
        n *= 2


def support_points(support: SymmetricSupport, lam: float) -> np.ndarray:
    """Finite support values, or the truncated lattice for this ``lam``."""
    if support.kind == "finite":
        return np.asarray(support.values)
    _require_normalizable(support, lam)
    return support.lattice_points(lattice_extent(support.spacing, lam))


def _continuous_scales(lam):
    # exponent ~ -lam S^2 / 4 near 0; slowest tail slope is (lam - 1) / 2
    width = min(1.0, np.sqrt(2.0 / lam))
    return 0.5 * (lam - 1.0), width


def _continuous_moments(lam, q):
    """``(ln Z, <S tanh(S/2)>)`` for the maximal density on the real line."""
    rate, width = _continuous_scales(lam)

    def rows(x):
        w = np.exp(exponent(x, lam))
        return np.vstack([w, w * x * np.tanh(0.5 * x)])

    z, m = integrate(rows, 0.0, width, rate, q)
    return float(np.log(z)), float(m / z)


def log_partition(support, lam: float, q: QuadratureConfig = DEFAULT_QUADRATURE) -> float:
    """``ln Z(lam)`` on a finite/lattice support or on the real line."""
    _require_normalizable(support, lam)
    if _kind(support) == CONTINUOUS:
        return _continuous_moments(lam, q)[0]
    return float(special.logsumexp(exponent(support_points(support, lam), lam)))


def maximal_distribution(support, lam: float, q: QuadratureConfig = DEFAULT_QUADRATURE):
    """The maximal distribution as a :class:`Pmf` or :class:`DensitySpec`.

    Lattice supports are returned as a truncated, renormalised Pmf; the
    truncation is symmetric so the DFT ratios are untouched.
    """
    _require_normalizable(support, lam)
    if _kind(support) == CONTINUOUS:
        rate, width = _continuous_scales(lam)
        density, _ = normalized_density(lambda x: exponent(x, lam), rate, 0.0, width, q)
        return density
    s = support_points(support, lam)
    return Pmf.from_log_weights(s, exponent(s, lam))


def mean_of_lambda(support, lam: float, q: QuadratureConfig = DEFAULT_QUADRATURE) -> float:
    """Mean entropy production under the maximal distribution.

    Evaluated as ``<S tanh(S/2)>``, which equals ``<S>`` for any
    DFT-compliant distribution and is ``-2 d ln Z / d lam``.
    """
    _require_normalizable(support, lam)
    if _kind(support) == CONTINUOUS:
        return _continuous_moments(lam, q)[1]
    s = support_points(support, lam)
    lw = exponent(s, lam)
    p = np.exp(lw - special.logsumexp(lw))
    return float(p @ (s * np.tanh(0.5 * s)))


def _mean_limits(support):
    """Infimum and supremum of attainable means on a finite support."""
    v = np.asarray(support.values)
    pos = v[v > 0]
    if pos.size == 0:
        return 0.0, 0.0
    top = pos.max() * np.tanh(0.5 * pos.max())
    low = 0.0 if support.contains_zero else pos.min() * np.tanh(0.5 * pos.min())
    return low, top


def _bracket(f, start, step_fn, max_steps=200):
    """Walk away from ``start`` until ``f`` changes sign; return the bracket."""
    a, fa = start, f(start)
    if fa == 0:
        return a, a
    direction = 1.0 if fa > 0 else -1.0  # mean too large -> increase lambda
    for k in range(max_steps):
        b = step_fn(start, direction, k)
        fb = f(b)
        if np.sign(fb) != np.sign(fa):
            return (a, b) if a < b else (b, a)
        a, fa = b, fb
    raise UnattainableMean("could not bracket the requested mean")


def solve_lambda(
    support, target_mean: float, tol: float = 1e-10, q: QuadratureConfig = DEFAULT_QUADRATURE
) -> LambdaSolution:
    """Find ``lam`` whose maximal distribution has the requested mean.

    The mean is strictly decreasing in ``lam``, so the root is bracketed by
    walking geometrically away from ``lam = 2`` (unbounded supports) or
    ``lam = 0`` (finite supports) and then refined with Brent's method.
    """
    kind = _kind(support)
    if not target_mean >= 0:
        raise DomainError("target mean must be nonnegative")
    if target_mean == 0:
        if kind == CONTINUOUS:
            raise DegenerateMean("zero mean on the real line is the lam -> inf limit")
        if not support.contains_zero:
            raise UnattainableMean("zero mean needs 0 in the support")
        return LambdaSolution(np.inf, 0.0, 0.0, kind)
    if kind == "finite":
        low, top = _mean_limits(support)
        if not low < target_mean < top:
            raise UnattainableMean(
                f"mean {target_mean} outside the attainable range ({low}, {top})"
            )

    def f(lam):
        return mean_of_lambda(support, lam, q) - target_mean

    if kind == "finite":
        lo, hi = _bracket(f, 0.0, lambda s, d, k: s + d * 2.0**k)
    else:
        lo, hi = _bracket(f, 2.0, lambda s, d, k: 1.0 + np.exp(d * (k + 1)))
    lam = lo if lo == hi else optimize.brentq(f, lo, hi, xtol=1e-14, rtol=1e-15, maxiter=500)
    achieved = mean_of_lambda(support, lam, q)
    if abs(achieved - target_mean) > tol:
        raise UnattainableMean(
            f"solver reached mean {achieved!r}, requested {target_mean!r} (tol {tol})"
        )
    return LambdaSolution(float(lam), log_partition(support, lam, q), achieved, kind)


def _bound(support, target_mean, tol, q):
    sol = solve_lambda(support, target_mean, tol, q)
    if np.isinf(sol.lam):
        return BoundValue(0.0, 0.0, sol.lam)
    value = sol.log_Z + 0.5 * (sol.lam - 1.0) * target_mean
    return BoundValue(float(target_mean), float(value), sol.lam)


def bound_discrete(
    support: SymmetricSupport,
    target_mean: float,
    tol: float = 1e-10,
    q: QuadratureConfig = DEFAULT_QUADRATURE,
) -> BoundValue:
    """Upper bound on Shannon entropy for DFT distributions with this mean."""
    if isinstance(support, str):
        raise DomainError("bound_discrete needs a SymmetricSupport")
    return _bound(support, target_mean, tol, q)


def bound_continuous(
    target_mean: float, tol: float = 1e-10, q: QuadratureConfig = DEFAULT_QUADRATURE
) -> BoundValue:
    """Upper bound on differential entropy for DFT densities with this mean."""
    return _bound(CONTINUOUS, target_mean, tol, q)

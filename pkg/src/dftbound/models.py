"""Physical entropy-production distributions.

* bosonic mode at weak coupling: two-sided geometric law on a lattice
* Gaussian whose variance is fixed to twice its mean
* levitated nanoparticle: ``exp(S/2) |S|^nu K_nu(alpha |S|)`` with ``nu = d + 1/2``
* qubit swap engines and their independent compositions
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np
from scipy import optimize

from .bessel import log_power_bessel_k
from .core import DensitySpec, Pmf, mean, normalized_density
from .errors import DomainError, UnattainableMean
from .quadrature import DEFAULT_QUADRATURE, QuadratureConfig

_BOSONIC_TAIL_MASS = 1e-14


@dataclass(frozen=True)
class BosonicParams:
    delta: float
    alpha: float

    def __post_init__(self):
        if not self.delta > 0:
            raise DomainError("delta must be positive")
        if not self.alpha > 1:
            raise DomainError("alpha must exceed 1 for a normalisable distribution")


@dataclass(frozen=True)
class NanoParams:
    d: int
    alpha: float

    def __post_init__(self):
        if int(self.d) != self.d or self.d < 1:
            raise DomainError("d must be a positive integer")
        if not self.alpha > 0.5:
            raise DomainError("alpha must exceed 1/2 for a normalisable distribution")

    @property
    def order(self) -> float:
        return self.d + 0.5


@dataclass(frozen=True)
class SwapParams:
    half_gap: float
    composite_unit: Optional[float] = None

    def __post_init__(self):
        if not self.half_gap > 0:
            raise DomainError("half_gap must be positive")
        if self.composite_unit is not None and not self.composite_unit > 0:
            raise DomainError("composite_unit must be positive")


# --- bosonic mode -----------------------------------------------------------


def _bosonic_ratios(p: BosonicParams):
    x = np.exp(0.5 * (1.0 - p.alpha) * p.delta)
    y = np.exp(-0.5 * (1.0 + p.alpha) * p.delta)
    return x, y


def bosonic_normalization(p: BosonicParams) -> float:
    """``A(alpha) = 1 + x/(1-x) + y/(1-y)`` (geometric series)."""
    x, y = _bosonic_ratios(p)
    return 1.0 + x / (1.0 - x) + y / (1.0 - y)


def bosonic_moments(p: BosonicParams):
    """Closed-form ``(<S>, <|S|>)``."""
    x, y = _bosonic_ratios(p)
    a = bosonic_normalization(p)
    up, down = x / (1.0 - x) ** 2, y / (1.0 - y) ** 2
    return p.delta * (up - down) / a, p.delta * (up + down) / a


def bosonic_pmf(p: BosonicParams) -> Pmf:
    """``exp(S/2 - alpha |S| / 2) / A`` on ``{m * delta}``, truncated.

    The lattice is cut symmetrically once the discarded mass drops below
    1e-14 and the kept weights are renormalised, which leaves every ratio
    ``P(S)/P(-S)`` unchanged.
    """
    x, y = _bosonic_ratios(p)
    a = bosonic_normalization(p)
    # tail beyond m: (x^(m+1)/(1-x) + y^(m+1)/(1-y)) / A, dominated by x
    m_max = int(np.ceil(np.log(_BOSONIC_TAIL_MASS * a * (1.0 - x)) / np.log(x)))
    m = np.arange(-m_max, m_max + 1, dtype=float)
    s = m * p.delta
    probs = np.exp(0.5 * s - 0.5 * p.alpha * np.abs(s)) / a
    return Pmf(s, probs / probs.sum())


def bosonic_entropy(p: BosonicParams) -> float:
    """Shannon entropy ``ln A - <S>/2 + alpha <|S|>/2`` in closed form."""
    mu, mu_abs = bosonic_moments(p)
    return float(np.log(bosonic_normalization(p)) - 0.5 * mu + 0.5 * p.alpha * mu_abs)


def bosonic_limit_check(p: BosonicParams, m_max: int = 10_000) -> float:
    """Largest ``|S/2 tanh(S/2) - |S|/2|`` over lattice points ``m * delta``.

    Measures how far the maximal exponent is from the bosonic one; it goes
    to zero as the spacing grows.
    """
    half = 0.5 * p.delta * np.arange(m_max + 1, dtype=float)
    return float(np.max(half * (1.0 - np.tanh(half))))


# --- continuous models -------------------------------------------------------


def gaussian_density(mean_: float) -> DensitySpec:
    """Gaussian with mean ``mu`` and variance ``2 mu``."""
    if not mean_ > 0:
        raise DomainError("Gaussian mean must be positive")
    mu = float(mean_)
    log_norm = 0.5 * np.log(4.0 * np.pi * mu)

    def log_density(x):
        x = np.asarray(x, dtype=float)
        return -((x - mu) ** 2) / (4.0 * mu) - log_norm

    # tail_rate is nominal: a Gaussian decays faster than any exponential
    return DensitySpec(log_density, tail_rate=1.0, center_hint=mu, width_hint=np.sqrt(2.0 * mu))


def gaussian_entropy(mean_: float) -> float:
    """``ln(4 pi e mu) / 2``."""
    return 0.5 * np.log(4.0 * np.pi * np.e * mean_)


def bessel_k_density(
    order: float, alpha: float, q: QuadratureConfig = DEFAULT_QUADRATURE
) -> DensitySpec:
    """Normalised ``exp(S/2) |S|^order K_order(alpha |S|)`` for half-integer order."""
    if not alpha > 0.5:
        raise DomainError("alpha must exceed 1/2")

    def log_unnorm(x):
        return 0.5 * np.asarray(x, dtype=float) + log_power_bessel_k(order, alpha, x)

    rate = alpha - 0.5
    # bulk of the positive side: gamma-like shape (order + 1/2), rate alpha - 1/2
    center = (order - 0.5) / rate
    width = np.sqrt(order + 0.5) / rate
    density, _ = normalized_density(log_unnorm, rate, center, width, q)
    return density


def nano_density(p: NanoParams, q: QuadratureConfig = DEFAULT_QUADRATURE) -> DensitySpec:
    """Levitated-nanoparticle law with Bessel order ``d + 1/2``."""
    return bessel_k_density(p.order, p.alpha, q)


def _bracket_root(f, lo_edge, start):
    """Bracket a root of a decreasing ``f`` on ``(lo_edge, inf)``."""
    a = start
    fa = f(a)
    for k in range(200):
        b = lo_edge + (a - lo_edge) * (2.0 if fa > 0 else 0.5)
        fb = f(b)
        if np.sign(fb) != np.sign(fa):
            return (a, b) if a < b else (b, a)
        a, fa = b, fb
    raise UnattainableMean("could not bracket the requested mean")


def model_alpha_from_mean(
    model: str,
    target_mean: float,
    *,
    delta: float = 1.0,
    d: int = 1,
    order: float | None = None,
    tol: float = 1e-8,
    q: QuadratureConfig = DEFAULT_QUADRATURE,
) -> float:
    """Invert the decreasing map ``alpha -> <S>`` of a model.

    ``model`` is ``"bosonic"`` (uses ``delta``) or ``"nano"`` (uses ``d``,
    or an explicit half-integer Bessel ``order``).
    """
    if not target_mean > 0:
        raise UnattainableMean("target mean must be positive")
    if model == "bosonic":
        lo_edge = 1.0

        def model_mean(alpha):
            return bosonic_moments(BosonicParams(delta, alpha))[0]

    elif model == "nano":
        lo_edge = 0.5
        nu = d + 0.5 if order is None else order

        def model_mean(alpha):
            return mean(bessel_k_density(nu, alpha, q), q)

    else:
        raise DomainError(f"unknown model {model!r}")

    def f(alpha):
        return model_mean(alpha) - target_mean

    lo, hi = _bracket_root(f, lo_edge, lo_edge + 1.0)
    alpha = optimize.brentq(f, lo, hi, xtol=1e-14, rtol=1e-15, maxiter=500)
    if abs(f(alpha)) > tol * max(1.0, target_mean):
        raise UnattainableMean(f"could not reach mean {target_mean} (alpha={alpha})")
    return float(alpha)


# --- swap engines --------------------------------------------------------------


def swap_pmf(p: SwapParams | float) -> Pmf:
    """``exp(S/2) / Z0`` on ``{0, +-2a}``."""
    a = p.half_gap if isinstance(p, SwapParams) else float(p)
    if not a > 0:
        raise DomainError("half_gap must be positive")
    s = np.array([-2.0 * a, 0.0, 2.0 * a])
    return Pmf.from_log_weights(s, 0.5 * s)


def swap_half_gap(beta1: float, beta2: float, eps_a: float, eps_b: float) -> float:
    """Half-gap ``a`` of the swap support ``{0, +-2a}``: ``|beta2 eps_b - beta1 eps_a|``."""
    a = abs(beta2 * eps_b - beta1 * eps_a)
    if not a > 0:
        raise DomainError("equal affinities give zero entropy production")
    return a


def qubit_swap_pmf(beta1: float, beta2: float, eps_a: float, eps_b: float) -> Pmf:
    """Exact swap law obtained by enumerating thermal qubit states.

    Qubit A (gap ``eps_a``) starts thermal at inverse temperature ``beta1``,
    qubit B at ``beta2``; state ``sigma = +-1`` has energy ``-sigma * eps``.
    After the swap, ``Sigma = beta1 dE_A + beta2 dE_B``.

    This law satisfies the DFT and, living on three points, is a maximal
    distribution, but its multiplier is generally not zero: the weight of
    ``Sigma = 0`` collects both aligned configurations. :func:`swap_pmf` is
    the ``lam = 0`` member of the same family.
    """
    values, probs = [], []
    for sa in (-1, 1):
        for sb in (-1, 1):
            pa = np.exp(sa * beta1 * eps_a) / (2.0 * np.cosh(beta1 * eps_a))
            pb = np.exp(sb * beta2 * eps_b) / (2.0 * np.cosh(beta2 * eps_b))
            d_ea = -eps_a * (sb - sa)
            d_eb = -eps_b * (sa - sb)
            values.append(beta1 * d_ea + beta2 * d_eb)
            probs.append(pa * pb)
    return _merge(np.array(values), np.array(probs), scale=max(map(abs, values)) or 1.0)


def _merge(values, probs, scale, rtol=1e-12):
    """Sum probabilities of values equal within ``rtol * scale``."""
    order = np.argsort(values)
    values, probs = values[order], probs[order]
    new_group = np.concatenate(([True], np.diff(values) > rtol * scale))
    ids = np.cumsum(new_group) - 1
    merged_p = np.bincount(ids, weights=probs)
    merged_v = np.bincount(ids, weights=values * probs) / np.where(merged_p > 0, merged_p, 1)
    # representative value: first member when the group carries no mass
    first = values[new_group]
    merged_v = np.where(merged_p > 0, merged_v, first)
    return Pmf(merged_v, merged_p / merged_p.sum())


def compose_swaps(p1: Pmf, p2: Pmf) -> Pmf:
    """Law of ``S1 + S2`` for independent ``S1 ~ p1`` and ``S2 ~ p2``."""
    values = np.add.outer(p1.values, p2.values).ravel()
    probs = np.multiply.outer(p1.probs, p2.probs).ravel()
    scale = max(np.max(np.abs(p1.values)), np.max(np.abs(p2.values)), 1e-300)
    return _merge(values, probs, scale)


def composite_swap_pmf(b: float) -> Pmf:
    """Two independent swap pairs with supports ``{0, +-2b}`` and ``{0, +-3b}``."""
    if not b > 0:
        raise DomainError("composite unit must be positive")
    return compose_swaps(swap_pmf(b), swap_pmf(1.5 * b))


def figure3_unit(beta2: float = 1.0, eps_c: float = 1.0, r: float = 1.0) -> float:
    """Support unit ``b`` of the four-qubit preset.

    Preset: ``beta1 = beta2 / 2``, ``eps_A / eps_C = eps_B / eps_D = r`` and
    ``eps_A / eps_B = 2/3``. The pairs (A, C) and (B, D) then have half-gaps
    ``b`` and ``3b / 2`` with ``b = beta2 eps_C (1 - r/2)``.
    """
    beta1 = 0.5 * beta2
    eps_a = r * eps_c
    eps_b = 1.5 * eps_a
    eps_d = eps_b / r
    b = swap_half_gap(beta1, beta2, eps_a, eps_c)
    if not np.isclose(swap_half_gap(beta1, beta2, eps_b, eps_d), 1.5 * b, rtol=1e-12):
        raise DomainError("preset gaps do not give supports {0, +-2b} and {0, +-3b}")
    return b


def figure3_engine(beta2: float = 1.0, eps_c: float = 1.0, r: float = 1.0) -> Pmf:
    """Composite swap law for the four-qubit preset (nine outcomes)."""
    return composite_swap_pmf(figure3_unit(beta2, eps_c, r))

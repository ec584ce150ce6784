"""Supports, distributions, entropy functionals and fluctuation-theorem checks.

Entropy production ``Sigma`` is dimensionless (units of k_B) and every
entropy is reported in nats. Discrete distributions are :class:`Pmf`
objects on finite supports; continuous ones are :class:`DensitySpec`
objects carrying a vectorised log-density.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, NamedTuple, Union

import numpy as np
from scipy import special

from .errors import DomainError, SupportAsymmetry, SupportMismatch
from .quadrature import DEFAULT_QUADRATURE, QuadratureConfig, integrate

CONTINUOUS = "continuous"

_SYMMETRY_RTOL = 1e-12


def _frozen(a):
    a = np.array(a, dtype=float)
    a.setflags(write=False)
    return a


@dataclass(frozen=True, eq=False)
class SymmetricSupport:
    """A set of entropy values closed under negation.

    Either a finite sorted set (``kind == "finite"``) or the infinite
    lattice ``{m * spacing : m integer}`` (``kind == "lattice"``).
    """

    kind: str
    values: np.ndarray | None = None
    spacing: float | None = None

    @classmethod
    def finite(cls, values) -> "SymmetricSupport":
        v = np.sort(np.asarray(values, dtype=float).ravel())
        if v.size == 0 or not np.all(np.isfinite(v)):
            raise DomainError("finite support needs at least one finite value")
        if np.any(np.diff(v) <= 0):
            raise DomainError("support values must be distinct")
        scale = max(1.0, float(np.max(np.abs(v))))
        if not np.allclose(v, -v[::-1], rtol=0.0, atol=_SYMMETRY_RTOL * scale):
            raise SupportAsymmetry(f"support {v} is not closed under negation")
        # snap to exact antisymmetry so paired lookups are exact
        v = 0.5 * (v - v[::-1])
        return cls("finite", values=_frozen(v))

    @classmethod
    def lattice(cls, spacing: float) -> "SymmetricSupport":
        if not spacing > 0:
            raise DomainError("lattice spacing must be positive")
        return cls("lattice", spacing=float(spacing))

    @property
    def contains_zero(self) -> bool:
        if self.kind == "lattice":
            return True
        return bool(np.any(self.values == 0.0))

    @property
    def size(self) -> float:
        return float(self.values.size) if self.kind == "finite" else np.inf

    def lattice_points(self, m_max: int) -> np.ndarray:
        """Lattice points ``-m_max*spacing, ..., m_max*spacing``."""
        return self.spacing * np.arange(-m_max, m_max + 1, dtype=float)


@dataclass(frozen=True, eq=False)
class Pmf:
    """Probability mass function on a finite set of sorted values."""

    values: np.ndarray
    probs: np.ndarray

    def __post_init__(self):
        v = np.asarray(self.values, dtype=float).ravel()
        p = np.asarray(self.probs, dtype=float).ravel()
        if v.shape != p.shape:
            raise DomainError("values and probs must have the same length")
        if v.size == 0 or not np.all(np.isfinite(v)):
            raise DomainError("values must be finite and non-empty")
        if np.any(np.diff(v) <= 0):
            raise DomainError("values must be strictly increasing")
        if np.any(p < 0) or not np.all(np.isfinite(p)):
            raise DomainError("probabilities must be finite and nonnegative")
        if abs(p.sum() - 1.0) > 1e-12:
            raise DomainError(f"probabilities sum to {p.sum()!r}, not 1")
        object.__setattr__(self, "values", _frozen(v))
        object.__setattr__(self, "probs", _frozen(p))

    @classmethod
    def from_log_weights(cls, values, log_weights) -> "Pmf":
        """Normalise ``exp(log_weights)``; values need not be sorted."""
        v = np.asarray(values, dtype=float).ravel()
        lw = np.asarray(log_weights, dtype=float).ravel()
        order = np.argsort(v)
        v, lw = v[order], lw[order]
        p = np.exp(lw - special.logsumexp(lw))
        return cls(v, p / p.sum())

    @classmethod
    def point_mass(cls, value: float = 0.0) -> "Pmf":
        return cls([value], [1.0])

    @property
    def support(self) -> SymmetricSupport:
        return SymmetricSupport.finite(self.values)

    def prob_of(self, value: float, atol: float = 1e-12) -> float:
        idx = np.flatnonzero(np.abs(self.values - value) <= atol * max(1.0, abs(value)))
        return float(self.probs[idx[0]]) if idx.size else 0.0


@dataclass(frozen=True, eq=False)
class DensitySpec:
    """A normalised density on the real line.

    ``log_density`` must be vectorised. ``tail_rate`` is a positive ``r``
    with ``log p(x) <= C - r|x|`` far out; ``center_hint`` and
    ``width_hint`` locate the bulk of the mass for the quadrature.
    """

    log_density: Callable[[np.ndarray], np.ndarray]
    tail_rate: float
    center_hint: float = 0.0
    width_hint: float = 1.0

    def __post_init__(self):
        if not self.tail_rate > 0:
            raise DomainError("tail_rate must be positive")
        if not self.width_hint > 0:
            raise DomainError("width_hint must be positive")

    def pdf(self, x):
        return np.exp(self.log_density(np.asarray(x, dtype=float)))

    def shifted(self, c: float) -> "DensitySpec":
        """The density of ``Sigma + c``."""
        return DensitySpec(
            lambda x: self.log_density(np.asarray(x, dtype=float) - c),
            self.tail_rate,
            self.center_hint + c,
            self.width_hint,
        )

    def expect(self, fn, q: QuadratureConfig = DEFAULT_QUADRATURE):
        """``E[fn(Sigma)]``; ``fn`` may return stacked rows (see ``integrate``)."""

        def integrand(x):
            p = self.pdf(x)
            return fn(x) * p

        return integrate(integrand, self.center_hint, self.width_hint, self.tail_rate, q)


Distribution = Union[Pmf, DensitySpec]


def normalized_density(
    log_unnormalized, tail_rate, center=0.0, width=1.0, q=DEFAULT_QUADRATURE
):
    """Normalise a log-density numerically.

    Returns ``(density, log_norm)`` where ``log_norm`` is the log of the
    integral of ``exp(log_unnormalized)``.
    """
    probe = center + width * np.linspace(-5.0, 5.0, 41)
    shift = float(np.max(log_unnormalized(probe)))
    mass = integrate(
        lambda x: np.exp(log_unnormalized(x) - shift), center, width, tail_rate, q
    )
    log_norm = shift + np.log(mass)

    def log_density(x):
        return log_unnormalized(np.asarray(x, dtype=float)) - log_norm

    return DensitySpec(log_density, tail_rate, center, width), float(log_norm)


def _xlogx_neg(p, logp):
    with np.errstate(invalid="ignore"):
        return np.where(p > 0, -p * logp, 0.0)


def shannon_entropy(p: Pmf) -> float:
    """Shannon entropy in nats, with ``0 ln 0 = 0``."""
    return float(np.sum(special.entr(p.probs)))


def differential_entropy(d: DensitySpec, q: QuadratureConfig = DEFAULT_QUADRATURE) -> float:
    """Differential entropy ``-int p ln p`` in nats."""

    def integrand(x):
        logp = d.log_density(x)
        return _xlogx_neg(np.exp(logp), logp)

    return integrate(integrand, d.center_hint, d.width_hint, d.tail_rate, q)


def mean(p: Distribution, q: QuadratureConfig = DEFAULT_QUADRATURE) -> float:
    if isinstance(p, Pmf):
        return float(p.values @ p.probs)
    return p.expect(lambda x: x, q)


def _paired(p: Pmf):
    """Indices of positive support points and of their negations."""
    v = p.support.values
    pos = np.flatnonzero(v > 0)
    neg = v.size - 1 - pos
    return v[pos], pos, neg


def check_dft(
    p: Distribution, grid=None, q: QuadratureConfig = DEFAULT_QUADRATURE
) -> float:
    """Largest ``|ln p(S) - ln p(-S) - S|`` over paired points.

    For a :class:`Pmf` the pairs are the support points; a missing
    negation raises :class:`SupportAsymmetry`. For a density the positive
    ``grid`` is used (default: 50 points on [0.1, 10]). Pairs where both
    sides are below ``q.abs_tol`` are skipped, as are pmf pairs whose
    negative side underflows exactly where the DFT says it should.
    """
    if isinstance(p, Pmf):
        s, pos, neg = _paired(p)
        hi, lo = p.probs[pos], p.probs[neg]
        with np.errstate(divide="ignore"):
            log_hi, log_lo = np.log(hi), np.log(lo)
    else:
        s = np.linspace(0.1, 10.0, 50) if grid is None else np.asarray(grid, dtype=float)
        if np.any(s <= 0):
            raise DomainError("DFT grid must hold positive values")
        log_hi, log_lo = p.log_density(s), p.log_density(-s)
        hi, lo = np.exp(log_hi), np.exp(log_lo)
    keep = (hi >= q.abs_tol) | (lo >= q.abs_tol)
    if isinstance(p, Pmf):
        # the partner of a tiny probability may underflow; only skip when the
        # value the DFT predicts for it is below the normal range too
        tiny = np.finfo(float).tiny
        keep &= ~((lo < tiny) & (hi * np.exp(-s) < tiny))
    if not np.any(keep):
        return 0.0
    with np.errstate(invalid="ignore"):
        dev = np.abs(log_hi[keep] - log_lo[keep] - s[keep])
    dev = np.where(np.isnan(dev), np.inf, dev)
    return float(np.max(dev))


def check_ift(
    p: Distribution, q: QuadratureConfig = DEFAULT_QUADRATURE, assume_dft: bool = False
) -> float:
    """``<exp(-Sigma)>``, equal to 1 for DFT-compliant inputs.

    For densities, ``assume_dft=True`` integrates ``p(-Sigma)`` instead of
    ``exp(-Sigma) p(Sigma)``; the default integrates the raw product over a
    window widened until its edges are negligible.
    """
    if isinstance(p, Pmf):
        return float(np.exp(-p.values) @ p.probs)
    if assume_dft:
        return integrate(
            lambda x: p.pdf(-x), -p.center_hint, p.width_hint, p.tail_rate, q
        )
    return integrate(
        lambda x: np.exp(p.log_density(x) - x),
        p.center_hint,
        p.width_hint,
        p.tail_rate,
        q,
    )


def _s_tanh(x):
    return x * np.tanh(0.5 * x)


def check_identity(p: Distribution, q: QuadratureConfig = DEFAULT_QUADRATURE) -> float:
    """``<Sigma> - <Sigma tanh(Sigma/2)>``; vanishes under the DFT."""
    if isinstance(p, Pmf):
        return float((p.values - _s_tanh(p.values)) @ p.probs)
    return p.expect(lambda x: x - _s_tanh(x), q)


def entropy(p: Distribution, q: QuadratureConfig = DEFAULT_QUADRATURE) -> float:
    """Shannon entropy for a Pmf, differential entropy for a density."""
    return shannon_entropy(p) if isinstance(p, Pmf) else differential_entropy(p, q)


@dataclass(frozen=True)
class FtReport:
    max_dft_violation: float
    ift_value: float
    identity_gap: float
    mean: float
    entropy: float

    def passes(self, dft_tol=1e-10, ift_tol=1e-8, identity_tol=1e-8) -> bool:
        return (
            self.max_dft_violation < dft_tol
            and abs(self.ift_value - 1.0) < ift_tol
            and abs(self.identity_gap) < identity_tol
            and self.mean >= 0.0
        )


def ft_report(p: Distribution, grid=None, q: QuadratureConfig = DEFAULT_QUADRATURE) -> FtReport:
    return FtReport(
        max_dft_violation=check_dft(p, grid, q),
        ift_value=check_ift(p, q),
        identity_gap=check_identity(p, q),
        mean=mean(p, q),
        entropy=entropy(p, q),
    )


class SignProbability(NamedTuple):
    plus: float
    minus: float
    degenerate: bool


def conditional_sign_prob(eps: float) -> SignProbability:
    """Probability of each sign of Sigma given ``|Sigma| = eps``.

    At ``eps == 0`` there is a single outcome; the convention
    ``p(sign | 0) = 1`` is returned as ``(1, 0)`` with ``degenerate=True``.
    """
    if eps < 0:
        raise DomainError("eps must be nonnegative")
    if eps == 0:
        return SignProbability(1.0, 0.0, True)
    plus = float(special.expit(eps))
    return SignProbability(plus, float(special.expit(-eps)), False)


def kl_divergence(
    p: Distribution, r: Distribution, q: QuadratureConfig = DEFAULT_QUADRATURE
) -> float:
    """Kullback-Leibler divergence ``D(p || r)`` in nats."""
    if isinstance(p, Pmf) != isinstance(r, Pmf):
        raise SupportMismatch("cannot compare a pmf with a density")
    if isinstance(p, Pmf):
        idx = np.searchsorted(r.values, p.values)
        idx = np.clip(idx, 0, r.values.size - 1)
        matched = np.isclose(r.values[idx], p.values, rtol=1e-12, atol=1e-12)
        rp = np.where(matched, r.probs[idx], 0.0)
        mass = p.probs > 0
        if np.any(mass & (rp <= 0)):
            raise SupportMismatch("p has mass where the reference has none")
        return float(np.sum(special.rel_entr(p.probs[mass], rp[mass])))

    def log_ratio(x):
        lp, lr = p.log_density(x), r.log_density(x)
        if np.any(np.isneginf(lr) & np.isfinite(lp)):
            raise SupportMismatch("p has mass where the reference has none")
        with np.errstate(invalid="ignore"):
            return np.where(np.isneginf(lp), 0.0, lp - lr)

    return p.expect(log_ratio, q)

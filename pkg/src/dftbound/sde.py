"""Monte Carlo oracle for the levitated-nanoparticle energy SDE.

In the highly underdamped limit the oscillator energy obeys the square-root
diffusion (time measured in units of 1/Gamma)

    dE = -(E - d T) dt + sqrt(2 T E) dW,

whose stationary law at temperature T is Gamma(shape=d, scale=T). The
system starts in equilibrium at ``T1``, is coupled to a bath at ``T2`` for
a time ``gamma_t`` and its energy is measured twice, giving
``Sigma = -(1/T2 - 1/T1) (E2 - E1)``.

Random numbers come from counter-based Philox streams, one per block of
``BLOCK_SIZE`` consecutive sample indices, keyed by ``(seed, block)``; a
batch is therefore reproducible bit for bit whatever order the blocks are
generated in.
"""
from __future__ import annotations

import csv
from dataclasses import dataclass
from typing import Optional

import numpy as np
from scipy import stats

from .errors import DomainError, InsufficientData, UnattainableMean
from .models import bessel_k_density, model_alpha_from_mean
from .quadrature import DEFAULT_QUADRATURE, gauss_legendre_rule, integration_window

BLOCK_SIZE = 1 << 16
MIN_DFT_SAMPLES = 10_000
MIN_FIT_SAMPLES = 100_000

_BIN_NODES, _BIN_WEIGHTS = np.polynomial.legendre.leggauss(8)


@dataclass(frozen=True)
class SdeRunConfig:
    d: int
    T1: float
    T2: float
    gamma_t: float
    n_samples: int
    seed: int = 0
    method: str = "exact_transition"
    dt: Optional[float] = None

    def __post_init__(self):
        if int(self.d) != self.d or self.d < 1:
            raise DomainError("d must be a positive integer")
        if not (self.T1 > 0 and self.T2 > 0):
            raise DomainError("temperatures must be positive")
        if not self.gamma_t > 0:
            raise DomainError("gamma_t must be positive")
        if int(self.n_samples) != self.n_samples or self.n_samples < 1:
            raise DomainError("n_samples must be a positive integer")
        if not 0 <= int(self.seed) < 2**64:
            raise DomainError("seed must be a 64-bit unsigned integer")
        if self.method not in ("exact_transition", "euler_maruyama"):
            raise DomainError(f"unknown method {self.method!r}")
        if self.method == "euler_maruyama" and not (self.dt and 0 < self.dt <= self.gamma_t):
            raise DomainError("euler_maruyama needs 0 < dt <= gamma_t")

    @property
    def delta_beta(self) -> float:
        return 1.0 / self.T2 - 1.0 / self.T1

    @property
    def degenerate(self) -> bool:
        return self.T1 == self.T2


@dataclass(frozen=True, eq=False)
class SampleBatch:
    sigma_values: np.ndarray
    config: Optional[SdeRunConfig] = None

    def __len__(self):
        return self.sigma_values.size


def block_rng(seed: int, block: int) -> np.random.Generator:
    """Independent Philox stream for sample indices of one block."""
    ss = np.random.SeedSequence(int(seed), spawn_key=(int(block),))
    return np.random.Generator(np.random.Philox(ss))


def sample_initial_energy(d: int, T1: float, rng: np.random.Generator, size=None):
    """Equilibrium energy at temperature ``T1``: Gamma(d, T1)."""
    return rng.gamma(d, T1, size)


def exact_transition(E0, gamma_t: float, T2: float, d: int, rng: np.random.Generator):
    """Sample ``E(gamma_t)`` given ``E(0) = E0`` from the exact transition law.

    The law is ``c`` times a noncentral chi-squared with ``2d`` degrees of
    freedom and noncentrality ``E0 exp(-gamma_t) / c``, where
    ``c = T2 (1 - exp(-gamma_t)) / 2``. It is realised as a sum of ``2d``
    squared shifted normals, the shift split evenly among them.
    """
    E0 = np.asarray(E0, dtype=float)
    if np.any(E0 < 0):
        raise DomainError("initial energy must be nonnegative")
    if gamma_t == 0:
        return E0.copy()
    c = -0.5 * T2 * np.expm1(-gamma_t)
    shift = np.sqrt(E0 * np.exp(-gamma_t) / (2 * d * c))
    z = rng.standard_normal(E0.shape + (2 * d,))
    return c * np.sum((z + shift[..., None]) ** 2, axis=-1)


def euler_maruyama_transition(
    E0, gamma_t: float, T2: float, d: int, dt: float, rng: np.random.Generator,
    diffusion: bool = True,
):
    """Integrate the energy SDE with a full-truncation Euler-Maruyama scheme.

    The step is adjusted to divide ``gamma_t`` exactly. Drift and diffusion
    use ``max(E, 0)``; the returned energy is clipped at zero.
    """
    E = np.array(E0, dtype=float)
    if gamma_t == 0:
        return E
    if not 0 < dt <= gamma_t:
        raise DomainError("need 0 < dt <= gamma_t")
    n_steps = max(1, int(round(gamma_t / dt)))
    h = gamma_t / n_steps
    target = d * T2
    noise_scale = np.sqrt(2.0 * T2 * h)
    for _ in range(n_steps):
        Ep = np.maximum(E, 0.0)
        step = -(Ep - target) * h
        if diffusion:
            step += noise_scale * np.sqrt(Ep) * rng.standard_normal(E.shape)
        E += step
    return np.maximum(E, 0.0)


def _sample_block(cfg: SdeRunConfig, block: int, size: int) -> np.ndarray:
    rng = block_rng(cfg.seed, block)
    e1 = sample_initial_energy(cfg.d, cfg.T1, rng, size)
    if cfg.method == "exact_transition":
        e2 = exact_transition(e1, cfg.gamma_t, cfg.T2, cfg.d, rng)
    else:
        e2 = euler_maruyama_transition(e1, cfg.gamma_t, cfg.T2, cfg.d, cfg.dt, rng)
    return -cfg.delta_beta * (e2 - e1)


def sample_entropy_production(cfg: SdeRunConfig) -> SampleBatch:
    """Draw ``cfg.n_samples`` entropy productions under the two-point protocol."""
    n_blocks = -(-cfg.n_samples // BLOCK_SIZE)
    parts = [
        _sample_block(cfg, b, min(BLOCK_SIZE, cfg.n_samples - b * BLOCK_SIZE))
        for b in range(n_blocks)
    ]
    sigma = np.concatenate(parts)
    sigma.setflags(write=False)
    return SampleBatch(sigma, cfg)


def freedman_diaconis_width(x) -> float:
    x = np.asarray(x, dtype=float)
    q75, q25 = np.percentile(x, [75, 25])
    width = 2.0 * (q75 - q25) * x.size ** (-1.0 / 3.0)
    if not width > 0:
        raise InsufficientData("cannot choose a bin width: zero interquartile range")
    return float(width)


@dataclass(frozen=True, eq=False)
class DftCheck:
    max_violation: float
    standard_error: float
    max_z: float
    centers: np.ndarray
    discrepancies: np.ndarray
    standard_errors: np.ndarray

    @property
    def n_pairs(self) -> int:
        return self.centers.size

    def within(self, n_se: float = 3.0) -> bool:
        return self.max_z <= n_se


def empirical_dft_check(
    batch: SampleBatch, n_bins: Optional[int] = None, min_count: int = 25
) -> DftCheck:
    """Compare ``ln(count(+S) / count(-S))`` with ``S`` over mirrored bins.

    Bins are ``[k w, (k+1) w)`` and their mirror images, with ``w`` from
    the Freedman-Diaconis rule (or ``max|S| / n_bins``). Only pairs with at
    least ``min_count`` samples on both sides are used. The standard error
    of each log-ratio is ``sqrt(1/n+ + 1/n-)``.
    """
    s = np.asarray(batch.sigma_values, dtype=float)
    if s.size < MIN_DFT_SAMPLES:
        raise InsufficientData(f"need at least {MIN_DFT_SAMPLES} samples, got {s.size}")
    top = float(np.max(np.abs(s)))
    if not top > 0:
        raise InsufficientData("all samples are zero")
    w = top / n_bins if n_bins else freedman_diaconis_width(s)
    edges = w * np.arange(int(np.ceil(top / w)) + 1)
    n_pos, _ = np.histogram(s[s > 0], edges)
    n_neg, _ = np.histogram(-s[s < 0], edges)
    keep = (n_pos >= min_count) & (n_neg >= min_count)
    if not np.any(keep):
        raise InsufficientData("no bin pair has enough samples on both sides")
    centers = 0.5 * (edges[1:] + edges[:-1])[keep]
    n_pos, n_neg = n_pos[keep].astype(float), n_neg[keep].astype(float)
    disc = np.log(n_pos / n_neg) - centers
    se = np.sqrt(1.0 / n_pos + 1.0 / n_neg)
    worst = int(np.argmax(np.abs(disc)))
    return DftCheck(
        max_violation=float(abs(disc[worst])),
        standard_error=float(se[worst]),
        max_z=float(np.max(np.abs(disc) / se)),
        centers=centers,
        discrepancies=disc,
        standard_errors=se,
    )


@dataclass(frozen=True)
class FitReport:
    order: float
    alpha: float
    statistic: float
    dof: int
    p_value: float
    significance: float

    @property
    def accepted(self) -> bool:
        return self.p_value > self.significance


def _bin_probabilities(density, edges, q=DEFAULT_QUADRATURE):
    """Probabilities of ``(-inf, e0), [e0, e1), ..., [e_last, inf)``."""
    a, b = edges[:-1], edges[1:]
    mid, half = 0.5 * (a + b), 0.5 * (b - a)
    x = mid[:, None] + half[:, None] * _BIN_NODES
    inner = (density.pdf(x) * _BIN_WEIGHTS).sum(axis=1) * half
    lo, hi, _ = integration_window(
        density.pdf, density.center_hint, density.width_hint, density.tail_rate, q
    )
    tails = []
    for start, stop in ((min(lo, edges[0]), edges[0]), (edges[-1], max(hi, edges[-1]))):
        if stop > start:
            xt, wt = gauss_legendre_rule(start, stop, 0.25)
            tails.append(float(density.pdf(xt) @ wt))
        else:
            tails.append(0.0)
    return np.concatenate(([tails[0]], inner, [tails[1]]))


def _merge_small(observed, expected, min_expected):
    """Merge adjacent bins left to right until each expects ``min_expected``."""
    obs, exp = [], []
    acc_o = acc_e = 0.0
    for o, e in zip(observed, expected):
        acc_o += o
        acc_e += e
        if acc_e >= min_expected:
            obs.append(acc_o)
            exp.append(acc_e)
            acc_o = acc_e = 0.0
    if acc_e > 0 or acc_o > 0:
        if exp:
            obs[-1] += acc_o
            exp[-1] += acc_e
        else:
            obs.append(acc_o)
            exp.append(acc_e)
    return np.array(obs), np.array(exp)


def chi_squared_fit(
    batch: SampleBatch,
    order: float,
    significance: float = 0.01,
    min_expected: float = 5.0,
) -> FitReport:
    """Chi-squared goodness of fit to ``exp(S/2)|S|^order K_order(alpha|S|)``.

    ``alpha`` is fitted by matching the sample mean, which costs one degree
    of freedom.
    """
    s = np.asarray(batch.sigma_values, dtype=float)
    if s.size < MIN_FIT_SAMPLES:
        raise InsufficientData(f"need at least {MIN_FIT_SAMPLES} samples, got {s.size}")
    sample_mean = float(np.mean(s))
    if not sample_mean > 0:
        raise UnattainableMean("sample mean must be positive to fit alpha")
    alpha = model_alpha_from_mean("nano", sample_mean, order=order)
    density = bessel_k_density(order, alpha)
    w = freedman_diaconis_width(s)
    edges = w * np.arange(np.floor(s.min() / w), np.ceil(s.max() / w) + 1)
    counts, _ = np.histogram(s, edges)
    observed = np.concatenate(([0.0], counts, [0.0]))
    expected = s.size * _bin_probabilities(density, edges)
    observed, expected = _merge_small(observed, expected, min_expected)
    stat = float(np.sum((observed - expected) ** 2 / expected))
    dof = observed.size - 2
    if dof < 1:
        raise InsufficientData("too few bins for a chi-squared test")
    return FitReport(order, alpha, stat, dof, float(stats.chi2.sf(stat, dof)), significance)


def validate_against_eq22(batch: SampleBatch, significance: float = 0.01) -> FitReport:
    """Fit the nanoparticle law (Bessel order ``d + 1/2``) to a batch."""
    if batch.config is None:
        raise DomainError("batch carries no config; use chi_squared_fit with an explicit order")
    return chi_squared_fit(batch, batch.config.d + 0.5, significance)


def validate_against_sde_law(batch: SampleBatch, significance: float = 0.01) -> FitReport:
    """Fit the Bessel law of order ``d - 1/2``.

    For ``2d`` quadratic degrees of freedom, ``E1`` and ``E2`` are gamma
    variables of shape ``d`` and ``Sigma`` is a tilted difference of two
    such variables, whose density carries ``K_{d - 1/2}``.
    """
    if batch.config is None:
        raise DomainError("batch carries no config; use chi_squared_fit with an explicit order")
    return chi_squared_fit(batch, batch.config.d - 0.5, significance)


def histogram_entropy(batch: SampleBatch) -> float:
    """Plug-in differential entropy from a Freedman-Diaconis histogram."""
    s = np.asarray(batch.sigma_values, dtype=float)
    w = freedman_diaconis_width(s)
    edges = w * np.arange(np.floor(s.min() / w), np.ceil(s.max() / w) + 1)
    counts, _ = np.histogram(s, edges)
    p = counts[counts > 0] / s.size
    return float(-np.sum(p * np.log(p / w)))


def write_batch_csv(batch: SampleBatch, path) -> None:
    """Single-column CSV with header ``sigma`` and 12 significant digits."""
    with open(path, "w", newline="") as fh:
        fh.write("sigma\n")
        np.savetxt(fh, np.asarray(batch.sigma_values), fmt="%.12g")


def read_batch_csv(path) -> SampleBatch:
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader)
        if header != ["sigma"]:
            raise DomainError(f"expected header 'sigma', got {header}")
        values = np.array([float(row[0]) for row in reader])
    return SampleBatch(values)

"""Shared test helpers."""
import numpy as np
from scipy import optimize

from dftbound import CONTINUOUS, check_dft, differential_entropy, mean, mean_of_lambda
from dftbound.core import normalized_density
from dftbound.maximal import exponent


def perturbed_entropy(rng, lam=2.0, eta=0.3):
    """Entropy of a random DFT-preserving perturbation with the mean restored.

    The log-density gets ``eta * g(|S|)`` with ``g`` a random sum of bumps
    (even, so the DFT is kept); the mean is put back with the even tilt
    ``-tau * S tanh(S/2) / 2``.
    """
    centers = rng.uniform(0.0, 6.0, 4)
    widths = rng.uniform(0.5, 2.0, 4)
    heights = rng.normal(size=4)

    def g(x):
        a = np.abs(x)[..., None]
        return np.sum(heights * np.exp(-0.5 * ((a - centers) / widths) ** 2), axis=-1)

    target = mean_of_lambda(CONTINUOUS, lam)

    def density(tau):
        log_u = lambda x: exponent(x, lam) + eta * g(x) - 0.5 * tau * x * np.tanh(0.5 * x)
        return normalized_density(log_u, 0.5 * (lam - 1.0), 0.0, 1.0)[0]

    tau = optimize.brentq(lambda t: mean(density(t)) - target, -0.5, 3.0, xtol=1e-13)
    d = density(tau)
    return differential_entropy(d), mean(d), check_dft(d)

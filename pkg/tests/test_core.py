import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from dftbound import (
    CONTINUOUS,
    DomainError,
    Pmf,
    SupportAsymmetry,
    SupportMismatch,
    SymmetricSupport,
    bound_continuous,
    check_dft,
    check_identity,
    check_ift,
    conditional_sign_prob,
    differential_entropy,
    kl_divergence,
    maximal_distribution,
    mean,
    shannon_entropy,
    solve_lambda,
)
from dftbound.models import gaussian_density, gaussian_entropy, swap_pmf


def test_support_rejects_asymmetric_values():
    with pytest.raises(SupportAsymmetry):
        SymmetricSupport.finite([-1.0, 0.0, 2.0])


def test_support_snaps_to_exact_negation():
    s = SymmetricSupport.finite([1.0 + 1e-15, 0.0, -1.0])
    np.testing.assert_array_equal(s.values, -s.values[::-1])


def test_lattice_needs_positive_spacing():
    with pytest.raises(DomainError):
        SymmetricSupport.lattice(0.0)


def test_pmf_validation():
    with pytest.raises(DomainError):
        Pmf([-1.0, 1.0], [0.5, 0.6])
    with pytest.raises(DomainError):
        Pmf([-1.0, 1.0], [1.5, -0.5])
    with pytest.raises(DomainError):
        Pmf([1.0, -1.0], [0.75, 0.25])
    p = Pmf([-1.0, 1.0], [0.25, 0.75])
    assert p.prob_of(1.0) == 0.75
    assert p.prob_of(0.5) == 0.0
    with pytest.raises(ValueError):
        p.probs[0] = 0.3


def test_shannon_entropy_examples():
    assert shannon_entropy(Pmf.point_mass()) == 0.0
    p = Pmf([-2.0, 0.0, 2.0], [0.25, 0.5, 0.25])
    assert shannon_entropy(p) == pytest.approx(1.5 * np.log(2), abs=1e-12)


def test_swap_entropy_matches_partition_form():
    z0 = 1 + np.e + 1 / np.e
    mu = 2 * (np.e - 1 / np.e) / z0
    assert shannon_entropy(swap_pmf(1.0)) == pytest.approx(np.log(z0) - mu / 2, abs=1e-12)


def test_zero_probability_is_ignored():
    p = Pmf([-1.0, 0.0, 1.0], [0.0, 0.5, 0.5])
    assert shannon_entropy(p) == pytest.approx(np.log(2))


@pytest.mark.parametrize("mu", [1.0, np.e / (4 * np.pi), 2.0])
def test_gaussian_differential_entropy(mu):
    h = differential_entropy(gaussian_density(mu))
    assert h == pytest.approx(0.5 * np.log(4 * np.pi * np.e * mu), abs=1e-9)


def test_entropy_for_e_over_4pi_is_one():
    assert differential_entropy(gaussian_density(np.e / (4 * np.pi))) == pytest.approx(1.0, abs=1e-9)


@pytest.mark.parametrize("c", [-3.0, 0.7, 12.0])
def test_translation_invariance(c):
    d = maximal_distribution(CONTINUOUS, 2.0)
    assert differential_entropy(d.shifted(c)) == pytest.approx(differential_entropy(d), abs=1e-9)


def test_mean_examples():
    assert mean(Pmf([-1.0, 0.0, 1.0], [0.3, 0.4, 0.3])) == pytest.approx(0.0, abs=1e-15)
    assert mean(gaussian_density(2.0)) == pytest.approx(2.0, abs=1e-9)
    w = np.exp(0.5 * np.array([-1.0, 0.0, 1.0]))
    p = Pmf([-1.0, 0.0, 1.0], w / w.sum())
    expected = 2 * np.sinh(0.5) / (1 + 2 * np.cosh(0.5))
    assert mean(p) == pytest.approx(expected, abs=1e-15)


def test_check_dft_examples():
    assert check_dft(gaussian_density(1.3), [0.5, 1, 2, 5]) < 1e-12
    uniform = Pmf([-1.0, 0.0, 1.0], [1 / 3, 1 / 3, 1 / 3])
    assert check_dft(uniform) == pytest.approx(1.0, abs=1e-14)
    for a in (0.1, 1.0, 3.0):
        assert check_dft(swap_pmf(a)) < 1e-12


def test_check_dft_rejects_nonpositive_grid():
    with pytest.raises(DomainError):
        check_dft(gaussian_density(1.0), [0.0, 1.0])


def test_check_ift_examples():
    assert check_ift(gaussian_density(1.0)) == pytest.approx(1.0, abs=1e-8)
    assert check_ift(Pmf.point_mass()) == 1.0
    assert check_ift(gaussian_density(1.0), assume_dft=True) == pytest.approx(1.0, abs=1e-8)


def test_check_ift_detects_non_dft_density():
    # variance 2, mean 1.5: <e^-S> = exp(-1.5 + 1)
    shifted = gaussian_density(1.0).shifted(0.5)
    assert check_ift(shifted) == pytest.approx(np.exp(-0.5), abs=1e-8)


def test_check_identity_examples():
    assert abs(check_identity(gaussian_density(1.0))) < 1e-8
    assert check_identity(Pmf.point_mass()) == 0.0
    p = Pmf([-1.0, 1.0], [0.9, 0.1])
    assert check_identity(p) == pytest.approx(-0.8 - np.tanh(0.5), abs=1e-14)


def test_conditional_sign_prob():
    plus, minus, degenerate = conditional_sign_prob(np.log(3))
    assert (plus, minus) == pytest.approx((0.75, 0.25), abs=1e-15)
    assert not degenerate
    assert conditional_sign_prob(100.0).plus == pytest.approx(1.0, abs=1e-15)
    assert conditional_sign_prob(0.0) == (1.0, 0.0, True)
    with pytest.raises(DomainError):
        conditional_sign_prob(-0.1)


def test_kl_examples():
    p = Pmf([-1.0, 1.0], [0.5, 0.5])
    r = Pmf([-1.0, 1.0], [0.25, 0.75])
    assert kl_divergence(p, r) == pytest.approx(0.5 * np.log(2) + 0.5 * np.log(2 / 3), abs=1e-14)
    assert kl_divergence(p, p) == pytest.approx(0.0, abs=1e-12)
    g = gaussian_density(1.5)
    assert kl_divergence(g, g) == pytest.approx(0.0, abs=1e-10)


def test_kl_support_mismatch():
    p = Pmf([-1.0, 0.0, 1.0], [0.2, 0.3, 0.5])
    r = Pmf([-1.0, 1.0], [0.5, 0.5])
    with pytest.raises(SupportMismatch):
        kl_divergence(p, r)
    with pytest.raises(SupportMismatch):
        kl_divergence(p, gaussian_density(1.0))


@pytest.mark.parametrize("mu", [0.5, 1.0, 4.0])
def test_kl_gaussian_to_maximal_is_entropy_gap(mu):
    sol = solve_lambda(CONTINUOUS, mu)
    pm = maximal_distribution(CONTINUOUS, sol.lam)
    d = kl_divergence(gaussian_density(mu), pm)
    gap = bound_continuous(mu).bound_nats - gaussian_entropy(mu)
    assert d == pytest.approx(gap, abs=1e-8)
    assert d > 0


prob_vectors = st.lists(st.floats(1e-6, 1.0), min_size=1, max_size=12).map(
    lambda w: np.asarray(w) / np.sum(w)
)


@given(prob_vectors, st.randoms())
@settings(max_examples=60, deadline=None)
def test_entropy_is_permutation_invariant_and_bounded(probs, r):
    n = probs.size
    values = np.arange(n, dtype=float) - (n - 1) / 2
    h = shannon_entropy(Pmf(values, probs))
    perm = list(range(n))
    r.shuffle(perm)
    assert shannon_entropy(Pmf(values, probs[perm])) == pytest.approx(h, abs=1e-12)
    assert -1e-15 <= h <= np.log(n) + 1e-12


@given(prob_vectors.filter(lambda p: p.size >= 2), st.data())
@settings(max_examples=60, deadline=None)
def test_kl_nonnegative(probs, data):
    w = np.asarray(data.draw(st.lists(st.floats(1e-6, 1.0), min_size=probs.size, max_size=probs.size)))
    values = np.arange(probs.size, dtype=float)
    d = kl_divergence(Pmf(values, probs), Pmf(values, w / w.sum()))
    assert d >= -1e-12


@given(st.floats(0.0, 30.0))
def test_sign_probabilities_sum_to_one(eps):
    plus, minus, _ = conditional_sign_prob(eps)
    assert plus + minus == pytest.approx(1.0, abs=1e-15)
    assert plus >= 0.5

import numpy as np
import pytest
from hypothesis import given, settings
from scipy import special
from hypothesis import strategies as st

from dftbound import (
    DomainError,
    Pmf,
    SymmetricSupport,
    bound_discrete,
    check_dft,
    differential_entropy,
    ft_report,
    mean,
    shannon_entropy,
)
from dftbound.models import (
    BosonicParams,
    NanoParams,
    SwapParams,
    bessel_k_density,
    bosonic_entropy,
    bosonic_limit_check,
    bosonic_moments,
    bosonic_normalization,
    bosonic_pmf,
    compose_swaps,
    composite_swap_pmf,
    figure3_engine,
    figure3_unit,
    gaussian_density,
    gaussian_entropy,
    model_alpha_from_mean,
    nano_density,
    qubit_swap_pmf,
    swap_half_gap,
    swap_pmf,
)


def brute_bosonic(delta, alpha, m=4000):
    s = delta * np.arange(-m, m + 1, dtype=float)
    w = np.exp(0.5 * s - 0.5 * alpha * np.abs(s))
    keep = w > 0
    return s[keep], w[keep] / w.sum(), w.sum()


def test_bosonic_normalization_example():
    assert bosonic_normalization(BosonicParams(1.0, 3.0)) == pytest.approx(1.738495, abs=1e-6)
    x, y = np.exp(-1.0), np.exp(-2.0)
    assert bosonic_normalization(BosonicParams(1.0, 3.0)) == pytest.approx(1 + x / (1 - x) + y / (1 - y), rel=1e-15)


@pytest.mark.parametrize("alpha", [1.1, 2.0, 5.0])
def test_bosonic_closed_forms_match_direct_sums(alpha):
    p = BosonicParams(1.0, alpha)
    s, w, a = brute_bosonic(1.0, alpha)
    assert bosonic_normalization(p) == pytest.approx(a, rel=1e-13)
    mu, mu_abs = bosonic_moments(p)
    assert mu == pytest.approx(s @ w, rel=1e-12)
    assert mu_abs == pytest.approx(np.abs(s) @ w, rel=1e-12)
    assert bosonic_entropy(p) == pytest.approx(np.sum(special.entr(w)), abs=1e-10)
    assert bosonic_entropy(p) == pytest.approx(shannon_entropy(bosonic_pmf(p)), abs=1e-10)


def test_bosonic_truncation_keeps_ratios():
    assert check_dft(bosonic_pmf(BosonicParams(0.3, 1.05))) < 1e-10


def test_check_dft_flags_missing_partner():
    assert check_dft(Pmf([-1.0, 0.0, 1.0], [0.0, 0.5, 0.5])) == np.inf


def test_bosonic_large_alpha_is_point_mass():
    p = BosonicParams(1.0, 80.0)
    assert bosonic_entropy(p) < 1e-14
    assert bosonic_pmf(p).prob_of(0.0) == pytest.approx(1.0, abs=1e-15)


def test_bosonic_rejects_small_alpha():
    with pytest.raises(DomainError):
        BosonicParams(1.0, 0.9)


def test_bosonic_limit_check():
    assert bosonic_limit_check(BosonicParams(20.0, 2.0)) == pytest.approx(10 * (1 - np.tanh(10)), rel=1e-9)
    assert bosonic_limit_check(BosonicParams(20.0, 2.0)) < 1e-7
    assert bosonic_limit_check(BosonicParams(1.0, 2.0), m_max=0) == 0.0
    small = bosonic_limit_check(BosonicParams(1e-3, 2.0), m_max=1)
    assert small == pytest.approx(5e-4 * (1 - np.tanh(5e-4)), rel=1e-12)


def test_bosonic_gap_shrinks_with_spacing():
    mu = 1.0
    gaps = []
    for delta in (1.0, 4.0, 10.0, 20.0):
        p = BosonicParams(delta, model_alpha_from_mean("bosonic", mu, delta=delta))
        m = bound_discrete(SymmetricSupport.lattice(delta), mu).bound_nats
        gaps.append(m - bosonic_entropy(p))
    assert np.all(np.diff(gaps) < 0)
    assert gaps[-1] < 1e-4


def test_gaussian_density_examples():
    g = gaussian_density(1.0)
    assert g.pdf(1.0) == pytest.approx((4 * np.pi) ** -0.5, rel=1e-14)
    assert check_dft(g, [0.5, 1, 2, 5]) < 1e-12
    assert differential_entropy(gaussian_density(2.0)) == pytest.approx(0.5 * np.log(8 * np.pi * np.e), abs=1e-8)
    assert mean(g, ) == pytest.approx(1.0, abs=1e-10)
    assert g.expect(lambda x: (x - 1.0) ** 2) == pytest.approx(2.0, abs=1e-9)
    with pytest.raises(DomainError):
        gaussian_density(0.0)


def test_nano_d1_shape():
    alpha = 1.3
    p = nano_density(NanoParams(1, alpha))
    closed = lambda s: np.exp(s / 2 - alpha * abs(s)) * (abs(s) + 1 / alpha)
    assert p.pdf(1.0) / p.pdf(2.0) == pytest.approx(closed(1.0) / closed(2.0), rel=1e-10)
    assert p.pdf(-1.5) / p.pdf(0.7) == pytest.approx(closed(-1.5) / closed(0.7), rel=1e-10)


@pytest.mark.parametrize("d", [1, 2, 3])
@pytest.mark.parametrize("alpha", [0.6, 1.0, 3.0])
def test_nano_mean_closed_form(d, alpha):
    # MGF [(alpha^2 - 1/4) / (alpha^2 - (s + 1/2)^2)]^k with k = d + 1
    k = d + 1
    p = nano_density(NanoParams(d, alpha))
    assert mean(p) == pytest.approx(k / (alpha**2 - 0.25), rel=1e-9)
    assert check_dft(p, [0.5, 1, 3]) < 1e-10
    assert np.isfinite(p.pdf(0.0)) and p.pdf(0.0) > 0


def test_nano_rejects_bad_params():
    with pytest.raises(DomainError):
        NanoParams(1, 0.5)
    with pytest.raises(DomainError):
        NanoParams(0, 1.0)


def test_alpha_round_trips():
    mu = bosonic_moments(BosonicParams(1.0, 2.0))[0]
    assert model_alpha_from_mean("bosonic", mu) == pytest.approx(2.0, abs=1e-5)
    mu = mean(nano_density(NanoParams(1, 1.5)))
    assert model_alpha_from_mean("nano", mu, d=1) == pytest.approx(1.5, abs=1e-5)


@pytest.mark.parametrize("model", ["bosonic", "nano"])
def test_larger_mean_gives_smaller_alpha(model):
    assert model_alpha_from_mean(model, 3.0) < model_alpha_from_mean(model, 1.0)


def test_swap_examples():
    p = swap_pmf(SwapParams(1.0))
    z0 = 1 + np.e + 1 / np.e
    assert z0 == pytest.approx(4.086161, abs=1e-6)
    np.testing.assert_allclose(p.probs, np.exp([-1.0, 0.0, 1.0]) / z0, rtol=1e-14)
    mu = 2 * (np.e - 1 / np.e) / z0
    assert mean(p) == pytest.approx(mu, abs=1e-14)
    assert mean(p) == pytest.approx(1.15042076521, abs=1e-10)
    assert shannon_entropy(p) == pytest.approx(0.83239558184, abs=1e-10)
    assert shannon_entropy(swap_pmf(1e-8)) == pytest.approx(np.log(3), abs=1e-12)
    with pytest.raises(DomainError):
        SwapParams(0.0)


@pytest.mark.parametrize("a", [0.1, 1.0, 3.0])
def test_swap_saturates(a):
    p = swap_pmf(a)
    b = bound_discrete(SymmetricSupport.finite([-2 * a, 0.0, 2 * a]), mean(p))
    assert abs(b.bound_nats - shannon_entropy(p)) < 1e-10
    assert abs(b.lam) < 1e-6


def test_composite_support_has_nine_points():
    b = 0.7
    p = compose_swaps(swap_pmf(b), swap_pmf(1.5 * b))
    expected = b * np.array([-5, -3, -2, -1, 0, 1, 2, 3, 5], dtype=float)
    np.testing.assert_allclose(p.values, expected, rtol=1e-14, atol=1e-15)
    assert check_dft(p) < 1e-12
    b_val = bound_discrete(p.support, mean(p))
    assert abs(b_val.bound_nats - shannon_entropy(p)) < 1e-10


def test_compose_keeps_exponential_form():
    p = composite_swap_pmf(0.5)
    w = np.exp(p.values / 2)
    # coefficients count the ways to reach each sum
    mult = np.array([1, 1, 1, 1, 1, 1, 1, 1, 1])
    np.testing.assert_allclose(p.probs, mult * w / np.sum(mult * w), rtol=1e-13)


def test_compose_with_point_mass_is_identity():
    p = swap_pmf(0.9)
    q = compose_swaps(p, Pmf.point_mass())
    np.testing.assert_allclose(q.values, p.values, rtol=1e-15)
    np.testing.assert_allclose(q.probs, p.probs, rtol=1e-15)


def pmf_close(p, q):
    return p.values.size == q.values.size and np.allclose(p.values, q.values) and np.allclose(p.probs, q.probs)


@given(st.floats(0.05, 3.0), st.floats(0.05, 3.0), st.floats(0.05, 3.0))
@settings(max_examples=40, deadline=None)
def test_compose_commutative_and_associative(a, b, c):
    p, q, r = swap_pmf(a), swap_pmf(b), swap_pmf(c)
    assert pmf_close(compose_swaps(p, q), compose_swaps(q, p))
    assert pmf_close(compose_swaps(compose_swaps(p, q), r), compose_swaps(p, compose_swaps(q, r)))
    assert check_dft(compose_swaps(compose_swaps(p, q), r)) < 1e-10


def test_qubit_swap_is_dft_and_on_three_points():
    p = qubit_swap_pmf(0.5, 1.0, 0.4, 1.0)
    a = swap_half_gap(0.5, 1.0, 0.4, 1.0)
    np.testing.assert_allclose(p.values, [-2 * a, 0, 2 * a], atol=1e-14)
    assert check_dft(p) < 1e-12
    b = bound_discrete(p.support, mean(p))
    assert b.bound_nats == pytest.approx(shannon_entropy(p), abs=1e-10)


def test_figure3_preset():
    b = figure3_unit()
    assert b == pytest.approx(0.5, abs=1e-15)
    p = figure3_engine()
    assert p.values.size == 9
    np.testing.assert_allclose(p.values / b, [-5, -3, -2, -1, 0, 1, 2, 3, 5], atol=1e-13)


@pytest.mark.parametrize(
    "dist",
    [gaussian_density(0.3), nano_density(NanoParams(2, 0.8)), bessel_k_density(0.5, 1.2)],
    ids=["gauss", "nano", "order-half"],
)
def test_continuous_models_pass_ft_suite(dist):
    assert ft_report(dist).passes()


def test_gaussian_entropy_formula():
    assert gaussian_entropy(1.0) == pytest.approx(1.765512, abs=1e-6)

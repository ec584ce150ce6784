import numpy as np
import pytest

from dftbound import QuadratureConfig, QuadratureFailure
from dftbound.quadrature import gauss_legendre_rule, integrate, integration_window


def test_rule_integrates_polynomials_exactly():
    x, w = gauss_legendre_rule(-1.0, 3.0, 0.5)
    assert w @ x**5 == pytest.approx((3.0**6 - 1.0) / 6, rel=1e-14)


def test_rule_has_an_edge_at_zero():
    x, w = gauss_legendre_rule(-1.3, 2.1, 0.5)
    # |x| has a kink at 0; piecewise-polynomial integrals stay exact
    assert w @ np.abs(x) == pytest.approx((1.3**2 + 2.1**2) / 2, rel=1e-13)


def test_laplace_normalization():
    val = integrate(lambda x: 0.5 * np.exp(-np.abs(x)), 0.0, 1.0, 1.0)
    assert val == pytest.approx(1.0, abs=1e-12)


def test_vector_rows():
    def rows(x):
        g = np.exp(-0.5 * x**2) / np.sqrt(2 * np.pi)
        return np.vstack([g, x**2 * g])

    z, m2 = integrate(rows, 0.0, 1.0, 0.5)
    assert z == pytest.approx(1.0, abs=1e-12)
    assert m2 == pytest.approx(1.0, abs=1e-11)


def test_narrow_peak_far_from_origin():
    s = 1e-3
    f = lambda x: np.exp(-0.5 * ((x - 50.0) / s) ** 2) / (s * np.sqrt(2 * np.pi))
    assert integrate(f, 50.0, s, 1.0) == pytest.approx(1.0, abs=1e-10)


def test_window_covers_slow_tail():
    lo, hi, _ = integration_window(lambda x: np.exp(-0.1 * np.abs(x)), 0.0, 1.0, 0.1)
    assert hi > 250 and lo < -250


def test_failure_when_tail_never_decays():
    q = QuadratureConfig(max_halfwidth=20.0)
    with pytest.raises(QuadratureFailure):
        integrate(lambda x: np.ones_like(x), 0.0, 1.0, 1.0, q)


def test_config_validation():
    with pytest.raises(ValueError):
        QuadratureConfig(rel_tol=0.0)

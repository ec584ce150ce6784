"""Entropy-versus-mean curves: bound sweeps and the two figure tables."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import CONTINUOUS, SymmetricSupport, differential_entropy
from .maximal import bound_continuous, bound_discrete
from .models import (
    BosonicParams,
    NanoParams,
    bosonic_entropy,
    bosonic_moments,
    gaussian_entropy,
    model_alpha_from_mean,
    nano_density,
)

BOUND_SLACK = 1e-9

FIGURE1_ALPHAS = np.geomspace(1.05, 8.0, 40)
FIGURE1_DELTA = 1.0
FIGURE2_MEANS = np.linspace(0.25, 8.0, 32)


@dataclass(frozen=True)
class CurvePoint:
    mean: float
    entropy_nats: float
    bound_nats: float
    lambda_or_alpha: float
    model: str

    @property
    def gap(self) -> float:
        return self.bound_nats - self.entropy_nats


class BoundViolation(ArithmeticError):
    """An entropy exceeded its bound by more than the allowed slack."""


def _check_rows(rows, entropy_keys, bound_key="bound"):
    for row in rows:
        for key in entropy_keys:
            if row[key] > row[bound_key] + BOUND_SLACK:
                raise BoundViolation(
                    f"{key}={row[key]!r} exceeds {bound_key}={row[bound_key]!r} at mean {row['mean']}"
                )


def bound_curve(support, means, tol: float = 1e-10):
    """Rows ``{mean, lambda, bound_nats}`` sorted by mean.

    ``support`` is a :class:`SymmetricSupport` or ``CONTINUOUS``.
    """
    rows = []
    for m in sorted(float(x) for x in means):
        if support == CONTINUOUS:
            b = bound_continuous(m, tol)
        else:
            b = bound_discrete(support, m, tol)
        rows.append({"mean": m, "lambda": b.lam, "bound_nats": b.bound_nats})
    return rows


def bosonic_curve(delta: float, alphas):
    """Bosonic entropy and the lattice bound at each alpha, as CurvePoints."""
    lattice = SymmetricSupport.lattice(delta)
    points = []
    for a in alphas:
        p = BosonicParams(delta, float(a))
        mu = bosonic_moments(p)[0]
        points.append(
            CurvePoint(mu, bosonic_entropy(p), bound_discrete(lattice, mu).bound_nats, float(a), "bosonic")
        )
    return sorted(points, key=lambda c: c.mean)


def figure1_table(alphas=FIGURE1_ALPHAS, delta=FIGURE1_DELTA):
    """Rows ``{mean, H_bosonic, M_bound}`` for the bosonic mode."""
    rows = [
        {"mean": c.mean, "H_bosonic": c.entropy_nats, "M_bound": c.bound_nats}
        for c in bosonic_curve(delta, alphas)
    ]
    _check_rows(rows, ["H_bosonic"], "M_bound")
    return rows


def figure2_table(means=FIGURE2_MEANS):
    """Rows ``{mean, h_nano_d1..d3, h_gauss, m_bound}`` on a common mean grid."""
    rows = []
    for m in sorted(float(x) for x in means):
        row = {"mean": m}
        for d in (1, 2, 3):
            alpha = model_alpha_from_mean("nano", m, d=d)
            row[f"h_nano_d{d}"] = differential_entropy(nano_density(NanoParams(d, alpha)))
        row["h_gauss"] = gaussian_entropy(m)
        row["m_bound"] = bound_continuous(m).bound_nats
        rows.append(row)
    _check_rows(rows, ["h_nano_d1", "h_nano_d2", "h_nano_d3", "h_gauss"], "m_bound")
    return rows

"""
Direct (Bell pair) versus ancilla-assisted (GHZ + localization) distribution
of entanglement through amplitude-damping channels.

In the direct scheme both halves of a Bell pair travel through channels of
strength ``d1``, ``d2``. In the assisted scheme qubits 1 and 2 of a GHZ
state travel through channels of equal strength ``d``, qubit 3 stays home
with local noise ``d3``, and qubit 3 is then measured at angle ``theta``;
only the ``+`` outcome is scored.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Iterable

from . import localize as loc

R_MIN_D = 1e-6


def dds_lambda_min(d1: float, d2: float) -> float:
    e1, e2 = 1 - d1, 1 - d2
    return 0.25 * (d1 * e2 + e1 * d2) - 0.25 * math.sqrt((d1 - d2) ** 2 + 4 * e1 * e2)


def dds_measures(d1: float, d2: float | None = None) -> tuple[float, float]:
    """Negativity and fully entangled fraction of a Bell pair after local amplitude damping."""
    if d2 is None:
        d2 = d1
    e1, e2 = 1 - d1, 1 - d2
    n = max(0.0, -2.0 * dds_lambda_min(d1, d2))
    f = 0.25 * (2 + 2 * math.sqrt(e1 * e2) + 2 * d1 * d2 - d1 - d2)
    return n, f


def dds_symmetric(d: float) -> tuple[float, float]:
    n = (1 - d) ** 2
    return n, 0.5 * (1 + n)


def ads_coefficients(d: float, d3: float, theta: float) -> tuple[float, float]:
    """``(kappa', |xi'|)`` of the unnormalized ``+`` state for ``d1 = d2 = d``."""
    c, s = math.cos(theta / 2), math.sin(theta / 2)
    e, e3 = 1 - d, 1 - d3
    kappa = 0.5 * d * e * (d3 * c * c + e3 * s * s)
    xi = 0.5 * e * math.sqrt(e3) * s * c
    return kappa, xi


def ads_measures(d: float, d3: float, theta: float) -> tuple[float, float, float]:
    """Negativity, fully entangled fraction and probability of the ``+`` outcome.

    Both measures are NaN when the outcome cannot occur.
    """
    prob = loc.amp_probability(d3, theta, "+")
    if prob < loc.ZERO_PROBABILITY:
        return math.nan, math.nan, prob
    kappa, xi = ads_coefficients(d, d3, theta)
    gap = (xi - kappa) / prob
    n = max(0.0, 2 * gap)
    # 1/2 + gap covers both the entangled (= (1 + N)/2) and separable branches
    f = 0.5 + gap
    return n, f, prob


@dataclass(frozen=True)
class ComparisonPoint:
    d: float
    theta: float
    d3: float
    n_dds: float
    n_ads_plus: float
    f_dds: float
    f_ads_plus: float
    delta_n: float
    delta_f: float
    p_plus: float

    @property
    def r(self) -> float:
        return self.d3 / self.d if self.d > 0 else math.nan


FIELDS = ("d", "theta", "d3", "n_dds", "n_ads_plus", "f_dds", "f_ads_plus", "delta_n", "delta_f", "p_plus")


def compare_point(d: float, theta: float, d3: float = 0.0) -> ComparisonPoint:
    n_dds, f_dds = dds_symmetric(d)
    n_ads, f_ads, p = ads_measures(d, d3, theta)
    return ComparisonPoint(d, theta, d3, n_dds, n_ads, f_dds, f_ads, n_ads - n_dds, f_ads - f_dds, p)


def compare_scan(d_values: Iterable[float], theta_values: Iterable[float], r_values: Iterable[float] = (0.0,)) -> list[ComparisonPoint]:
    """Evaluate every ``(d, theta, r)`` combination with ``d3 = r * d``.

    Rows come out in lexicographic ``(d, theta, r)`` order. When any ``r`` is
    nonzero, ``d`` is clamped to at least ``1e-6``.
    """
    ds = sorted(float(x) for x in d_values)
    ts = sorted(float(x) for x in theta_values)
    rs = sorted(float(x) for x in r_values)
    if not ds or not ts or not rs:
        raise ValueError("comparison grid is empty")
    for name, vals, hi in (("d", ds, 1.0), ("theta", ts, math.pi)):
        if vals[0] < 0 or vals[-1] > hi:
            raise ValueError(f"{name} values outside [0, {hi}]")
    if rs[0] < 0:
        raise ValueError("r must be nonnegative")
    if any(r > 0 for r in rs):
        ds = [max(d, R_MIN_D) for d in ds]
    rows = []
    for d, t, r in itertools.product(ds, ts, rs):
        d3 = r * d
        if d3 > 1.0:
            raise ValueError(f"d3 = r * d = {d3} exceeds 1")
        rows.append(compare_point(d, t, d3))
    return rows

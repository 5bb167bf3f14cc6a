"""
Measurement-angle optimization and noise-threshold search.

Objectives are closed-form functions ``f(params, theta)`` registered in
:data:`OBJECTIVES`; a coarse grid over ``[0, pi]`` is followed by a
golden-section refinement around the best grid point.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np

from . import localize as loc
from . import measures as ms
from .states import MeasurementBasis

HALF_PI = math.pi / 2
INV_PHI = (math.sqrt(5) - 1) / 2
GOLDEN_D = INV_PHI  # sudden-death point of N+ at theta = pi/2

Objective = Callable[[object, float], float]


def _basis(theta: float) -> MeasurementBasis:
    return MeasurementBasis(min(max(theta, 0.0), math.pi), 0.0)


def _depol_n(p, theta: float) -> float:
    p = loc.as_params(p)
    if not p.is_symmetric:
        raise ValueError("the depolarized negativity objective needs d1 = d2 = d3")
    return loc.depolarized_negativity(p.d1, theta)


OBJECTIVES: dict[str, Objective] = {
    "n+": lambda p, t: ms.n_amp(p, _basis(t), "+"),
    "n-": lambda p, t: ms.n_amp(p, _basis(t), "-"),
    "nave": lambda p, t: ms.n_average(p, _basis(t)),
    "f+": lambda p, t: ms.fef_closed_amp(p, _basis(t), "+"),
    "f-": lambda p, t: ms.fef_closed_amp(p, _basis(t), "-"),
    "fave": lambda p, t: ms.f_average(p, _basis(t)),
    "depol-n": _depol_n,
}


def get_objective(name) -> Objective:
    if callable(name):
        return name
    try:
        return OBJECTIVES[name.lower()]
    except KeyError:
        raise ValueError(f"unknown objective {name!r}; choose from {sorted(OBJECTIVES)}") from None


def _safe(value: float) -> float:
    # absent outcomes (zero probability) never win
    return -math.inf if math.isnan(value) else value


@dataclass(frozen=True)
class ScanResult:
    objective: str
    best_theta: float
    best_value: float
    grid: list = field(repr=False)
    flat: bool = False

    @property
    def grid_max(self) -> float:
        return max(v for _, v in self.grid)


def golden_section_max(f: Callable[[float], float], a: float, b: float, tol: float = 1e-10):
    """Bracket a maximum of ``f`` on ``[a, b]`` (assumed unimodal) to width ``tol``."""
    c = b - INV_PHI * (b - a)
    d = a + INV_PHI * (b - a)
    fc, fd = f(c), f(d)
    while b - a > tol:
        if fc >= fd:
            b, d, fd = d, c, fc
            c = b - INV_PHI * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + INV_PHI * (b - a)
            fd = f(d)
    return (c, fc) if fc >= fd else (d, fd)


def _parabolic_polish(f, x: float, fx: float, lo: float, hi: float):
    """Parabola-vertex steps that may only improve on ``fx``.

    Golden section stalls where the objective is flat to rounding
    (|dtheta| ~ 1e-8 around a smooth maximum); a vertex from wider-spaced
    samples is much more accurate there.
    """
    for h in (1e-3, 1e-4, 1e-5):
        if x - h < lo or x + h > hi:
            continue
        fl, fr = f(x - h), f(x + h)
        denom = fl - 2 * fx + fr
        if not denom < 0:
            continue
        v = x + 0.5 * h * (fl - fr) / denom
        if not lo <= v <= hi or abs(v - x) > h:
            continue
        fv = f(v)
        if fv >= fx:
            x, fx = v, fv
    return x, fx


def optimize_theta(objective, params, resolution: int = 2001, tol: float = 1e-10) -> ScanResult:
    """Maximize ``objective(params, theta)`` over ``theta`` in ``[0, pi]``.

    Grid ties resolve toward the smaller angle. ``flat`` is set when the
    objective vanishes on the whole grid.
    """
    name = objective if isinstance(objective, str) else getattr(objective, "__name__", "custom")
    f0 = get_objective(objective)

    def f(t: float) -> float:
        return _safe(f0(params, t))

    thetas = np.linspace(0.0, math.pi, resolution)
    if resolution % 2:
        thetas[resolution // 2] = HALF_PI
    grid = [(float(t), f(float(t))) for t in thetas]
    values = [v for _, v in grid]
    k = int(np.argmax(values))
    best_t, best_v = grid[k]
    if all(v == 0.0 or v == -math.inf for v in values):
        return ScanResult(name, best_t, best_v, grid, flat=True)
    lo = grid[max(k - 1, 0)][0]
    hi = grid[min(k + 1, resolution - 1)][0]
    t, v = golden_section_max(f, lo, hi, tol)
    t, v = _parabolic_polish(f, t, v, lo, hi)
    if v >= best_v:
        best_t, best_v = t, v
    return ScanResult(name, best_t, best_v, grid)


# -- thresholds in d ---------------------------------------------------------


@dataclass(frozen=True)
class ThresholdResult:
    theta: float
    d_star: Optional[float]
    bracket_width: float
    found: bool = True


def _symmetric_objective(objective) -> Callable[[float, float], float]:
    f = get_objective(objective)
    return lambda d, theta: f(loc.as_params(d), theta)


def sudden_death_threshold(theta: float, objective="n+", tol: float = 1e-12, lo: float = 0.0, hi: float = 1.0) -> ThresholdResult:
    """Smallest noise strength at which the objective reaches zero, by bisection.

    Noise is symmetric (``d1 = d2 = d3 = d``). The objective must be positive
    at ``lo`` and zero at ``hi``; otherwise ``found`` is False.
    """
    g = _symmetric_objective(objective)

    def alive(d: float) -> bool:
        v = g(d, theta)
        return not math.isnan(v) and v > 0.0

    if not alive(lo) or alive(hi):
        return ThresholdResult(theta, None, hi - lo, found=False)
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if mid in (lo, hi):
            break
        if alive(mid):
            lo = mid
        else:
            hi = mid
    return ThresholdResult(theta, 0.5 * (lo + hi), hi - lo)


# -- splitting of the N_ave maximizer ----------------------------------------

SPLIT_TOL = 1e-6


def nave_argmax(d: float, resolution: int = 2001) -> ScanResult:
    return optimize_theta("nave", d, resolution)


def nave_argmax_split(d: float, resolution: int = 2001) -> tuple[float, ...]:
    """Maximizers of the average negativity in ``theta`` under symmetric noise ``d``.

    Returns ``(pi/2,)`` for a single central maximum, ``(t, pi - t)`` when it
    has split into a symmetric pair, and ``()`` when the average vanishes.
    """
    res = nave_argmax(d, resolution)
    if res.flat:
        return ()
    t = res.best_theta
    if abs(t - HALF_PI) <= SPLIT_TOL:
        return (HALF_PI,)
    low = min(t, math.pi - t)
    return (low, math.pi - low)


def nave_split_critical_d(lo: float = 0.0, hi: float = GOLDEN_D, tol: float = 1e-9, resolution: int = 2001) -> float:
    """Noise strength above which the average-negativity maximizer leaves ``pi/2``."""

    def split(d: float) -> bool:
        return len(nave_argmax_split(d, resolution)) == 2

    if split(lo) or not split(hi):
        raise ValueError("critical point is not bracketed")
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if split(mid):
            hi = mid
        else:
            lo = mid
    return 0.5 * (lo + hi)

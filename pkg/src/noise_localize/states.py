"""Canonical states and the parametrized single-qubit measurement basis."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .qmat import PureState

SQRT_HALF = math.sqrt(0.5)


def ghz3() -> PureState:
    """(|000> + |111>)/sqrt(2)."""
    a = np.zeros(8, dtype=complex)
    a[0] = a[7] = SQRT_HALF
    return PureState(a)


def bell_plus() -> PureState:
    return PureState(np.array([SQRT_HALF, 0, 0, SQRT_HALF], dtype=complex))


def bell_minus() -> PureState:
    return PureState(np.array([SQRT_HALF, 0, 0, -SQRT_HALF], dtype=complex))


@dataclass(frozen=True)
class MeasurementBasis:
    """Projective qubit basis at polar angle ``theta`` and azimuth ``phi``.

    ``|+> = cos(theta/2)|0> + sin(theta/2) e^{i phi}|1>`` and
    ``|-> = sin(theta/2) e^{-i phi}|0> - cos(theta/2)|1>``.
    """

    theta: float
    phi: float = 0.0

    def __post_init__(self):
        theta, phi = float(self.theta), float(self.phi)
        if not 0.0 <= theta <= math.pi:
            raise ValueError(f"theta must lie in [0, pi], got {theta!r}")
        if not 0.0 <= phi <= 2 * math.pi:
            raise ValueError(f"phi must lie in [0, 2 pi], got {phi!r}")
        object.__setattr__(self, "theta", theta)
        object.__setattr__(self, "phi", phi)

    def ket(self, label: str) -> PureState:
        plus, minus = basis_kets(self)
        return plus if label == "+" else minus


def basis_kets(b: MeasurementBasis) -> tuple[PureState, PureState]:
    c, s = math.cos(b.theta / 2), math.sin(b.theta / 2)
    e = complex(math.cos(b.phi), math.sin(b.phi))
    plus = PureState(np.array([c, s * e], dtype=complex))
    minus = PureState(np.array([s * e.conjugate(), -c], dtype=complex))
    return plus, minus

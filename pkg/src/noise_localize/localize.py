"""
Entanglement localization: measure qubit 3 of a noisy GHZ state.

Two routes are provided and kept independent of each other:

* the generic pipeline (:func:`noisy_ghz` + :func:`measure_qubit3`), which
  builds 8x8 density matrices and projects numerically;
* closed-form expressions for the collapse probability, the X-shaped
  collapsed state of qubits 1 and 2, and the minimal eigenvalue of its
  partial transpose, for amplitude damping with arbitrary ``(d1, d2, d3)``
  and for equal depolarizing noise on all three qubits.

Outcome labels are the strings ``"+"`` and ``"-"``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Union

import numpy as np

from .channels import DecoherenceParams, amplitude_damping, apply_local, depolarizing
from .qmat import DensityMatrix, dagger, kron
from .states import MeasurementBasis, basis_kets, ghz3

ZERO_PROBABILITY = 1e-14
LABELS = ("+", "-")

Params = Union[DecoherenceParams, float]


def as_params(p: Params) -> DecoherenceParams:
    if isinstance(p, DecoherenceParams):
        return p
    return DecoherenceParams.symmetric(p)


def _check_label(label: str) -> str:
    if label not in LABELS:
        raise ValueError(f"outcome label must be '+' or '-', got {label!r}")
    return label


def _half_angle(theta: float) -> tuple[float, float]:
    return math.cos(theta / 2), math.sin(theta / 2)


# -- generic pipeline ------------------------------------------------------


def noisy_ghz(p: Params, model: str = "amp") -> DensityMatrix:
    """GHZ state after independent local noise on each qubit.

    ``model`` is ``"amp"`` (amplitude damping) or ``"depol"`` (depolarizing).
    """
    p = as_params(p)
    make = {"amp": amplitude_damping, "depol": depolarizing}[model]
    channels = [make(d) for d in (p.d1, p.d2, p.d3)]
    return apply_local(ghz3().projector(), channels)


@dataclass(frozen=True)
class LocalizationOutcome:
    label: str
    probability: float
    collapsed: Optional[DensityMatrix]
    unnormalized: np.ndarray

    @property
    def absent(self) -> bool:
        return self.collapsed is None


def measure_qubit3(rho, b: MeasurementBasis) -> tuple[LocalizationOutcome, LocalizationOutcome]:
    """Project qubit 3 onto ``{|+_theta>, |-_theta>}`` and keep qubits 1, 2.

    An outcome whose probability is below ``1e-14`` carries no collapsed state.
    """
    m = rho.matrix if isinstance(rho, DensityMatrix) else np.asarray(rho, dtype=complex)
    if m.shape != (8, 8):
        raise ValueError("measure_qubit3 expects a three-qubit density matrix")
    outcomes = []
    for label, ket in zip(LABELS, basis_kets(b)):
        # (I (x) I (x) <b|) rho (I (x) I (x) |b>)
        bra = kron(np.eye(4), ket.amplitudes.reshape(1, 2).conj())
        sub = bra @ m @ dagger(bra)
        sub = (sub + dagger(sub)) / 2
        prob = float(np.trace(sub).real)
        collapsed = DensityMatrix.from_unnormalized(sub) if prob >= ZERO_PROBABILITY else None
        sub.setflags(write=False)
        outcomes.append(LocalizationOutcome(label, max(prob, 0.0), collapsed, sub))
    return outcomes[0], outcomes[1]


# -- amplitude damping, closed forms ----------------------------------------


def amp_probability(d3: float, theta: float, label: str = "+") -> float:
    sign = 1.0 if _check_label(label) == "+" else -1.0
    return 0.5 + sign * 0.5 * d3 * math.cos(theta)


@dataclass(frozen=True)
class CollapsedCoefficients:
    """Entries of the unnormalized X-shaped state of qubits 1 and 2.

    The state is ``gamma|00><00| + kappa|01><01| + tau|10><10| + eta|11><11|``
    plus ``xi|00><11| + h.c.``; ``xi`` already carries the sign of the outcome.
    """

    gamma: float
    kappa: float
    tau: float
    eta: float
    xi: complex

    @property
    def trace(self) -> float:
        return self.gamma + self.kappa + self.tau + self.eta

    def matrix(self) -> np.ndarray:
        m = np.diag([self.gamma, self.kappa, self.tau, self.eta]).astype(complex)
        m[0, 3] = self.xi
        m[3, 0] = self.xi.conjugate()
        return m

    def block_min_eigenvalue(self) -> float:
        """Smaller eigenvalue of the {01, 10} block of the partial transpose (unnormalized)."""
        k, t = self.kappa, self.tau
        return 0.5 * (k + t - math.sqrt((k - t) ** 2 + 4 * abs(self.xi) ** 2))


def amp_coefficients(p: Params, b: MeasurementBasis, label: str = "+") -> CollapsedCoefficients:
    p = as_params(p)
    _check_label(label)
    d1, d2, d3 = p.d1, p.d2, p.d3
    e1, e2, e3 = p.complements
    c, s = _half_angle(b.theta)
    # outcome '-' swaps the roles of cos^2 and sin^2
    w0, w1 = (c * c, s * s) if label == "+" else (s * s, c * c)
    gamma = 0.5 * (1 + d1 * d2 * d3) * w0 + 0.5 * d1 * d2 * e3 * w1
    kappa = 0.5 * d1 * e2 * d3 * w0 + 0.5 * d1 * e2 * e3 * w1
    tau = 0.5 * e1 * d2 * d3 * w0 + 0.5 * e1 * d2 * e3 * w1
    eta = 0.5 * e1 * e2 * d3 * w0 + 0.5 * e1 * e2 * e3 * w1
    xi = 0.5 * math.sqrt(e1 * e2 * e3) * s * c * complex(math.cos(b.phi), math.sin(b.phi))
    if label == "-":
        xi = -xi
    return CollapsedCoefficients(gamma, kappa, tau, eta, xi)


def mu_amp(p: Params, b: MeasurementBasis, label: str = "+") -> float:
    """Minimal eigenvalue of the {01,10} block of the partially transposed collapsed state.

    Whenever it is negative it is also the minimal eigenvalue of the whole
    partial transpose. NaN when the outcome has zero probability.
    """
    p = as_params(p)
    prob = amp_probability(p.d3, b.theta, label)
    if prob < ZERO_PROBABILITY:
        return math.nan
    return amp_coefficients(p, b, label).block_min_eigenvalue() / prob


def mu_symmetric(d: float, theta: float, label: str = "+") -> float:
    """``mu_amp`` specialised to ``d1 = d2 = d3 = d``."""
    _check_label(label)
    prob = amp_probability(d, theta, label)
    if prob < ZERO_PROBABILITY:
        return math.nan
    c, s = _half_angle(theta)
    e = 1.0 - d
    if label == "+":
        inner = d * d * c * c + d * e * s * s
    else:
        inner = d * d * s * s + d * e * c * c
    return e / (2 * prob) * (inner - math.sqrt(e) * s * c)


# -- depolarizing, closed forms ---------------------------------------------


def depolarized_lambda(d: float, theta: float) -> float:
    """Block eigenvalue of the partial transpose after equal depolarizing noise.

    Identical for both outcomes; when negative it is the minimal eigenvalue.
    """
    return 2 * (3 - 2 * d) * d / 9 - abs(3 - 4 * d) ** 3 * math.sin(theta) / 54


def depolarized_negativity(d: float, theta: float) -> float:
    return max(0.0, -2.0 * depolarized_lambda(d, theta))


def depolarized_condition(d: float, theta: float) -> bool:
    """True iff ``sin(theta) > 12(3-2d)d / |3-4d|^3``, i.e. the localized state is NPT.

    Evaluated in multiplied-out form; at ``d = 3/4`` the right side diverges
    and the condition is never met.
    """
    return abs(3 - 4 * d) ** 3 * math.sin(theta) > 12 * (3 - 2 * d) * d


def depolarized_threshold_sin(d: float) -> float:
    """Right side ``12(3-2d)d / |3-4d|^3``; infinite at ``d = 3/4``."""
    denom = abs(3 - 4 * d) ** 3
    if denom == 0.0:
        return math.inf
    return 12 * (3 - 2 * d) * d / denom

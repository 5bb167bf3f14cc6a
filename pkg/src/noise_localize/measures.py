"""
Two-qubit entanglement quantifiers: negativity and fully entangled fraction.

Generic routines take any two-qubit :class:`DensityMatrix`. The ``*_amp``
and ``*_average`` functions are closed forms for the states produced by
localizing an amplitude-damped GHZ state.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import localize as loc
from .channels import PAULIS
from .qmat import DensityMatrix, eig_hermitian, kron, partial_transpose, singular_values_3x3
from .states import MeasurementBasis

_PAULI_PAIRS = [[kron(PAULIS[i], PAULIS[j]) for j in (1, 2, 3)] for i in (1, 2, 3)]


@dataclass(frozen=True)
class FefDecomposition:
    singular_values: tuple[float, float, float]
    det_sign: int
    correlation_matrix: np.ndarray


@dataclass(frozen=True)
class EntanglementReport:
    negativity: float
    fef: float
    min_pt_eigenvalue: float

    @property
    def useful_for_teleportation(self) -> bool:
        return self.fef > 0.5


def _matrix(rho) -> np.ndarray:
    return rho.matrix if isinstance(rho, DensityMatrix) else np.asarray(rho, dtype=complex)


def negativity(rho) -> tuple[float, float]:
    """Return ``(max(0, -2 lambda_min), lambda_min)`` of the partial transpose on qubit 2."""
    lam = float(eig_hermitian(partial_transpose(_matrix(rho), 2))[0])
    return max(0.0, -2.0 * lam), lam


def correlation_matrix(rho) -> np.ndarray:
    """Real 3x3 matrix ``R[i, j] = Tr(rho sigma_i (x) sigma_j)`` over (x, y, z)."""
    m = _matrix(rho)
    r = np.array([[np.trace(m @ pp) for pp in row] for row in _PAULI_PAIRS])
    return r.real.copy()


def fef(rho) -> tuple[float, FefDecomposition]:
    """Fully entangled fraction from the singular values of the correlation matrix."""
    r = correlation_matrix(rho)
    sv = singular_values_3x3(r)
    mu1, mu2, mu3 = sv.values
    value = 0.25 * (1 + mu1 + mu2 - sv.det_sign * mu3)
    return value, FefDecomposition(sv.values, sv.det_sign, r)


def entanglement_report(rho) -> EntanglementReport:
    n, lam = negativity(rho)
    f, _ = fef(rho)
    return EntanglementReport(n, f, lam)


# -- closed forms for the amplitude-damping family ---------------------------


def n_amp(p, b: MeasurementBasis, label: str = "+") -> float:
    mu = loc.mu_amp(p, b, label)
    return mu if math.isnan(mu) else max(0.0, -2.0 * mu)


def _fef_numerators(c: loc.CollapsedCoefficients) -> tuple[float, float]:
    # overlap numerators (times 4P) with the best |00>,|11> Bell state and with |01>,|10>
    bell_phi = 4 * abs(c.xi) + c.gamma + c.eta - c.kappa - c.tau
    bell_psi = c.kappa + c.tau - c.gamma - c.eta
    return bell_phi, bell_psi


def fef_phi_overlap(p, b: MeasurementBasis, label: str = "+") -> float:
    """Overlap of the collapsed state with its best ``|00> + e^{ia}|11>`` Bell state.

    Equals the fully entangled fraction unless an ``|01>, |10>`` Bell state
    does better, which can happen for ``d1 != d2``; see :func:`fef_closed_amp`.
    """
    p = loc.as_params(p)
    prob = loc.amp_probability(p.d3, b.theta, label)
    if prob < loc.ZERO_PROBABILITY:
        return math.nan
    phi_num, _ = _fef_numerators(loc.amp_coefficients(p, b, label))
    return 0.25 + phi_num / (4 * prob)


def fef_closed_amp(p, b: MeasurementBasis, label: str = "+") -> float:
    """Closed-form fully entangled fraction of the collapsed state of qubits 1, 2.

    The collapsed state is an X state with no ``|01><10|`` coherence, so the
    best maximally entangled state is either ``|00> + e^{ia}|11>`` or one of
    ``|01> +- |10>``; the larger overlap wins. With ``d1 = d2`` the first
    always wins and this reduces to ``1/2 - mu``.
    """
    p = loc.as_params(p)
    prob = loc.amp_probability(p.d3, b.theta, label)
    if prob < loc.ZERO_PROBABILITY:
        return math.nan
    phi_num, psi_num = _fef_numerators(loc.amp_coefficients(p, b, label))
    return 0.25 + max(phi_num, psi_num) / (4 * prob)


def n_average(p, b: MeasurementBasis) -> float:
    """``P+ N+ + P- N-``, written without dividing by the probabilities."""
    p = loc.as_params(p)
    total = 0.0
    for label in loc.LABELS:
        c = loc.amp_coefficients(p, b, label)
        total += max(0.0, -2.0 * c.block_min_eigenvalue())
    return total


def f_average(p, b: MeasurementBasis) -> float:
    """``P+ F+ + P- F-`` in closed form.

    The leading terms are ``3/8 + sqrt(e1 e2 e3) sin(t/2) cos(t/2) + (2d1-1)(2d2-1)/8``;
    the correction is nonzero only where an outcome's fidelity is attained by a
    ``|01>, |10>`` Bell state.
    """
    p = loc.as_params(p)
    e1, e2, e3 = p.complements
    c, s = loc._half_angle(b.theta)
    value = 0.375 + math.sqrt(e1 * e2 * e3) * s * c + (2 * p.d1 - 1) * (2 * p.d2 - 1) / 8
    for label in loc.LABELS:
        co = loc.amp_coefficients(p, b, label)
        value += max(0.0, (co.kappa + co.tau - co.gamma - co.eta) / 2 - abs(co.xi))
    return value


def f_average_symmetric(d: float, theta: float) -> float:
    e = 1.0 - d
    return 0.375 + e * math.sqrt(e) * math.sin(theta / 2) * math.cos(theta / 2) + (2 * d - 1) ** 2 / 8


def negativity_closed_d3zero(d: float, theta: float, label: str = "+") -> float:
    """Negativity of the collapsed state when only qubits 1 and 2 decohere, equally."""
    c, s = loc._half_angle(theta)
    if label == "+":
        return max(0.0, 2 * (1 - d) * s * (c - d * s))
    if label == "-":
        return max(0.0, 2 * (1 - d) * c * (s - d * c))
    raise ValueError(f"outcome label must be '+' or '-', got {label!r}")


def fef_closed_depol(d: float, theta: float) -> float:
    """Fully entangled fraction after equal depolarizing noise, either outcome.

    The localized state is again an X state whose best Bell state is of the
    ``|00>, |11>`` type, giving ``1/2 - lambda``.
    """
    return 0.5 - loc.depolarized_lambda(d, theta)

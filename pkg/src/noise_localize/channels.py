"""Single-qubit Kraus channels and their local application to a register."""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .qmat import DensityMatrix, DimensionError, dagger, kron

I2 = np.eye(2, dtype=complex)
SIGMA_X = np.array([[0, 1], [1, 0]], dtype=complex)
SIGMA_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
SIGMA_Z = np.array([[1, 0], [0, -1]], dtype=complex)
PAULIS = (I2, SIGMA_X, SIGMA_Y, SIGMA_Z)

COMPLETENESS_TOL = 1e-12


def _check_strength(d: float, name: str = "d") -> float:
    d = float(d)
    if not 0.0 <= d <= 1.0:
        raise ValueError(f"{name} must lie in [0, 1], got {d!r}")
    return d


@dataclass(frozen=True)
class KrausChannel:
    name: str
    operators: tuple

    def __post_init__(self):
        ops = tuple(np.asarray(k, dtype=complex) for k in self.operators)
        for k in ops:
            if k.shape != (2, 2):
                raise DimensionError("Kraus operators must be 2x2")
            k.setflags(write=False)
        total = sum(dagger(k) @ k for k in ops)
        if np.max(np.abs(total - I2)) > COMPLETENESS_TOL:
            raise ValueError(f"Kraus operators of {self.name!r} are not complete")
        object.__setattr__(self, "operators", ops)

    def __call__(self, rho) -> DensityMatrix:
        return apply_local(rho, [self])


@dataclass(frozen=True)
class DecoherenceParams:
    """Decoherence strengths of qubits 1, 2 and 3."""

    d1: float
    d2: float
    d3: float

    def __post_init__(self):
        for name in ("d1", "d2", "d3"):
            object.__setattr__(self, name, _check_strength(getattr(self, name), name))

    @classmethod
    def symmetric(cls, d: float) -> "DecoherenceParams":
        return cls(d, d, d)

    @property
    def complements(self) -> tuple[float, float, float]:
        return 1.0 - self.d1, 1.0 - self.d2, 1.0 - self.d3

    @property
    def is_symmetric(self) -> bool:
        return self.d1 == self.d2 == self.d3


def amplitude_damping(d: float) -> KrausChannel:
    d = _check_strength(d)
    k0 = np.array([[1, 0], [0, math.sqrt(1.0 - d)]], dtype=complex)
    k1 = np.array([[0, math.sqrt(d)], [0, 0]], dtype=complex)
    return KrausChannel("amplitude_damping", (k0, k1))


def depolarizing(d: float) -> KrausChannel:
    """Pauli channel with weight ``1 - d`` on the identity and ``d/3`` on each Pauli."""
    d = _check_strength(d)
    weights = (1.0 - d, d / 3, d / 3, d / 3)
    return KrausChannel("depolarizing", tuple(math.sqrt(p) * s for p, s in zip(weights, PAULIS)))


def apply_local(rho, assignment: Sequence[Optional[KrausChannel]]) -> DensityMatrix:
    """Apply an independent channel to each qubit; ``None`` leaves a qubit alone.

    Every combination of Kraus indices is summed explicitly.
    """
    m = rho.matrix if isinstance(rho, DensityMatrix) else np.asarray(rho, dtype=complex)
    n = m.shape[0].bit_length() - 1
    if len(assignment) != n:
        raise DimensionError(f"assignment has {len(assignment)} entries for {n} qubits")
    op_lists = [(I2,) if ch is None else ch.operators for ch in assignment]
    out = np.zeros_like(m)
    for combo in itertools.product(*op_lists):
        k = kron(*combo)
        out += k @ m @ dagger(k)
    return DensityMatrix((out + dagger(out)) / 2)

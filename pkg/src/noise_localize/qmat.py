"""
Dense complex linear algebra for registers of at most four qubits.

Matrices are plain ``numpy.ndarray`` objects of dtype ``complex128``.
Qubit 1 is the most significant bit of a basis label, so ``|q1 q2 q3>``
maps to row index ``4*q1 + 2*q2 + q3``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

MAX_DIM = 16
HERMITIAN_TOL = 1e-10
TRACE_TOL = 1e-10
PSD_TOL = 1e-10
JACOBI_TOL = 1e-13
JACOBI_MAX_SWEEPS = 64
DET_ZERO_TOL = 1e-12


class DimensionError(ValueError):
    """Raised when a matrix or register has an unsupported size."""


class NotHermitianError(ValueError):
    pass


class NotPositiveError(ValueError):
    pass


def _n_qubits(dim: int) -> int:
    n = dim.bit_length() - 1
    if dim < 2 or 1 << n != dim or dim > MAX_DIM:
        raise DimensionError(f"dimension {dim} is not 2**k with 1 <= k <= 4")
    return n


def dagger(m: np.ndarray) -> np.ndarray:
    return np.conj(m).T


def hermitian_residual(m: np.ndarray) -> float:
    return float(np.max(np.abs(m - dagger(m)))) if m.size else 0.0


def as_hermitian(m, tol: float = 1e-12) -> np.ndarray:
    """Return ``m`` as a complex array after checking ``m == m^dagger`` entrywise."""
    a = np.asarray(m, dtype=complex)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise DimensionError(f"expected a square matrix, got shape {a.shape}")
    if hermitian_residual(a) > tol:
        raise NotHermitianError(f"matrix is not Hermitian (residual {hermitian_residual(a):.3e})")
    return a


@dataclass(frozen=True)
class PureState:
    """Normalized state vector of 1 to 4 qubits."""

    amplitudes: np.ndarray

    def __post_init__(self):
        a = np.asarray(self.amplitudes, dtype=complex).reshape(-1)
        _n_qubits(a.size)
        norm = float(np.vdot(a, a).real)
        if abs(norm - 1.0) > 1e-12:
            raise ValueError(f"state is not normalized (|psi|^2 = {norm!r})")
        a.setflags(write=False)
        object.__setattr__(self, "amplitudes", a)

    @property
    def qubits(self) -> int:
        return _n_qubits(self.amplitudes.size)

    def overlap(self, other: "PureState") -> complex:
        return complex(np.vdot(self.amplitudes, other.amplitudes))

    def projector(self) -> "DensityMatrix":
        return DensityMatrix(np.outer(self.amplitudes, np.conj(self.amplitudes)))


@dataclass(frozen=True)
class DensityMatrix:
    """Hermitian, unit-trace matrix of 1 to 4 qubits.

    Hermiticity and trace are checked on construction. Positivity needs an
    eigendecomposition and is checked by :meth:`validate`.
    """

    matrix: np.ndarray

    def __post_init__(self):
        m = np.array(self.matrix, dtype=complex)
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise DimensionError(f"expected a square matrix, got shape {m.shape}")
        _n_qubits(m.shape[0])
        res = hermitian_residual(m)
        if res > HERMITIAN_TOL:
            raise NotHermitianError(f"density matrix is not Hermitian (residual {res:.3e})")
        tr = np.trace(m).real
        if abs(tr - 1.0) > TRACE_TOL:
            raise ValueError(f"density matrix trace is {tr!r}, expected 1")
        m.setflags(write=False)
        object.__setattr__(self, "matrix", m)

    @property
    def qubits(self) -> int:
        return _n_qubits(self.matrix.shape[0])

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    def eigenvalues(self) -> np.ndarray:
        return eig_hermitian(self.matrix)

    def validate(self) -> "DensityMatrix":
        lo = self.eigenvalues()[0]
        if lo < -PSD_TOL:
            raise NotPositiveError(f"density matrix has eigenvalue {lo:.3e}")
        return self

    @classmethod
    def from_unnormalized(cls, m: np.ndarray) -> "DensityMatrix":
        """Normalize a positive operator to unit trace.

        Eigenvalues in ``[-PSD_TOL, 0)`` are clamped to zero; anything more
        negative is an error.
        """
        m = np.asarray(m, dtype=complex)
        m = (m + dagger(m)) / 2
        tr = np.trace(m).real
        if tr <= 0:
            raise ValueError("cannot normalize an operator with non-positive trace")
        m = m / tr
        w, v = eig_hermitian(m, vectors=True)
        if w[0] < -PSD_TOL:
            raise NotPositiveError(f"operator has eigenvalue {w[0]:.3e}")
        if w[0] < 0:
            w = np.clip(w, 0.0, None)
            m = (v * w) @ dagger(v)
            m = m / np.trace(m).real
        return cls(m)

    @classmethod
    def maximally_mixed(cls, qubits: int) -> "DensityMatrix":
        dim = 1 << qubits
        return cls(np.eye(dim, dtype=complex) / dim)


def kron(*ms: np.ndarray) -> np.ndarray:
    out = np.ones((1, 1), dtype=complex)
    for m in ms:
        m = np.asarray(m, dtype=complex)
        if m.ndim == 1:
            m = m.reshape(-1, 1) if out.shape[1] == 1 else m.reshape(1, -1)
        if out.shape[0] * m.shape[0] > MAX_DIM or out.shape[1] * m.shape[1] > MAX_DIM:
            raise DimensionError(f"kron result exceeds dimension {MAX_DIM}")
        out = np.kron(out, m)
    return out


def _as_matrix(rho) -> np.ndarray:
    return rho.matrix if isinstance(rho, DensityMatrix) else np.asarray(rho, dtype=complex)


def partial_trace(rho, drop: int) -> DensityMatrix:
    """Trace out qubit ``drop`` (1-based, qubit 1 most significant)."""
    m = _as_matrix(rho)
    n = _n_qubits(m.shape[0])
    if n < 2:
        raise DimensionError("partial trace needs at least two qubits")
    if not 1 <= drop <= n:
        raise IndexError(f"qubit index {drop} out of range 1..{n}")
    t = m.reshape((2,) * (2 * n))
    k = drop - 1
    reduced = np.trace(t, axis1=k, axis2=n + k)
    dim = 1 << (n - 1)
    return DensityMatrix(reduced.reshape(dim, dim))


def partial_transpose(rho, qubit: int) -> np.ndarray:
    """Transpose the indices of ``qubit`` (1 or 2) of a two-qubit operator."""
    m = _as_matrix(rho)
    if m.shape != (4, 4):
        raise DimensionError("partial transpose is implemented for two-qubit registers only")
    if qubit not in (1, 2):
        raise IndexError(f"qubit index {qubit} out of range 1..2")
    t = m.reshape(2, 2, 2, 2)
    if qubit == 1:
        t = t.transpose(2, 1, 0, 3)
    else:
        t = t.transpose(0, 3, 2, 1)
    return t.reshape(4, 4).copy()


def _jacobi_rotation(a: np.ndarray, v: np.ndarray, p: int, q: int) -> None:
    g = a[p, q]
    mag = abs(g)
    if mag == 0.0:
        return
    phase = g / mag
    app, aqq = a[p, p].real, a[q, q].real
    # Real Jacobi rotation for [[app, mag], [mag, aqq]].
    theta = (aqq - app) / (2.0 * mag)
    t = 1.0 / (abs(theta) + np.sqrt(theta * theta + 1.0))
    if theta < 0:
        t = -t
    c = 1.0 / np.sqrt(t * t + 1.0)
    s = t * c
    # u = diag(1, conj(phase)) @ [[c, s], [-s, c]]
    u = np.array([[c, s], [-s * np.conj(phase), c * np.conj(phase)]], dtype=complex)
    idx = [p, q]
    a[:, idx] = a[:, idx] @ u
    a[idx, :] = dagger(u) @ a[idx, :]
    a[p, q] = a[q, p] = 0.0
    a[p, p] = a[p, p].real
    a[q, q] = a[q, q].real
    v[:, idx] = v[:, idx] @ u


def eig_hermitian(m, vectors: bool = False):
    """Eigenvalues (ascending) of a Hermitian matrix by cyclic Jacobi sweeps.

    With ``vectors=True`` also returns the unitary whose columns are the
    matching eigenvectors.
    """
    a = np.array(m, dtype=complex)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise DimensionError(f"expected a square matrix, got shape {a.shape}")
    n = a.shape[0]
    if n > MAX_DIM:
        raise DimensionError(f"eigensolver supports dimension <= {MAX_DIM}")
    res = hermitian_residual(a)
    if res > HERMITIAN_TOL:
        raise NotHermitianError(f"matrix is not Hermitian (residual {res:.3e})")
    a = (a + dagger(a)) / 2
    v = np.eye(n, dtype=complex)
    scale = max(1.0, float(np.linalg.norm(a)))
    for _ in range(JACOBI_MAX_SWEEPS):
        off = np.linalg.norm(a - np.diag(np.diag(a)))
        if off <= JACOBI_TOL * scale:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                _jacobi_rotation(a, v, p, q)
    else:
        raise RuntimeError("Jacobi eigensolver did not converge")
    w = np.diag(a).real
    order = np.argsort(w, kind="stable")
    w = w[order]
    if vectors:
        return w, v[:, order]
    return w


@dataclass(frozen=True)
class SingularValues3:
    values: tuple[float, float, float]
    det_sign: int


def singular_values_3x3(r) -> SingularValues3:
    """Descending singular values of a real 3x3 matrix and the sign of its determinant.

    The values come from the eigenvalues of ``R^T R``. The sign is reported
    as 0 when ``|det R| <= 1e-12 * s1 * s2``, i.e. when the smallest singular
    value is numerically zero.
    """
    r = np.asarray(r, dtype=float)
    if r.shape != (3, 3):
        raise DimensionError(f"expected a 3x3 matrix, got shape {r.shape}")
    w = eig_hermitian(r.T @ r)
    sv = np.sqrt(np.clip(w, 0.0, None))[::-1]
    det = (
        r[0, 0] * (r[1, 1] * r[2, 2] - r[1, 2] * r[2, 1])
        - r[0, 1] * (r[1, 0] * r[2, 2] - r[1, 2] * r[2, 0])
        + r[0, 2] * (r[1, 0] * r[2, 1] - r[1, 1] * r[2, 0])
    )
    sign = 0 if abs(det) <= DET_ZERO_TOL * sv[0] * sv[1] else (1 if det > 0 else -1)
    return SingularValues3((float(sv[0]), float(sv[1]), float(sv[2])), sign)

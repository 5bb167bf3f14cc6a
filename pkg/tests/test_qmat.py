import math

import numpy as np
import pytest

from conftest import random_density, random_hermitian
from noise_localize.channels import SIGMA_X, amplitude_damping
from noise_localize.qmat import (
    DensityMatrix,
    DimensionError,
    NotHermitianError,
    NotPositiveError,
    PureState,
    as_hermitian,
    eig_hermitian,
    kron,
    partial_trace,
    partial_transpose,
    singular_values_3x3,
)
from noise_localize.states import bell_plus, ghz3


def charpoly_roots(m, samples=20001):
    """Eigenvalues as sign changes of det(x I - m), refined by bisection."""
    n = m.shape[0]
    bound = np.max(np.sum(np.abs(m), axis=1)) + 1.0

    def p(x):
        return np.linalg.det(x * np.eye(n) - m).real

    xs = np.linspace(-bound, bound, samples)
    vals = [p(x) for x in xs]
    roots = []
    for a, b, fa, fb in zip(xs, xs[1:], vals, vals[1:]):
        if fa == 0.0:
            roots.append(a)
            continue
        if fa * fb < 0:
            for _ in range(200):
                mid = 0.5 * (a + b)
                fm = p(mid)
                if fa * fm <= 0:
                    b = mid
                else:
                    a, fa = mid, fm
                if b - a < 1e-15:
                    break
            roots.append(0.5 * (a + b))
    return np.array(roots)


class TestKron:
    def test_identity(self):
        np.testing.assert_array_equal(kron(np.eye(2), np.eye(2)), np.eye(4))

    def test_double_bit_flip(self):
        ket00 = np.array([1, 0, 0, 0])
        np.testing.assert_array_equal(kron(SIGMA_X, SIGMA_X) @ ket00, [0, 0, 0, 1])

    def test_damping_diagonal(self):
        k0 = amplitude_damping(0.5).operators[0]
        diag = np.diag(kron(k0, k0)).real
        np.testing.assert_allclose(diag, [1, math.sqrt(0.5), math.sqrt(0.5), 0.5], atol=1e-15)

    def test_associative(self, rng):
        for _ in range(10):
            a, b, c = (rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2)) for _ in range(3))
            np.testing.assert_allclose(kron(kron(a, b), c), kron(a, kron(b, c)), atol=1e-14)

    def test_overflow(self):
        with pytest.raises(DimensionError):
            kron(np.eye(4), np.eye(8))


class TestPartialTrace:
    def test_ghz_marginal(self):
        red = partial_trace(ghz3().projector(), 3)
        np.testing.assert_allclose(red.matrix, np.diag([0.5, 0, 0, 0.5]), atol=1e-15)

    def test_uncorrelated_ancilla(self):
        rho = kron(bell_plus().projector().matrix, np.diag([1, 0]))
        np.testing.assert_allclose(partial_trace(rho, 3).matrix, bell_plus().projector().matrix, atol=1e-15)

    def test_first_qubit_against_index_contraction(self, rng):
        for _ in range(5):
            a = random_density(rng, 2)
            s = random_density(rng, 4)
            full = kron(a, s)
            # brute-force contraction over the first index
            expected = np.zeros((4, 4), dtype=complex)
            for i in range(4):
                for j in range(4):
                    expected[i, j] = sum(full[k * 4 + i, k * 4 + j] for k in range(2))
            np.testing.assert_allclose(partial_trace(full, 1).matrix, expected, atol=1e-14)
            np.testing.assert_allclose(expected, s, atol=1e-14)

    def test_middle_qubit(self, rng):
        a, b, c = (random_density(rng, 2) for _ in range(3))
        np.testing.assert_allclose(partial_trace(kron(a, b, c), 2).matrix, kron(a, c), atol=1e-14)

    @pytest.mark.parametrize("drop", [0, 4])
    def test_index_out_of_range(self, drop):
        with pytest.raises(IndexError):
            partial_trace(ghz3().projector(), drop)


class TestPartialTranspose:
    def test_product_state(self, rng):
        a, b = random_density(rng, 2), random_density(rng, 2)
        np.testing.assert_allclose(partial_transpose(kron(a, b), 1), kron(a.T, b), atol=1e-15)
        np.testing.assert_allclose(partial_transpose(kron(a, b), 2), kron(a, b.T), atol=1e-15)
        assert eig_hermitian(partial_transpose(kron(a, b), 2))[0] > -1e-12

    def test_bell_spectrum(self):
        w = eig_hermitian(partial_transpose(bell_plus().projector(), 2))
        np.testing.assert_allclose(w, [-0.5, 0.5, 0.5, 0.5], atol=1e-14)

    def test_involution(self, rng):
        m = random_density(rng, 4)
        for q in (1, 2):
            np.testing.assert_allclose(partial_transpose(partial_transpose(m, q), q), m, atol=0)

    def test_hermitian_output(self, rng):
        pt = partial_transpose(random_density(rng, 4), 1)
        np.testing.assert_allclose(pt, pt.conj().T, atol=1e-15)

    def test_unsupported_size(self):
        with pytest.raises(DimensionError):
            partial_transpose(ghz3().projector(), 1)


class TestEigHermitian:
    def test_diagonal(self):
        np.testing.assert_allclose(eig_hermitian(np.diag([3.0, 1.0, 2.0])), [1, 2, 3])

    def test_bell_pt_minimum(self):
        assert eig_hermitian(partial_transpose(bell_plus().projector(), 2))[0] == pytest.approx(-0.5, abs=1e-14)

    def test_against_charpoly_oracle(self, rng):
        for _ in range(5):
            m = random_hermitian(rng, 4)
            roots = charpoly_roots(m)
            assert len(roots) == 4
            np.testing.assert_allclose(eig_hermitian(m), roots, atol=1e-9)

    @pytest.mark.parametrize("dim", [2, 4, 8, 16])
    def test_reconstruction_and_trace(self, rng, dim):
        m = random_hermitian(rng, dim)
        w, v = eig_hermitian(m, vectors=True)
        assert np.all(np.diff(w) >= 0)
        assert np.max(np.abs(m - (v * w) @ v.conj().T)) <= 1e-10
        assert abs(w.sum() - np.trace(m).real) <= 1e-10
        np.testing.assert_allclose(w, np.linalg.eigvalsh(m), atol=1e-12)

    def test_degenerate(self):
        w = eig_hermitian(np.eye(8))
        np.testing.assert_array_equal(w, np.ones(8))

    def test_rejects_non_hermitian(self):
        with pytest.raises(NotHermitianError):
            eig_hermitian(np.array([[0, 1], [0, 0]]))


class TestSingularValues:
    def test_identity(self):
        sv = singular_values_3x3(np.eye(3))
        assert sv.values == (1.0, 1.0, 1.0) and sv.det_sign == 1

    def test_bell_correlations(self):
        sv = singular_values_3x3(np.diag([1.0, -1.0, 1.0]))
        np.testing.assert_allclose(sv.values, (1, 1, 1))
        assert sv.det_sign == -1

    def test_singular(self):
        assert singular_values_3x3(np.diag([1.0, 0.5, 0.0])).det_sign == 0

    def test_random_against_gram_eigenvalues(self, rng):
        for _ in range(20):
            r = rng.normal(size=(3, 3))
            sv = singular_values_3x3(r)
            assert sv.values[0] >= sv.values[1] >= sv.values[2] >= 0
            gram = eig_hermitian(r.T @ r)[::-1]
            np.testing.assert_allclose(np.square(sv.values), gram, atol=1e-12)
            np.testing.assert_allclose(sv.values, np.linalg.svd(r, compute_uv=False), atol=1e-12)
            assert sv.det_sign == int(np.sign(np.linalg.det(r)))


class TestTypes:
    def test_density_invariants(self, rng):
        rho = DensityMatrix(random_density(rng, 8)).validate()
        assert rho.qubits == 3

    def test_density_rejects_bad_trace(self):
        with pytest.raises(ValueError):
            DensityMatrix(np.eye(4))

    def test_density_rejects_negative(self):
        with pytest.raises(NotPositiveError):
            DensityMatrix(np.diag([1.5, -0.5])).validate()

    def test_clamp_on_normalize(self):
        rho = DensityMatrix.from_unnormalized(np.diag([0.5, -1e-12, 0.25, 0.25]))
        assert rho.eigenvalues()[0] >= 0
        with pytest.raises(NotPositiveError):
            DensityMatrix.from_unnormalized(np.diag([0.5, -1e-6, 0.25, 0.25]))

    def test_pure_state_norm(self):
        with pytest.raises(ValueError):
            PureState(np.array([1, 1]))

    def test_as_hermitian(self):
        with pytest.raises(NotHermitianError):
            as_hermitian(np.array([[1, 1j], [1j, 1]]))

import math

import numpy as np
import pytest

from renyi.exceptions import (
    DimensionMismatch,
    NonHermitianInput,
    NotPd,
    NotPsd,
    SingularPower,
)
from renyi.linalg import (
    Definiteness,
    as_hermitian,
    classify_definiteness,
    kron,
    lemma2_check,
    lemma3_check,
    lemma4_check,
    log_det,
    matrix_power,
    partial_trace_a,
    partial_trace_b,
    spectral_decompose,
    trace_product,
)


def random_hermitian(rng, n):
    g = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    return (g + g.conj().T) / 2


def random_psd(rng, n, rank=None):
    rank = rank or n
    g = rng.standard_normal((n, rank)) + 1j * rng.standard_normal((n, rank))
    return g @ g.conj().T


class TestSpectralDecompose:
    def test_identity(self):
        dec = spectral_decompose(np.eye(3))
        np.testing.assert_allclose(dec.eigenvalues, [1, 1, 1])
        np.testing.assert_allclose(
            dec.eigenvectors @ dec.eigenvectors.conj().T, np.eye(3), atol=1e-12
        )

    def test_diagonal_sorted(self):
        dec = spectral_decompose(np.diag([3.0, 1.0, 2.0]))
        np.testing.assert_allclose(dec.eigenvalues, [1.0, 2.0, 3.0])
        # eigenvectors permute the axes
        np.testing.assert_allclose(np.abs(dec.eigenvectors), np.eye(3)[:, [1, 2, 0]])

    def test_two_by_two_hand_roots(self):
        # char poly of [[2,1],[1,2]] is (x-1)(x-3)
        dec = spectral_decompose(np.array([[2.0, 1.0], [1.0, 2.0]]))
        np.testing.assert_allclose(dec.eigenvalues, [1.0, 3.0], atol=1e-12)

    def test_matches_numpy_eigh(self):
        rng = np.random.default_rng(11)
        for _ in range(200):
            n = int(rng.integers(1, 9))
            a = random_hermitian(rng, n)
            dec = spectral_decompose(a)
            np.testing.assert_allclose(
                dec.eigenvalues, np.sort(np.linalg.eigvalsh(a)), atol=1e-10
            )

    def test_reconstruction_and_unitarity(self):
        rng = np.random.default_rng(12)
        for _ in range(300):
            n = int(rng.integers(1, 9))
            a = random_hermitian(rng, n)
            dec = spectral_decompose(a)
            scale = 1.0 + np.abs(a).max()
            assert np.abs(dec.reconstruct() - a).max() <= 1e-9 * scale
            v = dec.eigenvectors
            assert np.abs(v.conj().T @ v - np.eye(n)).max() <= 1e-9

    def test_rejects_non_hermitian(self):
        with pytest.raises(NonHermitianInput):
            spectral_decompose(np.array([[0.0, 1.0], [0.0, 0.0]]))
        with pytest.raises(NonHermitianInput):
            spectral_decompose(np.array([[np.nan, 0.0], [0.0, 1.0]]))
        with pytest.raises(DimensionMismatch):
            spectral_decompose(np.zeros((2, 3)))


class TestMatrixPower:
    def test_identity_sqrt(self):
        np.testing.assert_allclose(matrix_power(np.eye(2), 0.5), np.eye(2), atol=1e-14)

    def test_diagonal_powers(self):
        np.testing.assert_allclose(
            matrix_power(np.diag([4.0, 9.0]), 0.5), np.diag([2.0, 3.0]), atol=1e-12
        )
        np.testing.assert_allclose(
            matrix_power(np.diag([4.0, 9.0]), -1.0),
            np.diag([0.25, 1.0 / 9.0]),
            atol=1e-12,
        )

    def test_zero_conventions(self):
        # 0^r = 0 for r > 0, 0^0 = 1
        proj = np.diag([1.0, 0.0])
        np.testing.assert_allclose(matrix_power(proj, 0.5), proj, atol=1e-14)
        np.testing.assert_allclose(matrix_power(proj, 0.0), np.eye(2), atol=1e-14)

    def test_result_stays_psd(self):
        rng = np.random.default_rng(13)
        for r in (-1.0, -0.5, 0.5, 2.0, 3.0):
            for _ in range(25):
                n = int(rng.integers(1, 7))
                a = random_psd(rng, n) + (np.eye(n) if r < 0 else 0.0)
                powered = matrix_power(a, r)
                w = spectral_decompose(powered).eigenvalues
                assert w.min() >= -1e-10

    def test_round_trip(self):
        rng = np.random.default_rng(14)
        for r in (0.5, 2.0):
            for _ in range(25):
                n = int(rng.integers(1, 7))
                a = random_psd(rng, n) + 0.1 * np.eye(n)
                back = matrix_power(matrix_power(a, r), 1.0 / r)
                assert np.abs(back - a).max() <= 1e-8

    def test_errors(self):
        with pytest.raises(SingularPower):
            matrix_power(np.diag([1.0, 0.0]), -1.0)
        with pytest.raises(NotPsd):
            matrix_power(np.diag([1.0, -1.0]), 0.5)


class TestLogDet:
    def test_examples(self):
        assert log_det(np.eye(4)) == pytest.approx(0.0, abs=1e-14)
        assert log_det(np.e * np.eye(2)) == pytest.approx(2.0, rel=1e-12)
        assert log_det(np.diag([2.0, 0.5])) == pytest.approx(0.0, abs=1e-14)

    def test_rejects_singular(self):
        with pytest.raises(NotPd):
            log_det(np.diag([1.0, 0.0]))


class TestKronAndPartialTrace:
    def test_kron_identity(self):
        np.testing.assert_allclose(kron(np.eye(2), np.eye(2)), np.eye(4))

    def test_kron_diagonal(self):
        np.testing.assert_allclose(
            kron(np.diag([1.0, 2.0]), np.diag([3.0, 4.0])),
            np.diag([3.0, 4.0, 6.0, 8.0]),
        )

    def test_kron_maximally_mixed(self):
        np.testing.assert_allclose(kron(np.eye(2) / 2, np.eye(2) / 2), np.eye(4) / 4)

    def test_kron_trace_multiplicative(self):
        rng = np.random.default_rng(15)
        for _ in range(50):
            a = random_hermitian(rng, int(rng.integers(1, 5)))
            b = random_hermitian(rng, int(rng.integers(1, 5)))
            lhs = np.trace(kron(a, b)).real
            rhs = np.trace(a).real * np.trace(b).real
            assert abs(lhs - rhs) <= 1e-12 * (1.0 + abs(rhs))

    def test_partial_trace_maximally_mixed(self):
        np.testing.assert_allclose(
            partial_trace_b(np.eye(4) / 4, 2, 2), np.eye(2) / 2
        )

    def test_partial_trace_by_hand(self):
        got = partial_trace_b(np.diag([0.1, 0.2, 0.3, 0.4]), 2, 2)
        np.testing.assert_allclose(got, np.diag([0.3, 0.7]), atol=1e-14)

    def test_partial_trace_of_product(self):
        rng = np.random.default_rng(16)
        for _ in range(30):
            da, db = int(rng.integers(1, 4)), int(rng.integers(1, 4))
            a = random_psd(rng, da)
            b = random_psd(rng, db)
            b /= np.trace(b).real
            np.testing.assert_allclose(
                partial_trace_b(kron(a, b), da, db), a, atol=1e-10
            )
            np.testing.assert_allclose(
                partial_trace_a(kron(a, b), da, db),
                np.trace(a).real * b,
                atol=1e-10 * (1 + np.abs(a).max()),
            )

    def test_dimension_mismatch(self):
        with pytest.raises(DimensionMismatch):
            partial_trace_b(np.eye(6), 2, 2)


class TestClassify:
    @pytest.mark.parametrize(
        "matrix,kind",
        [
            (np.eye(2), Definiteness.POSITIVE_DEFINITE),
            (np.diag([1.0, 0.0]), Definiteness.POSITIVE_SEMIDEFINITE),
            (np.diag([1.0, -1.0]), Definiteness.INDEFINITE),
        ],
    )
    def test_kinds(self, matrix, kind):
        assert classify_definiteness(matrix).kind is kind


class TestLemma2:
    def test_identity_pair(self):
        rep = lemma2_check(np.eye(2), np.eye(2))
        assert rep.extras["trace_product"] == pytest.approx(2.0)
        assert rep.rhs == pytest.approx(4.0)
        assert rep.passed

    def test_orthogonal_supports_equality(self):
        rep = lemma2_check(np.diag([1.0, 0.0]), np.diag([0.0, 1.0]))
        assert rep.extras["trace_product"] == pytest.approx(0.0, abs=1e-14)
        assert rep.passed and rep.equality

    def test_hand_arithmetic(self):
        rep = lemma2_check(np.diag([1.0, 4.0]), np.diag([2.0, 3.0]))
        assert rep.extras["trace_product"] == pytest.approx(14.0)
        assert rep.rhs == pytest.approx(25.0)
        assert rep.passed and not rep.equality

    def test_random_psd(self):
        rng = np.random.default_rng(17)
        for _ in range(100):
            n = int(rng.integers(1, 7))
            rep = lemma2_check(
                random_psd(rng, n, int(rng.integers(1, n + 1))),
                random_psd(rng, n, int(rng.integers(1, n + 1))),
            )
            assert rep.passed

    def test_rejects_indefinite(self):
        with pytest.raises(NotPsd):
            lemma2_check(np.diag([1.0, -1.0]), np.eye(2))


class TestLemma3:
    def test_hand_arithmetic(self):
        rep = lemma3_check(np.diag([1.0, 4.0]), np.eye(2))
        assert rep.lhs == pytest.approx(4.0)
        assert rep.rhs == pytest.approx(5.0)
        assert rep.passed and not rep.equality

    def test_identity_equality(self):
        rep = lemma3_check(np.eye(3), np.eye(3))
        assert rep.lhs == pytest.approx(3.0)
        assert rep.rhs == pytest.approx(3.0)
        assert rep.equality

    def test_scaled_identity_equality(self):
        rep = lemma3_check(np.diag([2.0, 2.0]), np.diag([3.0, 3.0]))
        assert rep.lhs == pytest.approx(12.0)
        assert rep.rhs == pytest.approx(12.0)
        assert rep.equality

    def test_inverse_pair_equality(self):
        rng = np.random.default_rng(18)
        g = rng.standard_normal((3, 3)) + 1j * rng.standard_normal((3, 3))
        b = g @ g.conj().T + 0.5 * np.eye(3)
        a = 1.7 * matrix_power(b, -1.0)
        rep = lemma3_check(a, b)
        assert rep.equality and rep.passed

    def test_random_psd(self):
        rng = np.random.default_rng(19)
        for _ in range(100):
            n = int(rng.integers(1, 7))
            rep = lemma3_check(
                random_psd(rng, n, int(rng.integers(1, n + 1))),
                random_psd(rng, n, int(rng.integers(1, n + 1))),
            )
            assert rep.passed


class TestLemma4:
    def test_identity_equality(self):
        rep = lemma4_check(np.eye(3))
        assert rep.lhs == pytest.approx(0.0, abs=1e-14)
        assert rep.rhs == pytest.approx(0.0, abs=1e-14)
        assert rep.passed and rep.equality

    def test_hand_arithmetic(self):
        rep = lemma4_check(np.diag([2.0, 0.5]))
        assert rep.lhs == pytest.approx(-0.5)
        assert rep.extras["log_det"] == pytest.approx(0.0, abs=1e-14)
        assert rep.rhs == pytest.approx(0.5)
        assert rep.passed and not rep.equality

    def test_scalar_case(self):
        rep = lemma4_check(np.array([[math.e]]))
        assert rep.lhs == pytest.approx(0.6321205588285577, rel=1e-12)
        assert rep.extras["log_det"] == pytest.approx(1.0, rel=1e-12)
        assert rep.rhs == pytest.approx(1.7182818284590452, rel=1e-12)
        assert rep.passed

    def test_random_pd(self):
        rng = np.random.default_rng(20)
        for _ in range(100):
            n = int(rng.integers(1, 7))
            rep = lemma4_check(random_psd(rng, n) + 0.1 * np.eye(n))
            assert rep.passed

    def test_rejects_singular(self):
        with pytest.raises(NotPd):
            lemma4_check(np.diag([1.0, 0.0]))


class TestTraceProduct:
    def test_matches_matmul(self):
        rng = np.random.default_rng(21)
        for _ in range(30):
            n = int(rng.integers(1, 6))
            a = random_hermitian(rng, n)
            b = random_hermitian(rng, n)
            assert trace_product(a, b) == pytest.approx(
                np.trace(a @ b).real, abs=1e-10
            )


def test_as_hermitian_symmetrizes_tolerated_dust():
    a = np.array([[1.0, 0.1 + 1e-12j], [0.1, 2.0]])
    out = as_hermitian(a)
    assert np.abs(out - out.conj().T).max() == 0.0


def test_convergence_failure_is_not_triggered_at_desk_scale():
    # dim 64 is the documented ceiling; one decomposition must converge
    rng = np.random.default_rng(22)
    a = random_hermitian(rng, 32)
    dec = spectral_decompose(a)
    assert np.abs(dec.reconstruct() - a).max() <= 1e-9 * (1 + np.abs(a).max())

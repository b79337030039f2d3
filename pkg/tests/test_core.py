"""Quaternion scalar and matrix arithmetic against independent oracles."""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from quatsvd.core import (
    QMatrix,
    Quaternion,
    column_rep,
    from_column_rep,
    from_real_counterpart,
    frobenius_norm,
    hermitian_det,
    mat_mul,
    qmul,
    real_counterpart,
)
from quatsvd.decomp import eig_hermitian, spectral_norm

ONE = Quaternion(1.0)
I = Quaternion(0.0, 1.0, 0.0, 0.0)
J = Quaternion(0.0, 0.0, 1.0, 0.0)
K = Quaternion(0.0, 0.0, 0.0, 1.0)


def test_package_exports_resolve():
    import quatsvd
    assert not [n for n in quatsvd.__all__ if not hasattr(quatsvd, n)]


def rand_qmatrix(rng, m, n, scale=1.0):
    return QMatrix(rng.standard_normal((4, m, n)) * scale, copy=False)


def assert_qeq(a: Quaternion, b: Quaternion, tol=1e-12):
    assert abs(a - b) <= tol * max(abs(a), abs(b), 1.0)


class TestQuaternionScalar:
    def test_unit_table(self):
        assert_qeq(I * J, K)
        assert_qeq(J * K, I)
        assert_qeq(K * I, J)
        assert_qeq(J * I, -K)
        assert_qeq(I * I, -ONE)
        assert_qeq(J * J, -ONE)
        assert_qeq(K * K, -ONE)
        assert_qeq(I * J * K, -ONE)

    def test_worked_product(self):
        # (1 + i)(1 + j) = 1 + j + i + ij = 1 + i + j + k
        assert_qeq((ONE + I) * (ONE + J), Quaternion(1, 1, 1, 1))
        # noncommutative: (1 + j)(1 + i) flips the sign of k
        assert_qeq((ONE + J) * (ONE + I), Quaternion(1, 1, 1, -1))

    def test_qmul_matches_operator(self):
        a = Quaternion(0.3, -1.2, 2.0, 0.7)
        b = Quaternion(-0.5, 0.1, 1.1, -2.3)
        assert_qeq(qmul(a, b), a * b)

    def test_conjugate_and_modulus(self):
        q = Quaternion(1.0, 2.0, -3.0, 4.0)
        c = q.conjugate()
        assert (c.w, c.x, c.y, c.z) == (1.0, -2.0, 3.0, -4.0)
        assert q.modulus() == pytest.approx(np.sqrt(30.0), rel=1e-15)
        prod = q * c
        assert_qeq(prod, Quaternion(30.0))

    def test_inverse(self):
        q = Quaternion(0.5, -1.5, 2.0, 1.0)
        assert_qeq(q * q.inverse(), ONE, tol=1e-14)
        assert_qeq(q.inverse() * q, ONE, tol=1e-14)
        with pytest.raises(ZeroDivisionError):
            Quaternion(0.0).inverse()

    def test_scalar_coercion(self):
        q = Quaternion(1.0, 1.0, 0.0, 0.0)
        assert_qeq(2.0 * q, Quaternion(2.0, 2.0, 0.0, 0.0))
        assert_qeq(q + 1, Quaternion(2.0, 1.0, 0.0, 0.0))
        with pytest.raises(TypeError):
            q * "text"

    def test_array_round_trip(self):
        q = Quaternion(0.1, 0.2, 0.3, 0.4)
        assert Quaternion.from_array(q.to_array()) == q


finite = st.floats(min_value=-10.0, max_value=10.0,
                   allow_nan=False, allow_infinity=False)
quaternions = st.builds(Quaternion, finite, finite, finite, finite)


class TestQuaternionProperties:
    @settings(max_examples=200, deadline=None)
    @given(quaternions, quaternions, quaternions)
    def test_associative(self, a, b, c):
        assert_qeq((a * b) * c, a * (b * c), tol=1e-12)

    @settings(max_examples=200, deadline=None)
    @given(quaternions, quaternions, quaternions)
    def test_distributive(self, a, b, c):
        assert_qeq(a * (b + c), a * b + a * c, tol=1e-12)

    @settings(max_examples=200, deadline=None)
    @given(quaternions, quaternions)
    def test_modulus_multiplicative(self, a, b):
        assert abs(a * b) == pytest.approx(abs(a) * abs(b), rel=1e-12, abs=1e-12)

    @settings(max_examples=200, deadline=None)
    @given(quaternions, quaternions)
    def test_conjugate_antihomomorphism(self, a, b):
        assert_qeq((a * b).conjugate(), b.conjugate() * a.conjugate(), tol=1e-12)


class TestQMatrixBasics:
    def test_constructor_validation(self):
        with pytest.raises(ValueError):
            QMatrix(np.zeros((3, 2, 2)))
        with pytest.raises(ValueError):
            QMatrix(np.zeros((4, 2)))
        with pytest.raises(ValueError):
            QMatrix(np.zeros((4, 0, 2)))

    def test_immutability(self):
        a = QMatrix.zeros(2, 2)
        with pytest.raises(ValueError):
            a.data[0, 0, 0] = 1.0

    def test_entry_and_parts(self):
        a = QMatrix.from_parts([[1.0]], [[2.0]], [[3.0]], [[4.0]])
        assert a.entry(0, 0) == Quaternion(1.0, 2.0, 3.0, 4.0)
        assert a.part(2)[0, 0] == 3.0
        assert a.shape == (1, 1)

    def test_identity_multiplication(self):
        rng = np.random.default_rng(0)
        a = rand_qmatrix(rng, 3, 5)
        eye = QMatrix.identity(3)
        assert (mat_mul(eye, a) - a).norm() == 0.0
        assert (a @ QMatrix.identity(5) - a).norm() == 0.0

    def test_shape_mismatch(self):
        a = QMatrix.zeros(2, 3)
        b = QMatrix.zeros(3, 2)
        with pytest.raises(ValueError):
            a + b
        with pytest.raises(ValueError):
            mat_mul(a, QMatrix.zeros(2, 2))

    def test_matmul_matches_entrywise_oracle(self):
        rng = np.random.default_rng(1)
        a = rand_qmatrix(rng, 3, 4)
        b = rand_qmatrix(rng, 4, 2)
        c = mat_mul(a, b)
        for i in range(3):
            for j in range(2):
                acc = Quaternion(0.0)
                for t in range(4):
                    acc = acc + a.entry(i, t) * b.entry(t, j)
                assert_qeq(c.entry(i, j), acc, tol=1e-13)

    def test_adjoint_of_product(self):
        rng = np.random.default_rng(2)
        a = rand_qmatrix(rng, 4, 3)
        b = rand_qmatrix(rng, 3, 5)
        lhs = mat_mul(a, b).adjoint()
        rhs = mat_mul(b.adjoint(), a.adjoint())
        assert (lhs - rhs).norm() <= 1e-13 * max(lhs.norm(), 1.0)

    def test_adjoint_involution(self):
        rng = np.random.default_rng(3)
        a = rand_qmatrix(rng, 4, 3)
        assert (a.adjoint().adjoint() - a).norm() == 0.0


class TestRealCounterpart:
    def test_sign_pattern_fixture(self):
        a = QMatrix.from_parts([[1.0]], [[2.0]], [[3.0]], [[4.0]])
        expected = np.array([
            [1.0, -2.0, -3.0, -4.0],
            [2.0, 1.0, -4.0, 3.0],
            [3.0, 4.0, 1.0, -2.0],
            [4.0, -3.0, 2.0, 1.0],
        ])
        np.testing.assert_array_equal(real_counterpart(a), expected)

    def test_homomorphism(self):
        rng = np.random.default_rng(4)
        for _ in range(20):
            m, n, l = rng.integers(1, 8, size=3)
            a = rand_qmatrix(rng, m, n)
            b = rand_qmatrix(rng, n, l)
            lhs = real_counterpart(mat_mul(a, b))
            rhs = real_counterpart(a) @ real_counterpart(b)
            denom = max(np.linalg.norm(rhs), 1.0)
            assert np.linalg.norm(lhs - rhs) <= 1e-12 * denom

    def test_adjoint_is_transpose(self):
        rng = np.random.default_rng(5)
        a = rand_qmatrix(rng, 3, 6)
        np.testing.assert_allclose(real_counterpart(a.adjoint()),
                                   real_counterpart(a).T, atol=1e-15)

    def test_round_trip_bit_exact(self):
        rng = np.random.default_rng(6)
        a = rand_qmatrix(rng, 5, 3)
        back = from_real_counterpart(real_counterpart(a))
        assert np.array_equal(back.data, a.data)

    def test_rejects_unstructured(self):
        with pytest.raises(ValueError):
            from_real_counterpart(np.arange(16.0).reshape(4, 4))
        with pytest.raises(ValueError):
            from_real_counterpart(np.zeros((5, 4)))


class TestColumnRep:
    def test_round_trip_bit_exact(self):
        rng = np.random.default_rng(7)
        a = rand_qmatrix(rng, 4, 6)
        c = column_rep(a)
        assert c.shape == (16, 6)
        back = from_column_rep(c)
        assert np.array_equal(back.data, a.data)

    def test_zero_copy_view(self):
        a = QMatrix.zeros(3, 2)
        assert column_rep(a).base is a.data

    def test_rejects_bad_rows(self):
        with pytest.raises(ValueError):
            from_column_rep(np.zeros((6, 2)))

    def test_product_via_column_rep(self):
        # (AB)_c = counterpart(A) @ B_c, the identity behind the matmul kernel
        rng = np.random.default_rng(8)
        a = rand_qmatrix(rng, 4, 3)
        b = rand_qmatrix(rng, 3, 5)
        lhs = column_rep(mat_mul(a, b))
        rhs = real_counterpart(a) @ column_rep(b)
        assert np.linalg.norm(lhs - rhs) <= 1e-12 * max(np.linalg.norm(rhs), 1.0)


class TestNorms:
    def test_norm_identities(self):
        rng = np.random.default_rng(9)
        for _ in range(10):
            m, n = rng.integers(1, 9, size=2)
            a = rand_qmatrix(rng, m, n)
            nf = frobenius_norm(a)
            assert nf == pytest.approx(0.5 * np.linalg.norm(real_counterpart(a)),
                                       rel=1e-12)
            assert nf == pytest.approx(np.linalg.norm(column_rep(a)), rel=1e-12)

    def test_submultiplicative(self):
        rng = np.random.default_rng(10)
        for _ in range(10):
            a = rand_qmatrix(rng, 5, 4)
            b = rand_qmatrix(rng, 4, 6)
            nab = mat_mul(a, b).norm()
            slack = 1e-12
            assert nab <= spectral_norm(a) * b.norm() + slack
            assert nab <= a.norm() * spectral_norm(b) + slack


class TestHermitianDet:
    def test_psd_determinant_vs_counterpart(self):
        rng = np.random.default_rng(11)
        g = rand_qmatrix(rng, 4, 6)
        a = mat_mul(g, g.adjoint())
        lam = eig_hermitian(a).lam
        det = hermitian_det(a, lam)
        sign, logdet = np.linalg.slogdet(real_counterpart(a))
        assert sign > 0
        assert np.log(det) == pytest.approx(logdet / 4.0, rel=1e-8)

    def test_identity(self):
        eye = QMatrix.identity(3)
        assert hermitian_det(eye, np.ones(3)) == 1.0

    def test_rejects_non_hermitian(self):
        rng = np.random.default_rng(12)
        a = rand_qmatrix(rng, 3, 3)
        with pytest.raises(ValueError):
            hermitian_det(a, np.ones(3))

    def test_rejects_wrong_count(self):
        eye = QMatrix.identity(3)
        with pytest.raises(ValueError):
            hermitian_det(eye, np.ones(2))

    def test_is_hermitian(self):
        rng = np.random.default_rng(13)
        g = rand_qmatrix(rng, 3, 3)
        h = 0.5 * (g + g.adjoint())
        assert h.is_hermitian()
        assert not g.is_hermitian()
        assert not QMatrix.zeros(2, 3).is_hermitian()

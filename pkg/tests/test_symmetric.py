"""Symmetric-matrix helpers: minors, eigenvalues, adjugate, Schur
complement, block projection, local PSD tests, JSON I/O."""

import json

import numpy as np
import pytest

from minorlift.polys import mask_of
from minorlift.symmetric import (
    adjugate,
    block_project,
    eigenvalues_sym,
    is_k_locally_psd,
    matrix_dumps,
    matrix_from_json_dict,
    matrix_loads,
    partition_from_json_dict,
    principal_minor,
    random_orthogonal,
    random_symmetric,
    schur_complement_0,
    symmetric_matrix,
    validate_partition,
)


class TestConstruction:
    def test_asymmetric_rejected(self):
        with pytest.raises(ValueError):
            symmetric_matrix([[1.0, 2.0], [0.0, 1.0]])

    def test_principal_minor_example(self):
        A = symmetric_matrix([[2.0, 1.0], [1.0, 2.0]])
        assert principal_minor(A, mask_of([1], 2)) == 2.0


class TestEigenvalues:
    def test_offdiag(self):
        A = symmetric_matrix([[0.0, 1.0], [1.0, 0.0]])
        assert eigenvalues_sym(A) == pytest.approx([-1.0, 1.0])

    def test_diagonal_sorted(self):
        assert eigenvalues_sym(np.diag([3.0, 1.0, 2.0])) == pytest.approx([1, 2, 3])

    def test_tridiagonal(self):
        A = symmetric_matrix([[2.0, 1.0], [1.0, 2.0]])
        assert eigenvalues_sym(A) == pytest.approx([1.0, 3.0])

    def test_matches_char_poly_roots(self, rng):
        # det(A - tI) interpolated on deg+1 nodes, roots vs eigenvalues
        for n in range(2, 7):
            A = random_symmetric(n, int(rng.integers(2**31)))
            lam = eigenvalues_sym(A)
            coeffs = np.poly(A)  # descending char poly coefficients
            roots = np.sort(np.roots(coeffs).real)
            assert lam == pytest.approx(roots, abs=1e-8 * (1 + np.abs(roots).max()))


class TestAdjugate:
    def test_identity(self):
        assert adjugate(np.eye(3)) == pytest.approx(np.eye(3))

    def test_2x2(self):
        A = symmetric_matrix([[2.0, -1.0], [-1.0, 2.0]])
        assert adjugate(A) == pytest.approx(np.array([[2.0, 1.0], [1.0, 2.0]]))

    def test_fundamental_identity(self, rng):
        for n in range(2, 9):
            A = random_symmetric(n, int(rng.integers(2**31)))
            d = np.linalg.det(A)
            got = A @ adjugate(A)
            assert got == pytest.approx(d * np.eye(n), rel=1e-9, abs=1e-9 * (1 + abs(d)))

    def test_singular(self):
        A = symmetric_matrix([[1.0, 1.0], [1.0, 1.0]])
        assert adjugate(A) == pytest.approx(np.array([[1.0, -1.0], [-1.0, 1.0]]))


class TestSchurComplement:
    def test_rank_one(self):
        A = symmetric_matrix([[1.0, 1.0], [1.0, 1.0]])
        assert schur_complement_0(A) == pytest.approx(np.array([[0.0]]))

    def test_example(self):
        A = symmetric_matrix([[2.0, 1.0], [1.0, 2.0]])
        assert schur_complement_0(A) == pytest.approx(np.array([[1.5]]))

    def test_det_factorization(self, rng):
        for n in range(2, 7):
            A = random_symmetric(n, int(rng.integers(2**31)))
            if abs(A[0, 0]) < 1e-6:
                continue
            lhs = np.linalg.det(A)
            rhs = A[0, 0] * np.linalg.det(schur_complement_0(A))
            assert lhs == pytest.approx(rhs, rel=1e-10, abs=1e-10 * (1 + abs(lhs)))

    def test_zero_pivot(self):
        A = symmetric_matrix([[0.0, 1.0], [1.0, 2.0]])
        with pytest.raises(ZeroDivisionError):
            schur_complement_0(A)


class TestPartition:
    def test_validate(self):
        validate_partition([[1, 2], [3]], 3)
        with pytest.raises(ValueError):
            validate_partition([[1, 2], [2, 3]], 3)
        with pytest.raises(ValueError):
            validate_partition([[1]], 2)

    def test_singletons_give_diag(self):
        A = random_symmetric(3, 0)
        got = block_project(A, [[1], [2], [3]])
        assert got == pytest.approx(np.diag(np.diag(A)))

    def test_single_block_identity(self):
        A = random_symmetric(4, 1)
        assert block_project(A, [[1, 2, 3, 4]]) == pytest.approx(A)

    def test_explicit_zeroing(self):
        A = random_symmetric(3, 2)
        got = block_project(A, [[1, 2], [3]])
        want = A.copy()
        want[0, 2] = want[2, 0] = 0.0
        want[1, 2] = want[2, 1] = 0.0
        assert got == pytest.approx(want)

    def test_idempotent_and_spectrum(self, rng):
        A = random_symmetric(5, 7)
        blocks = [[1, 3], [2, 5], [4]]
        P = block_project(A, blocks)
        assert block_project(P, blocks) == pytest.approx(P)
        spec = np.sort(np.concatenate([
            np.linalg.eigvalsh(A[np.ix_([i - 1 for i in b], [i - 1 for i in b])])
            for b in blocks
        ]))
        assert eigenvalues_sym(P) == pytest.approx(spec, abs=1e-10)


class TestLocallyPsd:
    def test_psd_matrix(self):
        A = symmetric_matrix([[2.0, 1.0], [1.0, 2.0]])
        assert is_k_locally_psd(A, 1)
        assert is_k_locally_psd(A, 2)

    def test_locally_but_not_globally(self):
        # every 2x2 principal submatrix PSD, full matrix indefinite
        A = symmetric_matrix([
            [1.0, 1.0, -1.0],
            [1.0, 1.0, 1.0],
            [-1.0, 1.0, 1.0],
        ])
        assert is_k_locally_psd(A, 2)
        assert not is_k_locally_psd(A, 3)


class TestRandom:
    def test_seed_determinism(self):
        assert random_symmetric(4, 9) == pytest.approx(random_symmetric(4, 9))
        assert random_orthogonal(4, 9) == pytest.approx(random_orthogonal(4, 9))

    def test_orthogonal(self):
        Q = random_orthogonal(5, 3)
        assert Q @ Q.T == pytest.approx(np.eye(5), abs=1e-12)

    def test_orthogonal_n1(self):
        Q = random_orthogonal(1, 0)
        assert abs(Q[0, 0]) == pytest.approx(1.0)


class TestJson:
    def test_roundtrip(self):
        A = random_symmetric(3, 4)
        B = matrix_loads(matrix_dumps(A))
        assert B == pytest.approx(A)

    def test_symmetry_validated_on_load(self):
        with pytest.raises(ValueError):
            matrix_from_json_dict({"n": 2, "rows": [[1.0, 2.0], [0.0, 1.0]]})

    def test_partition_schema(self):
        blocks = partition_from_json_dict({"blocks": [[1, 2], [3]]}, 3)
        assert blocks == [[1, 2], [3]]
        with pytest.raises(ValueError):
            partition_from_json_dict({"blocks": [[1], [1, 2]]}, 2)

    def test_malformed(self):
        with pytest.raises((ValueError, KeyError, json.JSONDecodeError)):
            matrix_loads('{"n": 2}')

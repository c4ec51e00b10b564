"""Symmetric-matrix operations: minors, eigenvalues, adjugate, projections.

Matrices are plain numpy arrays; symmetric_matrix() validates symmetry on
construction or load.  All functions are pure.
"""

from __future__ import annotations

import json
from itertools import combinations

import numpy as np

from . import kernels
from .polys import indices_of

SYMMETRY_REL_TOL = 1e-12


def symmetric_matrix(rows):
    """Validate and return a dense symmetric matrix as float ndarray."""
    A = np.asarray(rows, dtype=float)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise ValueError("matrix must be square")
    scale = 1.0 + np.max(np.abs(A)) if A.size else 1.0
    if np.max(np.abs(A - A.T)) > SYMMETRY_REL_TOL * scale:
        raise ValueError("matrix is not symmetric")
    return 0.5 * (A + A.T)


def principal_minor(A, mask):
    """det of the principal submatrix indexed by the 1-based bitmask subset."""
    idx = np.array([i - 1 for i in indices_of(mask)], dtype=np.intp)
    return kernels.principal_minor(A, idx)


def eigenvalues_sym(A):
    """Ascending eigenvalues via cyclic Jacobi rotations."""
    return kernels.jacobi_eigenvalues(np.asarray(A, dtype=float))


def adjugate(A):
    """Adjugate by cofactors; satisfies A @ adj(A) = det(A) * I.

    Works for singular A.  O(n^5), fine for n <= 16.
    """
    A = np.asarray(A, dtype=float)
    n = A.shape[0]
    if n == 1:
        return np.array([[1.0]])
    adj = np.empty((n, n))
    for i in range(n):
        rows = [r for r in range(n) if r != i]
        for j in range(n):
            cols = [c for c in range(n) if c != j]
            minor = np.linalg.det(A[np.ix_(rows, cols)])
            adj[j, i] = ((-1) ** (i + j)) * minor
    return adj


def schur_complement_0(A):
    """Schur complement with respect to the (1,1) pivot entry."""
    A = np.asarray(A, dtype=float)
    pivot = A[0, 0]
    if pivot == 0.0:
        raise ZeroDivisionError("pivot entry A[0,0] is zero")
    v = A[1:, 0]
    M = A[1:, 1:]
    return M - np.outer(v, v) / pivot


def validate_partition(blocks, n):
    """Check that blocks are disjoint nonempty 1-based subsets covering [n]."""
    seen = set()
    for b in blocks:
        if not b:
            raise ValueError("empty block in partition")
        for i in b:
            if not 1 <= i <= n:
                raise ValueError(f"partition index {i} out of range 1..{n}")
            if i in seen:
                raise ValueError(f"index {i} appears twice in partition")
            seen.add(i)
    if len(seen) != n:
        raise ValueError("partition does not cover all indices")
    return [sorted(b) for b in blocks]


def block_project(A, blocks):
    """Zero every entry whose row and column lie in different blocks."""
    A = np.asarray(A, dtype=float)
    n = A.shape[0]
    blocks = validate_partition(blocks, n)
    keep = np.zeros((n, n), dtype=bool)
    for b in blocks:
        idx = np.array(b) - 1
        keep[np.ix_(idx, idx)] = True
    return np.where(keep, A, 0.0)


def is_k_locally_psd(A, k, tol_rel=1e-10):
    """True iff every k x k principal submatrix is PSD."""
    A = np.asarray(A, dtype=float)
    n = A.shape[0]
    if not 1 <= k <= n:
        raise ValueError("need 1 <= k <= n")
    scale = max(np.max(np.abs(A)), 1e-300)
    floor = -tol_rel * scale
    for combo in combinations(range(n), k):
        idx = np.array(combo, dtype=np.intp)
        ev = eigenvalues_sym(A[np.ix_(idx, idx)])
        if ev[0] < floor:
            return False
    return True


def random_symmetric(n, seed):
    """Symmetrized standard-normal matrix, deterministic per seed."""
    rng = np.random.default_rng(seed)
    G = rng.standard_normal((n, n))
    return 0.5 * (G + G.T)


def random_orthogonal(n, seed):
    """Haar-ish orthogonal matrix: QR of a normal matrix, sign-fixed R diagonal."""
    rng = np.random.default_rng(seed)
    G = rng.standard_normal((n, n))
    Q, R = np.linalg.qr(G)
    signs = np.sign(np.diag(R))
    signs[signs == 0] = 1.0
    return Q * signs


# ---- JSON schemas ---------------------------------------------------------


def matrix_to_json_dict(A):
    A = np.asarray(A, dtype=float)
    return {"n": int(A.shape[0]), "rows": A.tolist()}


def matrix_from_json_dict(d):
    A = symmetric_matrix(d["rows"])
    if A.shape[0] != int(d["n"]):
        raise ValueError("declared dimension does not match rows")
    return A


def matrix_loads(s):
    return matrix_from_json_dict(json.loads(s))


def matrix_dumps(A):
    return json.dumps(matrix_to_json_dict(A))


def partition_from_json_dict(d, n):
    return validate_partition(d["blocks"], n)

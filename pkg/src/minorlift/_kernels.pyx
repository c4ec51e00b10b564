# cython: boundscheck=False, wraparound=False, cdivision=True, language_level=3
"""Compiled hot kernels: principal minors, minor-lift sums, Jacobi eigenvalues.

Mirrors the API of _kernels_py; kernels.py selects between the two at
import time.
"""

import numpy as np

cimport numpy as cnp
from libc.math cimport fabs, sqrt

cnp.import_array()

DEF MAXN = 16


cdef double _det_sub(const double[:, :] A, int* idx, int k) noexcept nogil:
    """Determinant of the k x k principal submatrix via LU with partial pivoting."""
    cdef double lu[MAXN][MAXN]
    cdef int i, j, col, piv
    cdef double best, factor, det, tmp
    if k == 0:
        return 1.0
    for i in range(k):
        for j in range(k):
            lu[i][j] = A[idx[i], idx[j]]
    det = 1.0
    for col in range(k):
        piv = col
        best = fabs(lu[col][col])
        for i in range(col + 1, k):
            if fabs(lu[i][col]) > best:
                best = fabs(lu[i][col])
                piv = i
        if best == 0.0:
            return 0.0
        if piv != col:
            for j in range(k):
                tmp = lu[col][j]
                lu[col][j] = lu[piv][j]
                lu[piv][j] = tmp
            det = -det
        det *= lu[col][col]
        for i in range(col + 1, k):
            factor = lu[i][col] / lu[col][col]
            for j in range(col + 1, k):
                lu[i][j] -= factor * lu[col][j]
    return det


def principal_minor(A, idx):
    """Determinant of the principal submatrix selected by index array idx."""
    cdef double[:, :] Av = np.ascontiguousarray(A, dtype=np.float64)
    cdef cnp.ndarray[cnp.intp_t, ndim=1] ix = np.asarray(idx, dtype=np.intp)
    cdef int k = ix.shape[0]
    cdef int buf[MAXN]
    cdef int i
    if k > MAXN:
        raise ValueError("submatrix larger than 16x16")
    for i in range(k):
        buf[i] = <int> ix[i]
    return _det_sub(Av, buf, k)


def minor_lift_sum(coeffs, masks, A):
    """sum_S a_S det(A_S) over subsets encoded as bitmasks."""
    cdef double[:] cs = np.ascontiguousarray(coeffs, dtype=np.float64)
    cdef long long[:] ms = np.ascontiguousarray(masks, dtype=np.int64)
    cdef double[:, :] Av = np.ascontiguousarray(A, dtype=np.float64)
    cdef int nterms = cs.shape[0]
    cdef int idx[MAXN]
    cdef int t, k, bit
    cdef long long m
    cdef double total = 0.0
    with nogil:
        for t in range(nterms):
            m = ms[t]
            k = 0
            bit = 0
            while m:
                if m & 1:
                    idx[k] = bit
                    k += 1
                m >>= 1
                bit += 1
            total += cs[t] * _det_sub(Av, idx, k)
    return total


def jacobi_eigenvalues(A, int max_sweeps=50, double rel_tol=1e-12):
    """Ascending eigenvalues of a symmetric matrix via cyclic Jacobi rotations."""
    cdef cnp.ndarray[cnp.float64_t, ndim=2] B = np.array(A, dtype=np.float64)
    cdef double[:, :] Bv = B
    cdef int n = B.shape[0]
    cdef int sweep, p, q, i
    cdef double norm = 0.0, off, apq, theta, t, c, s, bp, bq
    if n == 1:
        return B.diagonal().copy()
    for p in range(n):
        for q in range(n):
            norm += Bv[p, q] * Bv[p, q]
    norm = sqrt(norm)
    if norm == 0.0:
        return np.zeros(n)
    for sweep in range(max_sweeps):
        off = 0.0
        for p in range(n - 1):
            for q in range(p + 1, n):
                off += 2.0 * Bv[p, q] * Bv[p, q]
        if sqrt(off) <= rel_tol * norm:
            return np.sort(B.diagonal())
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = Bv[p, q]
                if fabs(apq) <= 1e-300:
                    continue
                theta = (Bv[q, q] - Bv[p, p]) / (2.0 * apq)
                if theta == 0.0:
                    t = 1.0
                elif theta > 0.0:
                    t = 1.0 / (theta + sqrt(theta * theta + 1.0))
                else:
                    t = -1.0 / (-theta + sqrt(theta * theta + 1.0))
                c = 1.0 / sqrt(t * t + 1.0)
                s = t * c
                for i in range(n):
                    bp = Bv[p, i]
                    bq = Bv[q, i]
                    Bv[p, i] = c * bp - s * bq
                    Bv[q, i] = s * bp + c * bq
                for i in range(n):
                    bp = Bv[i, p]
                    bq = Bv[i, q]
                    Bv[i, p] = c * bp - s * bq
                    Bv[i, q] = s * bp + c * bq
                Bv[p, q] = 0.0
                Bv[q, p] = 0.0
    off = 0.0
    for p in range(n - 1):
        for q in range(p + 1, n):
            off += 2.0 * Bv[p, q] * Bv[p, q]
    if sqrt(off) <= rel_tol * norm:
        return np.sort(B.diagonal())
    raise RuntimeError(f"Jacobi eigensolver did not converge in {max_sweeps} sweeps")

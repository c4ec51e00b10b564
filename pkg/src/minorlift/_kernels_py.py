"""Pure-numpy fallback for the hot kernels.

The compiled extension in _kernels.pyx provides the same three entry
points; kernels.py picks whichever is importable.
"""

from __future__ import annotations

import numpy as np


def principal_minor(A, idx):
    """Determinant of the principal submatrix A[idx][:, idx] (empty -> 1)."""
    idx = np.asarray(idx, dtype=np.intp)
    if idx.size == 0:
        return 1.0
    sub = A[np.ix_(idx, idx)]
    return float(np.linalg.det(sub))


def minor_lift_sum(coeffs, masks, A):
    """sum_S a_S det(A_S) with subsets given as bitmasks.

    Groups subsets by size so the determinants run through numpy's
    stacked-det path.
    """
    coeffs = np.asarray(coeffs, dtype=float)
    masks = np.asarray(masks, dtype=np.int64)
    n = A.shape[0]
    index_lists = {}
    for j, m in enumerate(masks):
        idx = _bits(int(m))
        index_lists.setdefault(len(idx), []).append((j, idx))
    total = 0.0
    for size, entries in index_lists.items():
        if size == 0:
            total += sum(coeffs[j] for j, _ in entries)
            continue
        pos = np.array([idx for _, idx in entries], dtype=np.intp)
        subs = A[pos[:, :, None], pos[:, None, :]]
        dets = np.linalg.det(subs)
        cs = coeffs[[j for j, _ in entries]]
        total += float(cs @ dets)
    return total


def _bits(mask):
    out = []
    i = 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return out


def jacobi_eigenvalues(A, max_sweeps=50, rel_tol=1e-12):
    """Eigenvalues of a symmetric matrix by cyclic Jacobi rotations.

    Returns eigenvalues in ascending order.  Raises RuntimeError if the
    off-diagonal Frobenius norm has not dropped below rel_tol * ||A||_F
    after max_sweeps sweeps.
    """
    B = np.array(A, dtype=float)
    n = B.shape[0]
    if n == 1:
        return B.diagonal().copy()
    norm = np.linalg.norm(B)
    if norm == 0.0:
        return np.zeros(n)
    for _ in range(max_sweeps):
        off = np.sqrt(max(np.sum(B * B) - np.sum(B.diagonal() ** 2), 0.0))
        if off <= rel_tol * norm:
            return np.sort(B.diagonal())
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = B[p, q]
                if abs(apq) <= 1e-300:
                    continue
                theta = (B[q, q] - B[p, p]) / (2.0 * apq)
                t = np.sign(theta) / (abs(theta) + np.sqrt(theta * theta + 1.0))
                if theta == 0.0:
                    t = 1.0
                c = 1.0 / np.sqrt(t * t + 1.0)
                s = t * c
                rp = B[p, :].copy()
                rq = B[q, :].copy()
                B[p, :] = c * rp - s * rq
                B[q, :] = s * rp + c * rq
                cp = B[:, p].copy()
                cq = B[:, q].copy()
                B[:, p] = c * cp - s * cq
                B[:, q] = s * cp + c * cq
                B[p, q] = 0.0
                B[q, p] = 0.0
    off = np.sqrt(max(np.sum(B * B) - np.sum(B.diagonal() ** 2), 0.0))
    if off <= rel_tol * norm:
        return np.sort(B.diagonal())
    raise RuntimeError(f"Jacobi eigensolver did not converge in {max_sweeps} sweeps")

"""The minor lift map: P(A) = sum_S a_S det(A_S) and its restrictions.

An lpm polynomial is never stored symbolically; the multiaffine
coefficient polynomial p is the canonical representation and evaluation
goes through the kernel backend.
"""

from __future__ import annotations

import numpy as np

from . import kernels
from .polys import MultiAffinePoly, UniPoly, chebyshev_nodes, newton_interp, popcount
from .polys import DimensionMismatch


def _term_arrays(p):
    masks = np.array(sorted(p.terms), dtype=np.int64)
    coeffs = np.array([p.terms[int(m)] for m in masks], dtype=float)
    return coeffs, masks


def minor_lift_eval(p, A):
    """Evaluate Phi(p) at a symmetric matrix A."""
    A = np.asarray(A, dtype=float)
    if A.shape != (p.n, p.n):
        raise DimensionMismatch(f"expected {p.n}x{p.n} matrix")
    coeffs, masks = _term_arrays(p)
    if len(coeffs) == 0:
        return 0.0
    return kernels.minor_lift_sum(coeffs, masks, A)


def lpm_restriction(p, t_mask):
    """Coefficient polynomial of P|_T = (prod_{i not in T} d/dX_ii) P.

    The result lives on the variables in T (re-indexed to 1..|T| in mask
    order); its minor lift evaluated at A_T equals P|_T(A).
    """
    n = p.n
    full = (1 << n) - 1
    comp = full ^ t_mask
    t_list = [i for i in range(n) if t_mask >> i & 1]
    nt = len(t_list)
    if nt < n - p.degree:
        raise ValueError("restriction too small: all coefficients would vanish")
    if nt == 0:
        raise ValueError("empty restriction")
    pos = {b: j for j, b in enumerate(t_list)}
    terms = {}
    for m, c in p.terms.items():
        if m & comp == comp:
            k = m ^ comp
            out = 0
            mm = k
            i = 0
            while mm:
                if mm & 1:
                    out |= 1 << pos[i]
                mm >>= 1
                i += 1
            terms[out] = terms.get(out, 0.0) + c
    return MultiAffinePoly(nt, terms)


def restrict_submatrix(A, t_mask):
    """Principal submatrix of A selected by the bitmask T."""
    idx = np.array([i for i in range(A.shape[0]) if t_mask >> i & 1], dtype=np.intp)
    return A[np.ix_(idx, idx)]


def lpm_restriction_eval(p, A, t_mask):
    """P|_T(A) evaluated through the restricted coefficient polynomial."""
    q = lpm_restriction(p, t_mask)
    return minor_lift_eval(q, restrict_submatrix(np.asarray(A, dtype=float), t_mask))


def matrix_pencil_poly(p, A):
    """Univariate t -> P(A - t*I) via interpolation at scaled Chebyshev nodes."""
    A = np.asarray(A, dtype=float)
    if A.shape != (p.n, p.n):
        raise DimensionMismatch(f"expected {p.n}x{p.n} matrix")
    d = p.degree
    # Gershgorin bound keeps the nodes near the root window
    radius = 1.0 + float(np.max(np.sum(np.abs(A), axis=1))) if A.size else 1.0
    nodes = chebyshev_nodes(d + 1, center=0.0, radius=radius)
    coeffs, masks = _term_arrays(p)
    eye = np.eye(p.n)
    vals = np.array(
        [kernels.minor_lift_sum(coeffs, masks, A - t * eye) for t in nodes]
    )
    return UniPoly(newton_interp(nodes, vals))


def check_dual_identity(p, A, tol=1e-8):
    """Check Phi(p*)(A) = det(A) * Phi(p)(A^{-1}) for invertible A.

    Returns (passed, lhs, rhs, residual).
    """
    A = np.asarray(A, dtype=float)
    det = np.linalg.det(A)
    if abs(det) < 1e-12 * (1.0 + np.max(np.abs(A))) ** A.shape[0]:
        raise np.linalg.LinAlgError("matrix is numerically singular")
    lhs = minor_lift_eval(p.dual(), A)
    rhs = det * minor_lift_eval(p, np.linalg.inv(A))
    scale = 1.0 + max(abs(lhs), abs(rhs))
    resid = abs(lhs - rhs)
    return resid <= tol * scale, lhs, rhs, resid

"""Spectral containment searches, Schur-Horn gap experiments,
derivation matrices on exterior powers, and majorization checks."""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations, permutations

import numpy as np

from .cones import ConeReport, in_cone_matrix, in_cone_vector
from .inequalities import ConePreconditionError
from .lift import minor_lift_eval
from .polys import MultiAffinePoly
from .symmetric import eigenvalues_sym, random_orthogonal


@dataclass
class SpectralResult:
    eigenvalues: np.ndarray
    found_permutation: tuple | None
    cone_report: ConeReport | None
    permutations_tested: int
    exhaustive: bool


def _unique_permutations(values, dup_tol=1e-10):
    """Permutations of values with near-duplicate entries collapsed."""
    # group indices whose values coincide within dup_tol
    order = np.argsort(values)
    labels = np.zeros(len(values), dtype=int)
    label = 0
    for j in range(1, len(values)):
        if values[order[j]] - values[order[j - 1]] > dup_tol:
            label += 1
        labels[order[j]] = label
    seen = set()
    for perm in permutations(range(len(values))):
        key = tuple(labels[list(perm)])
        if key in seen:
            continue
        seen.add(key)
        yield perm


def spectral_containment_search(p, A, tol=1e-8, max_perms=2000, seed=0):
    """Find an eigenvalue-vector permutation of A that lands in H(p).

    Exhaustive (with duplicate-orbit pruning) for n <= 9; otherwise the
    sorted heuristics plus max_perms random permutations.  An exhaustive
    failure is re-verified at 100x tighter tolerance before being
    reported (conjecture counterexample candidate).
    """
    A = np.asarray(A, dtype=float)
    pre = in_cone_matrix(p, A, tol)
    if not pre.ok():
        raise ConePreconditionError(f"matrix not in H(P): {pre.verdict}")
    lam = eigenvalues_sym(A)
    n = p.n

    def attempt(perm, use_tol):
        v = lam[list(perm)]
        rep = in_cone_vector(p, v, use_tol)
        return rep if rep.ok() else None

    tested = 0
    # heuristics first: identity (ascending), descending
    for perm in (tuple(range(n)), tuple(range(n - 1, -1, -1))):
        tested += 1
        rep = attempt(perm, tol)
        if rep is not None:
            return SpectralResult(lam, perm, rep, tested, False)

    if n <= 9:
        for perm in _unique_permutations(lam):
            tested += 1
            rep = attempt(perm, tol)
            if rep is not None:
                return SpectralResult(lam, perm, rep, tested, True)
        # re-verify the failure at tightened tolerance before reporting
        for perm in _unique_permutations(lam):
            rep = attempt(perm, tol * 100)
            if rep is not None:
                return SpectralResult(lam, perm, rep, tested, True)
        return SpectralResult(lam, None, None, tested, True)

    rng = np.random.default_rng(seed)
    for _ in range(max_perms):
        perm = tuple(rng.permutation(n))
        tested += 1
        rep = attempt(perm, tol)
        if rep is not None:
            return SpectralResult(lam, perm, rep, tested, False)
    return SpectralResult(lam, None, None, tested, False)


# ---- Schur-Horn gap ---------------------------------------------------------


def _givens_apply(B, i, j, c, s):
    """R B R^T for the rotation acting on rows/cols (i, j)."""
    out = B.copy()
    out[i, :] = c * B[i, :] - s * B[j, :]
    out[j, :] = s * B[i, :] + c * B[j, :]
    col_i = out[:, i].copy()
    col_j = out[:, j].copy()
    out[:, i] = c * col_i - s * col_j
    out[:, j] = s * col_i + c * col_j
    return out


def schur_horn_gap(p, X, restarts=20, iters=40, seed=0, grid=33):
    """Compare max over permutations with a heuristic orthogonal-orbit max.

    perm_max enumerates permutations of the spectrum (duplicates pruned);
    orth_max runs coordinate ascent over Givens rotations with dense
    angle sampling plus golden-section refinement, restarted from random
    orthogonal conjugations.  orth_max is a lower bound of the true
    orbit maximum.
    """
    X = np.asarray(X, dtype=float)
    n = p.n
    lam = eigenvalues_sym(X)
    perm_max = -math.inf
    best_perm = None
    for perm in _unique_permutations(lam):
        val = p.eval(lam[list(perm)])
        if val > perm_max:
            perm_max = val
            best_perm = perm

    angles = np.linspace(-math.pi / 4, math.pi / 4, grid)
    gr = (math.sqrt(5.0) - 1.0) / 2.0

    def objective(B):
        return minor_lift_eval(p, B)

    best = -math.inf
    best_matrix = None
    for r in range(restarts):
        U = random_orthogonal(n, seed * 1000003 + r)
        B = U @ X @ U.T
        cur = objective(B)
        for _ in range(iters):
            improved = False
            for i in range(n - 1):
                for j in range(i + 1, n):
                    vals = [objective(_givens_apply(B, i, j, math.cos(t),
                                                    math.sin(t)))
                            for t in angles]
                    k = int(np.argmax(vals))
                    lo = angles[max(k - 1, 0)]
                    hi = angles[min(k + 1, grid - 1)]
                    # golden-section refinement on [lo, hi]
                    a, b = lo, hi
                    x1 = b - gr * (b - a)
                    x2 = a + gr * (b - a)
                    f1 = objective(_givens_apply(B, i, j, math.cos(x1), math.sin(x1)))
                    f2 = objective(_givens_apply(B, i, j, math.cos(x2), math.sin(x2)))
                    for _ in range(40):
                        if f1 < f2:
                            a, x1, f1 = x1, x2, f2
                            x2 = a + gr * (b - a)
                            f2 = objective(
                                _givens_apply(B, i, j, math.cos(x2), math.sin(x2)))
                        else:
                            b, x2, f2 = x2, x1, f1
                            x1 = b - gr * (b - a)
                            f1 = objective(
                                _givens_apply(B, i, j, math.cos(x1), math.sin(x1)))
                    theta = 0.5 * (a + b)
                    cand = max(vals[k], f1, f2)
                    if cand > cur + 1e-14 * (1.0 + abs(cur)):
                        pick = theta
                        if vals[k] >= max(f1, f2):
                            pick = angles[k]
                        elif f1 >= f2:
                            pick = x1
                        else:
                            pick = x2
                        B = _givens_apply(B, i, j, math.cos(pick), math.sin(pick))
                        cur = objective(B)
                        improved = True
            if not improved:
                break
        if cur > best:
            best = cur
            best_matrix = B
    return {
        "perm_max": float(perm_max),
        "best_perm": best_perm,
        "orth_max_lower_bound": float(best),
        "maximizer": best_matrix,
    }


# ---- derivation matrices ----------------------------------------------------


@dataclass
class DerivationMatrix:
    n: int
    k: int
    d: int
    entries: np.ndarray
    basis: list  # lexicographic k-subsets of range(n)


def derivation_matrix(X, k, d):
    """Operator on the k-th exterior power applying X on every d-subset of slots.

    Basis is the lexicographic list of k-subsets; entry (T, S) collects
    the coefficient of e_T in sum_{|R|=d} w_1 ^ ... ^ w_k with
    w_i = X e_{s_i} for slots i in R and w_i = e_{s_i} otherwise.
    """
    X = np.asarray(X, dtype=float)
    n = X.shape[0]
    if not 1 <= d <= k <= n:
        raise ValueError("need 1 <= d <= k <= n")
    basis = list(combinations(range(n), k))
    index = {S: i for i, S in enumerate(basis)}
    N = len(basis)
    M = np.zeros((N, N))

    for col, S in enumerate(basis):
        for R in combinations(range(k), d):
            # expand the wedge: slots in R run over all rows of X
            _expand(X, S, R, 0, [], 1.0, index, M, col)
    return DerivationMatrix(n, k, d, M, basis)


def _expand(X, S, R, pos, chosen, coeff, index, M, col):
    k = len(S)
    if pos == k:
        order = np.argsort(chosen)
        target = tuple(sorted(chosen))
        if len(set(target)) < k:
            return
        sign = _perm_sign(order)
        M[index[target], col] += sign * coeff
        return
    if pos in R:
        s = S[pos]
        for t in range(X.shape[0]):
            c = X[t, s]
            if c != 0.0 and t not in chosen:
                _expand(X, S, R, pos + 1, chosen + [t], coeff * c, index, M, col)
    else:
        t = S[pos]
        if t not in chosen:
            _expand(X, S, R, pos + 1, chosen + [t], coeff, index, M, col)


def _perm_sign(order):
    order = list(order)
    sign = 1
    seen = [False] * len(order)
    for i in range(len(order)):
        if seen[i]:
            continue
        j = i
        length = 0
        while not seen[j]:
            seen[j] = True
            j = order[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


def check_derivation_spectrum(X, k, d, tol=1e-7):
    """Verify the two defining properties of the derivation matrix.

    (a) its spectrum is {e_d(lambda_S) : |S| = k} as a multiset, and
    (b) its diagonal entry at S equals E_d(X|_S).
    """
    X = np.asarray(X, dtype=float)
    D = derivation_matrix(X, k, d)
    lam = eigenvalues_sym(X)
    ed = MultiAffinePoly.elementary(k, d)
    expected = np.sort([ed.eval(lam[list(S)]) for S in D.basis])
    actual = eigenvalues_sym(D.entries)
    scale = 1.0 + np.max(np.abs(expected)) if len(expected) else 1.0
    spectrum_ok = bool(np.max(np.abs(expected - actual)) <= tol * scale)

    diag_ok = True
    max_diag_err = 0.0
    for i, S in enumerate(D.basis):
        idx = np.array(S, dtype=np.intp)
        sub = X[np.ix_(idx, idx)]
        want = minor_lift_eval(MultiAffinePoly.elementary(k, d), sub)
        err = abs(D.entries[i, i] - want)
        max_diag_err = max(max_diag_err, err)
        if err > tol * (1.0 + abs(want)):
            diag_ok = False
    return {
        "spectrum_ok": spectrum_ok,
        "diag_ok": diag_ok,
        "max_spectrum_err": float(np.max(np.abs(expected - actual))),
        "max_diag_err": float(max_diag_err),
    }


# ---- majorization -----------------------------------------------------------


def majorizes(alpha, beta, tol=1e-8):
    """Descending prefix-sum dominance with equal totals."""
    alpha = np.asarray(alpha, dtype=float)
    beta = np.asarray(beta, dtype=float)
    if alpha.shape != beta.shape:
        raise ValueError("length mismatch")
    scale = 1.0 + max(np.max(np.abs(alpha)), np.max(np.abs(beta)))
    a = np.sort(alpha)[::-1]
    b = np.sort(beta)[::-1]
    pa = np.cumsum(a)
    pb = np.cumsum(b)
    if abs(pa[-1] - pb[-1]) > tol * scale:
        return False
    return bool(np.all(pa[:-1] >= pb[:-1] - tol * scale))


def rescaled_ek_poly(n, k, diag):
    """Coefficient polynomial of X -> E_k(D^{-1/2} X D^{-1/2}).

    With diag the positive diagonal of D, this is the minor lift of
    e_k with coefficient prod_{i in S} 1/diag_i on each k-subset S.
    """
    diag = np.asarray(diag, dtype=float)
    if np.any(diag <= 0):
        raise ValueError("diagonal rescaling must be positive")
    terms = {}
    for m, c in MultiAffinePoly.elementary(n, k).terms.items():
        prod = c
        mm, i = m, 0
        while mm:
            if mm & 1:
                prod /= diag[i]
            mm >>= 1
            i += 1
        terms[m] = prod
    return MultiAffinePoly(n, terms)


def check_majorization_rescaled_ek(X, diag, k, tol=1e-8):
    """Roots of P(X - tI) majorize roots of P(diag(X) - tI) for rescaled E_k."""
    from .cones import real_roots
    from .lift import matrix_pencil_poly

    X = np.asarray(X, dtype=float)
    n = X.shape[0]
    p = rescaled_ek_poly(n, k, diag)
    rX = real_roots(matrix_pencil_poly(p, X))
    rD = real_roots(matrix_pencil_poly(p, np.diag(np.diag(X))))
    ok = len(rX) == len(rD) and majorizes(rX, rD, tol)
    return {"ok": bool(ok), "roots_full": rX, "roots_diag": rD}

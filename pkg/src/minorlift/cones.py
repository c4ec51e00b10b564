"""Hyperbolicity-cone membership, real-rootedness and stability testing.

Cone membership is always decided through the roots of a univariate
restriction: p(v - t*1) for vectors, P(A - t*I) for matrices.  Verdicts
are inside / boundary / outside with a root-scaled tolerance.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

import mpmath
import numpy as np

from .lift import matrix_pencil_poly
from .polys import MultiAffinePoly, UniPoly, popcount
from .symmetric import random_symmetric

DEFAULT_TOL_IMAG = 1e-7
DEFAULT_CONE_TOL = 1e-8


class NotRealRooted(ValueError):
    """Raised when a univariate restriction has a genuinely complex root."""

    def __init__(self, roots):
        super().__init__(f"polynomial is not real-rooted: {roots}")
        self.roots = roots


@dataclass
class ConeReport:
    verdict: str  # inside | boundary | outside | inconclusive
    roots: np.ndarray
    min_root: float
    slack: float
    tolerance: float

    def ok(self):
        return self.verdict in ("inside", "boundary")

    def to_json_dict(self):
        return {
            "verdict": self.verdict,
            "roots": list(map(float, self.roots)),
            "min_root": float(self.min_root),
            "slack": float(self.slack),
            "tolerance": float(self.tolerance),
        }

    def dumps(self):
        return json.dumps(self.to_json_dict())


def real_roots(q, tol_imag=DEFAULT_TOL_IMAG):
    """Sorted real roots of q via the companion matrix.

    Raises NotRealRooted if any root has |imag| > tol_imag * (1 + |root|),
    and ValueError on the zero polynomial.
    """
    if q.is_zero():
        raise ValueError("zero polynomial has no well-defined roots")
    if q.degree == 0:
        return np.array([])
    roots = np.roots(q.coeffs[::-1])
    bad = np.abs(roots.imag) > tol_imag * (1.0 + np.abs(roots))
    if np.any(bad):
        raise NotRealRooted(roots)
    return np.sort(roots.real)


def is_real_rooted(q, tol_imag=DEFAULT_TOL_IMAG):
    try:
        real_roots(q, tol_imag)
        return True
    except NotRealRooted:
        return False


def _verdict_from_roots(roots, tol):
    if len(roots) == 0:
        # constant nonzero restriction: trivially no negative roots
        return ConeReport("inside", np.array([]), np.inf, np.inf, tol)
    scaled = tol * (1.0 + np.max(np.abs(roots)))
    m = float(roots[0])
    if m > scaled:
        verdict = "inside"
    elif abs(m) <= scaled:
        verdict = "boundary"
    else:
        verdict = "outside"
    return ConeReport(verdict, roots, m, m, scaled)


def in_cone_vector(p, v, tol=DEFAULT_CONE_TOL):
    """Membership of v in H(p) with respect to the all-ones direction."""
    ones = np.ones(p.n)
    if abs(p.eval(ones)) <= 1e-12 * (1.0 + _coeff_scale(p)):
        raise ValueError("p vanishes at the all-ones direction")
    q = p.restrict_line(np.asarray(v, dtype=float), ones)
    try:
        roots = real_roots(q)
    except NotRealRooted as exc:
        return ConeReport("inconclusive", np.sort(exc.roots.real), np.nan, np.nan, tol)
    return _verdict_from_roots(roots, tol)


def in_cone_matrix(p, A, tol=DEFAULT_CONE_TOL):
    """Membership of A in H(P) with respect to the identity direction."""
    q = matrix_pencil_poly(p, A)
    if q.is_zero():
        raise ValueError("pencil polynomial is identically zero")
    try:
        roots = real_roots(q)
    except NotRealRooted as exc:
        return ConeReport("inconclusive", np.sort(exc.roots.real), np.nan, np.nan, tol)
    return _verdict_from_roots(roots, tol)


def _coeff_scale(p):
    return max((abs(c) for c in p.terms.values()), default=0.0)


@dataclass
class StabilityResult:
    stable: bool
    reason: str
    witness: tuple | None = None  # (v, a) line on which real-rootedness failed

    @property
    def verdict(self):
        return "evidence_stable" if self.stable else "not_stable"


def _recheck_high_precision(p, v, a, dps=40):
    """Re-verify real-rootedness of p(v - t a) with mpmath at high precision."""
    with mpmath.workdps(dps):
        d = p.degree
        # interpolate exactly: evaluate at d+1 rational-ish nodes
        nodes = [mpmath.mpf(j) for j in range(d + 1)]
        vals = []
        for t in nodes:
            total = mpmath.mpf(0)
            for m, c in p.terms.items():
                prod = mpmath.mpf(c)
                mm, i = m, 0
                while mm:
                    if mm & 1:
                        prod *= mpmath.mpf(v[i]) - t * mpmath.mpf(a[i])
                    mm >>= 1
                    i += 1
                total += prod
            vals.append(total)
        # Newton divided differences, then expand to monomial coefficients
        coef = list(vals)
        m = len(nodes)
        for j in range(1, m):
            for k in range(m - 1, j - 1, -1):
                coef[k] = (coef[k] - coef[k - 1]) / (nodes[k] - nodes[k - j])
        poly = [mpmath.mpf(0)] * m
        for j in range(m - 1, -1, -1):
            shifted = [mpmath.mpf(0)] + poly[:-1]
            poly = [s - nodes[j] * pc for s, pc in zip(shifted, poly)]
            poly[0] += coef[j]
        # strip leading zeros
        while len(poly) > 1 and poly[-1] == 0:
            poly.pop()
        if len(poly) == 1:
            return True
        try:
            roots = mpmath.polyroots(list(reversed(poly)), maxsteps=200, extraprec=80)
        except mpmath.libmp.NoConvergence:
            return False
        scale = max(abs(r) for r in roots) + 1
        return all(abs(mpmath.im(r)) <= mpmath.mpf("1e-20") * scale for r in roots)


def is_stable_probabilistic(p, trials=100, seed=0):
    """One-sided stability test for a homogeneous multiaffine polynomial.

    A sign clash among nonzero coefficients certifies instability.
    Otherwise random lines v - t*a with a > 0 are tested for
    real-rootedness; a failure is re-verified at high precision before
    being reported as a witness.
    """
    if not p.is_homogeneous():
        raise ValueError("stability test expects a homogeneous polynomial")
    if p.is_zero():
        return StabilityResult(True, "zero polynomial")
    signs = {c > 0 for c in p.terms.values()}
    if len(signs) > 1:
        return StabilityResult(False, "mixed-sign coefficients")
    rng = np.random.default_rng(seed)
    for trial in range(trials):
        v = rng.standard_normal(p.n)
        a = rng.uniform(0.2, 2.0, size=p.n)
        q = p.restrict_line(v, a)
        if not is_real_rooted(q):
            if not _recheck_high_precision(p, v, a):
                return StabilityResult(False, f"complex root on trial {trial}", (v, a))
    return StabilityResult(True, f"no failure in {trials} random lines")


def _weakly_interlaces(small, big, tol=1e-8):
    """Weak interlacing of sorted root vectors (len(small) = len(big) - 1)."""
    if len(small) != len(big) - 1:
        return False
    scale = tol * (1.0 + max(np.max(np.abs(big)), 0.0))
    for i, r in enumerate(small):
        if r < big[i] - scale or r > big[i + 1] + scale:
            return False
    return True


def interlaces(q, p, trials=50, seed=0, matrix=False, tol=1e-8):
    """Test on random lines whether Phi(q) interlaces Phi(p).

    Vector mode restricts along v - t*1; matrix mode uses pencil
    polynomials at random symmetric matrices.  Returns (ok, witness).
    """
    if q.degree != p.degree - 1:
        raise ValueError("interlacing requires deg q = deg p - 1")
    rng = np.random.default_rng(seed)
    ones = np.ones(p.n)
    for trial in range(trials):
        if matrix:
            A = random_symmetric(p.n, rng.integers(2**63))
            rp = real_roots(matrix_pencil_poly(p, A))
            rq = real_roots(matrix_pencil_poly(q, A))
        else:
            v = rng.standard_normal(p.n)
            rp = real_roots(p.restrict_line(v, ones))
            rq = real_roots(q.restrict_line(v, ones))
        if len(rq) != len(rp) - 1:
            # degree drop (leading coefficient vanished); skip this line
            continue
        if not _weakly_interlaces(rq, rp, tol):
            return False, (A if matrix else v)
    return True, None


def sample_in_cone(p, mode="vector", margin=0.1, seed=0):
    """Random point of H(p): shift a random draw along 1 (or I) past its min root."""
    rng = np.random.default_rng(seed)
    if mode == "vector":
        g = rng.standard_normal(p.n)
        q = p.restrict_line(g, np.ones(p.n))
        if q.is_zero():
            raise ValueError("pencil identically zero")
        roots = real_roots(q)
        m = roots[0] if len(roots) else 0.0
        s = -m + margin * (1.0 + abs(m))
        return g + s * np.ones(p.n)
    elif mode == "matrix":
        G = random_symmetric(p.n, int(rng.integers(2**63)))
        q = matrix_pencil_poly(p, G)
        if q.is_zero():
            raise ValueError("pencil identically zero")
        roots = real_roots(q)
        m = roots[0] if len(roots) else 0.0
        s = -m + margin * (1.0 + abs(m))
        return G + s * np.eye(p.n)
    raise ValueError(f"unknown mode {mode!r}")


def renegar_nesting_check(p, samples=50, seed=0, tol=DEFAULT_CONE_TOL):
    """Sampled check of H(p) being contained in H(D_1 p).

    Returns (violations, total); violations is a list of offending points.
    """
    dp = p.directional_derivative(np.ones(p.n))
    if dp.degree == 0:
        return [], samples  # constant derivative: containment trivial
    rng = np.random.default_rng(seed)
    violations = []
    for i in range(samples):
        v = sample_in_cone(p, "vector", margin=rng.uniform(0.0, 0.5),
                           seed=int(rng.integers(2**63)))
        rep = in_cone_vector(dp, v, tol)
        if not rep.ok():
            violations.append((v, rep))
    return violations, samples

"""Exact degree-3 construction in 6 variables with a non-SOS Rayleigh difference.

The spanning-tree generating polynomial of the complete graph on 4
vertices is lifted to principal minors and evaluated at a structured
6x6 bordered matrix of indeterminates (x1, x2, x3, a, b, c).  The
Rayleigh difference in the x1/x3 pair collapses to a 7-term quartic in
(a, b, c, x2); everything here is exact rational arithmetic, floats
appear only in sampling and root checks.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import permutations

import numpy as np

from .polys import ExactPoly, Graph

VARS = ("x1", "x2", "x3", "a", "b", "c")

# K4 edge order matching the bordered matrix columns
K4_EDGES = [(1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4)]


def _sym(name):
    return ExactPoly.variable(VARS, name)


def _const(c):
    return ExactPoly.constant(VARS, c)


def bordered_matrix():
    """6x6 symmetric matrix of indeterminates indexed by the K4 edges.

    Diagonal (x1, x2, x2, x2, x2, x3); the inner 4x4 block carries the
    (a, b, c) pattern; all other off-diagonal entries vanish.
    """
    x1, x2, x3 = _sym("x1"), _sym("x2"), _sym("x3")
    a, b, c = _sym("a"), _sym("b"), _sym("c")
    z = ExactPoly.zero(VARS)
    inner = [
        [x2, a, b, c],
        [a, x2, c, b],
        [b, c, x2, a],
        [c, b, a, x2],
    ]
    M = [[z for _ in range(6)] for _ in range(6)]
    M[0][0] = x1
    M[5][5] = x3
    for i in range(4):
        for j in range(4):
            M[i + 1][j + 1] = inner[i][j]
    return M


def _det3_exact(M, rows):
    """Laplace expansion of the 3x3 submatrix on the given row/col indices."""
    total = ExactPoly.zero(VARS)
    for perm in permutations(range(3)):
        sign = _perm_sign3(perm)
        term = _const(sign)
        for r in range(3):
            term = term * M[rows[r]][rows[perm[r]]]
        total = total + term
    return total


def _perm_sign3(perm):
    inv = sum(1 for i in range(3) for j in range(i + 1, 3) if perm[i] > perm[j])
    return 1 if inv % 2 == 0 else -1


def build_p():
    """Minor lift of the K4 spanning-tree polynomial at the bordered matrix.

    Sums det(M restricted to the 3 edge slots) over the 16 spanning
    trees; the result is homogeneous of degree 3.
    """
    M = bordered_matrix()
    k4 = Graph(4, K4_EDGES)
    total = ExactPoly.zero(VARS)
    for tree in k4.spanning_trees():
        total = total + _det3_exact(M, list(tree))
    return total


def rayleigh_difference(f, i, j):
    """df/di * df/dj - f * d^2 f / di dj, exactly."""
    if i == j:
        raise ValueError("need two distinct variables")
    fi = f.diff(i)
    fj = f.diff(j)
    fij = fi.diff(j)
    return fi * fj - f * fij


def build_w():
    """The Rayleigh difference of build_p() in the x1/x3 pair."""
    return rayleigh_difference(build_p(), "x1", "x3")


def closed_form_quarter_w():
    """The 7-term closed form of W/4: quartic in (a, b, c, x2)."""
    a, b, c, x2 = _sym("a"), _sym("b"), _sym("c"), _sym("x2")
    return (
        a * a * b * b
        + a * a * c * c
        + b * b * c * c
        + c * c * c * c
        - 8 * (a * b * c * x2)
        + 2 * (a * a * x2 * x2)
        + 2 * (b * b * x2 * x2)
    )


def verify_w_identity(W=None):
    """Exact check: W = 4 * closed form, and W is free of x1 and x3."""
    if W is None:
        W = build_w()
    ix1 = VARS.index("x1")
    ix3 = VARS.index("x3")
    if any(e[ix1] or e[ix3] for e in W.terms):
        return False
    return W == 4 * closed_form_quarter_w()


def nonneg_sampling(W, trials=10_000, seed=0):
    """Minimum of W over random standard-normal points (float evaluation)."""
    ev = W.float_evaluator()
    rng = np.random.default_rng(seed)
    pts = rng.standard_normal((trials, len(VARS)))
    vals = ev(pts)
    return float(np.min(vals))


def hyperbolicity_spot_check(trials=10_000, seed=0, tol_imag=1e-7, p=None):
    """Real-rootedness of p(v - t e) on random lines, e the identity pattern.

    e sets x1 = x2 = x3 = 1 and a = b = c = 0 (the identity matrix
    specialization of the bordered matrix).  Returns (ok, witness).
    """
    if p is None:
        p = build_p()
    ev = p.float_evaluator()
    e = np.array([1.0, 1.0, 1.0, 0.0, 0.0, 0.0])
    rng = np.random.default_rng(seed)
    vs = rng.standard_normal((trials, 6))
    # cubic in t: interpolate at 4 nodes per line
    nodes = np.array([-2.0, -0.5, 0.5, 2.0])
    scale = 1.0 + np.max(np.abs(vs), axis=1)  # per-line node scaling
    for idx in range(trials):
        v = vs[idx]
        ts = nodes * scale[idx]
        pts = v[None, :] - ts[:, None] * e[None, :]
        vals = ev(pts)
        coeffs = np.polyfit(ts, vals, 3)
        roots = np.roots(coeffs)
        bad = np.abs(roots.imag) > tol_imag * (1.0 + np.abs(roots))
        if np.any(bad):
            return False, v
    return True, None


def canonical_printout(trials=10_000, seed=0):
    """Deterministic report used by the CLI `rayleigh` subcommand."""
    W = build_w()
    quarter = closed_form_quarter_w()
    identity_ok = verify_w_identity(W)
    min_sample = nonneg_sampling(W, trials, seed)
    hyp_ok, _ = hyperbolicity_spot_check(trials, seed)
    lines = []
    lines.append("W/4 = " + repr(quarter))
    lines.append(f"terms: {len(quarter.terms)}")
    lines.append(f"identity: {'PASS' if identity_ok else 'FAIL'}")
    lines.append(f"sampling min ({trials} pts, seed {seed}): {min_sample:.3e}")
    lines.append(f"hyperbolicity spot check: {'PASS' if hyp_ok else 'FAIL'}")
    return "\n".join(lines)

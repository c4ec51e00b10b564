"""Verifiers for the hyperbolic determinantal inequalities.

Covers the Fischer-Hadamard inequality, its segment-monotonicity
strengthening, the diagonal corollary, the projection lemma, the
Koteljanskii inequality over diagonal restrictions, and the nonnegative
lattice condition on the shifted coefficient polynomial.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np

from .cones import ConeReport, in_cone_matrix, in_cone_vector
from .lift import lpm_restriction_eval, minor_lift_eval
from .polys import MultiAffinePoly, indices_of, popcount, spanning_tree_poly, Graph
from .symmetric import block_project, validate_partition

TOL_ABS = 1e-10
TOL_REL = 1e-9


class ConePreconditionError(ValueError):
    """A is not in H(P): the hypothesis of the inequality fails, not the claim."""


@dataclass
class InequalityRecord:
    name: str
    lhs: float
    rhs: float
    slack: float
    verdict: bool
    context: dict

    def to_json_dict(self):
        return {
            "name": self.name,
            "lhs": self.lhs,
            "rhs": self.rhs,
            "slack": self.slack,
            "verdict": self.verdict,
            "context": self.context,
        }

    def dumps(self):
        return json.dumps(self.to_json_dict())


def _record(name, lhs, rhs, context, tol_abs=TOL_ABS, tol_rel=TOL_REL):
    slack = lhs - rhs
    verdict = slack >= -(tol_abs + tol_rel * max(abs(lhs), abs(rhs)))
    return InequalityRecord(name, float(lhs), float(rhs), float(slack), bool(verdict),
                            context)


def _require_in_cone(p, A, tol=1e-8):
    rep = in_cone_matrix(p, A, tol)
    if not rep.ok():
        raise ConePreconditionError(
            f"matrix outside H(P): verdict={rep.verdict}, min_root={rep.min_root}"
        )
    return rep


def check_fischer_hadamard(p, A, blocks, tol_abs=TOL_ABS, tol_rel=TOL_REL):
    """P(pi_Pi(A)) >= P(A) for A in H(P)."""
    A = np.asarray(A, dtype=float)
    _require_in_cone(p, A)
    proj = block_project(A, blocks)
    lhs = minor_lift_eval(p, proj)
    rhs = minor_lift_eval(p, A)
    return _record("fischer_hadamard", lhs, rhs, {"blocks": blocks},
                   tol_abs, tol_rel)


def check_projection_lemma(p, A, blocks, tol=1e-8):
    """pi_Pi(A) stays in H(P) whenever A is."""
    A = np.asarray(A, dtype=float)
    _require_in_cone(p, A)
    return in_cone_matrix(p, block_project(A, blocks), tol)


def check_diag_corollary(p, A, tol_abs=TOL_ABS, tol_rel=TOL_REL):
    """p(diag(A)) >= P(A), and diag(A) in H(p)."""
    A = np.asarray(A, dtype=float)
    _require_in_cone(p, A)
    d = np.diag(A).copy()
    diag_report = in_cone_vector(p, d, tol=1e-7)
    lhs = p.eval(d)
    rhs = minor_lift_eval(p, A)
    rec = _record("diag_corollary", lhs, rhs, {"diag_in_cone": diag_report.verdict},
                  tol_abs, tol_rel)
    rec.verdict = rec.verdict and diag_report.ok()
    return rec


def check_monotone_segment(p, A, blocks, grid_points=101, tol_abs=TOL_ABS,
                           tol_rel=TOL_REL):
    """g(t) = P((1-t)A + t pi_Pi(A)) has nonnegative forward differences on [0,1]."""
    A = np.asarray(A, dtype=float)
    _require_in_cone(p, A)
    proj = block_project(A, blocks)
    ts = np.linspace(0.0, 1.0, grid_points)
    vals = np.array([minor_lift_eval(p, (1 - t) * A + t * proj) for t in ts])
    scale = 1.0 + np.max(np.abs(vals))
    diffs = np.diff(vals)
    min_diff = float(np.min(diffs)) if len(diffs) else 0.0
    verdict = min_diff >= -(tol_abs + tol_rel * scale)
    return InequalityRecord(
        "monotone_segment", float(vals[-1]), float(vals[0]), min_diff, bool(verdict),
        {"blocks": blocks, "grid_points": grid_points},
    )


def check_koteljanskii(p, A, s_mask, t_mask, tol_abs=TOL_ABS, tol_rel=TOL_REL):
    """P|_S(A) P|_T(A) >= P|_{S u T}(A) P|_{S n T}(A)."""
    A = np.asarray(A, dtype=float)
    _require_in_cone(p, A)
    n = p.n
    for m in (s_mask, t_mask, s_mask & t_mask):
        if popcount(m) < n - p.degree:
            raise ValueError("restriction undefined: subset too small")
    vS = lpm_restriction_eval(p, A, s_mask)
    vT = lpm_restriction_eval(p, A, t_mask)
    vU = lpm_restriction_eval(p, A, s_mask | t_mask)
    vI = lpm_restriction_eval(p, A, s_mask & t_mask)
    return _record(
        "koteljanskii", vS * vT, vU * vI,
        {"S": indices_of(s_mask), "T": indices_of(t_mask)}, tol_abs, tol_rel,
    )


def shifted_coefficients(p, A):
    """Restriction value table c[T] = P|_T(A) over all subsets T.

    These are the coefficients of P_A(x) = P(A + Diag(x)) indexed by
    complementary subsets.  Subsets with |T| < n - deg(p) get 0 (the
    derivative order exceeds the degree).
    """
    A = np.asarray(A, dtype=float)
    n = p.n
    lo = n - p.degree
    full = (1 << n) - 1
    table = np.zeros(1 << n)
    for mask in range(1 << n):
        if popcount(mask) < lo:
            continue
        if mask == 0:
            table[mask] = p.coeff(full)  # all diagonal derivatives applied
        else:
            table[mask] = lpm_restriction_eval(p, A, mask)
    return table


def check_nlc_battery(p, A, tol_abs=TOL_ABS, tol_rel=TOL_REL, coeff_tol=1e-10):
    """Nonnegative coefficients of P_A plus the full lattice-pair battery.

    Returns (records, coeff_ok, min_coeff).  Pairs are enumerated up to
    (S,T) ~ (T,S) symmetry; only violating pair records plus a summary
    of the minimum-slack pair are kept to bound output size.
    """
    A = np.asarray(A, dtype=float)
    if p.n > 8:
        raise ValueError("NLC battery limited to n <= 8")
    _require_in_cone(p, A)
    table = shifted_coefficients(p, A)
    scale = 1.0 + float(np.max(np.abs(table)))
    min_coeff = float(np.min(table))
    coeff_ok = min_coeff >= -coeff_tol * scale
    n = p.n
    records = []
    worst = None
    for s in range(1 << n):
        for t in range(s, 1 << n):
            lhs = table[s] * table[t]
            rhs = table[s | t] * table[s & t]
            slack = lhs - rhs
            bound = tol_abs + tol_rel * max(abs(lhs), abs(rhs))
            if worst is None or slack < worst.slack:
                worst = _record("nlc_pair", lhs, rhs,
                                {"S": indices_of(s), "T": indices_of(t)},
                                tol_abs, tol_rel)
            if slack < -bound:
                records.append(
                    _record("nlc_pair", lhs, rhs,
                            {"S": indices_of(s), "T": indices_of(t)},
                            tol_abs, tol_rel)
                )
    return records, coeff_ok, min_coeff, worst


# ---- sample generators -----------------------------------------------------


def random_partition(n, rng):
    """Random set partition via sequential Chinese-restaurant assignment."""
    blocks = []
    for i in range(1, n + 1):
        weights = [len(b) for b in blocks] + [1.0]
        weights = np.array(weights, dtype=float)
        choice = rng.choice(len(weights), p=weights / weights.sum())
        if choice == len(blocks):
            blocks.append([i])
        else:
            blocks[choice].append(i)
    return blocks


GENERATOR_FAMILIES = ("ek", "ek-rescaled", "derivative-ek", "tree", "x0-product")


def random_family_poly(family, rng, n=None):
    """Draw a stable multiaffine polynomial from one of the generator families."""
    if family == "ek":
        n = n or int(rng.integers(2, 7))
        k = int(rng.integers(1, n + 1))
        return MultiAffinePoly.elementary(n, k)
    if family == "ek-rescaled":
        n = n or int(rng.integers(2, 7))
        k = int(rng.integers(1, n + 1))
        d = rng.uniform(0.3, 3.0, size=n)
        e = MultiAffinePoly.elementary(n, k)
        terms = {}
        for m, c in e.terms.items():
            prod = c
            mm, i = m, 0
            while mm:
                if mm & 1:
                    prod *= d[i]
                mm >>= 1
                i += 1
            terms[m] = prod
        return MultiAffinePoly(n, terms)
    if family == "derivative-ek":
        n = n or int(rng.integers(3, 7))
        k = int(rng.integers(2, n + 1))
        s = int(rng.integers(1, 1 << n))
        s &= (1 << n) - 1
        if popcount(s) >= k:
            s &= s - 1  # keep the derivative order below the degree
        q = MultiAffinePoly.elementary(n, k).partial_subset(s)
        return q if not q.is_zero() else MultiAffinePoly.elementary(n, k)
    if family == "tree":
        graphs = [
            Graph(3, [(1, 2), (1, 3), (2, 3)]),
            Graph(4, [(1, 2), (2, 3), (3, 4), (4, 1)]),
            Graph(4, [(1, 2), (2, 3), (3, 4), (4, 1), (1, 3)]),
            Graph.complete(4),
        ]
        return spanning_tree_poly(graphs[int(rng.integers(len(graphs)))])
    if family == "x0-product":
        q = random_family_poly(
            str(rng.choice(["ek", "ek-rescaled", "derivative-ek"])), rng,
            n=(n - 1) if n else None)
        terms = {m << 1 | 1: c for m, c in q.terms.items()}
        return MultiAffinePoly(q.n + 1, terms)
    raise ValueError(f"unknown family {family!r}")

"""Constructive permutation property: group-algebra factorization and
the cone-descent walk sending v in H(e_d) to tau(v) in H(h)."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import permutations

import numpy as np

from .cones import in_cone_vector, real_roots
from .polys import MultiAffinePoly

WALK_TOL = 1e-7


@dataclass
class FactorSchedule:
    n: int
    factors: list  # [( (i, j), Fraction ), ...] 1-based transpositions

    def __len__(self):
        return len(self.factors)


@dataclass
class WalkStep:
    factor_index: int
    swapped: bool
    slack: float


@dataclass
class WalkTrace:
    steps: list = field(default_factory=list)
    tau: tuple | None = None  # 0-based permutation, result = v[tau]

    def to_json_dict(self):
        return {
            "steps": [
                {"factor": s.factor_index, "swapped": s.swapped, "slack": s.slack}
                for s in self.steps
            ],
            "tau": list(self.tau) if self.tau is not None else None,
        }


def factorization_schedule(n):
    """Ordered factors (1 + e_{(ij)}/(j-i)), j ascending then i ascending."""
    if n < 2:
        raise ValueError("need n >= 2")
    factors = []
    for j in range(2, n + 1):
        for i in range(1, j):
            factors.append(((i, j), Fraction(1, j - i)))
    return FactorSchedule(n, factors)


def _compose(g, h):
    """(g . h)(x) = g(h(x)) for permutations as 0-based tuples."""
    return tuple(g[h[x]] for x in range(len(g)))


def verify_factorization(n):
    """Expand the ordered product exactly; every group element must get 1."""
    if n > 5:
        raise ValueError("exact expansion limited to n <= 5")
    sched = factorization_schedule(n)
    identity = tuple(range(n))
    acc = {identity: Fraction(1)}
    for (i, j), lam in sched.factors:
        tau = list(range(n))
        tau[i - 1], tau[j - 1] = tau[j - 1], tau[i - 1]
        tau = tuple(tau)
        nxt = dict(acc)
        for g, c in acc.items():
            gt = _compose(g, tau)
            nxt[gt] = nxt.get(gt, Fraction(0)) + c * lam
        acc = {g: c for g, c in nxt.items() if c != 0}
    target = Fraction(1)
    return all(acc.get(g, Fraction(0)) == target
               for g in map(tuple, permutations(range(n)))) and len(acc) == _fact(n)


def _fact(n):
    out = 1
    for i in range(2, n + 1):
        out *= i
    return out


def _transposition_perm(n, i, j):
    tau = list(range(n))
    tau[i - 1], tau[j - 1] = tau[j - 1], tau[i - 1]
    return tuple(tau)


def build_h_chain(h):
    """Chain h_0 = h, h_k = h_{k-1} + lambda_k * tau_k(h_{k-1}).

    The endpoint must be proportional to e_d (all coefficients equal
    within 1e-10 relative); a failure indicates a bug.
    """
    if h.is_zero() or not h.is_homogeneous():
        raise ValueError("need a nonzero homogeneous multiaffine polynomial")
    n = h.n
    sched = factorization_schedule(n)
    chain = [h]
    cur = h
    for (i, j), lam in sched.factors:
        tau = _transposition_perm(n, i, j)
        cur = cur + float(lam) * cur.apply_permutation(tau)
        chain.append(cur)
    final = chain[-1]
    coeffs = np.array(sorted(final.terms.values()))
    ed = MultiAffinePoly.elementary(n, h.degree)
    if set(final.terms) != set(ed.terms):
        raise RuntimeError("chain endpoint support differs from e_d")
    spread = (coeffs.max() - coeffs.min()) / max(abs(coeffs.max()), 1e-300)
    if spread > 1e-10:
        raise RuntimeError(f"chain endpoint not proportional to e_d: spread {spread}")
    return chain


class WalkFailure(RuntimeError):
    """Neither v nor tau_k(v) landed in the next cone (theorem violation candidate)."""

    def __init__(self, msg, trace):
        super().__init__(msg)
        self.trace = trace


def permutation_walk(h, v, tol=WALK_TOL):
    """Walk v in H(e_d) down the factorization chain into H(h).

    Returns (tau, trace) where tau is a 0-based permutation such that
    v[tau] lies in H(h) (mandatory final check).  When both the kept and
    swapped points are inside, the point is kept.
    """
    v = np.asarray(v, dtype=float)
    n = h.n
    ed = MultiAffinePoly.elementary(n, h.degree)
    start = in_cone_vector(ed, v, tol)
    if not start.ok():
        raise ValueError(f"v not in H(e_d): verdict {start.verdict}")
    chain = build_h_chain(h)
    sched = factorization_schedule(n)
    r = len(sched.factors)
    perm = tuple(range(n))  # current coordinate permutation, w = v[perm]
    w = v.copy()
    trace = WalkTrace()
    for k in range(r, 0, -1):
        prev = chain[k - 1]
        rep = in_cone_vector(prev, w, tol)
        if rep.ok():
            trace.steps.append(WalkStep(k, False, rep.slack))
            continue
        (i, j), _lam = sched.factors[k - 1]
        w2 = w.copy()
        w2[i - 1], w2[j - 1] = w2[j - 1], w2[i - 1]
        rep2 = in_cone_vector(prev, w2, tol)
        if not rep2.ok():
            # tighten and retry both before declaring a hard failure
            rep = in_cone_vector(prev, w, tol * 100)
            rep2 = in_cone_vector(prev, w2, tol * 100)
            if rep.ok():
                trace.steps.append(WalkStep(k, False, rep.slack))
                continue
            if not rep2.ok():
                raise WalkFailure(
                    f"step {k}: neither point in the cone "
                    f"(slacks {rep.slack}, {rep2.slack})", trace)
        tau = _transposition_perm(n, i, j)
        perm = tuple(perm[tau[x]] for x in range(n))
        w = w2
        trace.steps.append(WalkStep(k, True, rep2.slack))
    final = in_cone_vector(h, w, tol)
    if not final.ok():
        raise WalkFailure(f"final check failed: verdict {final.verdict}", trace)
    trace.tau = perm
    return perm, trace


def common_interlacer_check(h, tau_pair, trials=30, seed=0, tol=1e-8):
    """(d/dx_i + d/dx_j) h interlaces both h and tau(h) on random lines."""
    i, j = tau_pair
    n = h.n
    a = np.zeros(n)
    a[i - 1] = 1.0
    a[j - 1] = 1.0
    w = h.directional_derivative(a)
    if w.degree == 0 or h.degree <= 1:
        return True  # degree-0 interlacer, vacuous
    g = h.apply_permutation(_transposition_perm(n, i, j))
    rng = np.random.default_rng(seed)
    ones = np.ones(n)
    for _ in range(trials):
        v = rng.standard_normal(n)
        rw = real_roots(w.restrict_line(v, ones))
        for target in (h, g):
            rt = real_roots(target.restrict_line(v, ones))
            if len(rw) != len(rt) - 1:
                continue  # leading-coefficient drop on this line
            scale = tol * (1.0 + np.max(np.abs(rt)))
            for idx, root in enumerate(rw):
                if root < rt[idx] - scale or root > rt[idx + 1] + scale:
                    return False
    return True

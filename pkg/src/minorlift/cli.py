"""Command-line front end: single evaluations, experiment batteries, and
the exact Rayleigh-difference report.

Exit codes: 0 clean, 1 at least one violation record, 2 usage or input
error.  All randomized commands require an explicit --seed.
"""

from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from . import cones, inequalities, lift, permwalk, rayleigh, spectral
from .inequalities import ConePreconditionError
from .polys import MultiAffinePoly, popcount
from .symmetric import matrix_from_json_dict, random_symmetric

CHECKS = (
    "fischer", "koteljanskii", "nlc", "diag", "monotone",
    "spectral", "schur-horn", "majorization", "permwalk", "renegar",
)

USAGE_ERROR = 2
VIOLATION = 1


def _load_json(path):
    with open(path) as fh:
        return json.load(fh)


def _emit(stream, obj):
    stream.write(json.dumps(obj, sort_keys=True) + "\n")


def cmd_eval(args, out):
    try:
        p = MultiAffinePoly.from_json_dict(_load_json(args.poly))
        A = matrix_from_json_dict(_load_json(args.matrix))
    except (OSError, ValueError, KeyError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE_ERROR
    if A.shape[0] != p.n:
        print("error: dimension mismatch between polynomial and matrix",
              file=sys.stderr)
        return USAGE_ERROR
    value = lift.minor_lift_eval(p, A)
    diag_value = p.eval(np.diag(A))
    mat_rep = cones.in_cone_matrix(p, A, args.tol)
    vec_rep = cones.in_cone_vector(p, np.diag(A).copy(), args.tol)
    _emit(out, {
        "P(A)": value,
        "p(diag(A))": diag_value,
        "matrix_cone": mat_rep.to_json_dict(),
        "diag_cone": vec_rep.to_json_dict(),
    })
    return 0


def _trial_rng(seed, idx):
    return np.random.default_rng([seed, idx])


def _sample_poly_and_matrix(family, rng, n, margin=0.2):
    p = inequalities.random_family_poly(family, rng, n=n)
    A = cones.sample_in_cone(p, "matrix", margin=margin,
                            seed=int(rng.integers(2**63)))
    return p, A


def _run_check(check, family, seed, idx, n, k, d, epsilon, tol):
    """One battery trial; returns a JSON-able record with a 'violation' flag."""
    rng = _trial_rng(seed, idx)
    rec = {"trial": idx, "family": family, "check": check}
    try:
        if check == "fischer":
            p, A = _sample_poly_and_matrix(family, rng, n)
            blocks = inequalities.random_partition(p.n, rng)
            r = inequalities.check_fischer_hadamard(p, A, blocks)
            rec.update(slack=r.slack, lhs=r.lhs, rhs=r.rhs,
                       violation=not r.verdict)
        elif check == "diag":
            p, A = _sample_poly_and_matrix(family, rng, n)
            r = inequalities.check_diag_corollary(p, A)
            rec.update(slack=r.slack, violation=not r.verdict)
        elif check == "monotone":
            p, A = _sample_poly_and_matrix(family, rng, n)
            blocks = inequalities.random_partition(p.n, rng)
            r = inequalities.check_monotone_segment(p, A, blocks)
            rec.update(min_forward_diff=r.slack, violation=not r.verdict)
        elif check == "koteljanskii":
            p, A = _sample_poly_and_matrix(family, rng, min(n or 5, 6))
            lo = p.n - p.degree
            while True:
                s = int(rng.integers(0, 1 << p.n))
                t = int(rng.integers(0, 1 << p.n))
                if popcount(s & t) >= lo:
                    break
            r = inequalities.check_koteljanskii(p, A, s, t)
            rec.update(slack=r.slack, context=r.context, violation=not r.verdict)
        elif check == "nlc":
            p, A = _sample_poly_and_matrix(family, rng, min(n or 5, 8))
            bad, coeff_ok, min_coeff, worst = inequalities.check_nlc_battery(p, A)
            rec.update(min_coeff=min_coeff, min_pair_slack=worst.slack,
                       violation=bool(bad) or not coeff_ok)
        elif check == "spectral":
            p, A = _sample_poly_and_matrix(family, rng, n)
            res = spectral.spectral_containment_search(p, A, tol=tol or 1e-8)
            rec.update(permutations_tested=res.permutations_tested,
                       found=res.found_permutation is not None,
                       violation=res.found_permutation is None)
        elif check == "schur-horn":
            nn = min(n or 4, 5)
            coeffs = rng.uniform(0.2, 2.0, size=nn)
            p = MultiAffinePoly(nn, {1 << i: float(c) for i, c in enumerate(coeffs)})
            X = random_symmetric(nn, int(rng.integers(2**63)))
            res = spectral.schur_horn_gap(p, X, restarts=5,
                                          seed=int(rng.integers(2**31)))
            gap = res["orth_max_lower_bound"] - res["perm_max"]
            rec.update(gap=gap, violation=gap > 1e-6)
        elif check == "majorization":
            nn = min(n or 4, 6)
            X = random_symmetric(nn, int(rng.integers(2**63)))
            diag = rng.uniform(0.3, 3.0, size=nn)
            kk = k or int(rng.integers(1, nn + 1))
            res = spectral.check_majorization_rescaled_ek(X, diag, kk)
            rec.update(k=kk, violation=not res["ok"])
        elif check == "permwalk":
            h = inequalities.random_family_poly(family, rng, n=n)
            ed = MultiAffinePoly.elementary(h.n, h.degree)
            v = cones.sample_in_cone(ed, "vector", margin=0.1,
                                     seed=int(rng.integers(2**63)))
            try:
                tau, _trace = permwalk.permutation_walk(h, v)
                rec.update(tau=list(tau), violation=False)
            except permwalk.WalkFailure as exc:
                rec.update(error=str(exc), violation=True)
        elif check == "renegar":
            p = inequalities.random_family_poly(family, rng, n=n)
            violations, total = cones.renegar_nesting_check(
                p, samples=10, seed=int(rng.integers(2**63)))
            rec.update(samples=total, violation=bool(violations))
        else:
            raise ValueError(f"unknown check {check!r}")
    except ConePreconditionError as exc:
        # hypothesis failed, not the theorem: reported separately
        rec.update(status="precondition-failed", detail=str(exc), violation=False)
    return rec


def cmd_battery(args, out):
    if args.check not in CHECKS:
        print(f"error: unknown check {args.check!r}", file=sys.stderr)
        return USAGE_ERROR
    if args.family not in inequalities.GENERATOR_FAMILIES:
        print(f"error: unknown family {args.family!r}", file=sys.stderr)
        return USAGE_ERROR
    violations = 0
    min_slack = None
    for idx in range(args.trials):
        rec = _run_check(args.check, args.family, args.seed, idx,
                         args.n, args.k, args.d, args.epsilon, args.tol)
        if rec.get("violation"):
            violations += 1
        slack = rec.get("slack")
        if slack is not None:
            min_slack = slack if min_slack is None else min(min_slack, slack)
        _emit(out, rec)
    _emit(out, {"summary": True, "check": args.check, "family": args.family,
                "trials": args.trials, "violations": violations,
                "min_slack": min_slack})
    return VIOLATION if violations else 0


def cmd_rayleigh(args, out):
    out.write(rayleigh.canonical_printout(args.trials, args.seed) + "\n")
    return 0


def build_parser():
    parser = argparse.ArgumentParser(
        prog="minorlift",
        description="Minor lifts of stable polynomials: evaluation, "
                    "inequality batteries, exact Rayleigh report.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    pe = sub.add_parser("eval", help="evaluate P(A), p(diag A) and cone verdicts")
    pe.add_argument("--poly", required=True, help="polynomial JSON path")
    pe.add_argument("--matrix", required=True, help="matrix JSON path")
    pe.add_argument("--tol", type=float, default=1e-8,
                    help="cone tolerance (default 1e-8)")
    pe.add_argument("--out", help="output path (default stdout)")

    pb = sub.add_parser("battery", help="randomized verification battery")
    pb.add_argument("--family", required=True,
                    help=f"one of {', '.join(inequalities.GENERATOR_FAMILIES)}")
    pb.add_argument("--check", required=True,
                    help=f"one of {', '.join(CHECKS)}")
    pb.add_argument("--trials", type=int, default=100)
    pb.add_argument("--seed", type=int, required=True,
                    help="seed (required; no wall-clock default)")
    pb.add_argument("--tol", type=float, default=None,
                    help="tolerance override (module defaults otherwise)")
    pb.add_argument("--n", type=int, default=None, help="variable count")
    pb.add_argument("--k", type=int, default=None, help="degree parameter")
    pb.add_argument("--d", type=int, default=None, help="derivation order")
    pb.add_argument("--epsilon", type=float, default=None,
                    help="perturbation size for epsilon families")
    pb.add_argument("--out", help="output path (default stdout)")

    pr = sub.add_parser("rayleigh", help="exact W report and verdicts")
    pr.add_argument("--trials", type=int, default=10_000)
    pr.add_argument("--seed", type=int, default=0)
    pr.add_argument("--out", help="output path (default stdout)")

    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    stream = open(args.out, "w") if args.out else sys.stdout
    try:
        if args.command == "eval":
            return cmd_eval(args, stream)
        if args.command == "battery":
            return cmd_battery(args, stream)
        if args.command == "rayleigh":
            return cmd_rayleigh(args, stream)
        return USAGE_ERROR
    finally:
        if args.out:
            stream.close()


if __name__ == "__main__":
    sys.exit(main())

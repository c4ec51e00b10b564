import itertools

import numpy as np
import pytest


def laplace_det(A):
    """Reference determinant by cofactor expansion (exact on ints)."""
    n = len(A)
    if n == 0:
        return 1
    if n == 1:
        return A[0][0]
    total = 0
    for j in range(n):
        minor = [row[:j] + row[j + 1:] for row in A[1:]]
        total += (-1) ** j * A[0][j] * laplace_det(minor)
    return total


def brute_minor_lift(p, A):
    """Reference P(A) via per-subset numpy determinants."""
    total = 0.0
    for mask, c in p.terms.items():
        idx = [i for i in range(p.n) if mask >> i & 1]
        sub = A[np.ix_(idx, idx)]
        det = np.linalg.det(sub) if idx else 1.0
        total += c * det
    return total


def brute_spanning_trees(n, edges):
    """All spanning trees by filtering (n-1)-edge subsets for acyclicity."""
    trees = []
    for combo in itertools.combinations(range(len(edges)), n - 1):
        parent = list(range(n + 1))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        ok = True
        for e in combo:
            u, v = edges[e]
            ru, rv = find(u), find(v)
            if ru == rv:
                ok = False
                break
            parent[ru] = rv
        if ok:
            trees.append(frozenset(combo))
    return set(trees)


@pytest.fixture
def rng():
    return np.random.default_rng(12345)

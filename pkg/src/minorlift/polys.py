"""Multiaffine, univariate and exact sparse multivariate polynomials.

Multiaffine polynomials over at most 16 variables are stored as a map from
subset bitmasks to float coefficients.  Univariate polynomials store
ascending coefficient lists.  ExactPoly keeps arbitrary-precision rational
coefficients for the computations that must be exact.
"""

from __future__ import annotations

import json
import math
from fractions import Fraction
from itertools import combinations

import numpy as np

MAX_VARS = 16

# relative threshold below which float coefficients are pruned
_PRUNE_REL = 1e-14


class DimensionMismatch(ValueError):
    pass


def mask_of(indices, n):
    """Bitmask for a collection of 1-based variable indices."""
    m = 0
    for i in indices:
        if not 1 <= i <= n:
            raise ValueError(f"index {i} out of range 1..{n}")
        m |= 1 << (i - 1)
    return m


def indices_of(mask):
    """Sorted 1-based indices of a bitmask."""
    out = []
    i = 1
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return out


def popcount(mask):
    return bin(mask).count("1")


class MultiAffinePoly:
    """Multiaffine polynomial sum_S a_S prod_{i in S} x_i with n <= 16."""

    __slots__ = ("n", "terms")

    def __init__(self, n, terms, prune=True):
        if not 1 <= n <= MAX_VARS:
            raise ValueError(f"variable count must be in 1..{MAX_VARS}, got {n}")
        full = (1 << n) - 1
        for m in terms:
            if m & ~full:
                raise ValueError("term references a variable beyond n")
        if prune:
            terms = _prune(terms)
        self.n = n
        self.terms = dict(terms)

    # ---- constructors -------------------------------------------------

    @classmethod
    def zero(cls, n):
        return cls(n, {})

    @classmethod
    def monomial(cls, n, indices, coeff=1.0):
        return cls(n, {mask_of(indices, n): float(coeff)})

    @classmethod
    def elementary(cls, n, k):
        """Elementary symmetric polynomial e_k in n variables."""
        if not 0 <= k <= n:
            raise ValueError(f"need 0 <= k <= n, got k={k}, n={n}")
        terms = {}
        for combo in combinations(range(n), k):
            m = 0
            for i in combo:
                m |= 1 << i
            terms[m] = 1.0
        return cls(n, terms, prune=False)

    # ---- basic queries -------------------------------------------------

    @property
    def degree(self):
        if not self.terms:
            return 0
        return max(popcount(m) for m in self.terms)

    def is_zero(self):
        return not self.terms

    def is_homogeneous(self):
        sizes = {popcount(m) for m in self.terms}
        return len(sizes) <= 1

    def coeff(self, mask):
        return self.terms.get(mask, 0.0)

    def __eq__(self, other):
        return (
            isinstance(other, MultiAffinePoly)
            and self.n == other.n
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash((self.n, frozenset(self.terms.items())))

    def __repr__(self):
        if not self.terms:
            return f"MultiAffinePoly({self.n}, 0)"
        bits = []
        for m in sorted(self.terms):
            mono = "*".join(f"x{i}" for i in indices_of(m)) or "1"
            bits.append(f"{self.terms[m]:g}*{mono}")
        return f"MultiAffinePoly({self.n}, {' + '.join(bits)})"

    # ---- arithmetic ----------------------------------------------------

    def __add__(self, other):
        if self.n != other.n:
            raise DimensionMismatch("variable counts differ")
        terms = dict(self.terms)
        for m, c in other.terms.items():
            terms[m] = terms.get(m, 0.0) + c
        return MultiAffinePoly(self.n, terms)

    def __sub__(self, other):
        return self + (other * -1.0)

    def __mul__(self, scalar):
        s = float(scalar)
        return MultiAffinePoly(self.n, {m: c * s for m, c in self.terms.items()})

    __rmul__ = __mul__

    # ---- operations ----------------------------------------------------

    def eval(self, v):
        """Evaluate at a real vector of length n."""
        v = np.asarray(v, dtype=float)
        if v.shape != (self.n,):
            raise DimensionMismatch(f"expected vector of length {self.n}")
        total = 0.0
        for m, c in self.terms.items():
            prod = c
            mm = m
            i = 0
            while mm:
                if mm & 1:
                    prod *= v[i]
                mm >>= 1
                i += 1
            total += prod
        return total

    def dual(self):
        """Swap coefficient of x^S with that of the complementary monomial."""
        full = (1 << self.n) - 1
        return MultiAffinePoly(
            self.n, {full ^ m: c for m, c in self.terms.items()}, prune=False
        )

    def partial_subset(self, mask):
        """Iterated partial derivative prod_{i in S} d/dx_i."""
        terms = {}
        for m, c in self.terms.items():
            if m & mask == mask:
                terms[m ^ mask] = terms.get(m ^ mask, 0.0) + c
        return MultiAffinePoly(self.n, terms)

    def directional_derivative(self, a):
        """D_a p = sum_i a_i dp/dx_i."""
        a = np.asarray(a, dtype=float)
        if a.shape != (self.n,):
            raise DimensionMismatch(f"expected vector of length {self.n}")
        terms = {}
        for m, c in self.terms.items():
            mm = m
            i = 0
            while mm:
                if mm & 1:
                    key = m ^ (1 << i)
                    terms[key] = terms.get(key, 0.0) + c * a[i]
                mm >>= 1
                i += 1
        return MultiAffinePoly(self.n, terms)

    def apply_permutation(self, tau):
        """Relabel variables: coefficient of x^{tau(S)} is that of x^S.

        tau is a 0-based permutation tuple; variable i is sent to tau[i].
        """
        if sorted(tau) != list(range(self.n)):
            raise ValueError("not a permutation of 0..n-1")
        terms = {}
        for m, c in self.terms.items():
            out = 0
            mm = m
            i = 0
            while mm:
                if mm & 1:
                    out |= 1 << tau[i]
                mm >>= 1
                i += 1
            terms[out] = terms.get(out, 0.0) + c
        return MultiAffinePoly(self.n, terms, prune=False)

    def restrict_line(self, v, a):
        """Univariate q(t) = p(v - t*a) by interpolation at Chebyshev nodes."""
        v = np.asarray(v, dtype=float)
        a = np.asarray(a, dtype=float)
        if v.shape != (self.n,) or a.shape != (self.n,):
            raise DimensionMismatch(f"expected vectors of length {self.n}")
        d = self.degree
        nodes = chebyshev_nodes(d + 1)
        vals = np.array([self.eval(v - t * a) for t in nodes])
        return UniPoly(newton_interp(nodes, vals))

    # ---- serialization ---------------------------------------------------

    def to_json_dict(self):
        return {
            "n": self.n,
            "terms": [
                {"subset": indices_of(m), "coeff": c}
                for m, c in sorted(self.terms.items())
            ],
        }

    @classmethod
    def from_json_dict(cls, d):
        n = int(d["n"])
        terms = {}
        for t in d["terms"]:
            m = mask_of(t["subset"], n)
            c = t["coeff"]
            if isinstance(c, str):
                c = float(Fraction(c))
            terms[m] = terms.get(m, 0.0) + float(c)
        return cls(n, terms)

    def dumps(self):
        return json.dumps(self.to_json_dict())

    @classmethod
    def loads(cls, s):
        return cls.from_json_dict(json.loads(s))


def _prune(terms):
    if not terms:
        return {}
    scale = max(abs(c) for c in terms.values())
    if scale == 0.0:
        return {}
    return {m: c for m, c in terms.items() if abs(c) >= _PRUNE_REL * scale}


def chebyshev_nodes(count, center=0.0, radius=1.0):
    """count Chebyshev points on [center-radius, center+radius]."""
    if count == 1:
        return np.array([center])
    k = np.arange(count)
    return center + radius * np.cos((2 * k + 1) * math.pi / (2 * count))


def newton_interp(nodes, values):
    """Ascending monomial coefficients of the Newton interpolant."""
    nodes = np.asarray(nodes, dtype=float)
    coef = np.array(values, dtype=float)
    m = len(nodes)
    # divided differences in place
    for j in range(1, m):
        coef[j:] = (coef[j:] - coef[j - 1 : -1]) / (nodes[j:] - nodes[: m - j])
    # expand the Newton form into monomial coefficients: out*(t - x_j) + c_j
    out = np.zeros(m)
    for j in range(m - 1, -1, -1):
        shifted = np.zeros(m)
        shifted[1:] = out[:-1]
        out = shifted - nodes[j] * out
        out[0] += coef[j]
    return out


class UniPoly:
    """Real univariate polynomial, ascending coefficients."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs, trim=True):
        c = np.atleast_1d(np.asarray(coeffs, dtype=float))
        if trim:
            c = _trim(c)
        self.coeffs = c

    @property
    def degree(self):
        return len(self.coeffs) - 1

    def is_zero(self):
        return len(self.coeffs) == 1 and self.coeffs[0] == 0.0

    def __call__(self, t):
        return np.polyval(self.coeffs[::-1], t)

    def derivative(self):
        if self.degree == 0:
            return UniPoly([0.0])
        k = np.arange(1, len(self.coeffs))
        return UniPoly(self.coeffs[1:] * k)

    def __repr__(self):
        return f"UniPoly({list(self.coeffs)})"


def _trim(c, rel=1e-12):
    scale = np.max(np.abs(c))
    if scale == 0.0:
        return np.zeros(1)
    keep = np.nonzero(np.abs(c) >= rel * scale)[0]
    return c[: keep[-1] + 1].copy()


class ExactPoly:
    """Sparse multivariate polynomial with exact Fraction coefficients."""

    __slots__ = ("vars", "terms")

    def __init__(self, variables, terms):
        self.vars = tuple(variables)
        clean = {}
        for expo, c in terms.items():
            c = Fraction(c)
            if c != 0:
                expo = tuple(int(e) for e in expo)
                if len(expo) != len(self.vars):
                    raise ValueError("exponent vector length mismatch")
                clean[expo] = c
        self.terms = clean

    @classmethod
    def zero(cls, variables):
        return cls(variables, {})

    @classmethod
    def constant(cls, variables, c):
        z = (0,) * len(tuple(variables))
        return cls(variables, {z: Fraction(c)})

    @classmethod
    def variable(cls, variables, name):
        variables = tuple(variables)
        i = variables.index(name)
        expo = tuple(1 if j == i else 0 for j in range(len(variables)))
        return cls(variables, {expo: Fraction(1)})

    def _check(self, other):
        if self.vars != other.vars:
            raise ValueError("variable orderings differ")

    @property
    def total_degree(self):
        if not self.terms:
            return 0
        return max(sum(e) for e in self.terms)

    def is_zero(self):
        return not self.terms

    def __eq__(self, other):
        return (
            isinstance(other, ExactPoly)
            and self.vars == other.vars
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash((self.vars, frozenset(self.terms.items())))

    def __add__(self, other):
        if not isinstance(other, ExactPoly):
            other = ExactPoly.constant(self.vars, other)
        self._check(other)
        terms = dict(self.terms)
        for e, c in other.terms.items():
            terms[e] = terms.get(e, Fraction(0)) + c
        return ExactPoly(self.vars, terms)

    def __neg__(self):
        return ExactPoly(self.vars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        if not isinstance(other, ExactPoly):
            other = ExactPoly.constant(self.vars, other)
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, ExactPoly):
            other = ExactPoly.constant(self.vars, other)
        self._check(other)
        terms = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                terms[e] = terms.get(e, Fraction(0)) + c1 * c2
        return ExactPoly(self.vars, terms)

    __rmul__ = __mul__

    def diff(self, name):
        """Formal partial derivative with respect to the named variable."""
        i = self.vars.index(name)
        terms = {}
        for e, c in self.terms.items():
            if e[i] > 0:
                ne = list(e)
                ne[i] -= 1
                terms[tuple(ne)] = terms.get(tuple(ne), Fraction(0)) + c * e[i]
        return ExactPoly(self.vars, terms)

    def eval_exact(self, point):
        """Evaluate at a dict name -> Fraction, exactly."""
        total = Fraction(0)
        for e, c in self.terms.items():
            prod = c
            for name, exp in zip(self.vars, e):
                if exp:
                    prod *= Fraction(point[name]) ** exp
            total += prod
        return total

    def substitute(self, assignments):
        """Substitute exact values for a subset of variables."""
        terms = {}
        idx = {name: i for i, name in enumerate(self.vars)}
        fixed = {idx[name]: Fraction(v) for name, v in assignments.items()}
        for e, c in self.terms.items():
            cc = c
            ne = list(e)
            for i, val in fixed.items():
                if e[i]:
                    cc *= val ** e[i]
                ne[i] = 0
            if cc != 0:
                key = tuple(ne)
                terms[key] = terms.get(key, Fraction(0)) + cc
        return ExactPoly(self.vars, terms)

    def float_evaluator(self):
        """Vectorized float evaluator over arrays of points (rows)."""
        if not self.terms:
            return lambda pts: np.zeros(np.asarray(pts).shape[0])
        expo = np.array(sorted(self.terms), dtype=float)
        coef = np.array([float(self.terms[tuple(int(x) for x in e)]) for e in expo])

        def ev(pts):
            pts = np.atleast_2d(np.asarray(pts, dtype=float))
            # pts: (m, nvars); expo: (T, nvars)
            with np.errstate(divide="ignore", invalid="ignore"):
                powed = pts[:, None, :] ** expo[None, :, :]
            return powed.prod(axis=2) @ coef

        return ev

    def monomials_sorted(self):
        """Terms in graded-then-lex-descending order, for stable printing."""
        return sorted(
            self.terms.items(), key=lambda item: (-sum(item[0]), tuple(-e for e in item[0]))
        )

    def __repr__(self):
        if not self.terms:
            return "0"
        bits = []
        for e, c in self.monomials_sorted():
            mono = "*".join(
                f"{v}^{k}" if k > 1 else v for v, k in zip(self.vars, e) if k
            )
            if mono:
                bits.append(f"{c}*{mono}" if c != 1 else mono)
            else:
                bits.append(str(c))
        return " + ".join(bits).replace("+ -", "- ")

    def to_json_dict(self):
        return {
            "vars": list(self.vars),
            "terms": [
                {"exponents": list(e), "coeff": f"{c.numerator}/{c.denominator}"}
                for e, c in sorted(self.terms.items())
            ],
        }

    @classmethod
    def from_json_dict(cls, d):
        return cls(
            tuple(d["vars"]),
            {tuple(t["exponents"]): Fraction(t["coeff"]) for t in d["terms"]},
        )


class Graph:
    """Simple undirected graph given by a vertex count and an edge list."""

    __slots__ = ("m", "edges")

    def __init__(self, m, edges):
        seen = set()
        for u, v in edges:
            if u == v:
                raise ValueError("loops not allowed")
            if not (1 <= u <= m and 1 <= v <= m):
                raise ValueError("edge endpoint out of range")
            key = (min(u, v), max(u, v))
            if key in seen:
                raise ValueError("duplicate edge")
            seen.add(key)
        self.m = m
        self.edges = [tuple(sorted(e)) for e in edges]

    @classmethod
    def complete(cls, m):
        return cls(m, list(combinations(range(1, m + 1), 2)))

    def is_connected(self):
        if self.m == 1:
            return True
        parent = list(range(self.m + 1))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for u, v in self.edges:
            parent[find(u)] = find(v)
        root = find(1)
        return all(find(i) == root for i in range(1, self.m + 1))

    def spanning_trees(self):
        """Edge-index sets (0-based into self.edges) of all spanning trees."""
        trees = []
        k = self.m - 1
        for combo in combinations(range(len(self.edges)), k):
            parent = list(range(self.m + 1))

            def find(x):
                while parent[x] != x:
                    parent[x] = parent[parent[x]]
                    x = parent[x]
                return x

            acyclic = True
            for ei in combo:
                u, v = self.edges[ei]
                ru, rv = find(u), find(v)
                if ru == rv:
                    acyclic = False
                    break
                parent[ru] = rv
            if acyclic:
                trees.append(combo)
        return trees

    def spanning_tree_count_via_laplacian(self):
        """Matrix-tree count: determinant of a reduced Laplacian."""
        L = np.zeros((self.m, self.m))
        for u, v in self.edges:
            L[u - 1, u - 1] += 1
            L[v - 1, v - 1] += 1
            L[u - 1, v - 1] -= 1
            L[v - 1, u - 1] -= 1
        if self.m == 1:
            return 1
        return int(round(np.linalg.det(L[1:, 1:])))


def spanning_tree_poly(graph):
    """Multiaffine generating polynomial of the spanning trees of a graph.

    Variables are indexed by edges in the order given by graph.edges.
    """
    if not graph.is_connected():
        raise ValueError("graph is not connected")
    n = len(graph.edges)
    terms = {}
    for combo in graph.spanning_trees():
        m = 0
        for ei in combo:
            m |= 1 << ei
        terms[m] = 1.0
    return MultiAffinePoly(n, terms, prune=False)

"""Multiaffine polynomial core: evaluation, dual, derivatives, permutation
action, line restriction, spanning-tree generators, exact arithmetic."""

from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from minorlift.polys import (
    ExactPoly,
    Graph,
    MultiAffinePoly,
    UniPoly,
    chebyshev_nodes,
    mask_of,
    newton_interp,
    spanning_tree_poly,
)

from conftest import brute_spanning_trees


def small_poly(draw_terms, n):
    return MultiAffinePoly(n, dict(draw_terms))


@st.composite
def polys(draw, max_n=5):
    n = draw(st.integers(2, max_n))
    n_terms = draw(st.integers(1, 6))
    terms = {}
    for _ in range(n_terms):
        mask = draw(st.integers(0, (1 << n) - 1))
        coeff = draw(st.floats(-4, 4, allow_nan=False).filter(lambda c: abs(c) > 1e-3))
        terms[mask] = coeff
    return MultiAffinePoly(n, terms)


class TestEval:
    def test_e1_cancels(self):
        p = MultiAffinePoly.elementary(2, 1)
        assert p.eval(np.array([5.0, -5.0])) == 0.0

    def test_product_monomial(self):
        p = MultiAffinePoly(2, {0b11: 1.0})
        assert p.eval(np.array([3.0, 4.0])) == 12.0

    def test_e2_explicit(self):
        p = MultiAffinePoly.elementary(3, 2)
        assert p.eval(np.array([1.0, 2.0, 3.0])) == pytest.approx(11.0)


class TestElementary:
    def test_e2_of_3(self):
        p = MultiAffinePoly.elementary(3, 2)
        assert p.terms == {0b011: 1.0, 0b101: 1.0, 0b110: 1.0}

    def test_e0_constant(self):
        p = MultiAffinePoly.elementary(4, 0)
        assert p.terms == {0: 1.0}

    def test_top_monomial(self):
        p = MultiAffinePoly.elementary(4, 4)
        assert p.terms == {0b1111: 1.0}


class TestDerivatives:
    def test_partial_of_e2(self):
        p = MultiAffinePoly.elementary(3, 2)
        q = p.partial_subset(mask_of([1], 3))
        assert q.terms == {0b010: 1.0, 0b100: 1.0}

    def test_partial_full_monomial(self):
        p = MultiAffinePoly(2, {0b11: 1.0})
        q = p.partial_subset(0b11)
        assert q.terms == {0: 1.0}

    def test_partial_missing_var(self):
        p = MultiAffinePoly(3, {0b011: 1.0})
        assert p.partial_subset(0b100).is_zero()

    def test_directional_is_partial(self):
        p = MultiAffinePoly.elementary(3, 2)
        d = p.directional_derivative(np.array([1.0, 0.0, 0.0]))
        assert d.terms == {0b010: 1.0, 0b100: 1.0}

    def test_directional_of_constant(self):
        p = MultiAffinePoly(3, {0: 2.0})
        assert p.directional_derivative(np.ones(3)).is_zero()


class TestPermutation:
    def test_swap(self):
        p = MultiAffinePoly(3, {0b101: 1.0})  # x1 x3
        tau = (1, 0, 2)
        q = p.apply_permutation(tau)
        assert q.terms == {0b110: 1.0}  # x2 x3

    def test_identity(self):
        p = MultiAffinePoly.elementary(4, 2)
        assert p.apply_permutation((0, 1, 2, 3)).terms == p.terms


class TestRestrictLine:
    def test_linear(self):
        p = MultiAffinePoly.elementary(2, 1)
        q = p.restrict_line(np.array([1.0, 1.0]), np.array([1.0, 1.0]))
        assert q.coeffs == pytest.approx([2.0, -2.0])

    def test_quadratic(self):
        p = MultiAffinePoly(2, {0b11: 1.0})
        q = p.restrict_line(np.zeros(2), np.ones(2))
        assert q.coeffs == pytest.approx([0.0, 0.0, 1.0], abs=1e-12)

    def test_e2_at_123(self):
        # (1-t)(2-t)+(1-t)(3-t)+(2-t)(3-t) = 3t^2 - 12t + 11
        p = MultiAffinePoly.elementary(3, 2)
        q = p.restrict_line(np.array([1.0, 2.0, 3.0]), np.ones(3))
        assert q.coeffs == pytest.approx([11.0, -12.0, 3.0])

    def test_zero_direction_constant(self):
        p = MultiAffinePoly.elementary(3, 2)
        q = p.restrict_line(np.array([1.0, 2.0, 3.0]), np.zeros(3))
        assert q.degree == 0
        assert q.coeffs[0] == pytest.approx(11.0)


class TestDual:
    def test_trivial_dual(self):
        p = MultiAffinePoly(2, {0b01: 1.0})  # x1
        d = p.dual()
        assert d.terms == {0b10: 1.0}  # x2

    @given(polys())
    @settings(max_examples=60, deadline=None)
    def test_involution(self, p):
        dd = p.dual().dual()
        assert set(dd.terms) == set(p.terms)
        for m, c in p.terms.items():
            assert dd.terms[m] == pytest.approx(c, rel=1e-12)

    @given(polys(), st.integers(0, 10_000))
    @settings(max_examples=60, deadline=None)
    def test_eval_identity(self, p, seed):
        rng = np.random.default_rng(seed)
        v = rng.uniform(0.5, 2.0, size=p.n) * rng.choice([-1.0, 1.0], size=p.n)
        lhs = p.dual().eval(v)
        rhs = np.prod(v) * p.eval(1.0 / v)
        assert lhs == pytest.approx(rhs, rel=1e-10, abs=1e-10)


@given(polys(max_n=4), st.permutations(range(4)))
@settings(max_examples=50, deadline=None)
def test_permutation_group_action(p, perm):
    tau = tuple(perm[: p.n])
    if sorted(tau) != list(range(p.n)):
        tau = tuple(np.argsort(np.argsort(tau)))
    sigma = tuple(reversed(range(p.n)))
    comp = tuple(tau[sigma[i]] for i in range(p.n))
    lhs = p.apply_permutation(comp)
    rhs = p.apply_permutation(sigma).apply_permutation(tau)
    assert lhs.terms.keys() == rhs.terms.keys()
    for m in lhs.terms:
        assert lhs.terms[m] == pytest.approx(rhs.terms[m], rel=1e-12)


class TestSpanningTree:
    def test_path_graph(self):
        g = Graph(3, [(1, 2), (2, 3)])
        p = spanning_tree_poly(g)
        assert p.terms == {0b11: 1.0}

    def test_k4_count(self):
        g = Graph.complete(4)
        p = spanning_tree_poly(g)
        assert len(p.terms) == 16
        assert all(bin(m).count("1") == 3 for m in p.terms)

    def test_k4_brute_force(self):
        edges = [(1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4)]
        g = Graph(4, edges)
        p = spanning_tree_poly(g)
        ref = brute_spanning_trees(4, edges)
        got = {frozenset(i for i in range(6) if m >> i & 1) for m in p.terms}
        assert got == ref

    def test_matrix_tree_cross_check(self):
        for g in [Graph.complete(4), Graph.complete(5),
                  Graph(4, [(1, 2), (2, 3), (3, 4), (4, 1)])]:
            p = spanning_tree_poly(g)
            count = p.eval(np.ones(len(g.edges)))
            assert count == pytest.approx(g.spanning_tree_count_via_laplacian())


class TestUniPoly:
    def test_derivative(self):
        q = UniPoly([1.0, -4.0, 3.0])  # 3t^2 - 4t + 1
        assert q.derivative().coeffs == pytest.approx([-4.0, 6.0])

    def test_newton_interp_roundtrip(self):
        nodes = chebyshev_nodes(4)
        vals = [n ** 3 - 2 * n for n in nodes]
        coeffs = newton_interp(nodes, vals)
        assert list(coeffs) == pytest.approx([0.0, -2.0, 0.0, 1.0], abs=1e-12)


class TestExactPoly:
    VARS = ("a", "b")

    def test_difference_of_squares(self):
        a = ExactPoly.variable(self.VARS, "a")
        b = ExactPoly.variable(self.VARS, "b")
        assert (a + b) * (a - b) == a * a - b * b

    def test_diff(self):
        a = ExactPoly.variable(self.VARS, "a")
        b = ExactPoly.variable(self.VARS, "b")
        assert (a * a * b).diff("a") == 2 * (a * b)

    def test_additive_inverse(self):
        a = ExactPoly.variable(self.VARS, "a")
        f = a * a + 3 * a
        assert (f + (-1) * f).is_zero()

    def test_float_matches_exact(self, rng):
        a = ExactPoly.variable(self.VARS, "a")
        b = ExactPoly.variable(self.VARS, "b")
        f = 2 * (a * a * b) - b * b + 5 * a
        ev = f.float_evaluator()
        for _ in range(100):
            num = rng.integers(-8, 9, size=2)
            den = rng.integers(1, 9, size=2)
            pt = {v: Fraction(int(num[i]), int(den[i]))
                  for i, v in enumerate(self.VARS)}
            exact = f.eval_exact(pt)
            approx = ev(np.array([[float(pt[v]) for v in self.VARS]]))[0]
            assert approx == pytest.approx(float(exact), rel=1e-12, abs=1e-12)

    def test_json_roundtrip(self):
        a = ExactPoly.variable(self.VARS, "a")
        f = Fraction(1, 3) * (a * a) - 2 * a
        g = ExactPoly.from_json_dict(f.to_json_dict())
        assert f == g


class TestValidation:
    def test_too_many_vars(self):
        with pytest.raises(ValueError):
            MultiAffinePoly(17, {0: 1.0})

    def test_mask_out_of_range(self):
        with pytest.raises(ValueError):
            MultiAffinePoly(2, {0b100: 1.0})

    def test_json_roundtrip(self):
        p = MultiAffinePoly.elementary(3, 2)
        q = MultiAffinePoly.from_json_dict(p.to_json_dict())
        assert q.terms == p.terms

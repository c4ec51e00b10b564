"""Fischer-Hadamard, segment monotonicity, diagonal corollary,
Koteljanskii, nonnegative lattice condition, and the sample generators."""

import numpy as np
import pytest

from minorlift.cones import sample_in_cone
from minorlift.inequalities import (
    GENERATOR_FAMILIES,
    ConePreconditionError,
    check_diag_corollary,
    check_fischer_hadamard,
    check_koteljanskii,
    check_monotone_segment,
    check_nlc_battery,
    check_projection_lemma,
    random_family_poly,
    random_partition,
    shifted_coefficients,
)
from minorlift.polys import Graph, MultiAffinePoly, spanning_tree_poly
from minorlift.symmetric import symmetric_matrix


class TestFischerHadamard:
    def test_det_2x2(self):
        p = MultiAffinePoly.elementary(2, 2)
        A = symmetric_matrix([[2.0, 1.0], [1.0, 2.0]])
        rec = check_fischer_hadamard(p, A, [[1], [2]])
        assert rec.verdict
        assert rec.lhs == pytest.approx(4.0)
        assert rec.rhs == pytest.approx(3.0)

    def test_diagonal_zero_slack(self):
        p = MultiAffinePoly.elementary(3, 2)
        A = np.diag([1.0, 2.0, 3.0])
        rec = check_fischer_hadamard(p, A, [[1, 2], [3]])
        assert rec.verdict
        assert rec.slack == pytest.approx(0.0, abs=1e-12)

    def test_precondition_enforced(self):
        p = MultiAffinePoly.elementary(2, 2)
        A = np.diag([-1.0, 1.0])
        with pytest.raises(ConePreconditionError):
            check_fischer_hadamard(p, A, [[1], [2]])

    def test_singletons_match_diag_corollary(self):
        p = MultiAffinePoly.elementary(3, 2)
        A = sample_in_cone(p, "matrix", seed=8)
        fh = check_fischer_hadamard(p, A, [[1], [2], [3]])
        dc = check_diag_corollary(p, A)
        assert fh.lhs == pytest.approx(dc.lhs)
        assert fh.rhs == pytest.approx(dc.rhs)
        assert fh.verdict and dc.verdict

    def test_tree_polynomial_sampled(self):
        p = spanning_tree_poly(Graph.complete(4))
        for seed in range(5):
            A = sample_in_cone(p, "matrix", seed=seed)
            blocks = random_partition(p.n, np.random.default_rng(seed))
            assert check_fischer_hadamard(p, A, blocks).verdict


class TestProjectionLemma:
    def test_projection_stays_in_cone(self):
        p = MultiAffinePoly.elementary(4, 2)
        A = sample_in_cone(p, "matrix", seed=2)
        rep = check_projection_lemma(p, A, [[1, 2], [3, 4]])
        assert rep.ok()


class TestMonotone:
    def test_det_case_increasing(self):
        # g(t) = det of [[2, 1-t], [1-t, 2]] = 4 - (1-t)^2 on [0,1]
        p = MultiAffinePoly.elementary(2, 2)
        A = symmetric_matrix([[2.0, 1.0], [1.0, 2.0]])
        rec = check_monotone_segment(p, A, [[1], [2]])
        assert rec.verdict

    def test_diagonal_constant(self):
        p = MultiAffinePoly.elementary(3, 2)
        A = np.diag([1.0, 2.0, 3.0])
        rec = check_monotone_segment(p, A, [[1], [2, 3]])
        assert rec.verdict
        assert rec.slack == pytest.approx(0.0, abs=1e-12)

    def test_endpoints_match_fischer(self):
        p = MultiAffinePoly.elementary(3, 2)
        A = sample_in_cone(p, "matrix", seed=13)
        blocks = [[1], [2, 3]]
        mono = check_monotone_segment(p, A, blocks)
        fh = check_fischer_hadamard(p, A, blocks)
        assert mono.lhs == pytest.approx(fh.lhs, rel=1e-10)
        assert mono.rhs == pytest.approx(fh.rhs, rel=1e-10)


class TestKoteljanskii:
    def test_equal_subsets_zero_slack(self):
        p = MultiAffinePoly.elementary(3, 2)
        A = sample_in_cone(p, "matrix", seed=4)
        rec = check_koteljanskii(p, A, 0b011, 0b011)
        assert rec.verdict
        assert rec.slack == pytest.approx(0.0, abs=1e-12)

    def test_det_case_is_classical(self):
        # for p = e_n this is the classical Koteljanskii inequality
        p = MultiAffinePoly.elementary(3, 3)
        A = sample_in_cone(p, "matrix", seed=5)
        rec = check_koteljanskii(p, A, 0b011, 0b110)
        assert rec.verdict

    def test_subset_too_small(self):
        p = MultiAffinePoly.elementary(4, 2)
        A = sample_in_cone(p, "matrix", seed=6)
        with pytest.raises(ValueError):
            check_koteljanskii(p, A, 0b0001, 0b1000)


class TestNlc:
    def test_2x2_table(self):
        p = MultiAffinePoly.elementary(2, 2)
        A = symmetric_matrix([[2.0, 1.0], [1.0, 2.0]])
        table = shifted_coefficients(p, A)
        # {}, {1}, {2}, {1,2} -> det=3, A22=2... restriction P|_{i} = X_ii
        assert table[0b00] == pytest.approx(1.0)
        assert table[0b01] == pytest.approx(2.0)
        assert table[0b10] == pytest.approx(2.0)
        assert table[0b11] == pytest.approx(3.0)

    def test_battery_passes_2x2(self):
        p = MultiAffinePoly.elementary(2, 2)
        A = symmetric_matrix([[2.0, 1.0], [1.0, 2.0]])
        bad, coeff_ok, min_coeff, worst = check_nlc_battery(p, A)
        assert bad == []
        assert coeff_ok
        assert min_coeff >= 0.0

    def test_diagonal_psd_classical(self):
        p = MultiAffinePoly.elementary(4, 2)
        A = np.diag([1.0, 2.0, 0.5, 3.0])
        bad, coeff_ok, _, _ = check_nlc_battery(p, A)
        assert bad == [] and coeff_ok

    def test_n1_vacuous(self):
        p = MultiAffinePoly.elementary(1, 1)
        A = np.array([[2.0]])
        bad, coeff_ok, _, _ = check_nlc_battery(p, A)
        assert bad == [] and coeff_ok

    def test_coefficients_match_finite_difference(self):
        # c[T] should be the x^{T^c} coefficient of P(A + Diag(x))
        from minorlift.lift import minor_lift_eval
        p = MultiAffinePoly.elementary(3, 2)
        A = sample_in_cone(p, "matrix", seed=9)
        table = shifted_coefficients(p, A)
        # full-subset entry: P itself at A
        assert table[0b111] == pytest.approx(minor_lift_eval(p, A))
        # single-drop entry vs central difference in x_3
        h = 1e-5
        e3 = np.diag([0.0, 0.0, h])
        fd = (minor_lift_eval(p, A + e3) - minor_lift_eval(p, A - e3)) / (2 * h)
        assert table[0b011] == pytest.approx(fd, abs=1e-6)


class TestGenerators:
    def test_partition_is_valid(self):
        rng = np.random.default_rng(0)
        for n in range(1, 8):
            blocks = random_partition(n, rng)
            flat = sorted(i for b in blocks for i in b)
            assert flat == list(range(1, n + 1))

    def test_families_draw_stable_polys(self):
        from minorlift.cones import is_stable_probabilistic
        rng = np.random.default_rng(3)
        for family in GENERATOR_FAMILIES:
            for _ in range(3):
                p = random_family_poly(family, rng)
                assert not p.is_zero()
                assert p.is_homogeneous()
                res = is_stable_probabilistic(p, trials=20,
                                              seed=int(rng.integers(2**31)))
                assert res.stable, (family, res.reason)

    def test_unknown_family(self):
        with pytest.raises(ValueError):
            random_family_poly("nope", np.random.default_rng(0))

from dataclasses import replace
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from lieosc import PoleError, SurdMatrix, build_T, check_rtt, check_ybe, invariant_form, monodromy, r_matrix
from lieosc.rtt import _rtt_residual, check_monodromy_rtt, kernel_algebra, pole_free, sample_parameters
from lieosc.tensors import metric_projector, permutation

from builders import comp, loperator, rep, so_label

YBE_CASES = [("C", 2), ("C", 3)] + [so_label(N) for N in (5, 6, 7, 8)]
q = Fraction


def ybe_residual_for(R_of, D):
    """Residual of the Yang-Baxter equation for an arbitrary ``R_of(u)``."""
    Id = SurdMatrix.identity(D)
    P23 = Id.kron(permutation(D))

    def run(u, v):
        r12 = R_of(u - v).kron(Id)
        r13 = P23 @ R_of(u).kron(Id) @ P23
        r23 = Id.kron(R_of(v))
        return r12 @ r13 @ r23 - r23 @ r13 @ r12

    return run


class TestRMatrix:
    def test_c2_coefficient(self):
        R = r_matrix(rep("C", 2), 1, 1)
        assert R.k_coeff == q(1, 4)
        P, K = R.P, R.K
        assert R.matrix == SurdMatrix.identity(16) + P - K * q(1, 4)

    def test_so5_coefficient(self):
        assert r_matrix(rep("B", 2), 1, 2).k_coeff == q(1, 2)

    def test_su_has_no_kernel(self):
        R = r_matrix(rep("A", 2), q(1, 3), 2)
        assert R.K is None and R.matrix == SurdMatrix.identity(9, q(1, 3)) + permutation(3) * 2

    @pytest.mark.parametrize("family, n, pole", [("C", 2, -3), ("D", 3, -2), ("B", 2, q(-3, 2))])
    def test_pole(self, family, n, pole):
        assert not pole_free(rep(family, n), pole, 1)
        with pytest.raises(PoleError):
            r_matrix(rep(family, n), pole, 1)

    def test_kernel_is_rank_one_metric_outer_product(self):
        G = rep("C", 2).metric
        K = metric_projector(G)
        assert K == G.vec().T @ G.vec()
        assert K.entry(3, 12) == G.entry(0, 3) * G.entry(3, 0)

    @pytest.mark.parametrize("family, n", YBE_CASES)
    def test_kernel_algebra(self, family, n):
        report = kernel_algebra(rep(family, n))
        assert report.passed, report.failures()

    def test_kernel_square_is_positive(self):
        D = 4
        K = metric_projector(rep("C", 2).metric)
        assert K @ K == K * D
        assert K @ K != K * (-D)

    def test_invariant_form_c2(self):
        R = r_matrix(rep("C", 2), 1, 1)
        assert invariant_form(R, rep("C", 2), comp("C", 2)) == (q(19, 16), q(5, 8), q(3, 8))

    @pytest.mark.parametrize("family, n", YBE_CASES)
    def test_invariant_form_decomposes(self, family, n):
        R = r_matrix(rep(family, n), q(2, 3), q(-5, 4))
        a, b, c = invariant_form(R, rep(family, n), comp(family, n))
        assert b - c == R.k_coeff and b + c == R.eta


class TestYangBaxter:
    @pytest.mark.parametrize("family, n", YBE_CASES)
    def test_seeded(self, family, n):
        r = rep(family, n)
        for u, v, eta in sample_parameters(r, 2, seed=7):
            report = check_ybe(r, u, v, eta)
            assert report.passed and report.max_residual.is_zero()

    @settings(max_examples=10, deadline=None)
    @given(
        st.fractions(min_value=-4, max_value=4, max_denominator=3),
        st.fractions(min_value=-4, max_value=4, max_denominator=3),
        st.fractions(min_value=-3, max_value=3, max_denominator=2).filter(bool),
    )
    def test_c2_random(self, u, v, eta):
        r = rep("C", 2)
        if all(pole_free(r, w, eta) for w in (u - v, u, v)):
            assert check_ybe(r, u, v, eta).passed

    def test_wrong_kernel_coefficient_breaks_ybe(self):
        r = rep("C", 2)
        P, K = permutation(4), metric_projector(r.metric)
        eta = q(1)

        def bad(u):
            return SurdMatrix.identity(16) * u + P * eta - K * (u * eta / (u + 2 * eta))

        assert not ybe_residual_for(bad, 4)(q(1), q(1, 3)).is_zero()

    def test_pole_rejected(self):
        with pytest.raises(PoleError):
            check_ybe(rep("C", 2), 0, 3, 1)


class TestRTT:
    def test_trivial_equal_parameters(self):
        assert check_rtt(rep("D", 3), loperator("D", 3), 1, 1, 1).passed

    @pytest.mark.parametrize("case", [("D", 3), ("B", 2)])
    def test_spinor(self, case):
        report = check_rtt(rep(*case[:2]), loperator(*case), 3, 2, 1)
        assert report.passed
        assert report.meta["interior_columns"] == rep(*case[:2]).dimV ** 2 * loperator(*case).dimH

    def test_metaplectic_interior(self):
        report = check_rtt(rep("C", 2), loperator("C", 2, 8), q(1, 2), q(-3, 4), 1)
        assert report.passed and report.meta["interior_columns"] == 16 * 15

    @pytest.mark.parametrize("rank", [1, 2])
    def test_su(self, rank):
        report = check_rtt(rep("A", rank), loperator("A", rank, 4), 2, q(1, 3), q(3, 2))
        assert report.passed and report.meta["r_matrix"] == "u + eta P"

    def test_sign_flip_breaks_rtt(self):
        L = loperator("D", 3)
        Tu = build_T(L, 3, 1)
        Tv = build_T(L, 2, 1)
        flipped = replace(Tu, matrix=build_T(L, 3, -1).matrix)
        good, _ = _rtt_residual(rep("D", 3), Tu, Tv)
        bad, _ = _rtt_residual(rep("D", 3), flipped, replace(Tv, matrix=build_T(L, 2, -1).matrix))
        assert good.is_zero() and not bad.is_zero()

    def test_two_site_monodromy(self):
        L = loperator("D", 3)
        T = monodromy([L, L], 1, 1)
        assert T.dimH == 64 and len(T.sites) == 2
        report = check_monodromy_rtt(rep("D", 3), [L, L], q(5, 2), q(-1, 3), q(2, 3))
        assert report.passed and report.meta["interior_columns"] == 36 * 64

    def test_monodromy_single_site_is_t(self):
        L = loperator("B", 2)
        assert monodromy([L], 2, 3).matrix == build_T(L, 2, 3).matrix


class TestSampling:
    def test_deterministic(self):
        r = rep("C", 2)
        assert sample_parameters(r, 5, seed=42) == sample_parameters(r, 5, seed=42)

    def test_avoids_poles_and_trivial(self):
        r = rep("C", 3)
        for u, v, eta in sample_parameters(r, 40, seed=1):
            assert eta != 0 and u != v
            assert all(pole_free(r, w, eta) for w in (u - v, u, v))

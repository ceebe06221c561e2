"""Acceptance criteria 1 to 12, each with its runtime limit.

Everything is rebuilt from scratch inside each test so the timings are not
flattered by caches shared with the unit tests.
"""

import time
from fractions import Fraction

import pytest

from lieosc import (
    SurdMatrix,
    build_L,
    build_rep,
    casimir_checks,
    check_cartan_weyl,
    check_commutators,
    check_rtt,
    check_trace_transpose,
    check_ybe,
    complete_basis,
    eigen_structure,
    metaplectic_rep,
    operator_product_laws,
    quadratic_residual,
    quadratic_spec,
    spinor_rep_b,
    spinor_rep_d,
    structure_tensors,
    su_oscillator_rep,
)
from lieosc.fock import cartan_operators, ladder_operators, majorana_operator
from lieosc.loper import _decomposition, spectrum_blocks
from lieosc.rtt import check_monodromy_rtt, sample_parameters
from lieosc.scalar import Surd
from lieosc.tensors import (
    check_v_tensor,
    derived_reps,
    verify_completeness,
    verify_derived_reps,
    verify_identities,
)

SEED = 42
CW_REPS = [("C", 2), ("C", 3), ("C", 4), ("B", 2), ("B", 3), ("D", 3), ("D", 4)]
SO = {5: ("B", 2), 6: ("D", 3), 7: ("B", 3), 8: ("D", 4)}


class Budget:
    def __init__(self, seconds):
        self.seconds = seconds
        self.start = time.perf_counter()
        self.failures = []

    def expect(self, ok, what):
        if not ok:
            self.failures.append(what)

    def close(self):
        elapsed = time.perf_counter() - self.start
        self.expect(elapsed < self.seconds, f"runtime {elapsed:.1f} s exceeds {self.seconds} s")
        assert not self.failures, "; ".join(self.failures)


def spinor(family, n, rep):
    return spinor_rep_d(n, rep) if family == "D" else spinor_rep_b(n, rep)


def scalar_sum_squares(mats):
    return sum((m @ m for m in mats[1:]), mats[0] @ mats[0])


def test_criterion_01_cartan_weyl():
    b = Budget(10)
    for fam, n in CW_REPS:
        rpt = check_cartan_weyl(build_rep(fam, n))
        b.expect(rpt.passed, f"{fam}{n}: {rpt.failures()[:2]}")
    lad = build_rep("C", 2).ladders
    e1, e2, e3 = lad["1"][0], lad["2"][0], lad["12"][0]
    b.expect(e1.commutator(e2) == e3 * Surd.sqrt(2), "[E_1, E_2] != sqrt2 E_3")
    b.close()


def test_criterion_02_trace_transpose():
    b = Budget(5)
    for fam, n in CW_REPS:
        rpt = check_trace_transpose(build_rep(fam, n))
        b.expect(rpt.passed, f"{fam}{n}: {rpt.failures()}")
    b.close()


def test_criterion_03_completeness():
    b = Budget(30)
    for fam, n in [("C", 2), ("C", 3), *SO.values()]:
        rep = build_rep(fam, n)
        rpt = verify_completeness(rep, complete_basis(rep))
        b.expect(rpt.passed, f"{fam}{n}: {rpt.failures()}")
    b.close()


def test_criterion_04_identity_suite():
    b = Budget(60)
    cc = {}
    for fam, n in [("C", 2), ("C", 3), *SO.values()]:
        rep = build_rep(fam, n)
        comp = complete_basis(rep)
        st = structure_tensors(rep, comp)
        rpt = verify_identities(st, rep, comp)
        b.expect(rpt.passed, f"{fam}{n}: {[c['relation'] for c in rpt.failures()]}")
        cm = st.c.matricize((0, 1), (2,))
        cc[(fam, n)] = (cm.T @ cm, st.n_x)
    m, g = cc[("C", 2)]
    b.expect(m == SurdMatrix.identity(g, 12), "c_ijk c_ijl != 12 delta for c_2")
    m, g = cc[SO[7]]
    b.expect(m == SurdMatrix.identity(g, 10), "c_ijk c_ijl != 10 delta for so(7)")
    b.close()


def test_criterion_05_casimir_eigenvalues():
    b = Budget(30)
    for n in (2, 3):
        rep = build_rep("C", n)
        st = structure_tensors(rep, complete_basis(rep))
        F, R = derived_reps(st)
        b.expect(scalar_sum_squares(list(rep.basisX)) == SurdMatrix.identity(2 * n, 2 * n + 1), f"C{n}: V")
        b.expect(scalar_sum_squares(R) == SurdMatrix.identity(R[0].shape[0], 4 * n), f"C{n}: h-rep")
        b.expect(scalar_sum_squares(F) == SurdMatrix.identity(F[0].shape[0], 4 * (n + 1)), f"C{n}: adjoint")
        b.expect(verify_derived_reps(st).passed, f"C{n}: derived reps")
    for N, (fam, n) in SO.items():
        rep = build_rep(fam, n)
        st = structure_tensors(rep, complete_basis(rep))
        F, S = derived_reps(st)
        b.expect(scalar_sum_squares(F) == SurdMatrix.identity(F[0].shape[0], 2 * (N - 2)), f"so({N}): F.F")
        b.expect(scalar_sum_squares(S) == SurdMatrix.identity(S[0].shape[0], 2 * N), f"so({N}): S.S")
    b.close()


def test_criterion_06_v_tensor():
    b = Budget(60)
    for fam, n in [("C", 2), ("D", 3)]:
        rep = build_rep(fam, n)
        rpt = check_v_tensor(structure_tensors(rep, complete_basis(rep)), rep)
        b.expect(rpt.passed, f"{fam}{n}: {rpt.failures()}")
    b.close()


def _display_c2(op, b):
    """The c_2 generators exactly as displayed, with the labels as printed."""
    sp = op.space
    cols = op.interior(2)
    ad, a = [sp.creator(0), sp.creator(1)], [sp.annihilator(0), sp.annihilator(1)]
    r = Surd.sqrt(Fraction(1, 2))
    E = {lab: pair for lab, pair in ladder_operators(op).items()}
    H = cartan_operators(op)

    def same(x, y):
        return x.select(cols=cols) == y.select(cols=cols)

    b.expect(same(H[0], (ad[0] @ a[0] + a[0] @ ad[0]) * Fraction(1, 2)), "c_2 display H_1")
    b.expect(same(H[1], (ad[1] @ a[1] + a[1] @ ad[1]) * Fraction(1, 2)), "c_2 display H_2")
    b.expect(same(E["1"][0], ad[0] @ a[1]), "c_2 display E_1")
    b.expect(same(E["12"][0], -(ad[0] @ ad[1])), "c_2 display E_3")
    as_printed = same(E["2"][0], ad[0] @ ad[0] * -r) and same(E["112"][0], ad[1] @ ad[1] * -r)
    swapped = same(E["2"][0], ad[1] @ ad[1] * -r) and same(E["112"][0], ad[0] @ ad[0] * -r)
    b.expect(
        as_printed,
        "c_2 display E_2 = -(a1+)^2/sqrt2 and E_4 = -(a2+)^2/sqrt2 as printed"
        + (" (holds with E_2 and E_4 exchanged, as the weights of r_2 = (0,2) require)" if swapped else ""),
    )
    b.expect(E["1"][1] == E["1"][0].H, "c_2 display E_-1 hermiticity")
    b.expect(all(E[k][1] == -E[k][0].H for k in ("2", "12", "112")), "c_2 display E_-alpha = -E_alpha^+")


def test_criterion_07_oscillator_reps():
    b = Budget(60)
    for fam, n in [("D", 3), ("D", 4), ("B", 2), ("B", 3)]:
        rep = build_rep(fam, n)
        op = spinor(fam, n, rep)
        rpt = check_commutators(op, structure_tensors(rep, complete_basis(rep)).c)
        b.expect(rpt.passed and rpt.meta["interior_columns"] == op.dim, f"{fam}{n} commutators")
    for n, cutoff in [(2, 8), (3, 6)]:
        rep = build_rep("C", n)
        op = metaplectic_rep(n, cutoff, rep)
        rpt = check_commutators(op, structure_tensors(rep, complete_basis(rep)).c)
        b.expect(rpt.passed, f"C{n} commutators on the interior")
        if n == 2:
            _display_c2(op, b)
    # d_3 display
    op = spinor_rep_d(3, build_rep("D", 3))
    sp = op.space
    c, p = [sp.creator(m) for m in range(3)], [sp.annihilator(m) for m in range(3)]
    E = ladder_operators(op)
    b.expect(cartan_operators(op)[0] == sp.number(0) - sp.identity() * Fraction(1, 2), "d_3 display H_1")
    b.expect(E["1"][0] == c[0] @ p[1], "d_3 display E_1")
    b.expect(E["3"][0] == c[1] @ c[2], "d_3 display E_3")
    b.expect(all(em == ep.H for ep, em in E.values()), "d_3 display hermiticity")
    # b_3 display, with the flagged entry taken as E_12233 = c1 c2
    op = spinor_rep_b(3, build_rep("B", 3))
    sp = op.space
    c, mj = [sp.creator(m) for m in range(3)], majorana_operator(sp)
    E = {k: v[0] for k, v in ladder_operators(op).items()}
    for label, expect in [("3", c[2] @ mj), ("23", c[1] @ mj), ("123", c[0] @ mj), ("1233", c[0] @ c[2]), ("12233", c[0] @ c[1])]:
        b.expect(E[label] == expect, f"b_3 display E_{label}")
    b.close()


def test_criterion_08_quadratic_relations():
    b = Budget(60)
    for n, cutoff in [(2, 8), (3, 6)]:
        rep = build_rep("C", n)
        res, _ = quadratic_residual(build_L(rep, metaplectic_rep(n, cutoff, rep)), quadratic_spec("C", n))
        b.expect(res.is_zero(), f"C{n} quadratic relation")
        if n == 2:
            spec = quadratic_spec("C", 2)
            b.expect((spec.p, spec.q) == (3, Fraction(5, 4)), "c_2 quadratic is L^2 + 3L + 5/4")
    for N, (fam, n) in SO.items():
        rep = build_rep(fam, n)
        L = build_L(rep, spinor(fam, n, rep))
        res, rpt = quadratic_residual(L, quadratic_spec(fam, n))
        b.expect(res.is_zero() and rpt.meta["interior_columns"] == rpt.meta["dim"], f"so({N}) quadratic relation")
    for rank in (1, 2):
        L = build_L(build_rep("A", rank), su_oscillator_rep(rank + 1, 6))
        for lam in range(7):
            res, _ = quadratic_residual(L, quadratic_spec("A", rank, lam))
            b.expect(res.is_zero(), f"su({rank + 1}) level {lam}")
    b.close()


def test_criterion_09_casimir_and_operator_laws():
    b = Budget(60)
    rep = build_rep("C", 2)
    st = structure_tensors(rep, complete_basis(rep))
    op = metaplectic_rep(2, 8, rep)
    cas = casimir_checks(op, st)
    status = {c["relation"]: c for c in cas.checks}
    b.expect(status["C2(M2) = -5/2"]["pass"], "C2(M_2) = -5/2")
    laws = operator_product_laws(op, st)
    b.expect(laws.passed, f"operator-product laws: {laws.failures()}")
    su = su_oscillator_rep(3, 6)
    laws = operator_product_laws(su)
    d_levels = {c["relation"].rsplit("level ", 1)[1] for c in laws.checks if c["relation"].startswith("d_ijk")}
    b.expect(laws.passed and d_levels == {f"{k}]" for k in range(7)}, "su(3) d-law at every level")
    b.expect(casimir_checks(su, None).passed, "su(3) C3 per level")
    quartic = status["C4 = 2/3 (n^2-1)(n+2)(2n+1) = 40"]
    b.expect(
        quartic["pass"],
        f"quartic contraction is {cas.meta['C4_H']}, not 40 (max residual {quartic['max_residual']})",
    )
    b.close()


def test_criterion_10_yang_baxter():
    b = Budget(120)
    for fam, n in [("C", 2), ("C", 3), *SO.values()]:
        rep = build_rep(fam, n)
        for u, v, eta in sample_parameters(rep, 5, SEED, ybe=True):
            rpt = check_ybe(rep, u, v, eta)
            b.expect(rpt.passed and rpt.max_residual.is_zero(), f"{fam}{n} at {(u, v, eta)}")
    b.close()


def test_criterion_11_rtt():
    b = Budget(300)
    for fam, n in [("D", 3), ("D", 4), ("B", 2), ("B", 3)]:
        rep = build_rep(fam, n)
        L = build_L(rep, spinor(fam, n, rep))
        for u, v, eta in sample_parameters(rep, 3, SEED, ybe=False):
            b.expect(check_rtt(rep, L, u, v, eta).passed, f"{fam}{n} at {(u, v, eta)}")
    rep = build_rep("C", 2)
    L = build_L(rep, metaplectic_rep(2, 8, rep))
    for u, v, eta in sample_parameters(rep, 3, SEED, ybe=False):
        rpt = check_rtt(rep, L, u, v, eta)
        b.expect(rpt.passed and rpt.meta["interior_depth"] == 4, f"C2 at {(u, v, eta)}")
    rep = build_rep("D", 3)
    L = build_L(rep, spinor_rep_d(3, rep))
    u, v, eta = sample_parameters(rep, 1, SEED, ybe=False)[0]
    b.expect(check_monodromy_rtt(rep, [L, L], u, v, eta).passed, "2-site monodromy for d_3")
    b.close()


def test_criterion_12_spectrum():
    b = Budget(30)
    cases = [("C", 2, 8), ("C", 3, 6)] + [(fam, n, None) for fam, n in SO.values()]
    for fam, n, cutoff in cases:
        rep = build_rep(fam, n)
        op = metaplectic_rep(n, cutoff, rep) if fam == "C" else spinor(fam, n, rep)
        L = build_L(rep, op)
        spec = quadratic_spec(fam, n)
        if fam == "C":
            want = (Fraction(-1, 2), Fraction(-(2 * n + 1), 2))
        else:
            N = rep.dimV
            want = (Fraction(1, 2), Fraction(-(N - 1), 2))
        blocks = spectrum_blocks(L)
        b.expect(set(blocks) == {"even", "odd"}, f"{fam}{n} parity blocks")
        for name, block in blocks.items():
            es = eigen_structure(L, spec, block, name)
            b.expect((es.lam_plus, es.lam_minus) == want, f"{fam}{n} {name} eigenvalues")
            b.expect(es.m_plus > 0 and es.m_minus > 0 and es.m_plus + es.m_minus == len(block), f"{fam}{n} {name} multiplicities")
            b.expect(es.numeric_check, f"{fam}{n} {name} rank cross-check")
        b.expect(_decomposition(L).passed, f"{fam}{n} two-component decomposition")
    b.close()


if __name__ == "__main__":
    raise SystemExit(pytest.main([__file__, "-v"]))

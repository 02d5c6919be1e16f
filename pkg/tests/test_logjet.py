import math

import numpy as np
import pytest

from hodge_psh.errors import NoLeadingTerm, SingularEvaluation
from hodge_psh.logjet import LogPoly, WirtingerJet2, fd_laplacian, jet_eval, logpoly_leading_term, monomial_sign
from oracles import fd_mixed

T, TB, L = LogPoly.t(), LogPoly.tbar(), LogPoly.L()


def test_leading_term_examples():
    assert tuple(logpoly_leading_term(L * L + 3 * T * L ** 3)) == ((0, 0, 2), 1)
    p = T * TB * L * (L * (1 / (4 * math.pi ** 2))) - T * TB * L * (1 / (2 * math.pi))
    mono, coeff = logpoly_leading_term(p)
    assert mono == (1, 1, 2) and coeff == pytest.approx(1 / (4 * math.pi ** 2))
    lt = logpoly_leading_term(T + TB)
    assert lt.phase_dependent and {k for k, _ in lt.tied} == {(1, 0, 0), (0, 1, 0)}


def test_leading_term_of_zero():
    with pytest.raises(NoLeadingTerm):
        logpoly_leading_term(LogPoly())


def test_leading_term_dominates_numerically():
    p = 2 * L * L - 5 * T * TB * L ** 3 + 7 * L
    mono, coeff = logpoly_leading_term(p)
    t = 1e-30
    a, b, c = mono
    lead = coeff * math.log(t * t) ** c
    assert abs(p(t) - lead) / abs(lead) < 0.05
    assert monomial_sign(mono, coeff) == 1


def test_derivative_rule_matches_finite_difference():
    p = 3 * T * TB * L ** 2 - (2 + 1j) * T * T * L + 0.5 * TB
    t, h = 0.3 + 0.2j, 1e-6
    # d/dt = (d/dx - i d/dy) / 2
    dx = (p(t + h) - p(t - h)) / (2 * h)
    dy = (p(t + 1j * h) - p(t - 1j * h)) / (2 * h)
    assert p.dt()(t) == pytest.approx((dx - 1j * dy) / 2, rel=1e-7)
    assert p.dtb()(t) == pytest.approx((dx + 1j * dy) / 2, rel=1e-7)


def test_evaluation_and_conjugation():
    p = (1 + 2j) * T * L + TB * TB
    t = 0.1 - 0.05j
    Lv = math.log(abs(t) ** 2)
    assert p(t) == pytest.approx((1 + 2j) * t * Lv + t.conjugate() ** 2, rel=1e-12)
    assert p.conj()(t) == pytest.approx(np.conj(p(t)), rel=1e-12)


def test_jet_examples():
    s = 0.3 + 0.4j
    S = WirtingerJet2.var(s)
    assert (S * S.conj()).fssb == pytest.approx(1)
    assert (S * S.conj()).log().fssb == pytest.approx(0, abs=1e-15)
    s = 0.5
    J = jet_eval(lambda z: -(1 - z * z.conj()).log(), s)
    assert J.fssb == pytest.approx(16 / 9, rel=1e-12)
    fd = fd_mixed(lambda z: -math.log(1 - abs(z) ** 2), s, 1e-3)
    assert J.fssb == pytest.approx(fd, rel=1e-6)
    assert fd_laplacian(lambda z: -math.log(1 - abs(z) ** 2), s) == pytest.approx(16 / 9, rel=1e-6)


def test_holomorphic_lift_has_no_antiholomorphic_part():
    J = WirtingerJet2.holomorphic(np.array([1 + 1j]), np.array([2.0]))
    assert J.fsb == 0 and J.fssb == 0


def test_singular_evaluation():
    z = WirtingerJet2.const(0.0)
    with pytest.raises(SingularEvaluation) as exc:
        z.reciprocal()
    assert exc.value.magnitude == 0.0
    with pytest.raises(SingularEvaluation):
        z.log()
    with pytest.raises(SingularEvaluation):
        L(0)

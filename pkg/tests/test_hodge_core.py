import itertools

import numpy as np
import pytest

from hodge_psh.errors import DimensionError, InvalidHodgeNumber, InvalidKind
from hodge_psh.exact import ONE
from hodge_psh.hodge_core import KINDS, MIN_H, build_model, canonical_kind, q_pair, wedge, wedge_space
from oracles import induced_q

HS = {k: sorted({MIN_H[k], MIN_H[k] + 1, 6, 9}) for k in KINDS}
CASES = [(k, h) for k in KINDS for h in HS[k]]


def test_minimal_h6_tables():
    m = build_model("Minimal", 6)
    assert m.dimV == 10
    assert m.rIndices == (7, 8, 9, 10)
    assert m.Q.get(0, 5) == ONE and m.Q.get(6, 6) == ONE
    e = np.eye(10)
    assert np.allclose(m.Nf @ e[1], 1j * e[3])
    assert np.allclose(m.Nf @ e[2], -1j * e[4])
    assert np.allclose(m.Nf @ e[0], 0)


def test_minimal_h2_has_empty_r_range():
    m = build_model("Minimal", 2)
    assert m.rIndices == ()
    assert m.dimV == 6


def test_third_h6_conjugation_and_n_squared():
    m = build_model("Third", 6)
    e = np.eye(m.dimV)
    assert np.allclose(m.Cf @ e[0], e[2])
    assert np.allclose(m.Cf @ e[4], e[6])
    # exact power against the float matrix square: both vanish (weights 1 and 3 only)
    assert np.allclose(m.N.power(2).to_numpy(), m.Nf @ m.Nf)
    assert m.N.power(2).is_zero()


def test_errors():
    with pytest.raises(InvalidHodgeNumber):
        build_model("Minimal", 1)
    with pytest.raises(InvalidHodgeNumber):
        build_model("Third", 3)
    with pytest.raises(InvalidKind):
        build_model("Fifth", 3)
    assert canonical_kind("hodge-tate") == "HodgeTate"


@pytest.mark.parametrize("kind,h", CASES)
def test_model_invariants(kind, h):
    m = build_model(kind, h)
    Q, C, N = m.Qf, m.Cf, m.Nf
    assert np.allclose(Q, Q.T) and abs(np.linalg.det(Q)) > 0
    assert np.allclose(C @ np.conj(C), np.eye(m.dimV))
    assert np.allclose(N @ C, C @ np.conj(N))
    assert np.allclose(N.T @ Q + Q @ N, 0)
    W = m.W
    for l, idx in W.items():
        inside = set(idx)
        for j in idx:
            assert set(np.nonzero(N[:, j])[0]) <= set(W.get(l - 2, frozenset()))
        for mm, jdx in W.items():
            if l + mm < 4:
                assert np.allclose(Q[np.ix_(sorted(inside), sorted(jdx))], 0)


@pytest.mark.parametrize("kind,expected", [
    ("Minimal", lambda h: h - 2), ("Second", lambda h: h - 1), ("Third", lambda h: h - 4),
    ("Fourth", lambda h: h - 3),
])
def test_r_range_sizes(kind, expected):
    for h in HS[kind]:
        assert len(build_model(kind, h).rIndices) == expected(h)


def test_induced_q_determinant_rule():
    W = wedge_space(build_model("Minimal", 6))
    assert q_pair(W, W.element(1, 2), W.element(6, 5)) == ONE


def test_wedge_markers():
    m = build_model("Minimal", 6)
    assert wedge(m, m.basis_vector(1), m.basis_vector(2)) == m.wedge.e0
    assert wedge(m, m.basis_vector(1), m.basis_vector(1)) == {}
    t = build_model("Third", 6)
    assert wedge(t, t.basis_vector(5), t.basis_vector(6)) == t.wedge.einf


def test_q_pair_dimension_error():
    m = build_model("Minimal", 4)
    with pytest.raises(DimensionError):
        q_pair(m, np.zeros(3), np.zeros(m.dimV))
    with pytest.raises(DimensionError):
        q_pair(m, {50: ONE}, {0: ONE})


@pytest.mark.parametrize("kind,h", [(k, HS[k][0]) for k in KINDS] + [("Second", 6)])
def test_wedge_space_invariants(kind, h):
    m = build_model(kind, h)
    W = m.wedge
    assert np.allclose(W.Qf, induced_q(m))
    assert np.allclose(W.Cf @ np.conj(W.Cf), np.eye(W.dimH))
    assert np.allclose(W.Nf @ W.Cf, W.Cf @ np.conj(W.Nf))
    # derivation rule on random pairs
    rng = np.random.default_rng(0)
    for _ in range(5):
        a = rng.standard_normal(m.dimV) + 1j * rng.standard_normal(m.dimV)
        b = rng.standard_normal(m.dimV) + 1j * rng.standard_normal(m.dimV)
        lhs = W.Nf @ wedge(m, a, b)
        rhs = wedge(m, m.Nf @ a, b) + wedge(m, a, m.Nf @ b)
        assert np.allclose(lhs, rhs)
    for (l, idx), (mm, jdx) in itertools.product(W.W.items(), repeat=2):
        if l + mm < 8 and idx and jdx:
            assert np.allclose(W.Qf[np.ix_(sorted(idx), sorted(jdx))], 0)

"""Acceptance criteria 1-10 at their stated sizes and tolerances.

Each test records one PASS/FAIL line (see conftest.py) so a run prints a
summary per criterion.
"""

import math
import time

import numpy as np
import pytest

from hodge_psh.chart import (
    hodge_norms, hodge_norms_formula, make_horizontal_disc, r_range, residuals, xi_frame,
)
from hodge_psh.diamond import check_diamond
from hodge_psh.hodge_core import KINDS, MIN_H, build_model
from hodge_psh.psh import (
    classify_step, dominant_sign_check, fibre_minimum_check, levi, omega_third, q_jets, rho,
    tangent_disc, tangent_nonnegativity, transverse_divergence,
)
from hodge_psh.seeding import mix
from hodge_psh.suites import witness_directions, witness_disc
from oracles import fd_mixed, norms_direct

H = 6
SEED = 20240611
DISC_KINDS = ["Minimal", "Second", "Third", "Fourth", "HodgeTate"]
STEP_KINDS = ["Minimal", "Second", "Third"]

pytestmark = pytest.mark.acceptance


def sample_s(rng, lo=1e-4, hi=0.1):
    r = math.exp(rng.uniform(math.log(lo), math.log(hi)))
    return r * np.exp(2j * math.pi * rng.random())


def test_criterion_01_diamond_tables(criterion):
    criterion(1, "diamond tables match the marked entries")
    t0 = time.perf_counter()
    bad = []
    for kind in KINDS:
        for h in sorted({MIN_H[kind], 6, 9}):
            for tag in ("V", "H"):
                bad += [f"{kind} h={h}: {b}" for b in check_diamond(kind, h, tag)]
    elapsed = time.perf_counter() - t0
    assert bad == []
    assert elapsed < 5, f"{elapsed:.2f}s"


@pytest.mark.parametrize("kind", DISC_KINDS)
def test_criterion_02_formula_vs_oracle(kind, criterion):
    criterion(2, f"formula vs oracle, {kind}")
    m = build_model(kind, H)
    t0 = time.perf_counter()
    worst = 0.0
    for i in range(1000):
        sd = mix(SEED, i)
        disc = make_horizontal_disc(m, sd, tangency=1)
        s = np.array([sample_s(np.random.default_rng(sd))])
        o, f = hodge_norms(disc, s), hodge_norms_formula(disc, s)
        worst = max(worst, abs(f.h[0] - o.h[0]) / (1 + abs(o.h[0])),
                    abs(f.h0[0] - o.h0[0]) / (1 + abs(o.h0[0])))
    elapsed = time.perf_counter() - t0
    assert worst <= 1e-9, worst
    assert elapsed < 30, f"{elapsed:.1f}s"


@pytest.mark.parametrize("kind", DISC_KINDS)
def test_criterion_03_horizontality_residuals(kind, criterion):
    criterion(3, f"HR and IPR residuals, {kind}")
    m = build_model(kind, H)
    fails = []
    for i in range(1000):
        sd = mix(SEED + 3, i)
        disc = make_horizontal_disc(m, sd, degree=1 + i % 4, tangency=i % 3)
        r = residuals(disc, n=32)
        if r["hr"] > 1e-12 or r["ipr"] > 1e-12:
            fails.append((i, r))
    assert fails == []


@pytest.mark.parametrize("kind", DISC_KINDS)
def test_criterion_04_rho0_psh(kind, criterion):
    criterion(4, f"levi(rho0) >= -1e-8, {kind}")
    m = build_model(kind, H)
    worst = math.inf
    for i in range(200):
        sd = mix(SEED + 4, i)
        rng = np.random.default_rng(sd)
        disc = make_horizontal_disc(m, sd, tangency=1)
        s = np.array([sample_s(rng) for _ in range(20)])
        worst = min(worst, float(np.min(levi(disc, s, "rho0"))))
    assert worst >= -1e-8, worst


@pytest.mark.parametrize("kind", STEP_KINDS)
def test_criterion_05_transverse_divergence(kind, criterion):
    criterion(5, f"transverse divergence on 200 fibre-anchored discs, {kind}")
    m = build_model(kind, H)
    radii = [1e-2, 1e-3, 1e-4, 1e-5, 1e-6]
    passed = 0
    for i in range(200):
        disc = make_horizontal_disc(m, mix(SEED + 5, i), tangency=1, fibre_anchored=True)
        passed += transverse_divergence(disc, radii, raise_on_fail=False)["passed"]
    assert passed == 200


@pytest.mark.parametrize("kind", DISC_KINDS)
def test_criterion_06_tangent_nonnegativity(kind, criterion):
    criterion(6, f"tangent nonnegativity, {kind}")
    rep = tangent_nonnegativity(build_model(kind, H), SEED + 6, radii=(1e-3, 1e-4, 1e-6), trials=200, bound=0.05)
    assert rep["violations"] == [], rep["worst"]


def test_criterion_07_step_dominance(criterion):
    criterion(7, "step witnesses dominate with the predicted sign")
    for kind in STEP_KINDS:
        m = build_model(kind, H)
        for step in witness_directions(m):
            disc = witness_disc(m, step)
            cls = classify_step(disc)
            assert cls.step == step
            assert dominant_sign_check(cls, disc).passed

    # Step-2 coefficient: d dbar q0 <= 0, with equality iff d a4_1 and the R2 slopes vanish
    m = build_model("Minimal", H)
    rr = r_range(m)
    rng = np.random.default_rng(SEED + 7)
    rc = lambda: complex(*(0.03 * rng.standard_normal(2)))
    for _ in range(50):
        base = {f"a{r}_1": 0.0 for r in rr}
        base.update({"a4_1": rc(), "a3_2": 0.0, **{f"a{r}_2": rc() for r in rr}})
        for direction, zero in (({}, True), ({"a4_1": rc()}, False),
                                ({f"a{rr[0]}_2": rc(), f"a{rr[-1]}_2": rc()}, False)):
            disc = tangent_disc(m, base, direction, 1e-4)
            q0ss = q_jets(disc)["q0"][2]
            assert q0ss <= 0
            assert (q0ss == 0) == zero

    # Third: omega > 0 on Step-3 directions
    m = build_model("Third", H)
    for _ in range(50):
        direction = {n: rc() for n in ("a5_1", "a6_1", "a5_2", "a6_2")}
        disc = tangent_disc(m, {f"a{r}_1": 0.5 * rc() for r in r_range(m)}, direction, 1e-4)
        assert classify_step(disc).step == 3
        assert omega_third(disc) > 0


@pytest.mark.parametrize("kind", DISC_KINDS)
def test_criterion_08_fibre_minimum(kind, criterion):
    criterion(8, f"fibre minimum, {kind}")
    m = build_model(kind, H)
    rep = fibre_minimum_check(m, SEED + 8, trials=200)
    assert rep["violations"] == [] and rep["minMargin"] >= -1e-10
    assert rep["fibreDecay"]
    assert rep["flatDirections"] == []
    if kind in STEP_KINDS:
        # rho decays to 0 along fibre discs, logarithmically in |s|
        disc = make_horizontal_disc(m, mix(SEED + 8, 10_000), fibre=True)
        vals = rho(disc, np.array([1e-2, 1e-10, 1e-50, 1e-150], dtype=complex))
        assert np.all(np.diff(vals) < 0) and vals[-1] < 1e-2


def test_criterion_09_special_types(criterion):
    criterion(9, "HodgeTate h = 1 exactly, Fourth h = 1 - |xi^3_1|^2")
    m = build_model("HodgeTate", H)
    count = 0
    for i in range(1000):
        sd = mix(SEED + 9, i)
        rng = np.random.default_rng(sd)
        disc = make_horizontal_disc(m, sd, tangency=1 + i % 2)
        h = hodge_norms(disc, np.array([sample_s(rng) for _ in range(10)])).h
        assert np.all(h == 1.0)
        count += h.size
    assert count == 10_000
    m = build_model("Fourth", H)
    worst = 0.0
    for i in range(1000):
        sd = mix(SEED + 90, i)
        rng = np.random.default_rng(sd)
        disc = make_horizontal_disc(m, sd, tangency=1)
        s = np.array([sample_s(rng) for _ in range(10)])
        xi31 = xi_frame(disc, s).xi[0][:, 2]
        worst = max(worst, float(np.max(np.abs(hodge_norms(disc, s).h - (1 - np.abs(xi31) ** 2)))))
    assert worst <= 1e-12, worst


def test_criterion_10_jets_and_monodromy(criterion):
    criterion(10, "jet Levi vs finite differences, monodromy invariance")
    worst_fd, worst_mono = 0.0, 0.0
    for i in range(100):
        sd = mix(SEED + 10, i)
        rng = np.random.default_rng(sd)
        kind = DISC_KINDS[i % len(DISC_KINDS)]
        disc = make_horizontal_disc(build_model(kind, H), sd, tangency=1)
        s = sample_s(rng, 1e-3, 0.08)

        def f(z):
            h, h0 = norms_direct(disc, z)
            return 1 / h0 - math.log(h)
        jet = float(levi(disc, np.array([s]))[0])
        fd = fd_mixed(f, s, 1e-3 * abs(s))
        worst_fd = max(worst_fd, abs(jet - fd) / max(abs(jet), 1e-300))
        a = hodge_norms(disc, np.array([s]))
        b = hodge_norms(disc, np.array([s]), ell_shift=1.0)
        worst_mono = max(worst_mono, abs(a.h[0] - b.h[0]), abs(a.h0[0] - b.h0[0]))
    assert worst_fd <= 1e-6, worst_fd
    assert worst_mono <= 1e-12, worst_mono

"""Randomized verification suites; each returns a JSON-ready report dict."""

import math
import os
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from . import psh
from .chart import DISC_KINDS, hodge_norms, hodge_norms_formula, make_horizontal_disc, residuals
from .diamond import check_diamond
from .errors import HodgePshError
from .seeding import mix

FORMULA_TOL = 1e-9
MONODROMY_TOL = 1e-12
RESIDUAL_TOL = 1e-12
DIVERGENCE_RADII = (1e-2, 1e-3, 1e-4, 1e-5, 1e-6)
TANGENT_RADII = (1e-3, 1e-4, 1e-6)


def threads():
    try:
        return max(1, int(os.environ.get("HODGE_PSH_THREADS", "1")))
    except ValueError:
        return 1


def _map(fn, n):
    k = threads()
    if k == 1:
        return [fn(i) for i in range(n)]
    with ThreadPoolExecutor(max_workers=k) as ex:
        return list(ex.map(fn, range(n)))


def _report(suite, model, seed, trials, rows, worst, notes=()):
    viol = [v for r in rows for v in r.get("violations", [])]
    return {
        "suite": suite, "type": model.kind, "h": model.h, "trials": trials, "seed": seed,
        "violations": viol, "worstMargins": worst, "notes": list(notes),
    }


def _sample_s(rng, lo=1e-4, hi=0.1):
    r = math.exp(rng.uniform(math.log(lo), math.log(hi)))
    return r * np.exp(2j * math.pi * rng.random())


def _cpair(z):
    return [float(np.real(z)), float(np.imag(z))]


def _viol(i, disc, s, value, what):
    return {"trial": i, "what": what, "s": _cpair(s), "value": float(value), "disc": disc.to_dict()}


def formula_suite(model, seed, trials):
    def one(i):
        sd = mix(seed, i)
        rng = np.random.default_rng(sd)
        disc = make_horizontal_disc(model, sd, tangency=1 + i % 2)
        s = np.array([_sample_s(rng)])
        o, f = hodge_norms(disc, s), hodge_norms_formula(disc, s)
        eh = float(abs(f.h[0] - o.h[0]) / (1 + abs(o.h[0])))
        e0 = float(abs(f.h0[0] - o.h0[0]) / (1 + abs(o.h0[0])))
        v = [_viol(i, disc, s[0], e, w) for e, w in ((eh, "h"), (e0, "h0")) if e > FORMULA_TOL]
        return {"eh": eh, "eh0": e0, "violations": v}
    rows = _map(one, trials)
    worst = {"h": max(r["eh"] for r in rows), "h0": max(r["eh0"] for r in rows)}
    return _report("formula-vs-oracle", model, seed, trials, rows, worst)


def monodromy_suite(model, seed, trials):
    def one(i):
        sd = mix(seed, i)
        rng = np.random.default_rng(sd)
        disc = make_horizontal_disc(model, sd)
        s = np.array([_sample_s(rng)])
        a, b = hodge_norms(disc, s), hodge_norms(disc, s, ell_shift=1.0)
        eh, e0 = float(abs(a.h[0] - b.h[0])), float(abs(a.h0[0] - b.h0[0]))
        v = [_viol(i, disc, s[0], e, w) for e, w in ((eh, "h"), (e0, "h0")) if e > MONODROMY_TOL]
        return {"eh": eh, "eh0": e0, "violations": v}
    rows = _map(one, trials)
    worst = {"h": max(r["eh"] for r in rows), "h0": max(r["eh0"] for r in rows)}
    return _report("monodromy-invariance", model, seed, trials, rows, worst)


def residual_suite(model, seed, trials):
    def one(i):
        disc = make_horizontal_disc(model, mix(seed, i), tangency=i % 3, check=False)
        r = residuals(disc)
        v = [_viol(i, disc, 0.05, r[k], k) for k in r if r[k] > RESIDUAL_TOL]
        return {**r, "violations": v}
    rows = _map(one, trials)
    worst = {"hr": max(r["hr"] for r in rows), "ipr": max(r["ipr"] for r in rows)}
    return _report("horizontality-residuals", model, seed, trials, rows, worst)


def rho0_suite(model, seed, trials, samples=20):
    def one(i):
        sd = mix(seed, i)
        rng = np.random.default_rng(sd)
        disc = make_horizontal_disc(model, sd)
        s = np.array([_sample_s(rng) for _ in range(samples)])
        vals = psh.levi(disc, s, "rho0")
        v = [_viol(i, disc, s[j], vals[j], "levi rho0") for j in np.nonzero(vals < -psh.LEVI_TOL)[0]]
        return {"min": float(np.min(vals)), "violations": v}
    rows = _map(one, trials)
    return _report("rho0-psh", model, seed, trials, rows, {"levi_rho0": min(r["min"] for r in rows)})


def divergence_suite(model, seed, trials):
    if model.kind not in ("Minimal", "Second", "Third"):
        note = "rho smooth path: divergence not asserted" if model.kind == "Fourth" else \
            "rho1 identically 0: divergence not asserted"
        return _report("transverse-divergence", model, seed, 0, [], {}, [note])

    def one(i):
        disc = make_horizontal_disc(model, mix(seed, i), fibre_anchored=True)
        rep = psh.transverse_divergence(disc, DIVERGENCE_RADII, raise_on_fail=False)
        last = min(r["values"][-1] for r in rep["rays"])
        v = [] if rep["passed"] else [{"trial": i, "what": "divergence", "rays": rep["rays"],
                                       "disc": disc.to_dict()}]
        return {"last": last, "violations": v}
    rows = _map(one, trials)
    return _report("transverse-divergence", model, seed, trials, rows,
                   {"minFinalLevi": min(r["last"] for r in rows), "limit": psh.INFINITE})


def tangent_suite(model, seed, trials):
    def one(i):
        rep = psh.tangent_nonnegativity(model, mix(seed, i), TANGENT_RADII, trials=1)
        for v in rep["violations"]:
            v["trial"] = i
            v["s"] = [0.0, 0.0]
        return {"worst": rep["worst"], "violations": rep["violations"]}
    rows = _map(one, trials)
    return _report("tangent-nonnegativity", model, seed, trials, rows,
                   {"levi_sum": min(r["worst"] for r in rows)}, ["frozen-t1 tangent model"])


def witness_directions(model):
    """Hand-built tangent directions, one per step (entry -> d/ds); formal nu slope under '__nu'."""
    r0 = model.rIndices[0] if model.rIndices else None
    if model.kind == "Minimal":
        return {1: {"a3_2": 0.03}, 2: {"a4_1": 0.03}, 3: {"__nu": 0.03}, 4: {}}
    if model.kind == "Second":
        return {1: {f"a{r0}_1": 0.03}, 2: {f"a{r0}_2": 0.03}, 3: {}}
    if model.kind == "Third":
        return {1: {"a3_1": 0.03}, 2: {f"a{r0}_1": 0.03}, 3: {"a5_1": 0.03}, 4: {}}
    return {}


def witness_disc(model, step, t1=1e-4):
    d = dict(witness_directions(model)[step])
    dnu = d.pop("__nu", None)
    return psh.tangent_disc(model, {}, d, t1, dnu=dnu)


def steps_suite(model, seed, trials):
    if model.kind not in psh.STEP_GROUPS:
        return _report("step-dominance", model, seed, 0, [], {}, [f"no step analysis for {model.kind}"])
    rows = []
    for step in witness_directions(model):
        disc = witness_disc(model, step)
        cls = psh.classify_step(disc)
        res = psh.dominant_sign_check(cls, disc, raise_on_fail=False)
        v = []
        if cls.step != step or not res.passed:
            v.append({"trial": -step, "what": f"witness step {step}", "classified": cls.step,
                      "observed": repr(res.observed), "disc": disc.to_dict()})
        rows.append({"violations": v})

    def one(i):
        sd = mix(seed, i)
        th = 2 * math.pi * np.random.default_rng(sd).random()
        disc = psh.random_tangent_disc(model, sd, 1e-4 * np.exp(1j * th))
        try:
            cls = psh.classify_step(disc)
            res = psh.dominant_sign_check(cls, disc, raise_on_fail=False)
        except HodgePshError as exc:
            return {"step": None, "violations": [{"trial": i, "what": str(exc), "disc": disc.to_dict()}]}
        v = [] if res.passed else [{"trial": i, "what": "dominant sign", "disc": disc.to_dict()}]
        return {"step": cls.step, "violations": v}
    rand = _map(one, trials)
    counts = {}
    for r in rand:
        counts[str(r["step"])] = counts.get(str(r["step"]), 0) + 1
    return _report("step-dominance", model, seed, trials, rows + rand, {"stepCounts": counts})


def fibre_suite(model, seed, trials):
    rep = psh.fibre_minimum_check(model, seed, trials)
    viol = list(rep["violations"])
    if not rep["fibreDecay"]:
        viol.append({"trial": -1, "what": "rho not decreasing along fibre discs", "rows": rep["fibre"]})
    for f in rep["flatDirections"]:
        viol.append({**f, "what": "levi below 1e-10 on a non-fibre direction", "s": [0.0, 0.0]})
    return _report("fibre-minimum", model, seed, trials, [{"violations": viol}],
                   {"minRho": rep["minMargin"]})


def meanvalue_suite(model, seed, trials):
    def one(i):
        sd = mix(seed, i)
        th = 2 * math.pi * np.random.default_rng(sd).random()
        disc = make_horizontal_disc(model, sd)
        res = psh.mean_value_check(disc, 0.05 * np.exp(1j * th), 0.01, 64)
        v = [] if res["passed"] else [_viol(i, disc, 0.05 * np.exp(1j * th), res["margin"], "mean value")]
        return {"margin": res["margin"], "violations": v}
    rows = _map(one, trials)
    return _report("mean-value", model, seed, trials, rows, {"margin": min(r["margin"] for r in rows)})


def special_suite(model, seed, trials):
    if model.kind not in ("Fourth", "HodgeTate"):
        return _report("special-types", model, seed, 0, [], {}, [])

    def one(i):
        sd = mix(seed, i)
        rng = np.random.default_rng(sd)
        disc = make_horizontal_disc(model, sd)
        s = np.array([_sample_s(rng) for _ in range(10)])
        h = hodge_norms(disc, s).h
        if model.kind == "HodgeTate":
            err = np.abs(h - 1)
        else:
            err = np.abs(h - (1 - np.abs(disc.entry_at("a3_1", s)) ** 2))
        v = [_viol(i, disc, s[j], err[j], "h") for j in np.nonzero(err > 1e-12)[0]]
        return {"err": float(np.max(err)), "violations": v}
    rows = _map(one, trials)
    note = "rho1 identically 0" if model.kind == "HodgeTate" else "rho smooth path (rho0 variant not needed)"
    return _report("special-types", model, seed, trials, rows, {"h": max(r["err"] for r in rows)}, [note])


SUITES = {
    "formula": formula_suite,
    "monodromy": monodromy_suite,
    "residuals": residual_suite,
    "rho0": rho0_suite,
    "divergence": divergence_suite,
    "tangent": tangent_suite,
    "steps": steps_suite,
    "fibre": fibre_suite,
    "meanvalue": meanvalue_suite,
    "special": special_suite,
}


def diamond_suite(model, seed, trials):
    bad = check_diamond(model.kind, model.h, "V") + check_diamond(model.kind, model.h, "H")
    return _report("diamond", model, seed, 1, [{"violations": [{"what": b} for b in bad]}], {})


def verify(model, seed, trials, suites=None):
    names = list(suites or SUITES)
    if model.kind not in DISC_KINDS or not model.genuine:
        names = []
    reports = [diamond_suite(model, seed, trials)] + [SUITES[n](model, seed, trials) for n in names]
    return {
        "type": model.kind, "h": model.h, "seed": seed, "trials": trials,
        "violations": sum(len(r["violations"]) for r in reports),
        "suites": reports,
    }



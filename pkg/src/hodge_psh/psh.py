"""Numerical certification of the plurisubharmonicity claims along discs."""

import math
from dataclasses import dataclass, field

import numpy as np

from .chart import (
    _hvec_ops, _wedge, disc_from_free, fibre_cut_names, free_names, has_nu, hodge_norms,
    make_horizontal_disc, r_range, random_coefficients,
)
from .errors import (
    AmbiguousClassification, DivergenceViolation, DominanceViolation, NonnegativityViolation,
    NotApplicable, PshViolation,
)
from .logjet import LogPoly, fd_laplacian, logpoly_leading_term, monomial_sign
from .seeding import mix

VANISH = 1e-10
DISCRIMINATE = 1e-8
LEVI_TOL = 1e-8
RHO_TOL = 1e-10
INFINITE = "Infinite"


def levi(disc, s, selector="sum"):
    """d_s d_sbar of rho0, rho1 or rho0 + rho1 along the disc at points s."""
    if selector not in ("sum", "rho0", "rho1"):
        raise ValueError(f"unknown selector {selector!r}")
    nv = hodge_norms(disc, s)
    return {"sum": nv.leviSum, "rho0": nv.levi0, "rho1": nv.levi1}[selector]


def rho(disc, s, selector="sum"):
    nv = hodge_norms(disc, s)
    return {"sum": nv.rho0 + nv.rho1, "rho0": nv.rho0, "rho1": nv.rho1}[selector]


def levi_fd(disc, s, selector="sum", step=None):
    """Finite-difference Levi value at a single point, for cross-checking the jets."""
    f = lambda z: float(rho(disc, np.array([z]), selector)[0])
    return fd_laplacian(f, s, step)


# ------------------------------------------------------------------ tangent configurations

def _name_groups(model):
    rr = r_range(model)
    return {"R1": [f"a{r}_1" for r in rr], "R2": [f"a{r}_2" for r in rr]}


def _expand(model, names):
    g = _name_groups(model)
    out = []
    for n in names:
        out.extend(g.get(n, [n]))
    return out


def integrable_dnu(model, base, direction, w, w_nu, t1):
    """d_v nu forced by closedness of the IPR one-form evaluated on (d/dt1, v).

    base, direction and w map entry names to values, v-derivatives and
    t1-derivatives at the point; dependent entries listed in the pairings
    must be present.
    """
    R1, R2 = _name_groups(model)["R1"], _name_groups(model)["R2"]
    g = lambda d, k: d.get(k, 0.0)
    if model.kind == "Minimal":
        acc = g(w, "a4_1") * g(direction, "a3_2") - g(direction, "a4_1") * g(w, "a3_2")
        acc += sum(g(w, a) * g(direction, b) - g(direction, a) * g(w, b) for a, b in zip(R1, R2))
        return 2 * math.pi * acc
    if model.kind == "Second":
        acc = sum(g(direction, a) * g(w, b) - g(w, a) * g(direction, b) for a, b in zip(R1, R2))
        return 2 * math.pi * acc
    if model.kind == "Third":
        pairs = [("a3_1", "a6_2"), ("a4_1", "a5_2"), ("a5_1", "a4_2"), ("a6_1", "a3_2")] + list(zip(R1, R2))
        wedge = sum(g(w, p) * g(direction, q) - g(direction, p) * g(w, q) for p, q in pairs)
        dv_c = g(direction, "a6_1") + g(direction, "a5_2")
        w_c = g(w, "a6_1") + g(w, "a5_2")
        return (dv_c * (g(base, "nu") + t1 * w_nu) - wedge) / (1 / math.pi + w_c * t1)
    raise NotApplicable(f"{model.kind} has no nu entry")


def tangent_disc(model, base, direction, t1, w=None, w_nu=0.0, dnu=None, bound=0.05, seed=None):
    """Disc with t1 frozen and free entries moving linearly: entry(s) = base + direction * s.

    Unless dnu is given (a formal direction), the slope of nu is fixed by
    the closedness condition with transverse derivatives w, w_nu.
    """
    base, direction, w = dict(base), dict(direction), dict(w or {})
    if model.kind in ("Third", "HodgeTate"):
        for d in (base, direction, w):
            d.setdefault("a3_2", d.get("a4_1", 0.0))
    elif model.kind == "Fourth":
        for d in (base, direction, w):
            d.setdefault("a3_2", -d.get("a4_1", 0.0))
    free = {}
    for name in free_names(model):
        if name.startswith("c"):
            free[name] = [base.get(name, 0.0)]
        elif name != "nu":
            free[name] = [base.get(name, 0.0), direction.get(name, 0.0)]
    if has_nu(model):
        if dnu is None:
            dnu = integrable_dnu(model, base, direction, w, w_nu, t1)
        free["nu"] = [base.get("nu", 0.0), dnu]
    return disc_from_free(model, free, 0, t1_const=t1, bound=bound, degree=1, seed=seed)


def random_tangent_disc(model, seed, t1, bound=0.05, fibre_base=False):
    """Random base point, direction and transverse data; integrable by construction.

    fibre_base puts the base point on the fibre (fibre-cutting entries zero).
    """
    rng = np.random.default_rng(seed)
    names = free_names(model)
    vals = lambda: dict(zip(names, random_coefficients(rng, len(names), bound)))
    base, direction, w = vals(), vals(), vals()
    direction = {k: v for k, v in direction.items() if not k.startswith("c") and k != "nu"}
    w_nu = w.pop("nu", 0.0)
    w = {k: v for k, v in w.items() if not k.startswith("c")}
    if fibre_base:
        for k in fibre_cut_names(model):
            base[k] = 0.0
    return tangent_disc(model, base, direction, t1, w, w_nu, bound=bound, seed=seed)


# ------------------------------------------------------------------ step classification

STEP_GROUPS = {
    "Minimal": [["R1", "a6_1", "a3_2"], ["a4_1", "R2"], ["nu"]],
    "Second": [["R1", "a5_1"], ["a4_1", "R2"]],
    "Third": [["a3_1", "a4_1", "a3_2", "a4_2"], ["R1", "R2"], ["a5_1", "a6_1", "a5_2", "a6_2"]],
}

# leading monomial (a, b, c) of the Levi value in t1, conj(t1), L = log|t1|^2 per step
PREDICTED = {
    "Minimal": {1: (0, 0, 0), 2: (0, 0, -2), 3: (1, 1, 1), 4: None},
    "Second": {1: (0, 0, 0), 2: (0, 0, -4), 3: None},
    "Third": {1: (0, 0, 0), 2: (0, 0, -3), 3: (0, 0, -4), 4: None},
}


@dataclass
class StepClassification:
    type: str
    step: int
    witnessedLimits: dict
    predictedDominant: tuple      # (monomial, sign) or None when everything vanishes
    groupNorms: list = field(default_factory=list)


def direction_limits(disc):
    """d/ds at s = 0 of every entry (free, dependent and nu) of a tangent disc."""
    out = {}
    for name, p in disc.entries.items():
        if name.startswith("c"):
            continue
        out[name] = complex(p[1]) if len(p) > 1 else 0j
    return out


def classify_step(disc):
    """Step of the case analysis selected by the direction of a tangent disc."""
    kind = disc.kind
    if kind not in STEP_GROUPS:
        raise NotApplicable(f"no step analysis for {kind}")
    if not (disc.frozen or disc.inside_Z1):
        raise NotApplicable("classify_step needs a disc tangent to the divisor")
    lim = direction_limits(disc)
    norms = []
    step = None
    for i, group in enumerate(STEP_GROUPS[kind], start=1):
        names = _expand(disc.model, group)
        g = math.sqrt(sum(abs(lim.get(n, 0)) ** 2 for n in names))
        norms.append(g)
        if step is not None:
            continue
        if g > DISCRIMINATE:
            step = i
        elif g > VANISH:
            raise AmbiguousClassification(f"step {i} quantity {g:.3e} lies in the dead zone")
    if step is None:
        step = len(STEP_GROUPS[kind]) + 1
    pred = PREDICTED[kind][step]
    return StepClassification(kind, step, lim, None if pred is None else (pred, 1), norms)


# ------------------------------------------------------------------ log-polynomial expansion

def _poly_frame(disc):
    """Coefficient lists in t1 of zeta_a and d_v zeta_a with alpha, nu frozen at s = 0."""
    model = disc.model
    (a1,), (a2,) = [A[:1] for A in disc.columns]
    cols = disc.columns
    d1 = cols[0][1] if cols[0].shape[0] > 1 else np.zeros(model.dimV, complex)
    d2 = cols[1][1] if cols[1].shape[0] > 1 else np.zeros(model.dimV, complex)
    nu0 = complex(disc.nu[0])
    dnu = complex(disc.nu[1]) if len(disc.nu) > 1 else 0j
    Np = [np.eye(model.dimV)]
    for _ in range(4):
        Np.append(Np[-1] @ model.Nf)
    base = [(a1, d1), (a2, d2)]
    vecs = list(base)
    for col, coeff, pw in model.lift:
        a, da = base[col]
        P = complex(coeff) * Np[pw]
        vecs.append((P @ a, P @ da))
    Xp = [np.eye(model.dimV)]
    if model.X is not None:
        while True:
            nxt = model.Xf @ Xp[-1]
            if not np.any(nxt):
                break
            Xp.append(nxt)
    out = []
    for v, dv in vecs:
        val, der = [], []
        for m, P in enumerate(Xp):
            f = 1 / math.factorial(m)
            val.append(f * nu0 ** m * (P @ v))
            d = f * nu0 ** m * (P @ dv)
            if m:
                d = d + f * m * nu0 ** (m - 1) * dnu * (P @ v)
            der.append(d)
        out.append((val, der))
    return out


def _poly_wedge(model, U, V):
    out = [np.zeros(len(model.wedge.pairs), complex) for _ in range(len(U) + len(V) - 1)]
    for i, u in enumerate(U):
        for j, v in enumerate(V):
            out[i + j] = out[i + j] + _wedge(model, u[None, :], v[None, :])[0]
    return out


def _poly_add(U, V):
    n = max(len(U), len(V))
    z = np.zeros_like(U[0])
    return [(U[i] if i < len(U) else z) + (V[i] if i < len(V) else z) for i in range(n)]


def _pair_logpoly(model, U, V):
    """sum_k (i/2pi)^k / k! L^k Q(U, N^k conj V) with U holomorphic, V antiholomorphic in t1."""
    W = model.wedge
    Q, C, N = W.Qf, W.Cf, W.Nf
    terms = {}
    Nk = np.eye(W.dimH)
    for k in range(5):
        Mk = Q @ Nk @ C
        if np.any(Mk):
            ck = (1j / (2 * math.pi)) ** k / math.factorial(k)
            for a, u in enumerate(U):
                for b, v in enumerate(V):
                    val = ck * (u @ Mk @ np.conj(v))
                    if val != 0:
                        terms[(a, b, k)] = terms.get((a, b, k), 0) + val
        Nk = Nk @ N
    return LogPoly(terms)


def levi_logpoly(disc):
    """Numerator P and denominator D with Levi(rho0 + rho1) = P / D as t1 -> 0."""
    model = disc.model
    (z1, dz1), (z2, dz2), (za, dza), (zb, dzb) = _poly_frame(disc)
    A = _poly_wedge(model, z1, z2)
    dA = _poly_add(_poly_wedge(model, dz1, z2), _poly_wedge(model, z1, dz2))
    B = _poly_wedge(model, za, zb)
    dB = _poly_add(_poly_wedge(model, dza, zb), _poly_wedge(model, za, dzb))
    sg = model.sign_h
    h0 = _pair_logpoly(model, A, A)
    h0v = _pair_logpoly(model, dA, A)
    h0vv = _pair_logpoly(model, dA, dA)
    F = _pair_logpoly(model, A, B)
    h = (F + F.conj()) * (sg / 2)
    hv = (_pair_logpoly(model, dA, B) + _pair_logpoly(model, A, dB).conj()) * (sg / 2)
    Fvv = _pair_logpoly(model, dA, dB)
    hvv = (Fvv + Fvv.conj()) * (sg / 2)
    N0 = -(h0 * h0vv) + 2 * (h0v * h0v.conj())
    N1 = -(h * hvv) + hv * hv.conj()
    h2 = h * h
    h03 = h0 * h0 * h0
    return N0 * h2 + N1 * h03, h03 * h2


@dataclass
class DominanceResult:
    passed: bool
    step: int
    observed: tuple            # (monomial, coeff) or None
    predicted: tuple
    sign: int
    note: str = ""


def dominant_sign_check(cls, disc, rtol=1e-10, raise_on_fail=True):
    """Leading term of the Levi expansion has the sign predicted for the step."""
    P, D = levi_logpoly(disc)
    P = P.drop_small(rtol)
    pred = cls.predictedDominant
    if P.is_zero():
        ok = pred is None
        res = DominanceResult(ok, cls.step, None, pred, 0, "expansion vanishes identically")
    else:
        lp = logpoly_leading_term(P)
        ld = logpoly_leading_term(D, rtol)
        mono = tuple(x - y for x, y in zip(lp.monomial, ld.monomial))
        if lp.phase_dependent or ld.phase_dependent:
            res = DominanceResult(False, cls.step, (mono, lp.coeff / ld.coeff), pred, 0, "phase-dependent leading term")
        else:
            coeff = lp.coeff / ld.coeff
            sg = monomial_sign(mono, coeff)
            ok = pred is not None and sg > 0
            res = DominanceResult(ok, cls.step, (mono, coeff), pred, sg,
                                  "" if pred is None or mono == pred[0] else "monomial differs from prediction")
    if raise_on_fail and not res.passed:
        raise DominanceViolation(f"step {cls.step}: {res}")
    return res


# ------------------------------------------------------------------ q-function jets

def q_jets(disc, s=0.0):
    """(value, d/ds, d^2/ds dsbar) of each q-function of the alpha data at s."""
    model = disc.model
    if model.kind not in ("Minimal", "Second", "Third"):
        raise NotApplicable(f"no q-functions are defined for {model.kind}")
    Q, cj, Nm = _hvec_ops(model)
    (a1, d1), (a2, d2) = disc.alpha_at(np.array([s]))
    A = _wedge(model, a1, a2)
    dA = _wedge(model, d1, a2) + _wedge(model, a1, d2)
    forms = {"q0": (1, 0)}
    if model.kind == "Minimal":
        forms["q1"] = (-1j, 1)
    elif model.kind == "Second":
        forms["q2"] = (-1, 2)
    else:
        forms["q2"] = (-1, 2)
        forms["q1"] = (1j, 1)
    out = {}
    for name, (c, k) in forms.items():
        herm = lambda x, y: c * Q(x, Nm(cj(y), k))[0]
        out[name] = (herm(A, A).real, herm(dA, A), herm(dA, dA).real)
    return out


def omega_third(disc):
    """-q2 d dbar q0 + 4 |d q1|^2 along the direction at s = 0 (Third type)."""
    q = q_jets(disc)
    return -q["q2"][0] * q["q0"][2] + 4 * abs(q["q1"][1]) ** 2


# ------------------------------------------------------------------ suites

def transverse_divergence(disc, radii, thetas=(0, math.pi / 2, math.pi, 3 * math.pi / 2),
                          threshold=1e3, raise_on_fail=True):
    """Levi(rho0 + rho1) on rays s = r e^{i theta} as r decreases (k = 1 discs)."""
    if disc.tangency != 1 or disc.frozen:
        raise NotApplicable("transverse divergence needs a disc with t1 = s")
    radii = [float(r) for r in radii]
    if any(b >= a for a, b in zip(radii, radii[1:])) or min(radii) < 1e-8:
        raise ValueError("radii must be strictly decreasing and >= 1e-8")
    rows = []
    ok = True
    for th in thetas:
        s = np.array(radii) * np.exp(1j * th)
        vals = levi(disc, s)
        inc = bool(np.all(np.diff(vals) > 0))
        big = bool(vals[-1] > threshold)
        ok &= inc and big
        rows.append({"theta": th, "values": vals.tolist(), "increasing": inc, "exceeds": big})
    rep = {"passed": ok, "limit": INFINITE if ok else None, "rays": rows}
    if raise_on_fail and not ok:
        raise DivergenceViolation(f"divergence not certified: {rows}")
    return rep


def tangent_nonnegativity(model, seed, radii=(1e-3, 1e-4, 1e-6), trials=200, bound=0.05,
                          raise_on_fail=False):
    """Levi(rho0 + rho1) >= -1e-8 on random integrable tangent configurations."""
    violations = []
    worst = math.inf
    for i in range(trials):
        sd = mix(seed, i)
        th = 2 * math.pi * np.random.default_rng(sd).random()
        for r in radii:
            disc = random_tangent_disc(model, sd, r * np.exp(1j * th), bound)
            v = float(levi(disc, np.array([0.0]))[0])
            worst = min(worst, v)
            if v < -LEVI_TOL:
                violations.append({"trial": i, "radius": r, "value": v, "disc": disc.to_dict()})
    if raise_on_fail and violations:
        raise PshViolation(f"{len(violations)} negative Levi values")
    return {"trials": trials, "violations": violations, "worst": worst}


def fibre_minimum_check(model, seed, trials=200, bound=0.05, radii=(1e-2, 1e-3, 1e-4),
                        levi_radius=1e-4, raise_on_fail=False):
    """rho0 + rho1 >= 0, decay along fibre discs, and strict Levi positivity off fibres."""
    fibre_rows = []
    for i in range(5):
        disc = make_horizontal_disc(model, mix(seed, 10_000 + i), bound=bound, fibre=True)
        vals = rho(disc, np.array(radii, dtype=complex))
        fibre_rows.append({"values": vals.tolist(), "decreasing": bool(np.all(np.diff(vals) < 0))})
    margins, negatives, flat = [], [], []
    samples = np.array([r * np.exp(1j * th) for r in (0.05, 1e-2, 1e-3) for th in (0.3, 2.0, 4.1)])
    for i in range(trials):
        sd = mix(seed, i)
        disc = make_horizontal_disc(model, sd, bound=bound)
        vals = rho(disc, samples)
        m = float(np.min(vals))
        margins.append(m)
        if m < -RHO_TOL:
            negatives.append({"trial": i, "value": m, "disc": disc.to_dict()})
        th = 2 * math.pi * np.random.default_rng(sd).random()
        tdisc = random_tangent_disc(model, sd, levi_radius * np.exp(1j * th), bound)
        lv = float(levi(tdisc, np.array([0.0]))[0])
        if lv < VANISH:
            flat.append({"trial": i, "value": lv, "disc": tdisc.to_dict()})
    rep = {
        "fibre": fibre_rows,
        "fibreDecay": all(r["decreasing"] for r in fibre_rows),
        "minMargin": min(margins) if margins else None,
        "violations": negatives,
        "flatDirections": flat,
    }
    if raise_on_fail and negatives:
        raise NonnegativityViolation(f"{len(negatives)} discs with rho0 + rho1 < 0")
    return rep


def mean_value_check(disc, s0, r, n=64, selector="sum"):
    """(mean of rho over the circle |s - s0| = r) - rho(s0); >= 0 for subharmonic rho."""
    pts = s0 + r * np.exp(2j * math.pi * np.arange(n) / n)
    vals = rho(disc, pts, selector)
    centre = float(rho(disc, np.array([s0], dtype=complex), selector)[0])
    margin = float(np.mean(vals)) - centre
    return {"margin": margin, "value": centre, "passed": margin >= -1e-8 * (1 + abs(centre))}

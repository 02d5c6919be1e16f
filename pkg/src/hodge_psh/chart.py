"""Exactly horizontal polynomial period charts and the Hodge norms along them.

A disc is a holomorphic map s -> (t1(s), alpha(s), nu(s)).  The period
frame is xi_j = exp(l(t1) N) zeta v_j with l(t) = log(t)/(2 pi i) and
zeta = exp(t1 nu X) alpha, where X is the type's extra generator (no
factor for the Fourth and Hodge-Tate types).  Free entries of alpha are
polynomials in s; the remaining entries are fixed by the first
Hodge-Riemann relation (quadratic solves) and by the infinitesimal period
relation (one-variable integration).
"""

import json
import math
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np
from numpy.polynomial import polynomial as npp

from . import _kernels
from .errors import ConstructionFailure, NotApplicable, OutsideChart, SingularEvaluation
from .hodge_core import build_model, canonical_kind
from .logjet import WirtingerJet2

TWO_PI = 2 * math.pi
DISC_KINDS = ("Minimal", "Second", "Third", "Fourth", "HodgeTate")
RESIDUAL_TOL = 1e-12
N_RESIDUAL = 32


# ------------------------------------------------------------------ entry tables

def r_range(model):
    return list(model.rIndices)


def free_names(model):
    rr = r_range(model)
    R1 = [f"a{r}_1" for r in rr]
    R2 = [f"a{r}_2" for r in rr]
    return {
        "Minimal": ["a4_1", *R1, "a3_2", *R2, "c6_2", "nu"],
        "Second": [*R1, *R2, "c5_2", "nu"],
        "Third": ["a3_1", "a4_1", "a5_1", "a6_1", *R1, "a4_2", "a5_2", "a6_2", *R2, "c8_2", "nu"],
        "Fourth": ["a3_1", "a4_1", "a5_1", *R1, "a4_2", "a5_2", *R2, "c7_2"],
        "HodgeTate": ["a3_1", "a4_1", *R1, "a4_2", *R2, "c5_2"],
    }[model.kind]


def fibre_cut_names(model):
    """Free entries whose vanishing (with t1 = 0) cuts out the fibre."""
    rr = r_range(model)
    return {
        "Minimal": [f"a{r}_1" for r in rr] + ["a3_2"],
        "Second": [f"a{r}_1" for r in rr],
        "Third": ["a3_1", "a4_1", "a4_2"],
        "Fourth": ["a3_1"],
        "HodgeTate": [],
    }[model.kind]


def has_nu(model):
    return model.kind in ("Minimal", "Second", "Third")


def _pad(p, n):
    out = np.zeros(n, dtype=complex)
    out[: len(p)] = p
    return out


def _add(*ps):
    n = max(len(p) for p in ps)
    return sum((_pad(p, n) for p in ps), np.zeros(n, dtype=complex))


def _mul(a, b):
    return np.asarray(npp.polymul(a, b), dtype=complex)


def _der(a):
    return np.asarray(npp.polyder(a), dtype=complex) if len(a) > 1 else np.zeros(1, dtype=complex)


def _int(a):
    return np.asarray(npp.polyint(a), dtype=complex)


def _trim(a):
    a = np.asarray(a, dtype=complex)
    nz = np.nonzero(a)[0]
    return a[: nz[-1] + 1] if len(nz) else np.zeros(1, dtype=complex)


def _dot(E, names1, names2, deriv=False):
    acc = np.zeros(1, dtype=complex)
    for x, y in zip(names1, names2):
        acc = _add(acc, _mul(E[x], _der(E[y]) if deriv else E[y]))
    return acc


def solve_dependents(model, free, t1):
    """Dependent entries from free data; t1 is the coefficient array of t1(s)."""
    E = {k: np.asarray(v, dtype=complex) for k, v in free.items()}
    rr = r_range(model)
    R1 = [f"a{r}_1" for r in rr]
    R2 = [f"a{r}_2" for r in rr]
    zero = np.zeros(1, dtype=complex)
    nu = E.get("nu", zero)
    dt1 = _der(t1)
    D = {}
    kind = model.kind
    if kind == "Minimal":
        D["a6_1"] = -0.5 * _dot(E, R1, R1)
        D["a5_2"] = -0.5 * _dot(E, R2, R2)
        integrand = _add(_mul(E["a4_1"], _der(E["a3_2"])), _dot(E, R1, R2, True), _mul(nu, dt1) / TWO_PI)
        D["a6_2"] = _add(E["c6_2"], -_int(integrand))
        D["a5_1"] = -_add(D["a6_2"], _mul(E["a4_1"], E["a3_2"]), _dot(E, R1, R2))
    elif kind == "Second":
        D["a5_1"] = -0.5 * _dot(E, R1, R1)
        D["a4_2"] = -0.5 * _dot(E, R2, R2)
        integrand = _add(_dot(E, R1, R2, True), -_mul(nu, dt1) / TWO_PI)
        D["a5_2"] = _add(E["c5_2"], -_int(integrand))
        D["a4_1"] = -_add(D["a5_2"], _dot(E, R1, R2))
    elif kind == "Third":
        E["a3_2"] = D["a3_2"] = E["a4_1"].copy()
        D["a8_1"] = -_add(_mul(E["a3_1"], E["a6_1"]), _mul(E["a4_1"], E["a5_1"]), 0.5 * _dot(E, R1, R1))
        D["a7_2"] = -_add(_mul(E["a3_2"], E["a6_2"]), _mul(E["a4_2"], E["a5_2"]), 0.5 * _dot(E, R2, R2))
        tau = _mul(t1, nu)
        pairs = [("a3_1", "a6_2"), ("a4_1", "a5_2"), ("a5_1", "a4_2"), ("a6_1", "a3_2")]
        integrand = _add(
            _dot(E, [p for p, _ in pairs], [q for _, q in pairs], True),
            _dot(E, R1, R2, True),
            _mul(_add(E["a6_1"], E["a5_2"]), _der(tau)),
            -_mul(nu, dt1) / math.pi,
        )
        D["a8_2"] = _add(E["c8_2"], -_int(integrand))
        D["a7_1"] = -_add(D["a8_2"], _dot(E, [p for p, _ in pairs], [q for _, q in pairs]), _dot(E, R1, R2))
    elif kind == "Fourth":
        E["a3_2"] = D["a3_2"] = -E["a4_1"]
        D["a7_1"] = -_add(_mul(E["a3_1"], E["a5_1"]), 0.5 * _mul(E["a4_1"], E["a4_1"]), 0.5 * _dot(E, R1, R1))
        D["a6_2"] = -_add(_mul(E["a3_2"], E["a5_2"]), 0.5 * _mul(E["a4_2"], E["a4_2"]), 0.5 * _dot(E, R2, R2))
        pairs = [("a3_1", "a5_2"), ("a4_1", "a4_2"), ("a5_1", "a3_2")]
        integrand = _add(_dot(E, [p for p, _ in pairs], [q for _, q in pairs], True), _dot(E, R1, R2, True))
        D["a7_2"] = _add(E["c7_2"], -_int(integrand))
        D["a6_1"] = -_add(D["a7_2"], _dot(E, [p for p, _ in pairs], [q for _, q in pairs]), _dot(E, R1, R2))
    elif kind == "HodgeTate":
        E["a3_2"] = D["a3_2"] = E["a4_1"].copy()
        D["a5_1"] = -0.5 * _add(_mul(E["a3_1"], E["a3_1"]), _mul(E["a4_1"], E["a4_1"]), _dot(E, R1, R1))
        D["a6_2"] = -0.5 * _add(_mul(E["a3_2"], E["a3_2"]), _mul(E["a4_2"], E["a4_2"]), _dot(E, R2, R2))
        pairs = [("a3_1", "a3_2"), ("a4_1", "a4_2")]
        integrand = _add(_dot(E, [p for p, _ in pairs], [q for _, q in pairs], True), _dot(E, R1, R2, True))
        D["a5_2"] = _add(E["c5_2"], -_int(integrand))
        D["a6_1"] = -_add(D["a5_2"], _dot(E, [p for p, _ in pairs], [q for _, q in pairs]), _dot(E, R1, R2))
    else:
        raise NotApplicable(f"no horizontal discs for {kind}")
    return {k: _trim(v) for k, v in D.items()}


def alpha_columns(model, entries):
    """Coefficient arrays (deg+1, dimV) of alpha_1 and alpha_2."""
    n = max(len(v) for v in entries.values())
    cols = []
    for c in (1, 2):
        A = np.zeros((n, model.dimV), dtype=complex)
        A[0, c - 1] = 1.0
        for j in range(1, model.dimV + 1):
            if j == c:
                continue
            p = entries.get(f"a{j}_{c}")
            if p is not None:
                A[: len(p), j - 1] += p
        cols.append(A)
    return cols


# ------------------------------------------------------------------ disc type

@dataclass(frozen=True, eq=False)
class HorizontalDisc:
    model: object
    tangency: int
    free: dict
    dependent: dict
    bound: float = 0.05
    degree: int = 2
    seed: object = None
    t1_const: complex = None   # frozen t1 (tangent model); tangency is then 0

    @property
    def kind(self):
        return self.model.kind

    @property
    def nu(self):
        return self.free.get("nu", np.zeros(1, dtype=complex))

    @property
    def frozen(self):
        return self.t1_const is not None

    @property
    def inside_Z1(self):
        return self.tangency == 0 and self.t1_const is None

    def t1_poly(self):
        return t1_coefficients(self.tangency, self.t1_const)

    @property
    def entries(self):
        E = dict(self.free)
        E.update(self.dependent)
        return E

    @property
    def columns(self):
        return _columns_cached(self)

    def alpha_at(self, s):
        """alpha_1, alpha_2 and their s-derivatives at points s (arrays (n, dimV))."""
        s = np.atleast_1d(np.asarray(s, dtype=complex))
        out = []
        for A in self.columns:
            val = npp.polyval(s, A).T if A.shape[0] else None
            der = npp.polyval(s, npp.polyder(A, axis=0)).T if A.shape[0] > 1 else np.zeros((len(s), A.shape[1]))
            out.append((np.asarray(val, dtype=complex), np.asarray(der, dtype=complex)))
        return out

    def entry_at(self, name, s, deriv=False):
        p = self.entries.get(name)
        if p is None:
            return np.zeros_like(np.atleast_1d(np.asarray(s, dtype=complex)))
        return npp.polyval(np.asarray(s, dtype=complex), _der(p) if deriv else p)

    def to_dict(self):
        enc = lambda p: [[float(c.real), float(c.imag)] for c in np.asarray(p, dtype=complex)]
        return {
            "type": self.kind, "h": self.model.h, "tangency": self.tangency,
            "t1": None if self.t1_const is None else [self.t1_const.real, self.t1_const.imag],
            "degree": self.degree, "bound": self.bound, "seed": self.seed,
            "free": {k: enc(v) for k, v in sorted(self.free.items())},
            "dependent": {k: enc(v) for k, v in sorted(self.dependent.items())},
        }

    def to_json(self):
        return json.dumps(self.to_dict(), sort_keys=True)


_COLS = {}


def _columns_cached(disc):
    key = id(disc)
    hit = _COLS.get(key)
    if hit is None or hit[0] is not disc:
        if len(_COLS) > 4096:
            _COLS.clear()
        hit = (disc, alpha_columns(disc.model, disc.entries))
        _COLS[key] = hit
    return hit[1]


def t1_coefficients(tangency, t1_const=None):
    if t1_const is not None:
        return np.array([complex(t1_const)])
    if tangency == 0:
        return np.zeros(1, dtype=complex)
    c = np.zeros(tangency + 1, dtype=complex)
    c[tangency] = 1.0
    return c


def _require_disc_model(model):
    if model.kind not in DISC_KINDS:
        raise NotApplicable(f"{model.kind} has no boundary chart")
    if not model.genuine:
        raise NotApplicable(f"{model.kind} with h = {model.h} has no polarized nilpotent orbit model for discs")


def disc_from_free(model, free, tangency=1, t1_const=None, bound=0.05, degree=None, seed=None, check=True):
    """Disc from explicit free-entry polynomials (missing entries are zero)."""
    _require_disc_model(model)
    if tangency < 0:
        raise ValueError("tangency must be >= 0")
    if t1_const is not None:
        tangency = 0
        t1_const = complex(t1_const)
    names = free_names(model)
    unknown = set(free) - set(names)
    if unknown:
        raise ValueError(f"unknown free entries {sorted(unknown)}")
    full = {k: _trim(np.atleast_1d(np.asarray(free.get(k, [0.0]), dtype=complex))) for k in names}
    dep = solve_dependents(model, full, t1_coefficients(tangency, t1_const))
    if degree is None:
        degree = max(len(v) for v in full.values()) - 1
    disc = HorizontalDisc(model, int(tangency), full, dep, bound, degree, seed, t1_const)
    if check:
        r = residuals(disc)
        if max(r.values()) > RESIDUAL_TOL:
            raise ConstructionFailure(f"construction residuals too large: {r}")
    return disc


def random_coefficients(rng, n, bound):
    r = bound * np.sqrt(rng.random(n))
    th = TWO_PI * rng.random(n)
    return r * np.exp(1j * th)


def make_horizontal_disc(model, seed, degree=2, tangency=1, bound=0.05, fibre_anchored=False,
                         fibre=False, t1_const=None, check=True):
    """Random exactly horizontal disc; coefficients uniform in the disc of radius `bound`.

    fibre_anchored zeroes the constant terms of the fibre-cutting entries;
    fibre zeroes those entries identically.
    """
    if isinstance(model, str):
        raise TypeError("pass a DegenerationModel")
    _require_disc_model(model)
    if not 0 <= degree <= 8:
        raise ValueError("degree must lie in 0..8")
    if not 0 <= bound <= 0.1:
        raise ValueError("coefficient bound must lie in [0, 0.1]")
    rng = np.random.default_rng(seed)
    free = {}
    cut = set(fibre_cut_names(model))
    for name in free_names(model):
        n = 1 if name.startswith("c") else degree + 1
        coeffs = random_coefficients(rng, n, bound)
        if name in cut and (fibre or fibre_anchored):
            if fibre:
                coeffs[:] = 0
            else:
                coeffs[0] = 0
        free[name] = coeffs
    return disc_from_free(model, free, tangency, t1_const, bound, degree, seed, check)


def disc_from_dict(d):
    """Rebuild a disc from its JSON form, checking the stored dependents."""
    try:
        model = build_model(canonical_kind(d["type"]), int(d["h"]))
        dec = lambda pairs: np.array([complex(float(a), float(b)) for a, b in pairs], dtype=complex)
        free = {k: dec(v) for k, v in d["free"].items()}
        t1 = d.get("t1")
        t1c = None if t1 is None else complex(float(t1[0]), float(t1[1]))
        disc = disc_from_free(model, free, int(d["tangency"]), t1c, float(d.get("bound", 0.05)),
                              int(d.get("degree", 2)), d.get("seed"))
    except (KeyError, TypeError, ValueError) as exc:
        raise ValueError(f"malformed disc description: {exc}") from exc
    for k, v in d.get("dependent", {}).items():
        if k not in disc.dependent:
            raise ValueError(f"unexpected dependent entry {k}")
        got = _pad(disc.dependent[k], max(len(v), len(disc.dependent[k])))
        want = _pad(dec(v), len(got))
        if np.max(np.abs(got - want)) > 1e-12:
            raise ValueError(f"dependent entry {k} inconsistent with free data")
    return disc


def disc_from_json(text):
    try:
        d = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ValueError(f"not JSON: {exc}") from exc
    if not isinstance(d, dict):
        raise ValueError("disc JSON must be an object")
    return disc_from_dict(d)


# ------------------------------------------------------------------ frames

@lru_cache(maxsize=None)
def _powers(kind, h, which):
    model = build_model(kind, h)
    A = model.Nf if which == "N" else model.Xf
    if A is None:
        return ()
    out = [np.eye(model.dimV, dtype=complex)]
    while True:
        nxt = out[-1] @ A
        if not np.any(nxt):
            break
        out.append(nxt)
    return tuple(out)


def _apply_exp(pows, c, dc, v, dv):
    """exp(c A) v and its derivative for batched scalars c, vectors v (n, d)."""
    val = np.zeros_like(v)
    for m, P in enumerate(pows):
        val = val + (c ** m / math.factorial(m))[:, None] * (v @ P.T)
    if len(pows) > 1:
        A = pows[1]
        der = (dc[:, None] * (val @ A.T)) + sum(
            ((c ** m / math.factorial(m))[:, None] * (dv @ P.T) for m, P in enumerate(pows)), np.zeros_like(v))
    else:
        der = dv.copy()
    return val, der


@dataclass
class Frame:
    s: np.ndarray
    t1: np.ndarray
    ell: np.ndarray
    tau: np.ndarray
    xi: list        # [xi1, xi2, xiA, xiB] values (n, dimV); xiA ^ xiB = eta_inf
    dxi: list
    zeta: list      # same vectors before exp(l N)


def _log_data(disc, s, ell_shift=0.0):
    n = len(s)
    if disc.frozen:
        t1 = np.full(n, disc.t1_const, dtype=complex)
        dt1 = np.zeros(n, dtype=complex)
        if disc.t1_const == 0:
            return t1, dt1, np.zeros(n, dtype=complex) + ell_shift, np.zeros(n, dtype=complex)
        ell = np.log(t1) / (2j * math.pi) + ell_shift
        return t1, dt1, ell, np.zeros(n, dtype=complex)
    k = disc.tangency
    if k == 0:
        z = np.zeros(n, dtype=complex)
        return z, z.copy(), z + ell_shift, z.copy()
    if np.any(s == 0):
        raise SingularEvaluation("frame evaluated at s = 0 on a disc transverse to the divisor", 0.0)
    t1 = s ** k
    dt1 = k * s ** (k - 1)
    ell = np.log(t1) / (2j * math.pi) + ell_shift
    dell = k / (2j * math.pi * s)
    return t1, dt1, ell, dell


def xi_frame(disc, s, ell_shift=0.0):
    """Oracle frame xi_j = exp(l N) zeta(v_j) and its s-derivative at points s."""
    model = disc.model
    s = np.atleast_1d(np.asarray(s, dtype=complex))
    (a1, da1), (a2, da2) = disc.alpha_at(s)
    t1, dt1, ell, dell = _log_data(disc, s, ell_shift)
    nu = npp.polyval(s, disc.nu) * np.ones(len(s))
    dnu = npp.polyval(s, _der(disc.nu)) * np.ones(len(s))
    tau = t1 * nu
    dtau = dt1 * nu + t1 * dnu
    Np = _powers(model.kind, model.h, "N")
    Xp = _powers(model.kind, model.h, "X")
    base = [(a1, da1), (a2, da2)]
    vecs = list(base)
    for col, coeff, pw in model.lift:
        a, da = base[col]
        P = complex(coeff) * (Np[pw] if pw < len(Np) else 0 * Np[0])
        vecs.append((a @ P.T, da @ P.T))
    xi, dxi, zeta = [], [], []
    for v, dv in vecs:
        if Xp:
            v, dv = _apply_exp(Xp, tau, dtau, v, dv)
        zeta.append(v)
        x, dx = _apply_exp(Np, ell, dell, v, dv)
        xi.append(x)
        dxi.append(dx)
    return Frame(s, t1, ell, tau, xi, dxi, zeta)


def xi_jets(disc, s, ell_shift=0.0):
    """Frame vectors as WirtingerJet2 arrays (holomorphic in s): [xi1, xi2, xiA, xiB]."""
    fr = xi_frame(disc, s, ell_shift)
    return [WirtingerJet2.holomorphic(x, dx) for x, dx in zip(fr.xi, fr.dxi)]


def residuals(disc, radius=0.05, n=N_RESIDUAL):
    """Max first Hodge-Riemann and IPR residuals on the circle |s| = radius."""
    s = radius * np.exp(2j * math.pi * (np.arange(n) + 0.5) / n)
    fr = xi_frame(disc, s)
    Q = disc.model.Qf
    hr = ipr = 0.0
    for a in (0, 1):
        for b in (0, 1):
            hr = max(hr, float(np.max(np.abs(np.einsum("ki,ij,kj->k", fr.xi[a], Q, fr.xi[b])))))
            ipr = max(ipr, float(np.max(np.abs(np.einsum("ki,ij,kj->k", fr.xi[a], Q, fr.dxi[b])))))
    return {"hr": hr, "ipr": ipr}


# ------------------------------------------------------------------ norms

@dataclass
class NormValue:
    h: np.ndarray
    h0: np.ndarray
    rho0: np.ndarray
    rho1: np.ndarray
    leviSum: np.ndarray = None
    levi0: np.ndarray = None
    levi1: np.ndarray = None
    pieces: dict = field(default_factory=dict)


@lru_cache(maxsize=None)
def _pairing_matrix(kind, h):
    W = build_model(kind, h).wedge
    return np.ascontiguousarray(W.Qf @ W.Cf)


def _wedge(model, x, y):
    I, J = model.wedge.pair_arrays
    return _kernels.wedge_batch(x, y, I, J)


def norm_jets(disc, s, ell_shift=0.0):
    """Jets (value, d/ds, mixed) of h and h0 along the disc (oracle path)."""
    model = disc.model
    fr = xi_frame(disc, s, ell_shift)
    x1, x2, xa, xb = fr.xi
    d1, d2, da, db = fr.dxi
    e0 = _wedge(model, x1, x2)
    de0 = _wedge(model, d1, x2) + _wedge(model, x1, d2)
    ei = _wedge(model, xa, xb)
    dei = _wedge(model, da, xb) + _wedge(model, xa, db)
    M = _pairing_matrix(model.kind, model.h)
    h0, h0s, h0ss, F, Fs, Fsb, Fss = _kernels.pairing_jets(e0, de0, ei, dei, M)
    sg = model.sign_h
    h = sg * F.real
    hs = sg * (Fs + np.conj(Fsb)) / 2
    hss = sg * Fss.real
    return fr, (h0.real, h0s, h0ss.real), (h, hs, hss)


def _assemble(disc, fr, h0j, hj, check=True):
    h0, h0s, h0ss = h0j
    h, hs, hss = hj
    n = len(h)
    inside = disc.inside_Z1 or (disc.frozen and disc.t1_const == 0)
    if check and np.any(h <= 0):
        raise OutsideChart(f"h <= 0 (min {np.min(h):.3e})")
    hJ = WirtingerJet2.real_from(h, hs, hss)
    rho1J = -hJ.log()
    if inside:
        rho0J = WirtingerJet2(np.zeros(n), np.zeros(n, complex), np.zeros(n, complex), np.zeros(n))
        h0 = np.full(n, np.inf)
    else:
        if check and np.any(h0 <= 0):
            raise OutsideChart(f"h0 <= 0 (min {np.min(h0):.3e})")
        rho0J = WirtingerJet2.real_from(h0, h0s, h0ss).reciprocal()
    tot = rho0J + rho1J
    return NormValue(h, h0, np.real(rho0J.f), np.real(rho1J.f), np.real(tot.fssb),
                     np.real(rho0J.fssb), np.real(rho1J.fssb),
                     {"t1": fr.t1, "ell": fr.ell, "tau": fr.tau})


def hodge_norms(disc, s, ell_shift=0.0, check=True):
    """Oracle path: h, h0, rho0, rho1 and Levi values from the exponential frame."""
    fr, h0j, hj = norm_jets(disc, s, ell_shift)
    return _assemble(disc, fr, h0j, hj, check)


def levi(disc, s, rho="sum"):
    """Levi form d_s d_sbar of rho0, rho1 or their sum along the disc."""
    nv = hodge_norms(disc, s)
    return {"sum": nv.leviSum, "rho0": nv.levi0, "rho1": nv.levi1}[rho]


def rho_value(disc, s):
    nv = hodge_norms(disc, s)
    return nv.rho0 + nv.rho1


# ------------------------------------------------------------------ q-functions

def _hvec_ops(model):
    W = model.wedge
    QH, CH, NH = W.Qf, W.Cf, W.Nf
    Q = lambda x, y: np.einsum("ki,ij,kj->k", x, QH, y)
    cj = lambda x: np.conj(x) @ CH.T
    Nm = lambda x, k=1: x @ np.linalg.matrix_power(NH, k).T
    return Q, cj, Nm


def q_from_alpha(model, a1, a2):
    """q-functions of raw alpha columns (arrays (n, dimV)); no relations are assumed."""
    if model.kind not in ("Minimal", "Second", "Third"):
        raise NotApplicable(f"no q-functions are defined for {model.kind}")
    a1 = np.atleast_2d(np.asarray(a1, dtype=complex))
    a2 = np.atleast_2d(np.asarray(a2, dtype=complex))
    Q, cj, Nm = _hvec_ops(model)
    A = _wedge(model, a1, a2)
    Ab = cj(A)
    out = {"q0": Q(A, Ab).real}
    if model.kind == "Minimal":
        out["q1"] = (-1j * Q(A, Nm(Ab))).real
    elif model.kind == "Second":
        out["q2"] = (-Q(A, Nm(Ab, 2))).real
    else:
        out["q2"] = (-Q(A, Nm(Ab, 2))).real
        out["q1"] = (1j * Q(A, Nm(Ab))).real
    return out


def q_functions(disc, s):
    """q-functions of the alpha data of the disc at points s."""
    (a1, _), (a2, _) = disc.alpha_at(s)
    return q_from_alpha(disc.model, a1, a2)


def q_display(model, a1, a2):
    """Closed-form products quoted for the q-functions, from alpha entries."""
    a1 = np.atleast_2d(np.asarray(a1, dtype=complex))
    a2 = np.atleast_2d(np.asarray(a2, dtype=complex))
    rr = [r - 1 for r in model.rIndices]
    ab = lambda x: np.abs(x) ** 2
    if model.kind == "Minimal":
        return (1 + ab(a1[:, 5]) - ab(a1[:, rr]).sum(1)) * (1 - ab(a2[:, 2]))
    if model.kind == "Second":
        return 1 + ab(a1[:, 4]) - ab(a1[:, rr]).sum(1)
    if model.kind == "Third":
        return ((1 - ab(a1[:, 2]) - ab(a1[:, 3])) * (1 - ab(a2[:, 2]) - ab(a2[:, 3]))
                - ab(a1[:, 2] * np.conj(a2[:, 2]) + a1[:, 3] * np.conj(a2[:, 3])))
    raise NotApplicable(f"no q display for {model.kind}")


# ------------------------------------------------------------------ formula path

def hodge_norms_formula(disc, s, variant="derived"):
    """Transcription path: closed forms in alpha, beta and nu sections.

    variant="literal" uses the displays exactly as printed where they differ
    from the derived forms (Minimal beta_inf5 sign, Third h sign).
    """
    model = disc.model
    s = np.atleast_1d(np.asarray(s, dtype=complex))
    (a1, _), (a2, _) = disc.alpha_at(s)
    t1, _, _, _ = _log_data(disc, s) if not disc.inside_Z1 else (np.zeros(len(s), complex),) * 4
    inside = disc.inside_Z1 or (disc.frozen and disc.t1_const == 0)
    L = np.zeros(len(s)) if inside else np.log(np.abs(t1) ** 2)
    nu = npp.polyval(s, disc.nu) * np.ones(len(s))
    tau = t1 * nu
    Q, cj, Nm = _hvec_ops(model)
    wedge = lambda x, y: _wedge(model, x, y)
    n, d = len(s), model.dimV
    v = lambda j: np.tile(np.eye(d, dtype=complex)[j - 1], (n, 1))
    Nv = lambda x, k=1: x @ np.linalg.matrix_power(model.Nf, k).T
    c = lambda x: x[:, None] if x.ndim == 1 else x
    kind = model.kind
    i = 1j
    if kind == "Minimal":
        xi = tau
        A05 = wedge(a1, a2)
        b13 = v(3) - c(a1[:, 3]) * v(6)
        B06 = wedge(b13, a2)
        binf5 = wedge(v(3), v(6)) if variant == "literal" else wedge(v(6), b13)
        binf4 = -i * wedge(b13, Nv(a2)) - wedge(a1, v(6))
        A05b, B06b = cj(A05), cj(B06)
        ab = np.abs(xi) ** 2
        h = (-i * Q(A05, Nm(A05b)) + ab * L / TWO_PI
             + i * xi * Q(A05b, Nm(B06))
             + 0.5 * xi * Q(A05b, wedge(a1, v(6)) - wedge(v(5), a2))
             - i * np.conj(xi) * Q(A05, Nm(B06b))
             + 0.5 * np.conj(xi) * Q(A05, cj(wedge(a1, v(6))) - cj(wedge(v(5), a2)))
             - 0.5 * ab * (Q(B06, cj(binf4)) + Q(B06b, binf4))
             - 0.5 * xi ** 2 * Q(A05b + c(np.conj(xi)) * B06b, binf5 - c(i * L / TWO_PI) * Nm(binf5))
             - 0.5 * np.conj(xi) ** 2 * Q(A05 + c(xi) * B06, cj(binf5) + c(i * L / TWO_PI) * Nm(cj(binf5))))
        P = A05 + c(xi) * B06
        h0 = (i / TWO_PI * L * Q(A05, Nm(A05b)) - L ** 2 / (4 * math.pi ** 2) * ab
              + i / TWO_PI * L * (np.conj(xi) * Q(A05, Nm(B06b)) - xi * Q(A05b, Nm(B06)))
              + Q(P, cj(P)) + i / TWO_PI * L * ab * Q(B06, Nm(B06b)))
        h = h.real
    elif kind == "Second":
        xi = tau
        rr = [r - 1 for r in model.rIndices]
        x51 = a1[:, 4] - 0.5 * xi ** 2
        h = 1 + np.abs(xi) ** 2 + np.abs(x51) ** 2 - (np.abs(a1[:, rr]) ** 2).sum(1)
        b12 = v(3) - c(0.5 * xi) * v(5)
        P = wedge(a1, a2) + c(xi) * wedge(b12, a2)
        Pb = cj(P)
        h0 = -L ** 2 / (8 * math.pi ** 2) * Q(P, Nm(Pb, 2)) + i * L / TWO_PI * Q(P, Nm(Pb)) + Q(P, Pb)
    elif kind == "Third":
        X = model.Xf
        bm = lambda x: x @ X.T
        b1, b2 = bm(a1), bm(a2)
        a5, a6 = -i * Nv(a2), -i * Nv(a1)
        b5, b6 = bm(a5), bm(a6)
        A0 = wedge(a1, a2)
        B0 = wedge(a1, b2) + wedge(b1, a2) + c(tau) * wedge(b1, b2)
        Binf = -i * wedge(Nv(a2), b6) - wedge(b5, i * Nv(a1)) + c(tau) * wedge(b5, b6)
        A0b = cj(A0)
        lead = -0.5 * Q(A0, Nm(A0b, 2))
        if variant == "literal":
            h = lead + (tau * (Q(A0b, Binf) + Q(Binf, 0.5 * Nm(A0b, 2)))
                        + np.abs(tau) ** 2 * Q(B0, cj(Binf))).real
        else:
            h = lead - (tau * (Q(A0b, Binf) + 0.5 * Q(B0, Nm(A0b, 2)))
                        + np.abs(tau) ** 2 * Q(B0, cj(Binf))).real
        h = h.real
        P = A0 + c(tau) * B0
        Pb = cj(P)
        h0 = -L ** 2 / (8 * math.pi ** 2) * Q(P, Nm(Pb, 2)) + i * L / TWO_PI * Q(P, Nm(Pb)) + Q(P, Pb)
    elif kind in ("Fourth", "HodgeTate"):
        A0 = wedge(a1, a2)
        A0b = cj(A0)
        h0 = sum(((i * L / TWO_PI) ** k / math.factorial(k)) * Q(A0, Nm(A0b, k)) for k in range(5))
        h = 1 - np.abs(a1[:, 2]) ** 2 if kind == "Fourth" else np.ones(n)
    else:
        raise NotApplicable(kind)
    h0 = np.real(h0)
    if inside:
        h0 = np.full(n, np.inf)
    return NormValue(np.real(h), h0, np.where(np.isinf(h0), 0.0, 1 / h0), -np.log(np.real(h)))

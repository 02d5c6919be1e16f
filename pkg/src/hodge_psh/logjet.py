"""Asymptotic log-polynomials in t, conj(t), L = log|t|^2 and Wirtinger 2-jets."""

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .errors import NoLeadingTerm, SingularEvaluation


class LogPoly:
    """Finite sum of coeff * t^a * conj(t)^b * L^c with L = log|t|^2."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        self.terms = {}
        for k, v in (terms or {}).items():
            if v != 0:
                self.terms[tuple(int(x) for x in k)] = complex(v)

    @staticmethod
    def const(c):
        return LogPoly({(0, 0, 0): c})

    @staticmethod
    def t():
        return LogPoly({(1, 0, 0): 1})

    @staticmethod
    def tbar():
        return LogPoly({(0, 1, 0): 1})

    @staticmethod
    def L():
        return LogPoly({(0, 0, 1): 1})

    def __add__(self, o):
        o = o if isinstance(o, LogPoly) else LogPoly.const(o)
        out = dict(self.terms)
        for k, v in o.terms.items():
            out[k] = out.get(k, 0) + v
        return LogPoly(out)

    __radd__ = __add__

    def __neg__(self):
        return LogPoly({k: -v for k, v in self.terms.items()})

    def __sub__(self, o):
        return self + (-o if isinstance(o, LogPoly) else -complex(o))

    def __rsub__(self, o):
        return (-self) + o

    def __mul__(self, o):
        if not isinstance(o, LogPoly):
            return LogPoly({k: v * o for k, v in self.terms.items()})
        out = {}
        for (a, b, c), v in self.terms.items():
            for (a2, b2, c2), w in o.terms.items():
                k = (a + a2, b + b2, c + c2)
                out[k] = out.get(k, 0) + v * w
        return LogPoly(out)

    __rmul__ = __mul__

    def __pow__(self, n):
        out = LogPoly.const(1)
        for _ in range(n):
            out = out * self
        return out

    def conj(self):
        return LogPoly({(b, a, c): v.conjugate() for (a, b, c), v in self.terms.items()})

    def dt(self):
        out = {}
        for (a, b, c), v in self.terms.items():
            if a:
                out[(a - 1, b, c)] = out.get((a - 1, b, c), 0) + a * v
            if c:
                out[(a - 1, b, c - 1)] = out.get((a - 1, b, c - 1), 0) + c * v
        return LogPoly(out)

    def dtb(self):
        return self.conj().dt().conj()

    def __call__(self, t):
        t = complex(t)
        if t == 0:
            raise SingularEvaluation("LogPoly evaluated at t = 0", 0.0)
        L = math.log(abs(t) ** 2)
        tb = t.conjugate()
        return sum(v * t ** a * tb ** b * L ** c for (a, b, c), v in self.terms.items())

    def is_zero(self):
        return not self.terms

    def drop_small(self, rtol):
        """Remove coefficients below rtol times the largest one."""
        if not self.terms:
            return self
        scale = max(abs(v) for v in self.terms.values())
        return LogPoly({k: v for k, v in self.terms.items() if abs(v) > rtol * scale})

    def __repr__(self):
        return "LogPoly(" + ", ".join(f"{k}: {v:.6g}" for k, v in sorted(self.terms.items())) + ")"


@dataclass(frozen=True)
class LeadingTerm:
    monomial: tuple
    coeff: complex
    tied: tuple = ()            # all (monomial, coeff) at the leading order
    phase_dependent: bool = False

    def __iter__(self):
        yield self.monomial
        yield self.coeff


def logpoly_leading_term(p, rtol=0.0):
    """Term dominating as t -> 0: least a+b, then greatest power of L.

    Ties (same a+b and c, different a) are returned together and flagged
    phase dependent.
    """
    if rtol:
        p = p.drop_small(rtol)
    if p.is_zero():
        raise NoLeadingTerm("zero log-polynomial has no leading term")
    key = min(p.terms, key=lambda k: (k[0] + k[1], -k[2]))
    order = (key[0] + key[1], key[2])
    tied = tuple(sorted((k, v) for k, v in p.terms.items() if (k[0] + k[1], k[2]) == order))
    if len(tied) > 1:
        return LeadingTerm(tied[0][0], tied[0][1], tied, True)
    return LeadingTerm(key, p.terms[key], tied, key[0] != key[1])


def monomial_sign(monomial, coeff, tol=0.0):
    """Sign of coeff * |t|^{2a} * L^c for small |t| (L < 0), or 0 when |coeff| <= tol."""
    a, b, c = monomial
    if a != b:
        raise ValueError("phase-dependent monomial has no sign")
    re = complex(coeff).real
    if abs(re) <= tol:
        return 0
    return int(np.sign(re)) * (-1) ** c


class WirtingerJet2:
    """Value and first/mixed Wirtinger derivatives of a function of one complex variable.

    Components may be numpy arrays so a batch of points is carried at once.
    """

    __slots__ = ("f", "fs", "fsb", "fssb")

    def __init__(self, f, fs=0.0, fsb=0.0, fssb=0.0):
        self.f, self.fs, self.fsb, self.fssb = f, fs, fsb, fssb

    @staticmethod
    def const(c):
        return WirtingerJet2(c, 0.0 * c, 0.0 * c, 0.0 * c)

    @staticmethod
    def var(s):
        one = np.ones_like(s) if isinstance(s, np.ndarray) else 1.0
        return WirtingerJet2(s, one, 0.0 * one, 0.0 * one)

    @staticmethod
    def holomorphic(value, derivative):
        z = 0.0 * value
        return WirtingerJet2(value, derivative, z, z)

    @staticmethod
    def real_from(f, fs, fssb):
        """Jet of a real function from its value, d/ds and mixed derivative."""
        return WirtingerJet2(f, fs, np.conj(fs), fssb)

    def _lift(self, o):
        return o if isinstance(o, WirtingerJet2) else WirtingerJet2.const(o)

    def __add__(self, o):
        o = self._lift(o)
        return WirtingerJet2(self.f + o.f, self.fs + o.fs, self.fsb + o.fsb, self.fssb + o.fssb)

    __radd__ = __add__

    def __neg__(self):
        return WirtingerJet2(-self.f, -self.fs, -self.fsb, -self.fssb)

    def __sub__(self, o):
        return self + (-self._lift(o))

    def __rsub__(self, o):
        return (-self) + o

    def __mul__(self, o):
        o = self._lift(o)
        return WirtingerJet2(
            self.f * o.f,
            self.fs * o.f + self.f * o.fs,
            self.fsb * o.f + self.f * o.fsb,
            self.fssb * o.f + self.fs * o.fsb + self.fsb * o.fs + self.f * o.fssb,
        )

    __rmul__ = __mul__

    def _check(self, what):
        m = np.min(np.abs(self.f))
        if not m > 1e-300:
            raise SingularEvaluation(f"{what} of a vanishing value", float(m))

    def reciprocal(self):
        self._check("reciprocal")
        g = self.f
        return WirtingerJet2(
            1 / g, -self.fs / g ** 2, -self.fsb / g ** 2,
            -self.fssb / g ** 2 + 2 * self.fs * self.fsb / g ** 3,
        )

    def __truediv__(self, o):
        return self * self._lift(o).reciprocal()

    def __rtruediv__(self, o):
        return self._lift(o) * self.reciprocal()

    def log(self):
        self._check("log")
        g = self.f
        val = np.log(g) if isinstance(g, np.ndarray) else (math.log(g) if _is_pos_real(g) else cmath.log(g))
        return WirtingerJet2(val, self.fs / g, self.fsb / g, self.fssb / g - self.fs * self.fsb / g ** 2)

    def exp(self):
        e = np.exp(self.f)
        return WirtingerJet2(e, e * self.fs, e * self.fsb, e * (self.fssb + self.fs * self.fsb))

    def conj(self):
        return WirtingerJet2(np.conj(self.f), np.conj(self.fsb), np.conj(self.fs), np.conj(self.fssb))

    def real(self):
        c = self.conj()
        return WirtingerJet2((self.f + c.f) / 2, (self.fs + c.fs) / 2, (self.fsb + c.fsb) / 2,
                             (self.fssb + c.fssb) / 2)

    def abs2(self):
        return self * self.conj()

    def __repr__(self):
        return f"WirtingerJet2(f={self.f}, fs={self.fs}, fsb={self.fsb}, fssb={self.fssb})"


def _is_pos_real(g):
    return isinstance(g, (int, float)) and g > 0


def jet_eval(fn, s):
    """Evaluate fn on the jet of the coordinate s; fn uses jet arithmetic."""
    return fn(WirtingerJet2.var(s))


def fd_laplacian(f, s, step=None):
    """Central-difference d^2/ds ds-bar (= Laplacian/4) with one Richardson step."""
    s = complex(s)
    if step is None:
        step = 1e-3 * max(abs(s), 1e-3)

    def lap(d):
        return (f(s + d) + f(s - d) + f(s + 1j * d) + f(s - 1j * d) - 4 * f(s)) / (4 * d * d)

    return (4 * lap(step / 2) - lap(step)) / 3

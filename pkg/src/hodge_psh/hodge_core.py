"""Model vector spaces for the degeneration types and the induced data on H = wedge^2 V.

Basis vectors are numbered 1..dimV in names and docstrings and stored
0-based internally.  Every model is R-split and built in a basis adapted
to its Deligne splitting, so F and W are coordinate filtrations.
"""

from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from .errors import DimensionError, InvalidHodgeNumber, InvalidKind
from .exact import GaussQ, ONE, ZERO, I, XMat, bilinear, vec_add

KINDS = ("Interior", "Minimal", "Second", "Third", "Fourth", "HodgeTate")
MIN_H = {"Interior": 0, "Minimal": 2, "Second": 1, "Third": 4, "Fourth": 3, "HodgeTate": 0}

# opaque diamond labels, no semantics attached
M_LABEL = {"Interior": 4, "Minimal": 5, "Second": 6, "Third": 6, "Fourth": 7, "HodgeTate": 8}

_ALIASES = {k.lower(): k for k in KINDS}
_ALIASES.update({"hodge-tate": "HodgeTate", "hodge_tate": "HodgeTate", "ht": "HodgeTate"})


def canonical_kind(kind):
    try:
        return _ALIASES[str(kind).replace(" ", "").lower()]
    except KeyError:
        raise InvalidKind(f"unknown degeneration kind {kind!r}") from None


@dataclass(frozen=True, eq=False)
class DegenerationModel:
    kind: str
    h: int
    dimV: int
    Q: XMat
    conj: XMat          # conj(x) = conj @ x.conjugate()
    N: XMat
    bigrading: tuple    # (p, q) of each basis vector
    e0: tuple           # 0-based index pairs
    einf: tuple
    ed: tuple
    rIndices: tuple     # 1-based, as in the v_r naming
    sign_h: int = -1
    lift: tuple = ()    # how e_inf factors are reached from v1, v2: (column, coeff, power of N)
    X: XMat = None      # generator of the local zeta factor, None when zeta = alpha
    genuine: bool = True
    labels: tuple = field(default=())

    @property
    def F(self):
        return {p: frozenset(j for j, (a, _) in enumerate(self.bigrading) if a >= p) for p in range(0, 3)}

    @property
    def W(self):
        return {l: frozenset(j for j, (a, b) in enumerate(self.bigrading) if a + b <= l) for l in range(-1, 5)}

    @cached_property
    def Qf(self):
        return self.Q.to_numpy()

    @cached_property
    def Cf(self):
        return self.conj.to_numpy()

    @cached_property
    def Nf(self):
        return self.N.to_numpy()

    @cached_property
    def Xf(self):
        return None if self.X is None else self.X.to_numpy()

    @cached_property
    def wedge(self):
        return wedge_space(self)

    def basis_vector(self, j):
        """Sparse exact basis vector v_j (1-based)."""
        if not 1 <= j <= self.dimV:
            raise DimensionError(f"v_{j} outside 1..{self.dimV}")
        return {j - 1: ONE}

    def conj_vec(self, x):
        return self.conj.apply({k: v.conjugate() for k, v in x.items()})


def _mat(n, entries):
    return XMat.from_entries(n, n, {(a - 1, b - 1): c for (a, b), c in entries.items()})


def _antidiag(n_core, total, r_range, dim):
    ent = {(a, b): 1 for a in range(1, n_core + 1) for b in range(1, n_core + 1) if a + b == total}
    ent.update({(r, r): 1 for r in r_range})
    return _mat(dim, ent)


def _conj(dim, pairs, r_range, extra_real=()):
    """pairs: {j: (i, c)} meaning conj(v_j) = c v_i."""
    ent = {}
    for j, (i, c) in pairs.items():
        ent[(i, j)] = c
    for r in list(r_range) + list(extra_real):
        ent[(r, r)] = 1
    return _mat(dim, ent)


def build_model(kind, h):
    """Exact model for the given degeneration type and Hodge number h = h^{1,1}."""
    kind = canonical_kind(kind)
    if not isinstance(h, (int, np.integer)) or isinstance(h, bool):
        raise InvalidHodgeNumber(f"h must be an integer, got {h!r}")
    h = int(h)
    if h < MIN_H[kind]:
        raise InvalidHodgeNumber(f"{kind} needs h >= {MIN_H[kind]}, got {h}")
    return _BUILDERS[kind](h)


def _interior(h):
    d = h + 4
    rr = range(5, d + 1)
    Q = _antidiag(4, 5, rr, d)
    C = _conj(d, {1: (4, -1), 4: (1, -1), 2: (3, -1), 3: (2, -1)}, rr)
    big = ((2, 0), (2, 0), (0, 2), (0, 2)) + ((1, 1),) * len(rr)
    return DegenerationModel("Interior", h, d, Q, C, XMat(d, d), big, (0, 1), (0, 1), (2, 3),
                             tuple(rr), 1, (), None)


def _minimal(h):
    d = h + 4
    rr = range(7, d + 1)
    Q = _antidiag(6, 7, rr, d)
    C = _conj(d, {1: (6, -1), 6: (1, -1), 2: (3, 1), 3: (2, 1), 4: (5, 1), 5: (4, 1)}, rr)
    N = _mat(d, {(4, 2): I, (5, 3): -I})
    X = _mat(d, {(3, 1): 1, (6, 4): -1})
    big = ((2, 0), (2, 1), (1, 2), (1, 0), (0, 1), (0, 2)) + ((1, 1),) * len(rr)
    lift = ((0, ONE, 0), (1, -I, 1))
    return DegenerationModel("Minimal", h, d, Q, C, N, big, (0, 1), (0, 3), (4, 5), tuple(rr), -1, lift, X)


def _second(h):
    d = h + 4
    rr = range(6, d + 1)
    Q = _antidiag(5, 6, rr, d)
    C = _conj(d, {1: (5, -1), 5: (1, -1), 3: (3, -1)}, rr, extra_real=(2, 4))
    N = _mat(d, {(4, 3): I, (3, 2): -I})
    X = _mat(d, {(3, 1): 1, (5, 3): -1})
    big = ((2, 0), (2, 2), (1, 1), (0, 0), (0, 2)) + ((1, 1),) * len(rr)
    lift = ((0, ONE, 0), (1, ONE, 2))
    return DegenerationModel("Second", h, d, Q, C, N, big, (0, 1), (0, 3), (3, 4), tuple(rr), -1, lift, X)


def _third(h):
    d = h + 4
    rr = range(9, d + 1)
    Q = _antidiag(8, 9, rr, d)
    C = _conj(d, {1: (3, 1), 3: (1, 1), 2: (4, 1), 4: (2, 1), 5: (7, 1), 7: (5, 1), 6: (8, 1), 8: (6, 1)}, rr)
    N = _mat(d, {(6, 1): I, (8, 3): -I, (5, 2): I, (7, 4): -I})
    X = _mat(d, {(3, 2): 1, (7, 6): -1, (4, 1): -1, (8, 5): 1})
    big = ((2, 1), (2, 1), (1, 2), (1, 2), (1, 0), (1, 0), (0, 1), (0, 1)) + ((1, 1),) * len(rr)
    lift = ((1, -I, 1), (0, -I, 1))
    return DegenerationModel("Third", h, d, Q, C, N, big, (0, 1), (4, 5), (6, 7), tuple(rr), -1, lift, X)


def _fourth(h):
    d = h + 4
    rr = range(8, d + 1)
    Q = _antidiag(7, 8, rr, d)
    C = _conj(d, {1: (3, 1), 3: (1, 1), 4: (4, -1), 5: (7, 1), 7: (5, 1)}, rr, extra_real=(2, 6))
    N = _mat(d, {(5, 1): I, (7, 3): -I, (6, 4): I, (4, 2): -I})
    big = ((2, 1), (2, 2), (1, 2), (1, 1), (1, 0), (0, 0), (0, 1)) + ((1, 1),) * len(rr)
    lift = ((0, -I, 1), (1, ONE, 2))
    return DegenerationModel("Fourth", h, d, Q, C, N, big, (0, 1), (4, 5), (5, 6), tuple(rr), 1, lift, None)


def _hodge_tate(h):
    d = h + 4
    if h < 2:
        return _hodge_tate_small(h)
    # v1, v2 in I^{2,2}; u1 = v3, u2 = v4 in I^{1,1}; w1 = v5, w2 = v6 in I^{0,0}
    rr = range(7, d + 1)
    Q = _mat(d, {(1, 5): 1, (5, 1): 1, (2, 6): 1, (6, 2): 1, (3, 3): 1, (4, 4): 1,
                 **{(r, r): 1 for r in rr}})
    C = _conj(d, {3: (3, -1), 4: (4, -1)}, rr, extra_real=(1, 2, 5, 6))
    N = _mat(d, {(3, 1): -I, (4, 2): -I, (5, 3): I, (6, 4): I})
    big = ((2, 2), (2, 2), (1, 1), (1, 1), (0, 0), (0, 0)) + ((1, 1),) * len(rr)
    lift = ((0, ONE, 2), (1, ONE, 2))
    return DegenerationModel("HodgeTate", h, d, Q, C, N, big, (0, 1), (4, 5), (4, 5), tuple(rr), 1, lift, None)


def _hodge_tate_small(h):
    """Rank-one model used only for diamonds when h < 2 (no polarized N-string fits)."""
    d = h + 4
    rr = range(3, h + 3)
    w1, w2 = h + 3, h + 4
    Q = _mat(d, {(1, w2): 1, (w2, 1): 1, (2, w1): -1, (w1, 2): -1, **{(r, r): 1 for r in rr}})
    C = _conj(d, {1: (2, 1), 2: (1, 1), w1: (w2, -1), w2: (w1, -1)}, rr)
    N = _mat(d, {(w1, 1): I, (w2, 2): I})
    big = ((2, 2), (2, 2)) + ((1, 1),) * h + ((0, 0), (0, 0))
    return DegenerationModel("HodgeTate", h, d, Q, C, N, big, (0, 1), (w1 - 1, w2 - 1), (w1 - 1, w2 - 1),
                             tuple(rr), 1, (), None, genuine=False)


_BUILDERS = {"Interior": _interior, "Minimal": _minimal, "Second": _second,
             "Third": _third, "Fourth": _fourth, "HodgeTate": _hodge_tate}


# ---------------------------------------------------------------- wedge space

def _wedge_sparse(x, y, index):
    out = {}
    for i, a in x.items():
        for j, b in y.items():
            if i == j:
                continue
            k, c = (index[(i, j)], a * b) if i < j else (index[(j, i)], -(a * b))
            out = vec_add(out, {k: c})
    return out


@dataclass(frozen=True, eq=False)
class WedgeSpace:
    base: DegenerationModel
    dimH: int
    pairs: tuple
    index: dict
    inducedQ: XMat
    inducedConj: XMat
    inducedN: XMat

    def wedge(self, x, y):
        """Exact x ^ y for sparse vectors of V."""
        d = self.base.dimV
        if (x and max(x) >= d) or (y and max(y) >= d):
            raise DimensionError("vectors must lie in V")
        return _wedge_sparse(x, y, self.index)

    def element(self, i, j):
        """v_i ^ v_j for 1-based indices."""
        return self.wedge(self.base.basis_vector(i), self.base.basis_vector(j))

    @property
    def e0(self):
        return self.wedge({self.base.e0[0]: ONE}, {self.base.e0[1]: ONE})

    @property
    def einf(self):
        return self.wedge({self.base.einf[0]: ONE}, {self.base.einf[1]: ONE})

    @property
    def ed(self):
        return self.wedge({self.base.ed[0]: ONE}, {self.base.ed[1]: ONE})

    @property
    def bigrading(self):
        b = self.base.bigrading
        return tuple((b[i][0] + b[j][0], b[i][1] + b[j][1]) for i, j in self.pairs)

    @property
    def F(self):
        return {p: frozenset(k for k, (a, _) in enumerate(self.bigrading) if a >= p) for p in range(0, 5)}

    @property
    def W(self):
        return {l: frozenset(k for k, (a, b) in enumerate(self.bigrading) if a + b <= l) for l in range(-1, 9)}

    @cached_property
    def Qf(self):
        return self.inducedQ.to_numpy()

    @cached_property
    def Cf(self):
        return self.inducedConj.to_numpy()

    @cached_property
    def Nf(self):
        return self.inducedN.to_numpy()

    @cached_property
    def pair_arrays(self):
        i, j = zip(*self.pairs)
        return np.array(i, dtype=np.int64), np.array(j, dtype=np.int64)


def wedge_space(model):
    d = model.dimV
    pairs = tuple((i, j) for i in range(d) for j in range(i + 1, d))
    index = {p: k for k, p in enumerate(pairs)}
    Q, C, N = model.Q, model.conj, model.N
    qent = {}
    for k, (i, j) in enumerate(pairs):
        for a, qa in Q.rows.get(i, {}).items():
            for b, qb in Q.rows.get(j, {}).items():
                if a == b:
                    continue
                key, c = ((k, index[(a, b)]), qa * qb) if a < b else ((k, index[(b, a)]), -(qa * qb))
                qent[key] = qent.get(key, ZERO) + c
    cols_c, cols_n = {}, {}
    for k, (i, j) in enumerate(pairs):
        ei, ej = {i: ONE}, {j: ONE}
        cols_c[k] = _wedge_sparse(C.column(i), C.column(j), index)
        cols_n[k] = vec_add(_wedge_sparse(N.column(i), ej, index), _wedge_sparse(ei, N.column(j), index))
    n = len(pairs)
    CH = XMat.from_entries(n, n, {(r, k): v for k, col in cols_c.items() for r, v in col.items()})
    NH = XMat.from_entries(n, n, {(r, k): v for k, col in cols_n.items() for r, v in col.items()})
    return WedgeSpace(model, n, pairs, index, XMat.from_entries(n, n, qent), CH, NH)


def q_pair(space, x, y):
    """Q(x, y) on V (model) or H (wedge space), exact for sparse inputs.

    Dense numpy inputs are evaluated in floating point.
    """
    Q = space.Q if isinstance(space, DegenerationModel) else space.inducedQ
    if isinstance(x, dict) and isinstance(y, dict):
        if (x and max(x) >= Q.n) or (y and max(y) >= Q.n):
            raise DimensionError("vector outside the space")
        return bilinear(Q, x, y)
    x, y = np.asarray(x), np.asarray(y)
    if x.shape[-1] != Q.n or y.shape[-1] != Q.n:
        raise DimensionError(f"expected length {Q.n}, got {x.shape[-1]} and {y.shape[-1]}")
    Qf = space.Qf
    return x @ Qf @ y


def wedge(space, x, y):
    """x ^ y; exact for sparse dicts, floating for dense arrays."""
    if isinstance(space, DegenerationModel):
        space = space.wedge
    if isinstance(x, dict):
        return space.wedge(x, y)
    x, y = np.asarray(x), np.asarray(y)
    i, j = space.pair_arrays
    return x[..., i] * y[..., j] - x[..., j] * y[..., i]


def numeric_vector(x, n):
    v = np.zeros(n, dtype=complex)
    for k, c in x.items():
        v[k] = complex(c)
    return v

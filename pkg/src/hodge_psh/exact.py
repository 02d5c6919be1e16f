"""Exact Gaussian-rational scalars, sparse matrices and subspaces.

Vectors are sparse dicts {index: GaussQ} holding only nonzero entries.
Subspaces are kept in reduced row echelon form so that sums and
intersections (Zassenhaus) are plain row reductions with exact pivots.
"""

from fractions import Fraction

import numpy as np

from .errors import DimensionError


class GaussQ:
    """Complex number with rational real and imaginary parts."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        self.re = re if isinstance(re, Fraction) else Fraction(re)
        self.im = im if isinstance(im, Fraction) else Fraction(im)

    @staticmethod
    def of(x):
        if isinstance(x, GaussQ):
            return x
        if isinstance(x, complex):
            return GaussQ(Fraction(x.real), Fraction(x.imag))
        return GaussQ(x, 0)

    def __add__(self, o):
        o = GaussQ.of(o)
        return GaussQ(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __sub__(self, o):
        o = GaussQ.of(o)
        return GaussQ(self.re - o.re, self.im - o.im)

    def __rsub__(self, o):
        return GaussQ.of(o) - self

    def __neg__(self):
        return GaussQ(-self.re, -self.im)

    def __mul__(self, o):
        o = GaussQ.of(o)
        return GaussQ(self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def __truediv__(self, o):
        o = GaussQ.of(o)
        d = o.re * o.re + o.im * o.im
        if d == 0:
            raise ZeroDivisionError("division by exact zero")
        return GaussQ((self.re * o.re + self.im * o.im) / d, (self.im * o.re - self.re * o.im) / d)

    def __rtruediv__(self, o):
        return GaussQ.of(o) / self

    def conjugate(self):
        return GaussQ(self.re, -self.im)

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __eq__(self, o):
        if not isinstance(o, (GaussQ, int, Fraction, complex, float)):
            return NotImplemented
        o = GaussQ.of(o)
        return self.re == o.re and self.im == o.im

    def __hash__(self):
        return hash((self.re, self.im))

    def __complex__(self):
        return complex(float(self.re), float(self.im))

    def __repr__(self):
        if not self.im:
            return str(self.re)
        return f"({self.re}{'+' if self.im >= 0 else '-'}{abs(self.im)}i)"


ZERO = GaussQ(0)
ONE = GaussQ(1)
I = GaussQ(0, 1)


def vec_add(x, y, c=ONE):
    """Return x + c*y for sparse vectors."""
    out = dict(x)
    for k, v in y.items():
        w = out.get(k, ZERO) + c * v
        if w:
            out[k] = w
        else:
            out.pop(k, None)
    return out


def vec_scale(x, c):
    c = GaussQ.of(c)
    if not c:
        return {}
    return {k: c * v for k, v in x.items()}


def vec_conj(x):
    return {k: v.conjugate() for k, v in x.items()}


class XMat:
    """Sparse exact matrix stored as {row: {col: GaussQ}}."""

    __slots__ = ("n", "m", "rows")

    def __init__(self, n, m, rows=None):
        self.n, self.m = n, m
        self.rows = {}
        for i, r in (rows or {}).items():
            r = {j: GaussQ.of(v) for j, v in r.items() if v}
            if r:
                self.rows[i] = r

    @staticmethod
    def from_entries(n, m, entries):
        rows = {}
        for (i, j), v in entries.items():
            v = GaussQ.of(v)
            if v:
                rows.setdefault(i, {})[j] = rows.get(i, {}).get(j, ZERO) + v
        return XMat(n, m, rows)

    @staticmethod
    def identity(n):
        return XMat(n, n, {i: {i: ONE} for i in range(n)})

    def get(self, i, j):
        return self.rows.get(i, {}).get(j, ZERO)

    def column(self, j):
        return {i: r[j] for i, r in self.rows.items() if j in r}

    def apply(self, x):
        if x and max(x) >= self.m:
            raise DimensionError("vector does not fit matrix")
        out = {}
        for i, r in self.rows.items():
            acc = ZERO
            for j, v in r.items():
                xj = x.get(j)
                if xj is not None:
                    acc = acc + v * xj
            if acc:
                out[i] = acc
        return out

    def __matmul__(self, o):
        if self.m != o.n:
            raise DimensionError("shape mismatch in product")
        rows = {}
        for i, r in self.rows.items():
            acc = {}
            for k, v in r.items():
                ok = o.rows.get(k)
                if ok:
                    acc = vec_add(acc, ok, v)
            if acc:
                rows[i] = acc
        return XMat(self.n, o.m, rows)

    def __add__(self, o):
        rows = {i: dict(r) for i, r in self.rows.items()}
        for i, r in o.rows.items():
            rows[i] = vec_add(rows.get(i, {}), r)
        return XMat(self.n, self.m, rows)

    def scale(self, c):
        return XMat(self.n, self.m, {i: vec_scale(r, c) for i, r in self.rows.items()})

    def __sub__(self, o):
        return self + o.scale(-1)

    def transpose(self):
        ent = {(j, i): v for i, r in self.rows.items() for j, v in r.items()}
        return XMat.from_entries(self.m, self.n, ent)

    def conjugate(self):
        return XMat(self.n, self.m, {i: vec_conj(r) for i, r in self.rows.items()})

    def power(self, k):
        out = XMat.identity(self.n)
        for _ in range(k):
            out = out @ self
        return out

    def is_zero(self):
        return not self.rows

    def __eq__(self, o):
        return isinstance(o, XMat) and (self.n, self.m) == (o.n, o.m) and (self - o).is_zero()

    def to_numpy(self):
        a = np.zeros((self.n, self.m), dtype=complex)
        for i, r in self.rows.items():
            for j, v in r.items():
                a[i, j] = complex(v)
        return a


def bilinear(Q, x, y):
    """Exact x^T Q y for sparse vectors."""
    return sum((v * y.get(j, ZERO) for j, v in _pairs(Q, x)), ZERO)


def _pairs(Q, x):
    for i, xi in x.items():
        for j, q in Q.rows.get(i, {}).items():
            yield j, xi * q


class Subspace:
    """Subspace of an n-dimensional coordinate space in reduced echelon form."""

    __slots__ = ("n", "rows")

    def __init__(self, n, vecs=()):
        self.n = n
        self.rows = {}
        for v in vecs:
            self._insert(v)

    def _reduce(self, v):
        v = {k: c for k, c in v.items() if c}
        for p in [k for k in v if k in self.rows]:
            c = v.get(p)
            if c:
                v = vec_add(v, self.rows[p], -c)
        return v

    def _insert(self, v):
        v = self._reduce(v)
        if not v:
            return False
        p = min(v)
        v = vec_scale(v, ONE / v[p])
        for q, r in self.rows.items():
            c = r.get(p)
            if c:
                self.rows[q] = vec_add(r, v, -c)
        self.rows[p] = v
        return True

    @staticmethod
    def coordinate(n, indices):
        s = Subspace(n)
        s.rows = {i: {i: ONE} for i in indices}
        return s

    @property
    def dim(self):
        return len(self.rows)

    def basis(self):
        return [self.rows[p] for p in sorted(self.rows)]

    def contains(self, v):
        return not self._reduce(v)

    def __add__(self, o):
        s = Subspace(self.n)
        s.rows = dict(self.rows)
        for v in o.basis():
            s._insert(v)
        return s

    def intersect(self, o):
        if self.dim == 0 or o.dim == 0:
            return Subspace(self.n)
        if self.is_coordinate() and o.is_coordinate():
            return Subspace.coordinate(self.n, set(self.rows) & set(o.rows))
        n = self.n
        z = Subspace(2 * n)
        for u in self.basis():
            w = dict(u)
            w.update({n + k: c for k, c in u.items()})
            z._insert(w)
        for u in o.basis():
            z._insert(u)
        out = [{k - n: c for k, c in r.items()} for p, r in z.rows.items() if p >= n]
        return Subspace(n, out)

    def is_coordinate(self):
        return all(len(r) == 1 for r in self.rows.values())

    def image(self, A):
        return Subspace(A.n, [A.apply(v) for v in self.basis()])

    def conj_image(self, C):
        """Image under the antilinear map x -> C conj(x)."""
        return Subspace(C.n, [C.apply(vec_conj(v)) for v in self.basis()])

    def __eq__(self, o):
        return isinstance(o, Subspace) and self.n == o.n and self.rows == o.rows

    def __repr__(self):
        return f"Subspace(n={self.n}, dim={self.dim})"


def nullspace(A):
    """Basis of ker A as sparse vectors."""
    s = Subspace(A.m, [r for r in A.rows.values()])
    out = []
    for f in range(A.m):
        if f in s.rows:
            continue
        v = {f: ONE}
        for p, r in s.rows.items():
            c = r.get(f)
            if c:
                v[p] = -c
        out.append(v)
    return out


def kernel(A):
    return Subspace(A.m, nullspace(A))

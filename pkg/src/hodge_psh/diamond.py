"""Monodromy weight filtrations, Deligne splittings and Hodge diamonds."""

import json
from dataclasses import dataclass, field

from .errors import NotNilpotent, SplittingFailure
from .exact import Subspace, XMat, kernel
from .hodge_core import M_LABEL, DegenerationModel, WedgeSpace, build_model


class Filtration:
    """Filtration by subspaces indexed by integers.

    Levels below the stored range are 0 (increasing) or V (decreasing), and
    symmetrically above; `increasing` selects which.
    """

    def __init__(self, n, levels, increasing=True):
        self.n = n
        self.levels = dict(levels)
        self.increasing = increasing
        self.lo, self.hi = min(self.levels), max(self.levels)

    def __getitem__(self, k):
        if k < self.lo:
            return Subspace(self.n) if self.increasing else Subspace.coordinate(self.n, range(self.n))
        if k > self.hi:
            return Subspace.coordinate(self.n, range(self.n)) if self.increasing else Subspace(self.n)
        return self.levels[k]

    def __iter__(self):
        # stored levels only; without this, iteration would walk __getitem__ forever
        return iter(range(self.lo, self.hi + 1))

    def __contains__(self, k):
        return isinstance(k, int) and self.lo <= k <= self.hi

    def dims(self):
        return {k: v.dim for k, v in sorted(self.levels.items())}

    def __eq__(self, o):
        lo, hi = min(self.lo, o.lo) - 1, max(self.hi, o.hi) + 1
        return self.n == o.n and all(self[k] == o[k] for k in range(lo, hi + 1))


def coordinate_filtration(n, index_sets, increasing=True):
    return Filtration(n, {k: Subspace.coordinate(n, s) for k, s in index_sets.items()}, increasing)


def nilpotency_index(N):
    """Smallest k with N^k = 0."""
    P = XMat.identity(N.n)
    for k in range(1, N.n + 2):
        P = P @ N
        if P.is_zero():
            return k
    raise NotNilpotent(f"N^{N.n} != 0")


def weight_filtration(N, center):
    """Monodromy weight filtration of nilpotent N centred at `center`.

    W_{center+l} = sum_{j >= max(0,-l)} N^j ker N^{l+2j+1}.
    """
    n = N.n
    k = nilpotency_index(N) - 1
    powers = [XMat.identity(n)]
    for _ in range(2 * k + 2):
        powers.append(powers[-1] @ N)
    kers = {}

    def ker(m):
        if m > k:
            return Subspace.coordinate(n, range(n))
        if m not in kers:
            kers[m] = kernel(powers[m])
        return kers[m]

    levels = {}
    for l in range(-k - 1, k + 1):
        acc = Subspace(n)
        for j in range(max(0, -l), k + 1):
            acc = acc + ker(l + 2 * j + 1).image(powers[j])
        levels[center + l] = acc
    return Filtration(n, levels)


def deligne_splitting(W, F, conj):
    """Deligne bigrading I^{p,q} of the mixed Hodge structure (W, F).

    I^{p,q} = F^p & W_{p+q} & (cF^q & W_{p+q} + sum_{j>=1} cF^{q-j} & W_{p+q-j-1}),
    with cF the conjugate filtration.
    """
    n = W.n
    cF = {p: F[p].conj_image(conj) for p in range(F.lo, F.hi + 1)}

    def cFq(q):
        if q < F.lo:
            return Subspace.coordinate(n, range(n))
        if q > F.hi:
            return Subspace(n)
        return cF[q]

    out = {}
    for p in range(F.lo, F.hi + 1):
        for q in range(F.lo, F.hi + 1):
            w = p + q
            if W[w].dim == 0:
                continue
            inner = cFq(q).intersect(W[w])
            j = 1
            while W[w - j - 1].dim > 0:
                inner = inner + cFq(q - j).intersect(W[w - j - 1])
                j += 1
            I = F[p].intersect(W[w]).intersect(inner)
            if I.dim:
                out[(p, q)] = I
    total = sum(s.dim for s in out.values())
    span = Subspace(n)
    for s in out.values():
        span = span + s
    if total != n or span.dim != n:
        raise SplittingFailure(f"pieces have total dimension {total}, span {span.dim}, ambient {n}")
    return out


@dataclass
class DiamondTable:
    space: str
    shift: int
    entries: dict                 # (p, q) in display coordinates -> dim
    markers: dict = field(default_factory=dict)
    m_label: int = None

    def to_json(self):
        return json.dumps({
            "space": self.space, "shift": self.shift,
            "entries": [{"p": p, "q": q, "dim": d} for (p, q), d in sorted(self.entries.items())],
            "markers": {k: list(v) for k, v in self.markers.items()},
            "m": self.m_label,
        }, sort_keys=True)

    def text(self):
        ps = [p for p, _ in self.entries] or [0]
        qs = [q for _, q in self.entries] or [0]
        lines = []
        for q in range(max(qs), min(qs) - 1, -1):
            row = [f"{self.entries.get((p, q), 0) or '.':>4}" for p in range(min(ps), max(ps) + 1)]
            lines.append(f"{q:>3} |" + "".join(row))
        lines.append("     " + "".join(f"{p:>4}" for p in range(min(ps), max(ps) + 1)))
        return "\n".join(lines)


def model_filtrations(space):
    """(W, F, conj) for a model or its wedge space, from the adapted basis."""
    if isinstance(space, DegenerationModel):
        n, C = space.dimV, space.conj
    else:
        n, C = space.dimH, space.inducedConj
    W = coordinate_filtration(n, space.W)
    F = coordinate_filtration(n, space.F, increasing=False)
    return W, F, C


def diamond(model, space_tag="V", W=None, F=None):
    """Deligne-splitting dimensions of V or H; H is shown in coordinates shifted by -2."""
    space = model if space_tag == "V" else model.wedge
    W0, F0, C = model_filtrations(space)
    split = deligne_splitting(W or W0, F or F0, C)
    shift = 0 if space_tag == "V" else -2
    entries = {(p + shift, q + shift): s.dim for (p, q), s in split.items()}
    markers = {}
    if space_tag == "H":
        for name, vec in (("e0", space.e0), ("einf", space.einf), ("ed", space.ed)):
            for (p, q), s in split.items():
                if s.contains(vec):
                    markers[name] = (p + shift, q + shift)
    return DiamondTable(space_tag, shift, entries, markers, M_LABEL[model.kind])


def marked_entries(kind, h, space_tag):
    """Numbered nodes of the appendix diamonds (display coordinates)."""
    if space_tag == "V":
        return {
            "Interior": {(0, 2): 2, (1, 1): h, (2, 0): 2},
            "Minimal": {(0, 2): 1, (0, 1): 1, (1, 2): 1, (1, 0): 1, (2, 1): 1, (2, 0): 1},
            "Second": {(0, 2): 1, (0, 0): 1, (1, 1): h, (2, 2): 1, (2, 0): 1},
            "Third": {(0, 1): 2, (1, 2): 2, (1, 0): 2, (2, 1): 2},
            "Fourth": {(0, 1): 1, (0, 0): 1, (1, 2): 1, (1, 0): 1, (2, 2): 1, (2, 1): 1},
            "HodgeTate": {(0, 0): 2, (1, 1): h, (2, 2): 2},
        }[kind]
    return {
        "Interior": {(-2, 2): 1, (-1, 1): 2 * h, (1, -1): 2 * h, (2, -2): 1},
        "Minimal": {(-2, 1): 1, (-1, 2): 1, (-1, 0): h - 1, (-1, -1): 1, (1, 1): 1, (1, -2): 1, (2, -1): 1},
        "Second": {(2, 0): 1, (0, 2): 1, (-1, 1): h, (-1, -1): h, (1, -1): h, (1, 1): h, (0, -2): 1, (-2, 0): 1},
        "Third": {(2, 0): 1, (0, 2): 1, (-1, 1): 4, (-1, -1): 4, (1, -1): 4, (1, 1): 4, (0, -2): 1, (-2, 0): 1},
        "Fourth": {(2, 1): 1, (1, 2): 1, (-1, 1): 1, (-1, 0): h - 1, (-1, -2): 1, (-2, -1): 1},
        "HodgeTate": {(-2, -2): 1, (-1, -1): 2 * h, (1, 1): 2 * h, (2, 2): 1},
    }[kind]


def marked_markers(kind):
    return {
        "Interior": {"e0": (2, -2), "einf": (2, -2), "ed": (-2, 2)},
        "Minimal": {"e0": (2, -1), "einf": (1, -2), "ed": (-2, 1)},
        "Second": {"e0": (2, 0), "einf": (0, -2), "ed": (-2, 0)},
        "Third": {"e0": (2, 0), "einf": (0, -2), "ed": (-2, 0)},
        "Fourth": {"e0": (2, 1), "einf": (-1, -2), "ed": (-2, -1)},
        "HodgeTate": {"e0": (2, 2), "einf": (-2, -2), "ed": (-2, -2)},
    }[kind]


def hodge_numbers_H(h):
    """Hodge numbers of H = wedge^2 V for V of type (2, h, 2)."""
    return (1, 2 * h, h * (h - 1) // 2 + 4, 2 * h, 1)


def check_diamond(kind, h, space_tag):
    """Compare a computed diamond with the appendix marks; returns list of mismatches."""
    model = build_model(kind, h)
    table = diamond(model, space_tag)
    bad = []
    for pq, d in marked_entries(model.kind, h, space_tag).items():
        if table.entries.get(pq, 0) != d:
            bad.append(f"{space_tag}{pq}: expected {d}, got {table.entries.get(pq, 0)}")
    if space_tag == "H":
        for name, pq in marked_markers(model.kind).items():
            if table.markers.get(name) != pq:
                bad.append(f"marker {name}: expected {pq}, got {table.markers.get(name)}")
        hp = [0] * 5
        for (p, _), d in table.entries.items():
            hp[4 - (p + 2)] += d
        if tuple(hp) != hodge_numbers_H(h):
            bad.append(f"Hodge numbers {tuple(hp)} != {hodge_numbers_H(h)}")
    return bad

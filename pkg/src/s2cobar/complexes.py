"""Chain complexes with chosen bases, confined to a degree window.

Grading is homological throughout; an upper-graded object C^n lives in
degree -n. A complex is described lazily by ``basis(n)`` and a differential
on basis labels, so bar/cobar-type objects never need to be materialized
beyond the degrees a computation touches.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Hashable

from . import linalg
from .errors import WindowTooNarrow
from .vector import Vector


class ChainComplex:
    """A degreewise-finite chain complex with differential of degree -1.

    ``basis(n)`` must return the ordered basis of degree n for lo <= n <= hi.
    If ``bounded`` is true the complex is zero outside [lo, hi]; otherwise
    asking for a degree outside the window raises WindowTooNarrow.
    """

    def __init__(self, ring, basis: Callable[[int], list], d: Callable[[Hashable], Vector],
                 lo: int, hi: int, bounded: bool = False, degree=None, name: str = ""):
        self.ring = ring
        self._basis = basis
        self._d = d
        self.lo = lo
        self.hi = hi
        self.bounded = bounded
        self._degree = degree
        self.name = name
        self._cache = {}

    def basis(self, n: int) -> list:
        if n < self.lo or n > self.hi:
            if self.bounded:
                return []
            raise WindowTooNarrow(f"degree {n} outside window [{self.lo}, {self.hi}] of {self.name or 'complex'}")
        if n not in self._cache:
            self._cache[n] = list(self._basis(n))
        return self._cache[n]

    def degree(self, label) -> int:
        if self._degree is not None:
            return self._degree(label)
        for n in range(self.lo, self.hi + 1):
            if label in self.basis(n):
                return n
        raise KeyError(label)

    def d(self, label) -> Vector:
        return self._d(label)

    def dv(self, v: Vector) -> Vector:
        return v.apply(self._d)

    def matrix(self, n: int):
        """Block of d from degree n to degree n-1 (rows index degree n-1)."""
        src = self.basis(n)
        tgt = self.basis(n - 1)
        index = {b: i for i, b in enumerate(tgt)}
        M = linalg.zeros(len(tgt), len(src))
        for j, b in enumerate(src):
            for k, c in self._d(b).items():
                if k not in index:
                    raise WindowTooNarrow(f"d({b!r}) has term {k!r} outside the basis of degree {n - 1}")
                M[index[k]][j] = c
        return M

    def check_d_squared(self, lo=None, hi=None):
        """Return a list of (label, d(d(label))) violations in [lo, hi]."""
        lo = self.lo if lo is None else lo
        hi = self.hi if hi is None else hi
        bad = []
        for n in range(lo, hi + 1):
            for b in self.basis(n):
                dd = self.dv(self.d(b))
                if dd:
                    bad.append((b, dd))
        return bad

    @classmethod
    def from_dict(cls, ring, bases: dict, differential: dict, name=""):
        """Finite complex from {degree: [labels]} and {label: {label: coeff}}."""
        degs = [n for n in bases if bases[n]]
        lo, hi = (min(degs), max(degs)) if degs else (0, 0)
        deg_of = {b: n for n, bs in bases.items() for b in bs}
        d = {b: Vector(ring, differential.get(b, {})) for b in deg_of}
        return cls(ring, lambda n: bases.get(n, []), lambda b: d[b], lo, hi,
                   bounded=True, degree=deg_of.__getitem__, name=name)


@dataclass
class DegreeHomology:
    betti: int
    torsion: list
    representatives: list = field(default_factory=list)


@dataclass
class HomologyReport:
    ring: object
    degrees: dict  # n -> DegreeHomology

    def betti(self, n):
        return self.degrees[n].betti

    def torsion(self, n):
        return self.degrees[n].torsion

    def summary(self):
        return {n: (h.betti, tuple(h.torsion)) for n, h in sorted(self.degrees.items())}


def _column(M, j):
    return [row[j] for row in M]


def homology(X: ChainComplex, window, with_reps: bool = False) -> HomologyReport:
    """Homology of X in degrees window[0]..window[1].

    Over Z torsion is reported as Smith invariant factors; over a field only
    Betti numbers. Representatives are cycles, chosen deterministically from
    the normal-form transforms.
    """
    ring = X.ring
    lo, hi = window
    out = {}
    for n in range(lo, hi + 1):
        src = X.basis(n)
        A = X.matrix(n)  # C_n -> C_{n-1}
        B = X.matrix(n + 1)  # C_{n+1} -> C_n
        dim = len(src)
        if ring.is_field:
            out[n] = _field_homology(ring, A, B, src, dim, with_reps)
        elif ring.characteristic == 0:
            out[n] = _integer_homology(ring, A, B, src, dim, with_reps)
        else:
            raise NotImplementedError(f"homology over {ring} (not Z or a field)")
    return HomologyReport(ring, out)


def _integer_homology(ring, A, B, src, dim, with_reps):
    U, D, V = linalg.smith_normal_form(A, ncols=dim)
    r = sum(1 for i in range(min(len(D), dim)) if D[i][i])
    k = dim - r
    if k == 0:
        return DegreeHomology(0, [], [])
    K = [row[r:] for row in V]  # kernel basis as columns
    ncolsB = len(B[0]) if B and B[0] else (len(B[0]) if B else 0)
    if B and ncolsB:
        Vinv = linalg.inverse(V)
        Y = [row for row in linalg.matmul(Vinv, B)[r:]]
    else:
        Y = [[] for _ in range(k)]
    ncolY = len(Y[0]) if Y and Y[0] else 0
    if ncolY:
        UY, DY, _ = linalg.smith_normal_form(Y)
        diag = [DY[i][i] for i in range(min(k, ncolY))]
    else:
        UY = linalg.identity(k)
        diag = []
    diag = diag + [0] * (k - len(diag))
    torsion = [d for d in diag if d > 1]
    betti = sum(1 for d in diag if d == 0)
    reps = []
    if with_reps:
        UYinv = linalg.inverse(UY)
        for i, d in enumerate(diag):
            if d == 1:
                continue
            coords = _column(UYinv, i)
            vec = [sum(K[a][b] * coords[b] for b in range(k)) for a in range(dim)]
            reps.append(Vector(ring, {src[a]: vec[a] for a in range(dim) if vec[a]}))
    return DegreeHomology(betti, torsion, reps)


def _field_homology(ring, A, B, src, dim, with_reps):
    kernel = linalg.field_kernel(A, ring, dim) if dim else []
    image_rows = [_column(B, j) for j in range(len(B[0]) if B else 0)]
    R, piv = linalg.field_echelon(image_rows, ring, dim) if image_rows else ([], [])
    rank_b = len(piv)
    betti = len(kernel) - rank_b
    reps = []
    if with_reps and betti:
        rows, pivots = list(R), list(piv)
        for v in kernel:
            red = linalg.field_reduce(rows, pivots, v, ring)
            if any(red):
                reps.append(Vector(ring, {src[a]: v[a] for a in range(dim) if v[a]}))
                rows, pivots = linalg.field_echelon(rows + [red], ring, dim)
            if len(reps) == betti:
                break
    return DegreeHomology(betti, [], reps)


def tensor(X: ChainComplex, Y: ChainComplex, name="") -> ChainComplex:
    """X (x) Y with d(x(x)y) = dx(x)y + (-1)^|x| x(x)dy. Labels are pairs."""
    ring = X.ring

    def basis(n):
        out = []
        for p in range(X.lo, X.hi + 1):
            q = n - p
            if q < Y.lo or q > Y.hi:
                continue
            for x in X.basis(p):
                for y in Y.basis(q):
                    out.append((x, y))
        return out

    def d(label):
        x, y = label
        sx = -1 if X.degree(x) % 2 else 1
        acc = {}
        for k, c in X.d(x).items():
            acc[(k, y)] = acc.get((k, y), 0) + c
        for k, c in Y.d(y).items():
            acc[(x, k)] = acc.get((x, k), 0) + sx * c
        return Vector(ring, acc)

    def degree(label):
        return X.degree(label[0]) + Y.degree(label[1])

    bounded = X.bounded and Y.bounded
    return ChainComplex(ring, basis, d, X.lo + Y.lo, X.hi + Y.hi, bounded=bounded,
                        degree=degree, name=name or f"({X.name})(x)({Y.name})")


def suspend(X: ChainComplex, k: int) -> ChainComplex:
    """R[k] (x) X: degrees shift by k and d picks up (-1)^k."""
    sign = -1 if k % 2 else 1
    return ChainComplex(X.ring, lambda n: X.basis(n - k), lambda b: X.d(b) * sign,
                        X.lo + k, X.hi + k, bounded=X.bounded,
                        degree=lambda b: X.degree(b) + k, name=f"S^{k}({X.name})")


class LinearMap:
    """A map of graded modules of fixed degree ``shift`` given on basis labels."""

    def __init__(self, source: ChainComplex, target: ChainComplex, f, shift: int = 0, name=""):
        self.source = source
        self.target = target
        self._f = f
        self.shift = shift
        self.name = name

    def __call__(self, label) -> Vector:
        return self._f(label)

    def apply(self, v: Vector) -> Vector:
        return v.apply(self._f)

    def matrix(self, n):
        src = self.source.basis(n)
        tgt = self.target.basis(n + self.shift)
        index = {b: i for i, b in enumerate(tgt)}
        M = linalg.zeros(len(tgt), len(src))
        for j, b in enumerate(src):
            for k, c in self._f(b).items():
                if k not in index:
                    raise WindowTooNarrow(f"{self.name}({b!r}) has term {k!r} outside target degree {n + self.shift}")
                M[index[k]][j] = c
        return M

    def chain_map_defects(self, lo, hi):
        """Basis labels where d f != (-1)^shift f d, with the discrepancy."""
        sign = -1 if self.shift % 2 else 1
        bad = []
        for n in range(lo, hi + 1):
            for b in self.source.basis(n):
                lhs = self.target.dv(self._f(b))
                rhs = self.apply(self.source.d(b)) * sign
                if lhs != rhs:
                    bad.append((b, lhs - rhs))
        return bad


def cone(f: LinearMap, name="") -> ChainComplex:
    """Mapping cone of a degree-0 chain map f: X -> Y; acyclic iff f is a quasi-iso."""
    X, Y = f.source, f.target
    ring = X.ring

    def basis(n):
        return [("Y", y) for y in Y.basis(n)] + [("X", x) for x in X.basis(n - 1)]

    def d(label):
        tag, b = label
        if tag == "Y":
            return Y.d(b).map_keys(lambda k: ("Y", k))
        return f(b).map_keys(lambda k: ("Y", k)) - X.d(b).map_keys(lambda k: ("X", k))

    def degree(label):
        tag, b = label
        return Y.degree(b) if tag == "Y" else X.degree(b) + 1

    return ChainComplex(ring, basis, d, min(Y.lo, X.lo + 1), max(Y.hi, X.hi + 1),
                        bounded=X.bounded and Y.bounded, degree=degree,
                        name=name or f"cone({f.name})")


def quasi_iso_report(f: LinearMap, lo: int, hi: int):
    """Decide whether H_n(f) is an isomorphism for lo <= n <= hi.

    Uses the long exact sequence of the mapping cone: H_n(f) is iso for all
    n in [lo, hi] iff H_n(cone f) = 0 for n in [lo, hi + 1].
    """
    C = cone(f)
    rep = homology(C, (lo, hi + 1))
    bad = {n: (h.betti, h.torsion) for n, h in rep.degrees.items() if h.betti or h.torsion}
    return not bad, bad

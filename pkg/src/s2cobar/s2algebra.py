"""S2-algebras: products plus brace operations, and evaluation of any S2 sequence.

An S2-algebra is presented by a product and the braces x{y1,...,yn}, the
values of the generators (1,2,...,k) and (1,2,1,3,1,...,1,n+1,1). Any
complexity-2 surjection factors as an operadic composite of these
generators; ``parse_sequence`` finds that composite and ``evaluate`` runs
it with the Koszul signs dictated by the operad's own composition.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

from . import surjection as sj
from .complexes import ChainComplex
from .errors import ArityMismatch, NotACycle, NotComplexityTwo, WindowExceeded
from .rings import IntegersMod
from .vector import Vector, linear_sum


def koszul_sign(degrees: Sequence[int], order: Sequence[int]) -> int:
    """Sign of moving items with the given degrees into positions ``order``.

    ``order[i]`` is the index (into ``degrees``) of the item landing at
    position i.
    """
    s = 0
    for i in range(len(order)):
        if degrees[order[i]] % 2:
            for j in range(i + 1, len(order)):
                if order[j] < order[i] and degrees[order[j]] % 2:
                    s += 1
    return -1 if s % 2 else 1


class S2Algebra:
    """Interface for an S2-algebra with a chosen homogeneous basis.

    Subclasses implement ``degree``, ``basis``, ``d``, ``mul`` and ``brace``
    on basis labels; this class supplies the multilinear extensions. Braces
    with a unit input vanish automatically.
    """

    ring = None
    unit = None
    name = "A"

    def degree(self, label) -> int:
        raise NotImplementedError

    def basis(self, n: int) -> list:
        raise NotImplementedError

    def d(self, label) -> Vector:
        raise NotImplementedError

    def mul(self, a, b) -> Vector:
        raise NotImplementedError

    def brace(self, x, ys: tuple) -> Vector:
        raise NotImplementedError

    # -- linear extensions -------------------------------------------------

    def one(self) -> Vector:
        return Vector.basis(self.ring, self.unit)

    def vec(self, label, coeff=1) -> Vector:
        return Vector.basis(self.ring, label, coeff)

    def dv(self, v: Vector) -> Vector:
        return v.apply(self.d)

    def deg(self, v: Vector) -> int:
        """Degree of a nonzero homogeneous vector (0 for the zero vector)."""
        degs = {self.degree(k) for k in v.keys()}
        if len(degs) > 1:
            raise ValueError(f"inhomogeneous element {v!r}")
        return degs.pop() if degs else 0

    def mulv(self, x: Vector, y: Vector) -> Vector:
        ring = self.ring
        pairs = []
        for a, ca in x.items():
            for b, cb in y.items():
                if a == self.unit:
                    pairs.append((ca * cb, Vector.basis(ring, b)))
                elif b == self.unit:
                    pairs.append((ca * cb, Vector.basis(ring, a)))
                else:
                    pairs.append((ca * cb, self.mul(a, b)))
        return linear_sum(ring, pairs)

    def prod(self, *vs: Vector) -> Vector:
        out = self.one()
        for v in vs:
            out = self.mulv(out, v)
        return out

    def bracev(self, x: Vector, ys: Sequence[Vector]) -> Vector:
        """x{y1,...,yn}; with no arguments this is x itself."""
        if not ys:
            return x
        ring = self.ring
        terms = [[(k, c) for k, c in v.items() if k != self.unit] for v in (x, *ys)]
        if any(not t for t in terms):
            return Vector.zero(ring)
        pairs = []

        def rec(i, labels, coeff):
            if i == len(terms):
                pairs.append((coeff, self.brace(labels[0], tuple(labels[1:]))))
                return
            for k, c in terms[i]:
                rec(i + 1, labels + [k], coeff * c)

        rec(0, [], 1)
        return linear_sum(ring, pairs)

    def complex(self, lo: int, hi: int) -> ChainComplex:
        return ChainComplex(self.ring, self.basis, self.d, lo, hi, degree=self.degree, name=self.name)


class PresentedS2Algebra(S2Algebra):
    """An S2-algebra given by finite structure-constant tables.

    Missing product or brace entries are zero; products with the unit are
    implicit. Braces are keyed by (x, (y1, ..., yn)).
    """

    def __init__(self, ring, degrees: dict, unit, differential=None, products=None,
                 braces=None, name="A"):
        self.ring = ring
        self.degrees = dict(degrees)
        self.unit = unit
        self.name = name
        self._d = {k: Vector(ring, v) for k, v in (differential or {}).items()}
        self._mul = {k: Vector(ring, v) for k, v in (products or {}).items()}
        self._brace = {k: Vector(ring, v) for k, v in (braces or {}).items()}

    def degree(self, label):
        return self.degrees[label]

    def basis(self, n):
        return [b for b, k in self.degrees.items() if k == n]

    def d(self, label):
        return self._d.get(label, Vector.zero(self.ring))

    def mul(self, a, b):
        if a == self.unit:
            return Vector.basis(self.ring, b)
        if b == self.unit:
            return Vector.basis(self.ring, a)
        return self._mul.get((a, b), Vector.zero(self.ring))

    def brace(self, x, ys):
        return self._brace.get((x, tuple(ys)), Vector.zero(self.ring))

    def with_ring(self, ring, name=None):
        """Base change of the structure constants (e.g. Z -> Z/2)."""
        conv = lambda tab: {k: dict(v.items()) for k, v in tab.items()}
        return PresentedS2Algebra(ring, self.degrees, self.unit, conv(self._d), conv(self._mul),
                                  conv(self._brace), name=name or f"{self.name}(x){ring}")


class TrivialBraceAlgebra(S2Algebra):
    """A commutative algebra viewed as an S2-algebra with all braces zero."""

    def __init__(self, algebra):
        self.algebra = algebra
        self.ring = algebra.ring
        self.unit = algebra.unit
        self.name = getattr(algebra, "name", "A") + "[trivial braces]"

    def degree(self, label):
        return self.algebra.degree(label)

    def basis(self, n):
        return self.algebra.basis(n)

    def d(self, label):
        return self.algebra.d(label)

    def mul(self, a, b):
        return self.algebra.mul(a, b)

    def brace(self, x, ys):
        return Vector.zero(self.ring)


def circle_cochains(ring=None) -> PresentedS2Algebra:
    """Normalized cochains of S^1 = Delta[1]/boundary: x in degree -1, x{x} = -x."""
    from .rings import ZZ

    ring = ring or ZZ
    return PresentedS2Algebra(ring, {"1": 0, "x": -1}, "1",
                              braces={("x", ("x",)): {"x": -1}}, name="S*(S^1)")


def circle_cohomology(ring=None) -> PresentedS2Algebra:
    """H*(S^1) as a commutative S2-algebra: same algebra, all braces zero."""
    from .rings import ZZ

    ring = ring or ZZ
    return PresentedS2Algebra(ring, {"1": 0, "x": -1}, "1", name="H*(S^1)")


# -- parsing complexity-2 sequences ---------------------------------------

@dataclass(frozen=True)
class Leaf:
    slot: int


@dataclass(frozen=True)
class Product:
    factors: tuple


@dataclass(frozen=True)
class Brace:
    head: Leaf
    args: tuple


BraceExpression = Leaf | Product | Brace


def _scopes(u):
    first, last = {}, {}
    for i, x in enumerate(u):
        first.setdefault(x, i)
        last[x] = i
    return first, last


def parse_sequence(u) -> BraceExpression:
    """Brace/product expression tree of a complexity <= 2 surjection.

    Top-level scopes (first-to-last occurrence intervals) multiply in order;
    a repeated value becomes the head of a brace whose arguments are the
    parsed gaps between its consecutive occurrences.
    """
    u = tuple(u)
    first, last = _scopes(u)
    for a in first:
        for b in first:
            if first[a] < first[b] < last[a] < last[b]:
                raise NotComplexityTwo(f"{sj.fmt(u)} has complexity {sj.complexity(u)}")

    def parse_range(i, j):
        factors = []
        while i < j:
            v = u[i]
            end = last[v]
            if end == i:
                factors.append(Leaf(v))
            else:
                occ = [k for k in range(i, end + 1) if u[k] == v]
                gaps = tuple(parse_range(occ[t] + 1, occ[t + 1]) for t in range(len(occ) - 1))
                factors.append(Brace(Leaf(v), gaps))
            i = end + 1
        return factors[0] if len(factors) == 1 else Product(tuple(factors))

    return parse_range(0, len(u))


def leaves(t) -> list:
    if isinstance(t, Leaf):
        return [t.slot]
    if isinstance(t, Product):
        return [s for f in t.factors for s in leaves(f)]
    return [t.head.slot] + [s for a in t.args for s in leaves(a)]


def tree_str(t) -> str:
    if isinstance(t, Leaf):
        return f"x{t.slot}"
    if isinstance(t, Product):
        return "(" + "*".join(tree_str(f) for f in t.factors) + ")"
    return f"x{t.head.slot}{{" + ", ".join(tree_str(a) for a in t.args) + "}"


def _children(t):
    if isinstance(t, Product):
        return sj.product_generator(len(t.factors)), t.factors
    return sj.brace_generator(len(t.args)), (t.head,) + t.args


@lru_cache(maxsize=None)
def _tree_operation(t):
    """Composite of generators along t as a single (sequence, sign)."""
    if isinstance(t, Leaf):
        return (1,), 1
    gen, kids = _children(t)
    seq, sign = gen, 1
    for j in range(len(kids), 0, -1):
        kseq, ksign = _tree_operation(kids[j - 1])
        if kseq == (1,):
            continue
        terms = sj.compose_terms(seq, j, kseq)
        assert len(terms) == 1, "tree composites insert into single-occurrence slots"
        seq, c = terms[0]
        sign *= c * ksign
    return seq, sign


@lru_cache(maxsize=None)
def _standard_plan(u_std):
    tree = parse_sequence(u_std)
    seq, sign = _tree_operation(tree)
    assert seq == u_std, (seq, u_std)
    return tree, sign


def _eval_tree(A: S2Algebra, t, args, degs):
    """Evaluate t on args (indexed by slot-1); returns (Vector, degree of its operation)."""
    if isinstance(t, Leaf):
        return args[t.slot - 1], 0
    gen, kids = _children(t)
    vals, opdegs, outdegs = [], [], []
    for k in kids:
        v, od = _eval_tree(A, k, args, degs)
        vals.append(v)
        opdegs.append(od)
        outdegs.append(od + sum(degs[s - 1] for s in leaves(k)))
    sign = 0
    for j in range(len(kids)):
        if opdegs[j] % 2:
            sign += sum(outdegs[:j])
    if isinstance(t, Product):
        out = A.prod(*vals)
    else:
        out = A.bracev(vals[0], vals[1:])
    if sign % 2:
        out = -out
    return out, sj.degree(gen) + sum(opdegs)


def evaluate_surjection(A: S2Algebra, u, args: Sequence[Vector], degs=None) -> Vector:
    r = sj.arity(u)
    if len(args) != r:
        raise ArityMismatch(f"{sj.fmt(u)} has arity {r}, got {len(args)} inputs")
    if degs is None:
        degs = [A.deg(a) for a in args]
    if any(not a for a in args):
        return Vector.zero(A.ring)
    u_std, order = sj.standardize(u)
    kappa = koszul_sign(degs, [o - 1 for o in order])
    tree, eps = _standard_plan(u_std)
    new_args = [args[o - 1] for o in order]
    new_degs = [degs[o - 1] for o in order]
    out, _ = _eval_tree(A, tree, new_args, new_degs)
    return out if kappa * eps == 1 else -out


def evaluate(A: S2Algebra, z, args: Sequence[Vector]) -> Vector:
    """Value of an S2 operation (sequence or operad element) on homogeneous inputs."""
    if isinstance(z, tuple):
        return evaluate_surjection(A, z, args)
    degs = [A.deg(a) for a in args]
    pairs = []
    for u, c in z.items():
        if sj.complexity(u) > 2:
            raise NotComplexityTwo(f"{sj.fmt(u)} is not in S2")
        pairs.append((c, evaluate_surjection(A, u, args, degs)))
    return linear_sum(A.ring, pairs)


# -- identity checks --------------------------------------------------------

def _parity(n):
    return -1 if n % 2 else 1


def identity_diff_sides(A: S2Algebra, x: Vector, ys: Sequence[Vector]):
    """Both sides of the brace differential identity for x{y1..yn}."""
    n = len(ys)
    dx, dys = A.deg(x), [A.deg(y) for y in ys]
    lhs = A.dv(A.bracev(x, ys))
    rhs = A.mulv(A.bracev(x, ys[:-1]), ys[-1]) * _parity(n)
    rhs += A.mulv(ys[0], A.bracev(x, ys[1:])) * _parity(dx * dys[0] + (n - 1) * dys[0])
    for i in range(2, n + 1):
        merged = list(ys[: i - 2]) + [A.mulv(ys[i - 2], ys[i - 1])] + list(ys[i:])
        rhs += A.bracev(x, merged) * _parity(i - 1)
    rhs += A.bracev(A.dv(x), ys) * _parity(n)
    for i in range(1, n + 1):
        gamma = n + dx + sum(dys[: i - 1])
        new = list(ys)
        new[i - 1] = A.dv(ys[i - 1])
        rhs += A.bracev(x, new) * _parity(gamma)
    return lhs, rhs


def identity_mult_sides(A: S2Algebra, x: Vector, y: Vector, ys: Sequence[Vector]):
    """Both sides of the product-in-brace identity for (xy){y1..yn}."""
    n = len(ys)
    dx, dy, dys = A.deg(x), A.deg(y), [A.deg(v) for v in ys]
    lhs = A.bracev(A.mulv(x, y), ys)
    rhs = Vector.zero(A.ring)
    for i in range(n + 1):
        gamma = sum(dys[:i]) * dy + (n - i) * (dx + sum(dys[:i]))
        rhs += A.mulv(A.bracev(x, ys[:i]), A.bracev(y, ys[i:])) * _parity(gamma)
    return lhs, rhs


@dataclass
class IdentityReport:
    name: str
    ok: bool
    lhs: Vector
    rhs: Vector

    @property
    def discrepancy(self):
        return self.lhs - self.rhs


def check_identity_diff(A, x, ys) -> IdentityReport:
    lhs, rhs = identity_diff_sides(A, x, ys)
    return IdentityReport("brace differential", lhs == rhs, lhs, rhs)


def check_identity_mult(A, x, y, ys) -> IdentityReport:
    lhs, rhs = identity_mult_sides(A, x, y, ys)
    return IdentityReport("product in brace", lhs == rhs, lhs, rhs)


def action_law_sides(A: S2Algebra, u, i: int, v, args: Sequence[Vector]):
    """evaluate(u o_i v) versus the nested evaluation, with Koszul signs."""
    degs = [A.deg(a) for a in args]
    s = sj.arity(v)
    lhs = evaluate(A, sj.compose(Vector.basis(A.ring, u), i, Vector.basis(A.ring, v)), args)
    inner = evaluate(A, v, args[i - 1: i - 1 + s])
    outer_args = list(args[: i - 1]) + [inner] + list(args[i - 1 + s:])
    rhs = evaluate(A, u, outer_args) * _parity(sj.degree(v) * sum(degs[: i - 1]))
    return lhs, rhs


def chain_law_sides(A: S2Algebra, u, args: Sequence[Vector]):
    """d(u(a)) versus (du)(a) + (-1)^|u| sum +- u(.., da_i, ..)."""
    degs = [A.deg(a) for a in args]
    lhs = A.dv(evaluate(A, u, args))
    rhs = evaluate(A, sj.differential(Vector.basis(A.ring, u)), args)
    for k in range(len(args)):
        new = list(args)
        new[k] = A.dv(args[k])
        if new[k]:
            rhs += evaluate(A, u, new) * _parity(sj.degree(u) + sum(degs[:k]))
    return lhs, rhs


def equivariance_sides(A: S2Algebra, u, perm, args: Sequence[Vector]):
    """(perm.u)(a) versus u evaluated on the inputs pulled back along perm."""
    degs = [A.deg(a) for a in args]
    pu = sj.relabel(u, perm)
    lhs = evaluate(A, pu, args)
    # value perm[i] of pu plays the role of value i+1 of u
    order = [p - 1 for p in perm]
    rhs = evaluate(A, u, [args[o] for o in order]) * koszul_sign(degs, order)
    return lhs, rhs


# -- Steenrod operation ------------------------------------------------------

@dataclass
class SquareResult:
    cycle: Vector
    upper_degree: int
    nonzero_in_homology: bool


def is_boundary(A: S2Algebra, v: Vector) -> bool:
    """Decide v in im(d) by linear algebra in the degree of v."""
    from . import linalg

    if not v:
        return True
    n = A.deg(v)
    src = A.basis(n + 1)
    tgt = A.basis(n)
    index = {b: i for i, b in enumerate(tgt)}
    cols = []
    for b in src:
        col = [0] * len(tgt)
        for k, c in A.d(b).items():
            col[index[k]] = c
        cols.append(col)
    target = [v[b] for b in tgt]
    ring = A.ring
    if ring.is_field:
        if not cols:
            return not any(target)
        R, piv = linalg.field_echelon(cols, ring, len(tgt))
        return not any(linalg.field_reduce(R, piv, target, ring))
    H, piv = linalg.hermite_normal_form(cols, len(tgt)) if cols else ([], [])
    return not any(linalg.hnf_reduce(H, piv, target))


def steenrod_sq(A: S2Algebra, z: Vector) -> SquareResult:
    """Sq^{n-1}(z) = z{z} for a mod-2 cycle z of upper degree n."""
    if not (isinstance(A.ring, IntegersMod) and A.ring.m == 2):
        raise ValueError("Sq is defined here only over Z/2")
    if not z:
        return SquareResult(z, 0, False)
    if A.dv(z):
        raise NotACycle(f"{z!r} is not a cycle")
    sq = A.bracev(z, [z])
    n = -A.deg(z)
    return SquareResult(sq, 2 * n - 1, not is_boundary(A, sq))


def s2_basis_inputs(A: S2Algebra, lo: int, hi: int, include_unit=False):
    """All basis vectors of A in degrees lo..hi (optionally with the unit)."""
    out = []
    for n in range(lo, hi + 1):
        try:
            labels = A.basis(n)
        except WindowExceeded:
            continue
        for b in labels:
            if include_unit or b != A.unit:
                out.append(A.vec(b))
    return out

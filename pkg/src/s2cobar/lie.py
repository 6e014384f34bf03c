"""Graded Lie algebras, enveloping algebras in PBW form, Chevalley-Eilenberg
chains and cochains, and the twisting morphism from (UL)^v to C*(L)."""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations, permutations, product

from .barcobar import (Bar, CheckReport, Cobar, algebra_map_from_twisting, apply_linear,
                       is_hopf_twisting, is_twisting)
from .complexes import LinearMap, homology, quasi_iso_report
from .errors import AxiomViolation, InvalidValue, NonConfluentStraightening
from .hopf import Bialgebra, dual_label, dualize, undual_label
from .s2algebra import TrivialBraceAlgebra, evaluate, koszul_sign
from .vector import Vector, linear_sum


def _sgn(n):
    return -1 if n % 2 else 1


class GradedLieAlgebra:
    """Finite-dimensional graded Lie algebra in positive degrees.

    ``bracket`` maps ordered pairs (a, b) to {c: coeff}; missing pairs are
    filled in by graded antisymmetry. ``differential`` maps a to {b: coeff}
    with |b| = |a| - 1. The basis order is the insertion order of ``degrees``.
    """

    def __init__(self, ring, degrees: dict, bracket=None, differential=None, name="L", check=True):
        if not ring.has_half():
            raise InvalidValue(f"{ring} does not contain 1/2")
        self.ring = ring
        self.degrees = dict(degrees)
        self.labels = list(self.degrees)
        self.position = {x: i for i, x in enumerate(self.labels)}
        self.name = name
        for x, k in self.degrees.items():
            if k < 1:
                raise AxiomViolation("connected: degrees >= 1", x)
        table = {}
        for (a, b), v in (bracket or {}).items():
            table[(a, b)] = Vector(ring, v)
        for (a, b), v in list(table.items()):
            if (b, a) not in table:
                table[(b, a)] = v * (-_sgn(self.degrees[a] * self.degrees[b]))
        self._bracket = table
        self._d = {x: Vector(ring, v) for x, v in (differential or {}).items()}
        if check:
            self.check()

    def degree(self, x):
        return self.degrees[x]

    def bracket(self, a, b) -> Vector:
        return self._bracket.get((a, b), Vector.zero(self.ring))

    def bracketv(self, x: Vector, y: Vector) -> Vector:
        return linear_sum(self.ring, [(c * e, self.bracket(a, b)) for a, c in x.items() for b, e in y.items()])

    def d(self, x) -> Vector:
        return self._d.get(x, Vector.zero(self.ring))

    def dv(self, v: Vector) -> Vector:
        return v.apply(self.d)

    def check(self):
        """Raise AxiomViolation on the first failing basis instance."""
        ring, deg = self.ring, self.degree
        vec = lambda x: Vector.basis(ring, x)
        for x in self.labels:
            for k in self.d(x).keys():
                if deg(k) != deg(x) - 1:
                    raise AxiomViolation("d has degree -1", x)
            if self.dv(self.d(x)):
                raise AxiomViolation("d o d = 0", x)
        for a in self.labels:
            for b in self.labels:
                v = self.bracket(a, b)
                if any(deg(k) != deg(a) + deg(b) for k in v.keys()):
                    raise AxiomViolation("bracket is homogeneous", (a, b))
                if v + self.bracket(b, a) * _sgn(deg(a) * deg(b)):
                    raise AxiomViolation("graded antisymmetry", (a, b))
                lhs = self.dv(v)
                rhs = self.bracketv(self.d(a), vec(b)) + self.bracketv(vec(a), self.d(b)) * _sgn(deg(a))
                if lhs != rhs:
                    raise AxiomViolation("d is a derivation of the bracket", (a, b))
        for a in self.labels:
            for b in self.labels:
                for c in self.labels:
                    lhs = self.bracketv(vec(a), self.bracket(b, c))
                    rhs = (self.bracketv(self.bracket(a, b), vec(c))
                           + self.bracketv(vec(b), self.bracket(a, c)) * _sgn(deg(a) * deg(b)))
                    if lhs != rhs:
                        raise AxiomViolation("Jacobi", (a, b, c))

    def pbw_dimensions(self, cutoff):
        """Degreewise dimensions of the graded symmetric algebra on L (PBW count)."""
        dims = [1] + [0] * cutoff
        for x in self.labels:
            k = self.degrees[x]
            new = [0] * (cutoff + 1)
            for n in range(cutoff + 1):
                if k % 2:
                    new[n] = dims[n] + (dims[n - k] if n >= k else 0)
                else:
                    new[n] = sum(dims[n - m * k] for m in range(n // k + 1))
            dims = new
        return dims


def abelian(ring, degrees, name="abelian"):
    return GradedLieAlgebra(ring, degrees, name=name)


def heisenberg(ring, degrees=(2, 2, 4)):
    """<x, y, z> with [x, y] = z."""
    x, y, z = degrees
    if x + y != z:
        raise InvalidValue("need |z| = |x| + |y|")
    return GradedLieAlgebra(ring, {"x": x, "y": y, "z": z}, {("x", "y"): {"z": 1}}, name="heisenberg")


class UniversalEnvelope(Bialgebra):
    """UL with the PBW basis: nondecreasing label tuples, odd labels at most once.

    Products straighten the concatenated word by rewriting the leftmost
    out-of-order pair: ba = (-1)^{|a||b|} ab + [b, a], and xx = [x, x]/2 for odd x.
    """

    def __init__(self, L: GradedLieAlgebra, name=None):
        self.L = L
        self.ring = L.ring
        self.unit = ()
        self.name = name or f"U({L.name})"
        self._straight = {}
        self._half = self.ring.inv(2)

    def degree(self, m):
        return sum(self.L.degrees[x] for x in m)

    def reduced_degrees(self):
        return (min(self.L.degrees.values()), None) if self.L.labels else (1, 0)

    def basis(self, n):
        if n < 0:
            return []
        L = self.L
        out = []

        def rec(i, rest, word):
            if rest == 0:
                out.append(tuple(word))
                return
            for j in range(i, len(L.labels)):
                x = L.labels[j]
                k = L.degrees[x]
                if k > rest:
                    continue
                if k % 2 and word and word[-1] == x:
                    continue
                rec(j, rest - k, word + [x])

        rec(0, n, [])
        return out

    def _bad_pair(self, w):
        pos, deg = self.L.position, self.L.degrees
        for i in range(len(w) - 1):
            a, b = w[i], w[i + 1]
            if pos[a] > pos[b] or (a == b and deg[a] % 2):
                return i
        return None

    def rewrite(self, w, i):
        """One rewriting step at the pair (i, i+1), as a vector of words."""
        L = self.L
        a, b = w[i], w[i + 1]
        pre, post = w[:i], w[i + 2:]
        pairs = []
        if a == b:
            for c, k in L.bracket(a, a).items():
                pairs.append((k * self._half, Vector.basis(self.ring, pre + (c,) + post)))
        else:
            pairs.append((_sgn(L.degrees[a] * L.degrees[b]), Vector.basis(self.ring, pre + (b, a) + post)))
            for c, k in L.bracket(a, b).items():
                pairs.append((k, Vector.basis(self.ring, pre + (c,) + post)))
        return linear_sum(self.ring, pairs)

    def straighten(self, w) -> Vector:
        w = tuple(w)
        if w in self._straight:
            return self._straight[w]
        i = self._bad_pair(w)
        if i is None:
            out = Vector.basis(self.ring, w)
        else:
            out = self.rewrite(w, i).apply(self.straighten)
        self._straight[w] = out
        return out

    def check_confluence(self, cutoff):
        """Every length-3 word within the cutoff straightens to the same result from each first step."""
        L = self.L
        for w in product(L.labels, repeat=3):
            if self.degree(w) > cutoff:
                continue
            results = []
            for i in range(2):
                a, b = w[i], w[i + 1]
                if L.position[a] > L.position[b] or (a == b and L.degrees[a] % 2):
                    results.append(self.rewrite(w, i).apply(self.straighten))
            if len(results) == 2 and results[0] != results[1]:
                raise NonConfluentStraightening(f"{w!r} is not joinable: {results[0]!r} vs {results[1]!r}")
        return True

    def mul(self, a, b):
        return self.straighten(a + b)

    def coproduct(self, m):
        deg = self.L.degrees
        degs = [deg[x] for x in m]
        acc = {}
        k = len(m)
        for r in range(k + 1):
            for S in combinations(range(k), r):
                rest = [i for i in range(k) if i not in S]
                s = koszul_sign(degs, list(S) + rest)
                key = (tuple(m[i] for i in S), tuple(m[i] for i in rest))
                acc[key] = acc.get(key, 0) + s
        return Vector(self.ring, acc)

    def d(self, m):
        pairs = []
        pre = 0
        for i, x in enumerate(m):
            for y, c in self.L.d(x).items():
                pairs.append((_sgn(pre) * c, self.straighten(m[:i] + (y,) + m[i + 1:])))
            pre += self.L.degrees[x]
        return linear_sum(self.ring, pairs)


class CEChains(Bialgebra):
    """C_*(L): graded symmetric coalgebra on the suspension of L with the CE differential.

    A label is a tuple of Lie labels in basis order standing for
    sx_1 ... sx_k with |sx| = |x| + 1.
    """

    is_algebra = False

    def __init__(self, L: GradedLieAlgebra, name=None):
        self.L = L
        self.ring = L.ring
        self.unit = ()
        self.name = name or f"C_*({L.name})"

    def sdeg(self, x):
        return self.L.degrees[x] + 1

    def degree(self, w):
        return sum(self.sdeg(x) for x in w)

    def reduced_degrees(self):
        return (min(self.L.degrees.values()) + 1, None) if self.L.labels else (1, 0)

    def basis(self, n):
        if n < 0:
            return []
        L = self.L
        out = []

        def rec(i, rest, word):
            if rest == 0:
                out.append(tuple(word))
                return
            for j in range(i, len(L.labels)):
                x = L.labels[j]
                k = self.sdeg(x)
                if k > rest:
                    continue
                if k % 2 and word and word[-1] == x:
                    continue
                rec(j, rest - k, word + [x])

        rec(0, n, [])
        return out

    def normal(self, w, coeff=1) -> Vector:
        """Sort a word of suspended letters with Koszul signs; zero if an odd letter repeats."""
        pos = self.L.position
        order = sorted(range(len(w)), key=lambda i: pos[w[i]])
        s = koszul_sign([self.sdeg(x) for x in w], order)
        v = tuple(w[i] for i in order)
        for i in range(len(v) - 1):
            if v[i] == v[i + 1] and self.sdeg(v[i]) % 2:
                return Vector.zero(self.ring)
        return Vector.basis(self.ring, v, s * coeff)

    def coproduct(self, w):
        degs = [self.sdeg(x) for x in w]
        acc = {}
        k = len(w)
        for r in range(k + 1):
            for S in combinations(range(k), r):
                rest = [i for i in range(k) if i not in S]
                s = koszul_sign(degs, list(S) + rest)
                key = (tuple(w[i] for i in S), tuple(w[i] for i in rest))
                acc[key] = acc.get(key, 0) + s
        return Vector(self.ring, acc)

    def d(self, w):
        L = self.L
        degs = [self.sdeg(x) for x in w]
        pairs = []
        pre = 0
        for i, x in enumerate(w):
            for y, c in L.d(x).items():
                pairs.append((-_sgn(pre) * c, self.normal(w[:i] + (y,) + w[i + 1:])))
            pre += degs[i]
        for i, j in combinations(range(len(w)), 2):
            rest = [m for m in range(len(w)) if m not in (i, j)]
            s = koszul_sign(degs, [i, j] + rest) * _sgn(degs[i])
            tail = tuple(w[m] for m in rest)
            for z, c in L.bracket(w[i], w[j]).items():
                pairs.append((s * c, self.normal((z,) + tail)))
        return linear_sum(self.ring, pairs)


def ce_inclusion(CE: CEChains, BU: Bar):
    """sx_1 ... sx_k -> sum over permutations of Koszul-signed bar words [x_s1|...|x_sk]."""
    ring = CE.ring

    def f(w):
        degs = [CE.sdeg(x) for x in w]
        acc = {}
        for perm in permutations(range(len(w))):
            key = tuple((w[i],) for i in perm)
            acc[key] = acc.get(key, 0) + koszul_sign(degs, list(perm))
        return Vector(ring, acc)

    return f


@dataclass
class CEData:
    """Everything attached to L within a degree cutoff."""

    L: GradedLieAlgebra
    cutoff: int
    U: UniversalEnvelope
    BU: Bar
    CE: CEChains
    Ud: object  # (UL)^v, degrees -cutoff-2 .. 0
    Cst: TrivialBraceAlgebra  # C*(L) with zero braces
    alpha: object
    incl: object


def alpha_map(U: UniversalEnvelope, CE: CEChains, Ud, Cst):
    """Dual of C_*(L) -> L -> UL: (x)* -> (-1)^{|f|} (sx)*, zero on longer monomials."""
    ring = U.ring

    def a(f):
        m = undual_label(f)
        if len(m) != 1:
            return Vector.zero(ring)
        return Vector.basis(ring, dual_label(m), _sgn(Ud.degree(f)))

    return a


def build(L: GradedLieAlgebra, cutoff: int) -> CEData:
    U = UniversalEnvelope(L)
    U.check_confluence(cutoff + 2)
    BU = Bar(U)
    CE = CEChains(L)
    Ud = dualize(U, 0, cutoff + 2, name=f"U({L.name})^v")
    Cd = dualize(CE, 0, cutoff + 2, name=f"C^*({L.name})")
    Cst = TrivialBraceAlgebra(Cd)
    alpha = alpha_map(U, CE, Ud, Cst)
    return CEData(L, cutoff, U, BU, CE, Ud, Cst, alpha, ce_inclusion(CE, BU))


@dataclass
class CEReport:
    checks: dict = field(default_factory=dict)
    betti: dict = field(default_factory=dict)

    def add(self, name, ok, witness=None):
        self.checks.setdefault(name, CheckReport(name)).add(ok, witness)

    @property
    def ok(self):
        return all(r.ok for r in self.checks.values())

    def summary(self):
        return {k: (v.checked, len(v.failures)) for k, v in self.checks.items()}


def check_envelope(D: CEData, rep: CEReport):
    U, L = D.U, D.L
    dims = L.pbw_dimensions(D.cutoff)
    for n in range(D.cutoff + 1):
        rep.add("UL dimension = PBW count", len(U.basis(n)) == dims[n], (n, len(U.basis(n)), dims[n]))
    for n in range(1, D.cutoff + 1):
        for m in U.basis(n):
            D_ = U.coproduct(m)
            ok = D_[(m, ())] == 1 and D_[((), m)] == 1
            rep.add("coproduct is counital", ok, m)
    reduced = [m for n in range(1, D.cutoff + 1) for m in U.basis(n)]
    for a, b, c in product(reduced, repeat=3):
        if U.degree(a) + U.degree(b) + U.degree(c) > D.cutoff:
            continue
        lhs = U.mulv(U.mul(a, b), U.vec(c))
        rhs = U.mulv(U.vec(a), U.mul(b, c))
        rep.add("UL associative", lhs == rhs, (a, b, c))


def check_chains(D: CEData, rep: CEReport):
    """C_*(L) -> BUL is a chain map and a map of coalgebras; C_*(L) is cocommutative; d^2 = 0."""
    CE, BU, f, ring = D.CE, D.BU, D.incl, D.L.ring
    for n in range(0, D.cutoff + 1):
        for w in CE.basis(n):
            rep.add("CE d^2 = 0", not CE.dv(CE.d(w)), w)
            rep.add("inclusion is a chain map", BU.dv(f(w)) == apply_linear(f, CE.d(w), ring), w)
            left = linear_sum(ring, [(c, Vector(ring, {(x, y): a * b for x, a in f(p).items()
                                                       for y, b in f(q).items()}))
                                     for (p, q), c in CE.coproduct(w).items()])
            right = apply_linear(BU.coproduct, f(w), ring)
            rep.add("inclusion is a coalgebra map", left == right, w)
            cop = CE.coproduct(w)
            swapped = Vector(ring, {(q, p): c * _sgn(CE.degree(p) * CE.degree(q)) for (p, q), c in cop.items()})
            rep.add("C_*(L) cocommutative", cop == swapped, w)
    lo, hi = 0, D.cutoff
    fmap = LinearMap(CE.complex(lo - 2, hi + 3), BU.complex(lo - 2, hi + 3), f, name="CE -> BUL")
    iso, bad = quasi_iso_report(fmap, lo, hi)
    rep.add("C_*(L) -> BUL homology iso", iso, bad)


def check_alpha(D: CEData, rep: CEReport):
    lo, hi = -D.cutoff, -1
    tw = is_twisting(D.alpha, D.Ud, D.Cst, lo, hi)
    for ok, w in [(True, None)] * (tw.checked - len(tw.failures)) + [(False, w) for w in tw.failures]:
        rep.add("alpha is a twisting morphism", ok, w)
    hp = is_hopf_twisting(D.alpha, D.Ud, D.Cst, lo, hi)
    for ok, w in [(True, None)] * (hp.checked - len(hp.failures)) + [(False, w) for w in hp.failures]:
        rep.add("alpha is a Hopf twisting morphism", ok, w)
    for n in range(lo, 0):
        for f in D.Ud.reduced_basis(n):
            if len(undual_label(f)) >= 2:
                rep.add("alpha kills decomposables", not D.alpha(f), f)


def compare(D: CEData, rep: CEReport, ring_betti=True):
    """Omega (UL)^v -> C*(L) from alpha: chain map and homology iso on -cutoff..0."""
    OC = Cobar(D.Ud)
    G = algebra_map_from_twisting(D.alpha, OC, D.Cst)
    lo, hi = -D.cutoff, 0
    for n in range(lo, hi + 1):
        for w in OC.basis(n):
            rep.add("Omega(UL)^v -> C*(L) chain map", D.Cst.dv(G(w)) == apply_linear(G, OC.d(w), D.L.ring), w)
    X = OC.complex(lo - 3, hi + 3)
    Y = D.Cst.complex(lo - 3, hi + 3)
    iso, bad = quasi_iso_report(LinearMap(X, Y, G, name="Omega(UL)^v -> C*(L)"), lo, hi)
    rep.add("Omega(UL)^v -> C*(L) homology iso", iso, bad)
    if ring_betti:
        hx = homology(X, (lo, hi))
        hy = homology(Y, (lo, hi))
        rep.betti = {n: (hx.betti(n), hy.betti(n)) for n in range(lo, hi + 1)}
        rep.add("betti numbers match", all(a == b for a, b in rep.betti.values()), rep.betti)
    return OC, G


def check_tilde_map(D: CEData, rep: CEReport, max_pairs=None):
    """The S2-map S2(desusp (UL)^v-bar) -> C*(L) induced by alpha kills the ideal generators
    and commutes with differentials on the product and brace of two generators."""
    from .tildecobar import TildeCobar

    T = TildeCobar(D.Ud)
    F, A = T.F, D.Cst
    ring = D.L.ring

    def psi(z):
        pairs = []
        for (u, word), c in z.items():
            if not word:
                pairs.append((c, A.one()))
            else:
                pairs.append((c, evaluate(A, u, [D.alpha(g) for g in word])))
        return linear_sum(ring, pairs)

    letters = [c for n in range(-D.cutoff, 0) for c in D.Ud.reduced_basis(n)]
    count = 0
    for c1 in letters:
        for c2 in letters:
            if D.Ud.degree(c1) + D.Ud.degree(c2) < -D.cutoff:
                continue
            rep.add("ideal generators map to zero", not psi(T.ideal_generator(c1, c2)), (c1, c2))
            for u in [(1, 2), (1, 2, 1)]:
                z = F.element(u, (c1, c2))
                rep.add("induced S2-map is a chain map", psi(T.d(z)) == A.dv(psi(z)), (u, c1, c2))
            count += 1
            if max_pairs is not None and count >= max_pairs:
                return


def run_all(L: GradedLieAlgebra, cutoff: int, tilde=True) -> CEReport:
    D = build(L, cutoff)
    rep = CEReport()
    check_envelope(D, rep)
    check_chains(D, rep)
    check_alpha(D, rep)
    compare(D, rep)
    if tilde:
        check_tilde_map(D, rep)
    return rep

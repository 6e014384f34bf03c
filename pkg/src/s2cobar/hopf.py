"""Graded bialgebras with chosen bases: tensor Hopf algebras, divided powers,
table-presented bialgebras, degreewise duals, and axiom checks."""
from __future__ import annotations

from functools import lru_cache
from math import comb

from .complexes import ChainComplex
from .errors import AxiomViolation, WindowExceeded
from .vector import Vector, linear_sum


def _sgn(n):
    return -1 if n % 2 else 1


def words_of_degree(n, letters, lo, hi=None, max_length=None):
    """Words (tuples) of total shifted degree n.

    ``letters(s)`` lists the letters of shifted degree s; every letter has
    shifted degree in [lo, hi] (hi=None means unbounded). Without a length
    bound the letters must have positive shifted degree.
    """
    if max_length is None:
        if lo >= 1:
            max_length = max(n // lo, 0)
        elif hi is not None and hi <= -1:
            max_length = max(n // hi, 0)
        else:
            raise WindowExceeded("letters of degree 0 need an explicit max_length")
    if hi is None and lo < 1:
        raise WindowExceeded("unbounded letter degrees need positive lower bound")
    out = []

    def reachable(rest, k):
        if rest == 0:
            return True
        return any(lo * j <= rest and (hi is None or rest <= hi * j) for j in range(1, k + 1))

    def rec(prefix, remaining, slots):
        if remaining == 0:
            out.append(tuple(prefix))
        if slots == 0:
            return
        top = hi if hi is not None else remaining
        for s in range(lo, top + 1):
            if not reachable(remaining - s, slots - 1):
                continue
            for a in letters(s):
                prefix.append(a)
                rec(prefix, remaining - s, slots - 1)
                prefix.pop()

    rec([], n, max_length)
    return out


class Bialgebra:
    """Graded (co)algebra with a homogeneous basis.

    Subclasses provide ``degree``, ``basis``, ``d`` and either or both of
    ``mul`` and ``coproduct``. ``reduced_degrees`` gives (lo, hi) bounds for
    the degrees of the augmentation ideal (hi may be None).
    """

    ring = None
    unit = None
    name = "C"
    is_algebra = True
    is_coalgebra = True

    def degree(self, label):
        raise NotImplementedError

    def basis(self, n):
        raise NotImplementedError

    def d(self, label):
        return Vector.zero(self.ring)

    def mul(self, a, b):
        raise NotImplementedError

    def coproduct(self, label):
        raise NotImplementedError

    def reduced_degrees(self):
        raise NotImplementedError

    # -- derived operations ----------------------------------------------

    def one(self):
        return Vector.basis(self.ring, self.unit)

    def vec(self, label, coeff=1):
        return Vector.basis(self.ring, label, coeff)

    def dv(self, v):
        return v.apply(self.d)

    def counit(self, label):
        return 1 if label == self.unit else 0

    def reduced_basis(self, n):
        return [b for b in self.basis(n) if b != self.unit]

    def mulv(self, x, y):
        pairs = []
        for a, ca in x.items():
            for b, cb in y.items():
                pairs.append((ca * cb, self.mul(a, b)))
        return linear_sum(self.ring, pairs)

    def reduced_coproduct(self, label):
        if label == self.unit:
            return Vector.zero(self.ring)
        full = self.coproduct(label)
        acc = {k: c for k, c in full.items() if self.unit not in k}
        return Vector(self.ring, acc)

    def coproductv(self, v):
        return v.apply(self.coproduct)

    def iterated_coproduct(self, label, q):
        """Full q-fold diagonal, left-normed, as a Vector over q-tuples."""
        return _iterated(self, label, q, reduced=False)

    def iterated_reduced(self, label, k):
        """Reduced k-fold diagonal, left-normed; k = 1 gives the element itself."""
        return _iterated(self, label, k, reduced=True)

    def complex(self, lo, hi):
        return ChainComplex(self.ring, self.basis, self.d, lo, hi, degree=self.degree, name=self.name)


def _iterated(C, label, k, reduced):
    cache = C.__dict__.setdefault("_iter_cache", {})
    key = (label, k, reduced)
    if key in cache:
        return cache[key]
    ring = C.ring
    if k == 1:
        if reduced and label == C.unit:
            out = Vector.zero(ring)
        else:
            out = Vector.basis(ring, (label,))
    else:
        prev = _iterated(C, label, k - 1, reduced)
        acc = {}
        split = C.reduced_coproduct if reduced else C.coproduct
        for t, c in prev.items():
            for (a, b), e in split(t[0]).items():
                w = (a, b) + t[1:]
                acc[w] = acc.get(w, 0) + c * e
        out = Vector(ring, acc)
    cache[key] = out
    return out


def tensor_mul(C, x, y):
    """Product in C (x) C: (a(x)b)(c(x)e) = (-1)^{|b||c|} ac (x) be."""
    ring = C.ring
    pairs = []
    for (a, b), c1 in x.items():
        for (c, e), c2 in y.items():
            s = _sgn(C.degree(b) * C.degree(c))
            left = C.mul(a, c)
            right = C.mul(b, e)
            for p, cp in left.items():
                for q, cq in right.items():
                    pairs.append((s * c1 * c2 * cp * cq, Vector.basis(ring, (p, q))))
    return linear_sum(ring, pairs)


class FreeTensorBialgebra(Bialgebra):
    """T(V) on generators of positive degree.

    The reduced diagonal and differential are prescribed on generators
    (as vectors over word pairs / words) and extended multiplicatively and
    as a derivation. With empty tables this is the primitively generated
    tensor Hopf algebra.
    """

    def __init__(self, ring, generators: dict, reduced_diagonal=None, differential=None, name=None):
        for g, k in generators.items():
            if k < 1:
                raise ValueError(f"generator {g!r} must have positive degree")
        self.ring = ring
        self.generators = dict(generators)
        self.unit = ()
        self.name = name or "T(" + ",".join(map(str, generators)) + ")"
        self._gdiag = {g: Vector(ring, v) for g, v in (reduced_diagonal or {}).items()}
        self._gd = {g: Vector(ring, v) for g, v in (differential or {}).items()}
        self._cop = {}
        self._dcache = {}
        self._by_degree = {}
        for g, k in self.generators.items():
            self._by_degree.setdefault(k, []).append(g)

    @property
    def primitive(self):
        return not any(self._gdiag.values())

    def degree(self, w):
        return sum(self.generators[g] for g in w)

    def reduced_degrees(self):
        return (min(self.generators.values()), None) if self.generators else (1, 0)

    def basis(self, n):
        if n < 0:
            return []
        if n == 0:
            return [()]
        lo = min(self.generators.values()) if self.generators else 1
        return words_of_degree(n, lambda s: self._by_degree.get(s, []), lo,
                               max(self.generators.values(), default=0))

    def gen(self, g):
        return Vector.basis(self.ring, (g,))

    def mul(self, a, b):
        return Vector.basis(self.ring, a + b)

    def _gen_coproduct(self, g):
        acc = {((g,), ()): 1, ((), (g,)): 1}
        out = Vector(self.ring, acc)
        if g in self._gdiag:
            out = out + self._gdiag[g]
        return out

    def coproduct(self, w):
        if w in self._cop:
            return self._cop[w]
        if len(w) == 0:
            out = Vector.basis(self.ring, ((), ()))
        elif len(w) == 1:
            out = self._gen_coproduct(w[0])
        else:
            out = tensor_mul(self, self.coproduct(w[:1]), self.coproduct(w[1:]))
        self._cop[w] = out
        return out

    def d(self, w):
        if w in self._dcache:
            return self._dcache[w]
        pairs = []
        pre = 0
        for i, g in enumerate(w):
            dg = self._gd.get(g)
            if dg:
                for m, c in dg.items():
                    pairs.append((_sgn(pre) * c, Vector.basis(self.ring, w[:i] + m + w[i + 1:])))
            pre += self.generators[g]
        out = linear_sum(self.ring, pairs)
        self._dcache[w] = out
        return out


def tensor_hopf_algebra(ring, generators: dict, name=None):
    return FreeTensorBialgebra(ring, generators, name=name)


class DividedPowerAlgebra(Bialgebra):
    """Gamma[y] with |y| even: g_a g_b = C(a+b, a) g_{a+b}, Delta g_n = sum g_i (x) g_{n-i}.

    Over Z this is the Hopf algebra of binomial-coefficient polynomials,
    linearly dual to Z[t]; a small finite-type model of the numerical
    polynomial side of the S^1 example.
    """

    def __init__(self, ring, y_degree=2, name=None):
        if y_degree <= 0 or y_degree % 2:
            raise ValueError("divided powers need a positive even generator degree")
        self.ring = ring
        self.k = y_degree
        self.unit = 0
        self.name = name or f"Gamma[y_{y_degree}]"

    def degree(self, n):
        return n * self.k

    def reduced_degrees(self):
        return (self.k, None)

    def basis(self, n):
        if n < 0 or n % self.k:
            return []
        return [n // self.k]

    def mul(self, a, b):
        return Vector.basis(self.ring, a + b, comb(a + b, a))

    def coproduct(self, n):
        return Vector(self.ring, {(i, n - i): 1 for i in range(n + 1)})


class PresentedBialgebra(Bialgebra):
    """Finite bialgebra (or algebra / coalgebra) given by structure tables.

    ``products`` maps (a, b) to a dict, ``coproducts`` maps c to its
    *reduced* diagonal {(a, b): coeff}; unit terms are implicit.
    """

    def __init__(self, ring, degrees: dict, unit, differential=None, products=None,
                 coproducts=None, name="C", is_algebra=True, is_coalgebra=True):
        self.ring = ring
        self.degrees = dict(degrees)
        self.unit = unit
        self.name = name
        self.is_algebra = is_algebra
        self.is_coalgebra = is_coalgebra
        self._d = {k: Vector(ring, v) for k, v in (differential or {}).items()}
        self._mul = {k: Vector(ring, v) for k, v in (products or {}).items()}
        self._cop = {k: Vector(ring, v) for k, v in (coproducts or {}).items()}

    def degree(self, label):
        return self.degrees[label]

    def basis(self, n):
        return [b for b, k in self.degrees.items() if k == n]

    def reduced_degrees(self):
        ds = [k for b, k in self.degrees.items() if b != self.unit]
        return (min(ds), max(ds)) if ds else (1, 0)

    def d(self, label):
        return self._d.get(label, Vector.zero(self.ring))

    def mul(self, a, b):
        if a == self.unit:
            return Vector.basis(self.ring, b)
        if b == self.unit:
            return Vector.basis(self.ring, a)
        return self._mul.get((a, b), Vector.zero(self.ring))

    def coproduct(self, c):
        if c == self.unit:
            return Vector.basis(self.ring, (c, c))
        base = Vector(self.ring, {(c, self.unit): 1, (self.unit, c): 1})
        return base + self._cop.get(c, Vector.zero(self.ring))

    def tables(self):
        return {
            "degrees": dict(self.degrees),
            "differential": {k: dict(v.items()) for k, v in self._d.items() if v},
            "products": {k: dict(v.items()) for k, v in self._mul.items() if v},
            "coproducts": {k: dict(v.items()) for k, v in self._cop.items() if v},
        }


def truncate(C: Bialgebra, lo: int, hi: int, name=None) -> PresentedBialgebra:
    """Tables of C restricted to degrees lo..hi (products landing outside are dropped)."""
    degrees, dd, prods, cops = {}, {}, {}, {}
    for n in range(lo, hi + 1):
        for b in C.basis(n):
            degrees[b] = n
    for b in degrees:
        if b == C.unit:
            continue
        v = C.d(b)
        if v:
            dd[b] = {k: c for k, c in v.items() if k in degrees}
        if C.is_coalgebra:
            cops[b] = {k: c for k, c in C.reduced_coproduct(b).items()}
    if C.is_algebra:
        for a in degrees:
            for b in degrees:
                if a == C.unit or b == C.unit:
                    continue
                v = C.mul(a, b)
                v = {k: c for k, c in v.items() if k in degrees}
                if v:
                    prods[(a, b)] = v
    return PresentedBialgebra(C.ring, degrees, C.unit, dd, prods, cops,
                              name=name or f"{C.name}[{lo},{hi}]",
                              is_algebra=C.is_algebra, is_coalgebra=C.is_coalgebra)


# -- duals ---------------------------------------------------------------

def dual_label(b):
    return ("*", b)


def undual_label(b):
    assert isinstance(b, tuple) and len(b) == 2 and b[0] == "*", b
    return b[1]


def dualize(X: Bialgebra, lo: int, hi: int, name=None) -> PresentedBialgebra:
    """Degreewise dual of X restricted to degrees lo..hi.

    Basis duals b* sit in degree -|b|. Pairings of tensors follow the Koszul
    rule <f (x) g, a (x) b> = (-1)^{|g||a|} f(a) g(b), and the dual
    differential is (df)(x) = -(-1)^{|f|} f(dx). The product of X becomes
    the coproduct of the dual and vice versa.
    """
    ring = X.ring
    labels = {}
    for n in range(lo, hi + 1):
        for b in X.basis(n):
            labels[b] = n
    degrees = {dual_label(b): -n for b, n in labels.items()}
    unit = dual_label(X.unit)
    dd, prods, cops = {}, {}, {}
    for b, n in labels.items():
        # d(b*) = sum_c -(-1)^{|b*|} <b*, dc> c*
        for c in labels:
            if labels[c] == n + 1:
                coeff = X.d(c)[b]
                if coeff:
                    dd.setdefault(dual_label(b), {})[dual_label(c)] = -_sgn(n) * coeff
    if X.is_algebra:
        # Delta(f)(a (x) b) = f(ab); f_a* (x) f_b* pairs with a (x) b up to (-1)^{|b*||a|}
        for a in labels:
            for b in labels:
                if a == X.unit or b == X.unit:
                    continue
                for c, coeff in X.mul(a, b).items():
                    if c in labels:
                        key = dual_label(c)
                        s = _sgn(labels[b] * labels[a])
                        cops.setdefault(key, {})[(dual_label(a), dual_label(b))] = s * coeff
    if X.is_coalgebra:
        for c in labels:
            if c == X.unit:
                continue
            for (a, b), coeff in X.reduced_coproduct(c).items():
                if a in labels and b in labels:
                    s = _sgn(labels[b] * labels[a])
                    key = (dual_label(a), dual_label(b))
                    prods.setdefault(key, {})
                    prods[key][dual_label(c)] = prods[key].get(dual_label(c), 0) + s * coeff
    return PresentedBialgebra(ring, degrees, unit, dd, prods, cops,
                              name=name or f"{X.name}^v",
                              is_algebra=X.is_coalgebra, is_coalgebra=X.is_algebra)


# -- axiom checks ----------------------------------------------------------

def check_bialgebra(C: Bialgebra, lo: int, hi: int, hopf=True, raise_on_failure=False):
    """Degreewise axiom checks on basis elements in lo..hi; returns a list of failures."""
    failures = []
    ring = C.ring

    def fail(axiom, witness):
        if raise_on_failure:
            raise AxiomViolation(axiom, witness)
        failures.append((axiom, witness))

    elems = [(b, n) for n in range(lo, hi + 1) for b in C.basis(n)]
    for b, n in elems:
        if C.dv(C.d(b)):
            fail("d o d = 0", b)
    if C.is_coalgebra:
        for c, n in elems:
            D = C.coproduct(c)
            l_acc, r_acc = {}, {}
            for (a, b), k in D.items():
                for (x, y), e in C.coproduct(a).items():
                    l_acc[(x, y, b)] = l_acc.get((x, y, b), 0) + k * e
                for (x, y), e in C.coproduct(b).items():
                    r_acc[(a, x, y)] = r_acc.get((a, x, y), 0) + k * e
            if Vector(ring, l_acc) != Vector(ring, r_acc):
                fail("coassociativity", c)
            left_counit = Vector(ring, {b: k for (a, b), k in D.items() if a == C.unit})
            right_counit = Vector(ring, {a: k for (a, b), k in D.items() if b == C.unit})
            if left_counit != C.vec(c) or right_counit != C.vec(c):
                fail("counit", c)
            # d is a coderivation
            dD = {}
            for (a, b), k in D.items():
                for x, e in C.d(a).items():
                    dD[(x, b)] = dD.get((x, b), 0) + k * e
                for y, e in C.d(b).items():
                    dD[(a, y)] = dD.get((a, y), 0) + k * e * _sgn(C.degree(a))
            if Vector(ring, dD) != C.coproductv(C.d(c)):
                fail("coderivation", c)
    if C.is_algebra:
        for a, n in elems:
            for b, m in elems:
                ab = C.mul(a, b)
                lhs = C.dv(ab)
                rhs = C.mulv(C.d(a), C.vec(b)) + C.mulv(C.vec(a), C.d(b)) * _sgn(n)
                if lhs != rhs:
                    fail("Leibniz", (a, b))
                if hopf and C.is_coalgebra and n + m <= hi:
                    if C.coproductv(ab) != tensor_mul(C, C.coproduct(a), C.coproduct(b)):
                        fail("Hopf compatibility", (a, b))
                for c, k in elems:
                    if n + m + k > hi:
                        continue
                    if C.mulv(ab, C.vec(c)) != C.mulv(C.vec(a), C.mul(b, c)):
                        fail("associativity", (a, b, c))
    return failures


def check_double_dual(X: Bialgebra, lo: int, hi: int):
    """x -> (-1)^{|x|} x** is an isomorphism of (co)algebras with differential onto the double dual."""
    from .barcobar import CheckReport

    rep = CheckReport("double dual")
    XX = dualize(dualize(X, lo, hi), -hi, -lo)
    ring = X.ring
    labels = [b for n in range(lo, hi + 1) for b in X.basis(n)]
    inside = set(labels)

    def phi(v):
        acc = {}
        for k, c in v.items():
            if k in inside:
                acc[dual_label(dual_label(k))] = _sgn(X.degree(k)) * c
        return Vector(ring, acc)

    def phi2(v):
        acc = {}
        for (a, b), c in v.items():
            if a in inside and b in inside:
                key = (dual_label(dual_label(a)), dual_label(dual_label(b)))
                acc[key] = _sgn(X.degree(a) + X.degree(b)) * c
        return Vector(ring, acc)

    for b in labels:
        bb = dual_label(dual_label(b))
        rep.add(XX.degree(bb) == X.degree(b), ("degree", b))
        rep.add(XX.d(bb) * _sgn(X.degree(b)) == phi(X.d(b)), ("d", b))
        if X.is_coalgebra and b != X.unit:
            rep.add(XX.reduced_coproduct(bb) * _sgn(X.degree(b)) == phi2(X.reduced_coproduct(b)), ("coproduct", b))
    if X.is_algebra:
        for a in labels:
            for b in labels:
                if X.unit in (a, b):
                    continue
                lhs = XX.mul(dual_label(dual_label(a)), dual_label(dual_label(b))) * _sgn(X.degree(a) + X.degree(b))
                rep.add(lhs == phi(X.mul(a, b)), ("product", a, b))
    return rep

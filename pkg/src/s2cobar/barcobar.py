"""Bar and cobar constructions, twisting morphisms, the GV product on BA and
Kadeishvili's braces on the cobar construction of a Hopf algebra."""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations_with_replacement

from .complexes import LinearMap, quasi_iso_report
from .errors import NoWitness, NotATwistingMorphism
from .hopf import Bialgebra, words_of_degree
from .s2algebra import S2Algebra
from .vector import Vector, linear_sum


def _sgn(n):
    return -1 if n % 2 else 1


def _letter_degrees(X):
    """(lo, hi) degree bounds of the augmentation ideal of an algebra or coalgebra."""
    if hasattr(X, "reduced_degrees"):
        return X.reduced_degrees()
    degs = [X.degree(b) for b in X.degrees if b != X.unit]
    return (min(degs), max(degs)) if degs else (1, 0)


class Cobar(S2Algebra, Bialgebra):
    """Omega C = T(desusp C-bar), words of C-bar basis labels.

    A letter [c] has degree |c| - 1. When C is a Hopf algebra the braces are
    Kadeishvili's: on a singleton first argument only the one-argument brace
    survives, and longer first arguments expand by the product-in-brace rule.
    """

    is_coalgebra = False

    def __init__(self, C, max_length=None, name=None):
        self.C = C
        self.ring = C.ring
        self.unit = ()
        self.max_length = max_length
        self.name = name or f"Omega({C.name})"
        lo, hi = _letter_degrees(C)
        self._lo, self._hi = lo - 1, (None if hi is None else hi - 1)
        self._d_cache = {}
        self._brace_cache = {}

    def degree(self, w):
        return sum(self.C.degree(c) - 1 for c in w)

    def letter_degree(self, c):
        return self.C.degree(c) - 1

    def reduced_degrees(self):
        return (self._lo, self._hi)

    def basis(self, n):
        return words_of_degree(n, lambda s: self.C.reduced_basis(s + 1), self._lo, self._hi,
                               self.max_length)

    def word(self, *letters):
        return Vector.basis(self.ring, tuple(letters))

    def letter_d(self, c):
        """d[c] = -[dc] + sum (-1)^{|c'|} [c'|c'']."""
        pairs = [(-k, Vector.basis(self.ring, (x,))) for x, k in self.C.d(c).items() if x != self.C.unit]
        for (a, b), k in self.C.reduced_coproduct(c).items():
            pairs.append((_sgn(self.C.degree(a)) * k, Vector.basis(self.ring, (a, b))))
        return linear_sum(self.ring, pairs)

    def d(self, w):
        if w in self._d_cache:
            return self._d_cache[w]
        pairs = []
        pre = 0
        for i, c in enumerate(w):
            for m, k in self.letter_d(c).items():
                pairs.append((_sgn(pre) * k, Vector.basis(self.ring, w[:i] + m + w[i + 1:])))
            pre += self.letter_degree(c)
        out = linear_sum(self.ring, pairs)
        self._d_cache[w] = out
        return out

    def mul(self, a, b):
        return Vector.basis(self.ring, a + b)

    def coproduct(self, w):
        raise NotImplementedError("the cobar construction carries no coproduct here")

    # -- Kadeishvili braces ----------------------------------------------

    def _letter_products(self, factors):
        """Multilinear expansion of [p_1|...|p_q] where each p_i is a Vector in C."""
        ring = self.ring
        acc = {(): 1}
        for p in factors:
            new = {}
            for w, c in acc.items():
                for x, k in p.items():
                    if x == self.C.unit:
                        continue
                    key = w + (x,)
                    new[key] = new.get(key, 0) + c * k
            acc = new
        return Vector(ring, acc)

    def _singleton_brace(self, x, ys):
        """[x]{[y_1|...|y_q]} for a single word argument."""
        C = self.C
        q = len(ys)
        ydeg = [C.degree(y) - 1 for y in ys]
        pairs = []
        for parts, k in C.iterated_coproduct(x, q).items():
            alpha = C.degree(x) - 1
            for j in range(1, q):
                alpha += C.degree(parts[j]) * sum(ydeg[:j])
            prods = [C.mul(parts[i], ys[i]) for i in range(q)]
            pairs.append((_sgn(alpha) * k, self._letter_products(prods)))
        return linear_sum(self.ring, pairs)

    def brace(self, x, ys):
        key = (x, ys)
        if key in self._brace_cache:
            return self._brace_cache[key]
        ring = self.ring
        if not x or any(not y for y in ys):
            out = Vector.zero(ring)
        elif len(x) == 1:
            out = self._singleton_brace(x[0], ys[0]) if len(ys) == 1 else Vector.zero(ring)
        else:
            # (x1 . w'){b_1..b_p}: only the i = 0 and i = 1 terms survive
            head, rest = x[:1], x[1:]
            p = len(ys)
            dh, dr = self.degree(head), self.degree(rest)
            bdeg = [self.degree(y) for y in ys]
            g0 = p * dh
            out = self.mulv(self.vec(head), self.brace(rest, ys)) * _sgn(g0)
            g1 = bdeg[0] * dr + (p - 1) * (dh + bdeg[0])
            tail = self.brace(rest, ys[1:]) if p > 1 else self.vec(rest)
            out = out + self.mulv(self.brace(head, ys[:1]), tail) * _sgn(g1)
        self._brace_cache[key] = out
        return out


class Bar(Bialgebra):
    """BA = T(susp A-bar) with deconcatenation; a letter [a] has degree |a| + 1.

    If A is an S2-algebra the Gerstenhaber-Voronov product makes BA a Hopf
    algebra (``mul``); otherwise only the coalgebra structure is available.
    """

    def __init__(self, A, max_length=None, name=None):
        self.A = A
        self.ring = A.ring
        self.unit = ()
        self.max_length = max_length
        self.name = name or f"B({A.name})"
        lo, hi = _letter_degrees(A)
        self._lo, self._hi = lo + 1, (None if hi is None else hi + 1)
        self.is_algebra = isinstance(A, S2Algebra)
        self._d_cache = {}
        self._mul_cache = {}
        self._E_cache = {}

    def degree(self, w):
        return sum(self.A.degree(a) + 1 for a in w)

    def reduced_degrees(self):
        return (self._lo, self._hi)

    def basis(self, n):
        return words_of_degree(n, lambda s: [a for a in self.A.basis(s - 1) if a != self.A.unit],
                               self._lo, self._hi, self.max_length)

    def word(self, *letters):
        return Vector.basis(self.ring, tuple(letters))

    def d(self, w):
        if w in self._d_cache:
            return self._d_cache[w]
        A, ring = self.A, self.ring
        pairs = []
        m = 0
        for i, a in enumerate(w):
            for x, k in A.d(a).items():
                if x != A.unit:
                    pairs.append((-_sgn(m) * k, Vector.basis(ring, w[:i] + (x,) + w[i + 1:])))
            if i >= 1:
                for x, k in A.mul(w[i - 1], a).items():
                    if x != A.unit:
                        pairs.append((_sgn(m) * k, Vector.basis(ring, w[:i - 1] + (x,) + w[i + 1:])))
            m += A.degree(a) + 1
        out = linear_sum(ring, pairs)
        self._d_cache[w] = out
        return out

    def coproduct(self, w):
        return Vector(self.ring, {(w[:i], w[i:]): 1 for i in range(len(w) + 1)})

    # -- Gerstenhaber-Voronov product --------------------------------------

    def twisting_E(self, a, b):
        """E: BA (x) BA -> A, nonzero only on 1(x)[y], [x](x)1 and [x](x)[y1|..|yn]."""
        key = (a, b)
        if key in self._E_cache:
            return self._E_cache[key]
        A, ring = self.A, self.ring
        if len(a) == 0 and len(b) == 1:
            out = Vector.basis(ring, b[0])
        elif len(a) == 1 and len(b) == 0:
            out = Vector.basis(ring, a[0])
        elif len(a) == 1 and len(b) >= 1:
            n = len(b)
            s = n * A.degree(a[0]) + sum((n - i) * A.degree(y) for i, y in enumerate(b, 1))
            out = A.bracev(A.vec(a[0]), [A.vec(y) for y in b]) * _sgn(s)
        else:
            out = Vector.zero(ring)
        self._E_cache[key] = out
        return out

    def mul(self, a, b):
        key = (a, b)
        if key in self._mul_cache:
            return self._mul_cache[key]
        if not self.is_algebra:
            raise NotImplementedError("BA has a product only for S2-algebras A")
        ring = self.ring
        if not a or not b:
            out = Vector.basis(ring, a + b)
            self._mul_cache[key] = out
            return out
        acc = {}
        m, n = len(a), len(b)
        for k in range(1, m + n + 1):
            for ca in combinations_with_replacement(range(m + 1), k - 1):
                pa = _pieces(a, ca)
                for cb in combinations_with_replacement(range(n + 1), k - 1):
                    pb = _pieces(b, cb)
                    if any(not x and not y for x, y in zip(pa, pb)):
                        continue
                    sign = 0
                    for i in range(k):
                        di = self.degree(pa[i])
                        if di % 2:
                            sign += sum(self.degree(pb[j]) for j in range(i))
                    vals = [self.twisting_E(x, y) for x, y in zip(pa, pb)]
                    if any(not v for v in vals):
                        continue
                    words = {(): _sgn(sign)}
                    for v in vals:
                        words = {w + (x,): c * e for w, c in words.items() for x, e in v.items()
                                 if x != self.A.unit}
                    for w, c in words.items():
                        acc[w] = acc.get(w, 0) + c
        out = Vector(ring, acc)
        self._mul_cache[key] = out
        return out


def _pieces(w, cuts):
    bounds = (0,) + tuple(cuts) + (len(w),)
    return [w[bounds[i]:bounds[i + 1]] for i in range(len(bounds) - 1)]


# -- twisting morphisms ----------------------------------------------------

@dataclass
class CheckReport:
    name: str
    checked: int = 0
    failures: list = field(default_factory=list)

    @property
    def ok(self):
        return not self.failures

    def add(self, ok, witness):
        self.checked += 1
        if not ok:
            self.failures.append(witness)


def apply_linear(f, v: Vector, ring) -> Vector:
    return linear_sum(ring, [(c, f(k)) for k, c in v.items()])


def twisting_defect(f, C, A, c) -> Vector:
    """(df + fd)(c) - m(f (x) f) reduced-Delta(c), with the Koszul sign of f."""
    ring = A.ring
    lhs = A.dv(f(c)) + apply_linear(f, C.d(c), ring)
    rhs = linear_sum(ring, [(k * _sgn(C.degree(a)), A.mulv(f(a), f(b)))
                            for (a, b), k in C.reduced_coproduct(c).items()])
    return lhs - rhs


def is_twisting(f, C, A, lo, hi, raise_on_failure=False) -> CheckReport:
    rep = CheckReport("twisting morphism")
    for n in range(lo, hi + 1):
        for c in C.reduced_basis(n):
            defect = twisting_defect(f, C, A, c)
            rep.add(not defect, (n, c, defect))
            if defect and raise_on_failure:
                raise NotATwistingMorphism(f"twisting equation fails in degree {n} on {c!r}: {defect!r}")
    return rep


def universal_cobar_twisting(OC: Cobar):
    """C -> Omega C, c -> [c]."""
    unit = OC.C.unit
    return lambda c: Vector.zero(OC.ring) if c == unit else Vector.basis(OC.ring, (c,))


def bar_projection(BA: Bar):
    """BA -> A, [a] -> a and zero on other word lengths."""
    return lambda w: Vector.basis(BA.ring, w[0]) if len(w) == 1 else Vector.zero(BA.ring)


def coalgebra_map_from_twisting(f, C, BA: Bar):
    """c -> sum_k [f(c1)|...|f(ck)] over the reduced iterated diagonal."""
    ring = BA.ring
    cache = {}

    def F(c):
        if c in cache:
            return cache[c]
        if c == C.unit:
            out = Vector.basis(ring, ())
        else:
            acc = {}
            k = 1
            while True:
                it = C.iterated_reduced(c, k)
                if not it:
                    break
                for parts, coeff in it.items():
                    words = {(): coeff}
                    for p in parts:
                        v = f(p)
                        words = {w + (x,): a * b for w, a in words.items() for x, b in v.items()
                                 if x != BA.A.unit}
                    for w, a in words.items():
                        acc[w] = acc.get(w, 0) + a
                k += 1
            out = Vector(ring, acc)
        cache[c] = out
        return out

    return F


def algebra_map_from_twisting(f, OC: Cobar, A):
    """[c1|...|ck] -> f(c1)...f(ck)."""

    def G(w):
        out = A.one()
        for c in w:
            out = A.mulv(out, f(c))
        return out

    return G


def twisting_from_coalgebra_map(F, BA: Bar):
    return lambda c: linear_sum(BA.ring, [(k, Vector.basis(BA.ring, w[0])) for w, k in F(c).items()
                                          if len(w) == 1])


def twisting_from_algebra_map(G):
    return lambda c: G((c,))


def is_hopf_twisting(f, C, A, lo, hi) -> CheckReport:
    """f(c1 c2) = sum (-1)^alpha f(c1){f(c2_1),...,f(c2_k)} on basis pairs of total degree <= hi."""
    rep = CheckReport("Hopf twisting morphism")
    ring = A.ring
    Cr = C.reduced_degrees()[0]
    for n1 in range(max(lo, Cr), hi + 1):
        for c1 in C.reduced_basis(n1):
            for n2 in range(Cr, hi - n1 + 1):
                for c2 in C.reduced_basis(n2):
                    lhs = apply_linear(f, C.mul(c1, c2), ring)
                    rhs = hopf_twisting_rhs(f, C, A, c1, c2)
                    rep.add(lhs == rhs, (c1, c2, lhs - rhs))
    return rep


def hopf_twisting_rhs(f, C, A, c1, fv2_or_c2, f_first=None):
    """sum_k (-1)^alpha f(c1){f(c2^(1)),...,f(c2^(k))}."""
    ring = A.ring
    c2 = fv2_or_c2
    x = f_first if f_first is not None else f(c1)
    d1 = C.degree(c1)
    pairs = []
    k = 1
    while True:
        it = C.iterated_reduced(c2, k)
        if not it:
            break
        for parts, coeff in it.items():
            alpha = k * (d1 - 1) + sum((k - i) * (C.degree(p) - 1) for i, p in enumerate(parts, 1))
            pairs.append((_sgn(alpha) * coeff, A.bracev(x, [f(p) for p in parts])))
        k += 1
    return linear_sum(ring, pairs)


def extend_hopf_twisting_free(C, f0, A):
    """Extend f0 on the generators of a primitively generated T(V) to a Hopf twisting morphism."""
    if not getattr(C, "primitive", False):
        from .errors import NotPrimitivelyGenerated

        raise NotPrimitivelyGenerated("extension formula needs primitive generators")
    cache = {}

    def f(w):
        if w in cache:
            return cache[w]
        if len(w) == 0:
            out = Vector.zero(A.ring)
        elif len(w) == 1:
            out = f0(w[0])
        else:
            out = hopf_twisting_rhs(f, C, A, w[:1], w[1:])
        cache[w] = out
        return out

    return f


# -- unit map C -> B Omega C -------------------------------------------------

@dataclass
class UnitMapReport:
    chain_map: CheckReport
    coalgebra_map: CheckReport
    algebra_map: CheckReport
    quasi_iso: dict

    @property
    def ok(self):
        return (self.chain_map.ok and self.coalgebra_map.ok and self.algebra_map.ok
                and self.quasi_iso["iso"])


def unit_map(C, hi, max_length=None):
    """The Hopf map C -> B Omega C from the universal twisting morphism."""
    OC = Cobar(C, max_length=max_length)
    BOC = Bar(OC, max_length=max_length)
    tau = universal_cobar_twisting(OC)
    return OC, BOC, coalgebra_map_from_twisting(tau, C, BOC)


def check_unit_map(C, hi, lo=0) -> UnitMapReport:
    OC, BOC, F = unit_map(C, hi)
    ring = C.ring
    chain = CheckReport("chain map")
    coal = CheckReport("coalgebra map")
    alg = CheckReport("algebra map")
    for n in range(lo, hi + 1):
        for c in C.basis(n):
            lhs = BOC.dv(F(c))
            rhs = apply_linear(F, C.d(c), ring)
            chain.add(lhs == rhs, c)
            left = apply_linear(lambda ab: _tensor_vec(F(ab[0]), F(ab[1]), ring), C.coproduct(c), ring)
            right = apply_linear(BOC.coproduct, F(c), ring)
            coal.add(left == right, c)
    for n1 in range(lo, hi + 1):
        for c1 in C.basis(n1):
            for n2 in range(lo, hi - n1 + 1):
                for c2 in C.basis(n2):
                    lhs = apply_linear(F, C.mul(c1, c2), ring)
                    rhs = BOC.mulv(F(c1), F(c2))
                    alg.add(lhs == rhs, (c1, c2))
    fmap = LinearMap(C.complex(lo - 2, hi + 3), BOC.complex(lo - 2, hi + 3), F, name="unit")
    iso, bad = quasi_iso_report(fmap, lo, hi)
    return UnitMapReport(chain, coal, alg, {"iso": iso, "obstructions": bad})


def _tensor_vec(x, y, ring):
    return Vector(ring, {(a, b): c * e for a, c in x.items() for b, e in y.items()})


# -- counit: Omega B A -> A is not an S2 map ----------------------------------

@dataclass
class CounitWitness:
    x: object
    y: object
    z: object
    image: Vector
    target: Vector


def counit_negative_test(A: S2Algebra, degrees, max_length=None) -> CounitWitness:
    """Find x, y, z with eps([[x]]{[[y]],[[z]]}) != x{y,z} for eps: Omega B A -> A."""
    BA = Bar(A, max_length=max_length)
    OBA = Cobar(BA, max_length=max_length)
    eps = algebra_map_from_twisting(bar_projection(BA), OBA, A)
    elems = [b for n in degrees for b in A.basis(n) if b != A.unit]
    for x in elems:
        for y in elems:
            for z in elems:
                target = A.bracev(A.vec(x), [A.vec(y), A.vec(z)])
                if not target:
                    continue
                src = OBA.bracev(OBA.vec(((x,),)), [OBA.vec(((y,),)), OBA.vec(((z,),))])
                image = apply_linear(eps, src, A.ring)
                if image != target:
                    return CounitWitness(x, y, z, image, target)
    raise NoWitness("no two-argument brace is nonzero on the sampled basis")


# -- duality ---------------------------------------------------------------

def pairing_sign(shifted_degrees, letter_offset=0) -> int:
    """Sign pairing a word with its dual word.

    Koszul sign of the shifted letter degrees times (-1)^(sum of
    shifted degree + letter_offset). The cobar side uses offset 0, the bar
    side offset -1 (i.e. the unshifted degrees).
    """
    s = sum(a + letter_offset for a in shifted_degrees)
    for i, a in enumerate(shifted_degrees):
        if a % 2:
            s += sum(shifted_degrees[i + 1:])
    return _sgn(s)


def check_word_duality(X, Y, letter_shift, lo, hi, name="duality", letter_offset=0) -> CheckReport:
    """Check that w -> pairing_sign(w) (w*)  identifies Y with the dual of X.

    X and Y are word constructions (tuples of letters) with Y-letters the
    duals of X-letters; Y in degree -n must match X in degree n. Checked:
    bases correspond, the differentials are adjoint with
    (df)(x) = -(-1)^{|f|} f(dx), and the pairing sign is compatible with
    splitting words (so (de)concatenation dualizes correctly).
    """
    from .hopf import dual_label

    rep = CheckReport(name)

    def eps(w):
        return pairing_sign([letter_shift(c) for c in w], letter_offset)

    def dual(w):
        return tuple(dual_label(c) for c in w)

    for n in range(lo, hi + 1):
        xs = X.basis(n)
        ys = set(Y.basis(-n))
        rep.add(set(map(dual, xs)) == ys and len(xs) == len(ys), ("basis", n))
        for w in xs:
            for i in range(1, len(w)):
                a, b = w[:i], w[i:]
                da, db = X.degree(a), X.degree(b)
                rep.add(eps(w) == eps(a) * eps(b) * _sgn(da * db), ("split", w, i))
    for n in range(lo, hi):
        for x in X.basis(n + 1):
            dx = X.d(x)
            for f in X.basis(n):
                lhs = Y.d(dual(f))[dual(x)] * eps(x)
                rhs = -_sgn(n) * eps(f) * dx[f]
                rep.add(lhs == rhs, ("differential", f, x))
    return rep


def check_cobar_duality(C, hi) -> CheckReport:
    """(Omega C)^v = B(C^v) degreewise up to hi."""
    from .hopf import dualize

    OC = Cobar(C)
    Cd = dualize(C, 0, hi + 2)
    BCd = Bar(Cd)
    return check_word_duality(OC, BCd, lambda c: C.degree(c) - 1, 0, hi, "(Omega C)^v = B(C^v)")


def check_bar_duality(A, hi) -> CheckReport:
    """(BA)^v = Omega(A^v) for a finite algebra A concentrated in negative degrees."""
    from .hopf import dualize

    lo_a = min(A.degree(b) for b in A.degrees)
    BA = Bar(A)
    Ad = dualize(A, lo_a, 0)
    OAd = Cobar(Ad)
    return check_word_duality(BA, OAd, lambda a: A.degree(a) + 1, -hi, 0, "(BA)^v = Omega(A^v)",
                              letter_offset=-1)

"""The free S2-algebra on the desuspended coalgebra, its quotient by the
Hopf-twisting ideal, the comparison maps with the cobar construction, and
the explicit homotopy for primitively generated tensor Hopf algebras."""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations_with_replacement, product

from . import linalg
from . import surjection as sj
from .barcobar import Cobar, CheckReport, extend_hopf_twisting_free, hopf_twisting_rhs
from .errors import NotComplexityTwo, NotPrimitivelyGenerated, WindowExceeded
from .hopf import FreeTensorBialgebra, tensor_hopf_algebra
from .s2algebra import S2Algebra, evaluate, koszul_sign
from .vector import Vector, linear_sum

UNIT = ((), ())


def _sgn(n):
    return -1 if n % 2 else 1


class FreeS2(S2Algebra):
    """Free S2-algebra on a graded set of generators, with a unit adjoined.

    Basis: pairs (u, word) with u a complexity <= 2 surjection whose first
    occurrences read 1, 2, ..., r and word the generators in slots 1..r.
    Any other pair is brought to this form by relabeling, paying the Koszul
    sign of the generator permutation. ``gen_d`` gives the differential on
    generators (an element of this algebra); it is extended as a derivation
    together with the operad differential.
    """

    def __init__(self, ring, gen_degree, gen_d=None, name="S2(X)", generators=None):
        self.ring = ring
        self.unit = UNIT
        self.name = name
        self._gdeg = gen_degree
        self._gen_d = gen_d
        self._generators = generators
        self._d_cache = {}

    # -- structure -------------------------------------------------------

    def gen_degree(self, g):
        return self._gdeg(g)

    def degree(self, label):
        u, word = label
        return sj.degree(u) + sum(self._gdeg(g) for g in word) if u else 0

    def gen(self, g, coeff=1):
        return Vector.basis(self.ring, ((1,), (g,)), coeff)

    def normal(self, u, word, coeff=1):
        """(u, word) as a normal-form vector."""
        u_std, order = sj.standardize(u)
        degs = [self._gdeg(g) for g in word]
        s = koszul_sign(degs, [o - 1 for o in order])
        return Vector.basis(self.ring, (u_std, tuple(word[o - 1] for o in order)), s * coeff)

    def element(self, u, word, coeff=1):
        return self.normal(tuple(u), tuple(word), coeff)

    def apply_op(self, w, zs):
        """w(z_1, ..., z_m) for an operation w and basis labels z_i."""
        ring = self.ring
        if any(z == UNIT for z in zs):
            raise ValueError("apply_op expects non-unit inputs")
        pairs = []
        seqs = [(w, 1)]
        offset = 0
        sign = 0
        word = ()
        for j, (u, G) in enumerate(zs):
            slot = offset + 1
            new = []
            for seq, c in seqs:
                for t, e in sj.compose_terms(seq, slot, u):
                    new.append((t, c * e))
            seqs = new
            if sj.degree(u) % 2:
                sign += sum(self._gdeg(g) for g in word)
            word = word + G
            offset += len(G)
        for seq, c in seqs:
            pairs.append((_sgn(sign) * c, self.normal(seq, word)))
        return linear_sum(ring, pairs)

    def apply_opv(self, w, vs):
        """Multilinear extension of apply_op; unit inputs are not allowed."""
        pairs = []

        def rec(i, labels, coeff):
            if i == len(vs):
                pairs.append((coeff, self.apply_op(w, labels)))
                return
            for k, c in vs[i].items():
                rec(i + 1, labels + [k], coeff * c)

        rec(0, [], 1)
        return linear_sum(self.ring, pairs)

    def mul(self, a, b):
        return self.apply_op((1, 2), [a, b])

    def brace(self, x, ys):
        return self.apply_op(sj.brace_generator(len(ys)), [x, *ys])

    def basis(self, n):
        raise WindowExceeded("use basis_in_window with explicit bounds")

    def d(self, label):
        """Operad differential plus the generator differential, as a derivation."""
        if label in self._d_cache:
            return self._d_cache[label]
        ring = self.ring
        if label == UNIT:
            return Vector.zero(ring)
        u, word = label
        pairs = [(c, self.normal(w, word)) for w, c in sj.differential_terms(u)]
        if self._gen_d is not None:
            pre = 0
            for i, g in enumerate(word):
                dg = self._gen_d(g)
                for (v, H), c in dg.items():
                    # u(.., v(H), ..) = (-1)^{|v| pre} (u o_{i+1} v)(.., H, ..)
                    s = sj.degree(u) + pre + sj.degree(v) * pre
                    for t, e in sj.compose_terms(u, i + 1, v):
                        pairs.append((_sgn(s) * c * e, self.normal(t, word[:i] + H + word[i + 1:])))
                pre += self._gdeg(g)
        out = linear_sum(ring, pairs)
        self._d_cache[label] = out
        return out

    def basis_in_window(self, gens, n, max_arity, max_op_degree):
        """Normal-form basis elements of total degree n with bounded arity and operad degree."""
        out = []
        for r in range(1, max_arity + 1):
            for k in range(0, max_op_degree + 1):
                us = [u for u in sj.s2_surjections(r, k) if sj.standardize(u)[0] == u]
                if not us:
                    continue
                for word in product(gens, repeat=r):
                    if k + sum(self._gdeg(g) for g in word) != n:
                        continue
                    for u in us:
                        out.append((u, word))
        return out

    def substitute(self, v: Vector, mapping) -> Vector:
        """Rename generators by ``mapping`` (g -> g') and renormalize."""
        pairs = []
        for (u, word), c in v.items():
            if (u, word) == UNIT:
                pairs.append((c, Vector.basis(self.ring, UNIT)))
            else:
                pairs.append((c, self.normal(u, tuple(mapping[g] for g in word))))
        return linear_sum(self.ring, pairs)


# -- the S2-cobar of a Hopf algebra ---------------------------------------

class TildeCobar:
    """S2(desusp C-bar) with d + partial_Delta, and the maps to and from Omega C.

    Generators are C-bar basis labels c, of degree |c| - 1.
    """

    def __init__(self, C, max_length=None):
        self.C = C
        self.ring = C.ring
        self.OC = Cobar(C, max_length=max_length)
        self.F = FreeS2(C.ring, lambda c: C.degree(c) - 1, self._gen_d, name=f"S2(C-bar)[{C.name}]")

    def _gen_d(self, c):
        """-[dc] + partial_Delta[c], as an element of the free algebra."""
        F, C = self.F, self.C
        pairs = [(-k, F.gen(x)) for x, k in C.d(c).items() if x != C.unit]
        for (a, b), k in C.reduced_coproduct(c).items():
            pairs.append((_sgn(C.degree(a)) * k, F.element((1, 2), (a, b))))
        return linear_sum(self.ring, pairs)

    def partial_delta(self, z: Vector) -> Vector:
        """Only the coproduct part of the differential."""
        F, C = self.F, self.C
        ring = self.ring
        pairs = []
        for (u, word), c in z.items():
            if (u, word) == UNIT:
                continue
            pre = 0
            for i, g in enumerate(word):
                for (a, b), k in C.reduced_coproduct(g).items():
                    s = _sgn(sj.degree(u) + pre + C.degree(a))
                    for t, e in sj.compose_terms(u, i + 1, (1, 2)):
                        pairs.append((s * c * k * e, F.normal(t, word[:i] + (a, b) + word[i + 1:])))
                pre += F.gen_degree(g)
        return linear_sum(ring, pairs)

    def d(self, z: Vector) -> Vector:
        return self.F.dv(z)

    def pi(self, z: Vector) -> Vector:
        """Evaluate in Omega C with Kadeishvili's braces."""
        OC = self.OC
        pairs = []
        for (u, word), c in z.items():
            if (u, word) == UNIT:
                pairs.append((c, OC.one()))
                continue
            pairs.append((c, evaluate(OC, u, [OC.vec((g,)) for g in word])))
        return linear_sum(self.ring, pairs)

    def iota(self, w: Vector) -> Vector:
        """[c1|...|ck] -> (1,...,k)([c1],...,[ck])."""
        F = self.F
        pairs = []
        for word, c in w.items():
            if not word:
                pairs.append((c, F.one()))
            else:
                pairs.append((c, F.normal(tuple(range(1, len(word) + 1)), word)))
        return linear_sum(self.ring, pairs)

    def p(self, z: Vector) -> Vector:
        return self.iota(self.pi(z))

    def twisting(self):
        """The Hopf twisting morphism C -> S2(desusp C-bar), c -> [c]."""
        F, unit = self.F, self.C.unit
        return lambda c: Vector.zero(self.ring) if c == unit else F.gen(c)

    def ideal_generator(self, c1, c2) -> Vector:
        """g(c1, c2) = [c1 c2] - sum (-1)^alpha [c1]{[c2^(1)],...,[c2^(k)]}."""
        F, C = self.F, self.C
        f = self.twisting()
        prod = linear_sum(self.ring, [(k, F.gen(x)) for x, k in C.mul(c1, c2).items() if x != C.unit])
        return prod - hopf_twisting_rhs(f, C, F, c1, c2)


# -- the ideal --------------------------------------------------------------

class Lattice:
    """Span of integer or field vectors over sparse keys, with membership tests."""

    def __init__(self, ring):
        self.ring = ring
        self.vectors = []
        self._keys = {}
        self._reduced = None

    def add(self, v: Vector):
        if v:
            self.vectors.append(v)
            for k in v.keys():
                self._keys.setdefault(k, len(self._keys))
            self._reduced = None

    def _prepare(self):
        if self._reduced is not None:
            return
        n = len(self._keys)
        rows = []
        for v in self.vectors:
            r = [0] * n
            for k, c in v.items():
                r[self._keys[k]] = c
            rows.append(r)
        if self.ring.is_field:
            self._reduced = ("field", *linalg.field_echelon(rows, self.ring, n)) if rows else ("field", [], [])
        elif self.ring.characteristic == 0:
            self._reduced = ("z", *linalg.hermite_normal_form(rows, n)) if rows else ("z", [], [])
        else:
            raise NotImplementedError(f"ideal membership over {self.ring} is not supported")

    def contains(self, v: Vector) -> bool:
        if not v:
            return True
        if any(k not in self._keys for k in v.keys()):
            return False
        self._prepare()
        kind, R, piv = self._reduced
        n = len(self._keys)
        x = [0] * n
        for k, c in v.items():
            x[self._keys[k]] = c
        if kind == "field":
            return not any(linalg.field_reduce(R, piv, x, self.ring)) if R else not any(self.ring(a) for a in x)
        return not any(linalg.hnf_reduce(R, piv, x)) if R else not any(x)

    @property
    def rank(self):
        self._prepare()
        return len(self._reduced[2])


@dataclass
class IdealWitness:
    degree: int
    generators: list
    lattice: Lattice

    def contains(self, z: Vector) -> bool:
        return self.lattice.contains(z)


def ideal_span(T: TildeCobar, n: int, max_arity=3, max_op_degree=3) -> IdealWitness:
    """Elements w(g(c1,c2), e_2, ..., e_m) of total degree n, g in slot 1."""
    C, F = T.C, T.F
    lo = C.reduced_degrees()[0]
    if lo < 2:
        raise WindowExceeded("ideal spans need coalgebra generators of degree >= 2")
    letters = [c for m in range(lo, n + 3) for c in C.reduced_basis(m)]
    gen_deg = {c: C.degree(c) - 1 for c in letters}
    gens = []
    lat = Lattice(T.ring)
    for c1 in letters:
        for c2 in letters:
            gdeg = C.degree(c1) + C.degree(c2) - 1
            if gdeg > n:
                continue
            g = T.ideal_generator(c1, c2)
            if not g:
                continue
            for m in range(1, max_arity + 1):
                for k in range(0, max_op_degree + 1):
                    rest = n - gdeg - k
                    if rest < 0:
                        continue
                    for es in combinations_with_replacement(letters, m - 1):
                        if sum(gen_deg[e] for e in es) != rest:
                            continue
                        for w in sj.s2_surjections(m, k):
                            z = F.apply_opv(w, [g] + [F.gen(e) for e in es])
                            if z:
                                gens.append(((c1, c2), w, es))
                                lat.add(z)
    return IdealWitness(n, gens, lat)


def quotient_eq(z1: Vector, z2: Vector, witness: IdealWitness) -> bool:
    return witness.contains(z1 - z2)


# -- primitively generated case: retraction and homotopy ----------------------

@dataclass
class HomotopyRecord:
    alpha: tuple
    degrees: tuple
    o_alpha: Vector
    j: int
    S: frozenset
    b_alpha: Vector


@dataclass
class HomotopyTable:
    """Memo of h on universal elements alpha(c_1, ..., c_k), keyed by (alpha, generator degrees)."""

    ring: object
    j_rule: str = "first-repeat"
    memo: dict = field(default_factory=dict)
    records: dict = field(default_factory=dict)


_TABLES = {}


def homotopy_table(ring, j_rule="first-repeat") -> HomotopyTable:
    key = (ring, j_rule)
    if key not in _TABLES:
        _TABLES[key] = HomotopyTable(ring, j_rule)
    return _TABLES[key]


def homotopy_indices(alpha, rule="first-repeat"):
    """(j_alpha, S_alpha); S is the set of values strictly before the first occurrence of j.

    "first-repeat": j is the value of the first entry that repeats an
    earlier entry. "first-repeated-value": j is the first value, reading
    left to right, that occurs more than once anywhere.
    """
    if rule == "first-repeat":
        seen = set()
        for x in alpha:
            if x in seen:
                return x, frozenset(alpha[: alpha.index(x)])
            seen.add(x)
    elif rule == "first-repeated-value":
        for x in alpha:
            if alpha.count(x) > 1:
                return x, frozenset(alpha[: alpha.index(x)])
    else:
        raise ValueError(f"unknown rule {rule!r}")
    raise ValueError(f"{sj.fmt(alpha)} has no repeated value")


class PrimitiveModel:
    """S2(desusp V) as a model of the S2-cobar of T(V), V primitive, d = 0.

    ``r`` is the retraction onto S2(desusp V) induced by the Hopf twisting
    extension of V -> S2(desusp V); ``p`` is r o iota o pi; ``h`` is the
    homotopy, built universally on distinct generators and substituted.
    """

    def __init__(self, C: FreeTensorBialgebra, j_rule="first-repeat"):
        if not getattr(C, "primitive", False) or any(C.d((g,)) for g in C.generators):
            raise NotPrimitivelyGenerated("the homotopy is implemented for primitive generators and d = 0")
        self.C = C
        self.ring = C.ring
        self.T = TildeCobar(C)
        self.F = self.T.F
        self.table = homotopy_table(C.ring, j_rule)
        self._f = extend_hopf_twisting_free(C, lambda g: self.F.gen((g,)), self.F)

    @property
    def records(self):
        return self.table.records

    # -- maps ---------------------------------------------------------------

    def gen(self, v):
        return self.F.gen((v,))

    def element(self, u, letters, coeff=1):
        return self.F.element(tuple(u), tuple((v,) for v in letters), coeff)

    def r(self, z: Vector) -> Vector:
        F = self.F
        pairs = []
        for (u, word), c in z.items():
            if (u, word) == UNIT:
                pairs.append((c, F.one()))
                continue
            pairs.append((c, F.apply_opv(u, [self._f(g) for g in word])))
        return linear_sum(self.ring, pairs)

    def pi(self, z):
        return self.T.pi(z)

    def iota(self, w):
        return self.r(self.T.iota(w))

    def p(self, z):
        return self.iota(self.pi(z))

    def d(self, z):
        return self.F.dv(z)

    # -- homotopy -----------------------------------------------------------

    def h(self, z: Vector) -> Vector:
        return linear_sum(self.ring, [(c, self.h_basis(label)) for label, c in z.items()])

    def h_basis(self, label) -> Vector:
        if label == UNIT:
            return Vector.zero(self.ring)
        u, word = label
        if any(len(g) != 1 for g in word):
            raise NotPrimitivelyGenerated("h is defined on S2(desusp V); apply r first")
        degs = tuple(self.F.gen_degree(g) for g in word)
        U = _universal_h(self.table, u, degs)
        return self.F.substitute(U, {(i,): word[i - 1] for i in range(1, len(word) + 1)})


def _universal_h(table: HomotopyTable, alpha, degs):
    key = (alpha, degs)
    if key in table.memo:
        return table.memo[key]
    ring = table.ring
    if sj.degree(alpha) == 0:
        table.memo[key] = Vector.zero(ring)
        return table.memo[key]
    M = _universal_model(table, degs)
    word = tuple((i,) for i in range(1, len(degs) + 1))
    x = M.F.normal(alpha, word)
    y = x - M.p(x) - M.h(M.d(x))
    o_alpha = _as_operation(M.F, y, degs)
    j, S = homotopy_indices(alpha, table.j_rule)
    b_alpha = sj.insertion_homotopy(j, S, o_alpha)
    for u in b_alpha.keys():
        if sj.complexity(u) > 2:
            raise NotComplexityTwo(f"b_alpha term {sj.fmt(u)} left S2 for alpha = {sj.fmt(alpha)}")
    table.records[key] = HomotopyRecord(alpha, degs, o_alpha, j, S, b_alpha)
    out = linear_sum(ring, [(c, M.F.normal(u, word)) for u, c in b_alpha.items()])
    table.memo[key] = out
    return out


_MODELS = {}


def _universal_model(table, degs):
    """Primitive model on distinct generators 1..k with generator degrees degs."""
    key = (table.ring, table.j_rule, degs)
    if key not in _MODELS:
        C = tensor_hopf_algebra(table.ring, {i: d + 1 for i, d in enumerate(degs, 1)}, name=f"T{degs}")
        _MODELS[key] = PrimitiveModel(C, table.j_rule)
    return _MODELS[key]


def _as_operation(F: FreeS2, y: Vector, degs) -> Vector:
    """Read a multilinear element of S2(c_1..c_k) as an operation with value i <-> c_i."""
    pairs = {}
    for (u_std, word), c in y.items():
        order = [g[0] for g in word]
        if sorted(order) != list(range(1, len(degs) + 1)):
            raise ValueError(f"{(u_std, word)} is not multilinear in the generators")
        u = sj.relabel(u_std, order)
        s = koszul_sign(list(degs), [o - 1 for o in order])
        pairs[u] = pairs.get(u, 0) + s * c
    return Vector(F.ring, pairs)


# -- verification ---------------------------------------------------------

@dataclass
class RetractionReport:
    checks: dict = field(default_factory=dict)

    def add(self, name, ok, witness=None):
        rep = self.checks.setdefault(name, CheckReport(name))
        rep.add(ok, witness)

    @property
    def ok(self):
        return all(r.ok for r in self.checks.values())

    def summary(self):
        return {k: (v.checked, len(v.failures)) for k, v in self.checks.items()}


def verify_retraction(model: PrimitiveModel, max_arity=3, max_op_degree=4, derivation=True) -> RetractionReport:
    """Check the deformation-retraction equations on all normal-form basis elements in the bound."""
    F, ring = model.F, model.ring
    OC = model.T.OC
    gens = [(v,) for v in model.C.generators]
    rep = RetractionReport()
    top = max_op_degree + max_arity * max(F.gen_degree(g) for g in gens)
    labels = []
    for n in range(0, top + 1):
        labels.extend(F.basis_in_window(gens, n, max_arity, max_op_degree))
    for lab in labels:
        x = Vector.basis(ring, lab)
        hx = model.h(x)
        px = model.p(x)
        dx = model.d(x)
        lhs = model.d(hx) + model.h(dx)
        rep.add("dh + hd = 1 - p", lhs == x - px, (lab, lhs - (x - px)))
        rep.add("h^2 = 0", not model.h(hx), lab)
        rep.add("hp = 0", not model.h(px), lab)
        rep.add("ph = 0", not model.p(hx), lab)
        rep.add("p^2 = p", model.p(px) == px, lab)
        rep.add("d^2 = 0", not model.d(dx), lab)
        rep.add("r o i = id", model.r(x) == x, lab)
        rep.add("pi d = d pi", model.pi(dx) == OC.dv(model.pi(x)), lab)
    for n in range(0, top + 1):
        for w in OC.basis(n):
            if len(w) > max_arity:
                continue
            v = OC.vec(w)
            rep.add("pi iota = id", model.pi(model.iota(v)) == v, w)
            rep.add("iota d = d iota", model.iota(OC.dv(v)) == model.d(model.iota(v)), w)
    if derivation:
        small = [lab for lab in labels if len(lab[1]) < max_arity]
        for a in small:
            for b in small:
                if len(a[1]) + len(b[1]) > max_arity or sj.degree(a[0]) + sj.degree(b[0]) > max_op_degree:
                    continue
                x, y = Vector.basis(ring, a), Vector.basis(ring, b)
                lhs = model.h(F.mulv(x, y))
                rhs = F.mulv(model.h(x), model.p(y)) + F.mulv(x, model.h(y)) * _sgn(F.deg(x))
                rep.add("h(xy) = h(x)p(y) + (-1)^|x| x h(y)", lhs == rhs, (a, b))
    for key, rec in model.records.items():
        ok = all(max(u.count(v) for v in set(u)) >= 3 for u in rec.b_alpha.keys())
        rep.add("b_alpha terms have a value occurring >= 3 times", ok, key)
    return rep


def worked_example(ring, j_rule="first-repeat"):
    """x = (1,2,3,1)([c1],[c2],[c3]) with primitive c_i of degree 2; returns (model, x, h(x), record)."""
    C = tensor_hopf_algebra(ring, {"c1": 2, "c2": 2, "c3": 2})
    M = PrimitiveModel(C, j_rule)
    x = M.element((1, 2, 3, 1), ("c1", "c2", "c3"))
    hx = M.h(x)
    return M, x, hx, M.records[((1, 2, 3, 1), (1, 1, 1))]


def check_ideal_stability(T: TildeCobar, degrees, max_arity=3, max_op_degree=3, arity_slack=2) -> RetractionReport:
    """d(I_n) inside I_{n-1} and pi(I_n) = 0 on the spanning sets.

    The differential splits letters, so the target span is taken with
    ``arity_slack`` more inputs than the source.
    """
    rep = RetractionReport()
    spans = {}

    def span(n, a):
        if (n, a) not in spans:
            spans[(n, a)] = ideal_span(T, n, a, max_op_degree)
        return spans[(n, a)]

    for n in degrees:
        src = span(n, max_arity)
        tgt = span(n - 1, max_arity + arity_slack)
        for gen, z in zip(src.generators, src.lattice.vectors):
            rep.add("d(I_n) in I_(n-1)", tgt.contains(T.d(z)), (n, gen))
            rep.add("pi(I_n) = 0", not T.pi(z), (n, gen))
    return rep

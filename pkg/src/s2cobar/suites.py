"""Named verification suites. Each returns a list of Check records."""
from __future__ import annotations

import random
import time
from dataclasses import dataclass, field
from itertools import combinations

from . import surjection as sj
from .barcobar import (Bar, Cobar, check_bar_duality, check_cobar_duality, check_unit_map,
                       counit_negative_test, is_hopf_twisting, is_twisting, universal_cobar_twisting)
from .errors import NoWitness
from .hopf import DividedPowerAlgebra, FreeTensorBialgebra, PresentedBialgebra, check_double_dual, tensor_hopf_algebra
from .rings import QQ, ZZ, IntegersMod
from .s2algebra import (circle_cochains, circle_cohomology, identity_diff_sides, identity_mult_sides,
                        steenrod_sq)
from .vector import Vector

SUITES = ("operad", "braces", "bar-s1", "cobar", "hopf-twist", "retraction", "ce", "duality")


@dataclass
class RunConfig:
    ring: object = None  # None: each suite uses the rings named by its criterion
    max_degree: int = 6
    max_arity: int = 4
    op_degree: int = 4
    generators: int = 3
    seed: int = 0
    n: int = 5
    suites: tuple = SUITES

    def __post_init__(self):
        for k in ("max_degree", "max_arity", "op_degree", "generators", "n"):
            if getattr(self, k) < 1:
                raise ValueError(f"{k} must be positive")


@dataclass
class Check:
    id: str
    anchor: str
    status: str  # pass / fail / skip
    witness: object = None
    seconds: float = 0.0
    detail: dict = field(default_factory=dict)

    def record(self):
        return {"id": self.id, "anchor": self.anchor, "status": self.status,
                "witness": _plain(self.witness), "detail": _plain(self.detail)}


def _plain(x):
    """JSON-safe, deterministic rendering of witnesses."""
    if x is None or isinstance(x, (bool, int, str)):
        return x
    if isinstance(x, float):
        return round(x, 6)
    if isinstance(x, Vector):
        return [[_plain(k), str(c)] for k, c in x.sorted_items()]
    if isinstance(x, dict):
        return {str(_plain(k)): _plain(v) for k, v in sorted(x.items(), key=lambda kv: repr(kv[0]))}
    if isinstance(x, (list, tuple, set, frozenset)):
        items = sorted(x, key=repr) if isinstance(x, (set, frozenset)) else x
        return [_plain(v) for v in items]
    return str(x)


class _Timer:
    def __enter__(self):
        self.t = time.perf_counter()
        return self

    def __exit__(self, *exc):
        self.seconds = time.perf_counter() - self.t


def _rings(cfg, default):
    return [cfg.ring] if cfg.ring is not None else default


def _check(id_, anchor, ok, witness=None, seconds=0.0, **detail):
    return Check(id_, anchor, "pass" if ok else "fail", witness, seconds, detail)


# -- operad ---------------------------------------------------------------

def leibniz_failures(max_arity, max_degree, ring=ZZ):
    bad = []
    count = 0
    seqs = [u for n in range(1, max_arity + 1) for k in range(max_degree + 1) for u in sj.surjections(n, k)]
    for u in seqs:
        du = sj.differential(Vector.basis(ring, u))
        for v in seqs:
            dv = sj.differential(Vector.basis(ring, v))
            for i in range(1, sj.arity(u) + 1):
                lhs = sj.differential(sj.compose(Vector.basis(ring, u), i, Vector.basis(ring, v)))
                rhs = sj.compose(du, i, Vector.basis(ring, v)) + sj.compose(Vector.basis(ring, u), i, dv) * (
                    -1 if sj.degree(u) % 2 else 1)
                count += 1
                if lhs != rhs:
                    bad.append((u, i, v))
    return count, bad


def homotopy_law_cases(max_arity, max_degree, ring, domain="stated"):
    """(cases, failures) for d h + h d = 1 + t over all (u, j, S) in the bound.

    ``domain="stated"``: S-values occur exactly once in u.
    ``domain="initial"``: additionally the S-values are exactly the first |S| entries of u.
    """
    cases, bad = 0, []
    for n in range(1, max_arity + 1):
        for k in range(max_degree + 1):
            for u in sj.surjections(n, k):
                x = Vector.basis(ring, u)
                for j in range(1, n + 1):
                    others = [v for v in range(1, n + 1) if v != j]
                    for r in range(len(others) + 1):
                        for S in combinations(others, r):
                            if any(u.count(s) != 1 for s in S):
                                continue
                            if domain == "initial" and set(u[:len(S)]) != set(S):
                                continue
                            lhs = (sj.differential(sj.insertion_homotopy(j, S, x))
                                   + sj.insertion_homotopy(j, S, sj.differential(x)))
                            rhs = x + sj.t_operator(j, S, x)
                            cases += 1
                            if lhs != rhs:
                                bad.append((u, j, S, lhs - rhs))
    return cases, bad


def composition_coefficient(n, ring=ZZ):
    """(c, s): (1,2,1) o_2 b_n = s * w and b_n o_1 (1,2,1) has coefficient c on w."""
    b = sj.brace_generator(n)
    (w, s), = sj.compose_terms((1, 2, 1), 2, b)
    c = dict(sj.compose_terms(b, 1, (1, 2, 1))).get(w, 0)
    return w, s, c


def suite_operad(cfg: RunConfig):
    out = []
    x = sj.differential(sj.element(ZZ, (1, 2, 1)))
    out.append(_check("operad.d121", "d(1,2,1) = (2,1) − (1,2)", x == sj.element(ZZ, ((2, 1), 1), ((1, 2), -1)),
                      sj.fmt_element(x)))
    with _Timer() as t:
        bad, count = [], 0
        for n in range(1, cfg.max_arity + 1):
            for k in range(cfg.max_degree + 1):
                for u in sj.surjections(n, k):
                    count += 1
                    if sj.differential(sj.differential(Vector.basis(ZZ, u))):
                        bad.append(u)
    out.append(_check("operad.d2", "d² = 0 for all surjections arity ≤ 4, degree ≤ 6", not bad, bad[:5],
                      t.seconds, checked=count, max_arity=cfg.max_arity, max_degree=cfg.max_degree))
    with _Timer() as t:
        count, bad = leibniz_failures(min(cfg.max_arity, 3), min(cfg.max_degree, 3))
    out.append(_check("operad.leibniz", "Leibniz for ∘ᵢ on arity ≤ 3, degree ≤ 3 (exhaustive)", not bad, bad[:5],
                      t.seconds, checked=count))
    for ring in _rings(cfg, [ZZ, IntegersMod(2)]):
        with _Timer() as t:
            cases, bad = homotopy_law_cases(3, 3, ring)
        wit = [(sj.fmt(u), j, sorted(S), sj.fmt_element(e)) for u, j, S, e in bad[:3]]
        out.append(_check(f"operad.homotopy[{ring}]",
                          "dh₍ⱼ,ₛ₎ + h₍ⱼ,ₛ₎d = 1 + t₍ⱼ,ₛ₎ for all surjections of arity ≤ 3, degree ≤ 3 with S-entries occurring once",
                          not bad, wit, t.seconds, checked=cases, failures=len(bad)))
        cases, bad = homotopy_law_cases(3, 3, ring, domain="initial")
        out.append(_check(f"operad.homotopy-initial[{ring}]",
                          "dh + hd = 1 + t when S is the set of leading entries (restricted domain)",
                          not bad, bad[:3], checked=cases))
    for n in (1, 2, 3):
        w, s, c = composition_coefficient(n)
        out.append(_check(f"operad.coefficient[n={n}]",
                          "the coefficient of (1,2,1)∘₂(brace generator) in (brace generator)∘₁(1,2,1) equals (−1)ⁿ",
                          c * s == (-1) ** n, (sj.fmt(w), s, c)))
    return out


# -- braces ---------------------------------------------------------------

def brace_samples():
    nonprim = FreeTensorBialgebra(ZZ, {"a": 2, "e": 3, "b": 4},
                                  reduced_diagonal={"b": {(("a",), ("a",)): 1}},
                                  differential={"e": {("a",): 1}}, name="T(a,e,b)")
    return [tensor_hopf_algebra(ZZ, {"v": 2}), tensor_hopf_algebra(ZZ, {"v": 2, "w": 3}), nonprim]


def _tuples(byd, n, budget):
    """All n-tuples of basis labels with total degree <= budget (degrees >= 1)."""
    if n == 0:
        yield ()
        return
    for d, labels in byd.items():
        if d > budget:
            continue
        for b in labels:
            for rest in _tuples(byd, n - 1, budget - d):
                yield (b,) + rest


def brace_identity_failures(A, window, max_braces=3):
    byd = {n: [b for b in A.basis(n) if b != A.unit] for n in range(1, window + 1)}
    count, bad = 0, []
    for k in range(1, max_braces + 1):
        for t in _tuples(byd, k + 1, window):
            x, ys = A.vec(t[0]), [A.vec(y) for y in t[1:]]
            lhs, rhs = identity_diff_sides(A, x, ys)
            count += 1
            if lhs != rhs:
                bad.append(("diff", t))
    for k in range(0, max_braces + 1):
        for t in _tuples(byd, k + 2, window):
            x, y, ys = A.vec(t[0]), A.vec(t[1]), [A.vec(z) for z in t[2:]]
            lhs, rhs = identity_mult_sides(A, x, y, ys)
            count += 1
            if lhs != rhs:
                bad.append(("mult", t))
    return count, bad


def suite_braces(cfg: RunConfig):
    out = []
    for C in brace_samples():
        A = Cobar(C)
        with _Timer() as t:
            count, bad = brace_identity_failures(A, cfg.max_degree)
        out.append(_check(f"braces.identities[{C.name}]",
                          "Kadeishvili braces: the brace differential and product-in-brace identities hold exactly (zero discrepancy)",
                          not bad, bad[:3], t.seconds, checked=count))
    # random linear combinations; the seed is reported
    rng = random.Random(cfg.seed)
    A = Cobar(brace_samples()[1])
    bad, count = [], 0
    for _ in range(20):
        combo = []
        for _slot in range(3):
            n = rng.randint(1, 2)
            labels = A.basis(n)
            v = Vector(ZZ, {b: rng.randint(-3, 3) for b in labels})
            combo.append(v)
        x, y, z = combo
        if not (x and y and z):
            continue
        lhs, rhs = identity_mult_sides(A, x, y, [z])
        count += 1
        if lhs != rhs:
            bad.append(count)
    out.append(_check("braces.sampled", "product-in-brace identity on seeded random homogeneous combinations", not bad, bad,
                      checked=count, seed=cfg.seed))
    return out


# -- bar of S^1 --------------------------------------------------------------

def s1_products(n_max, ring=ZZ):
    """{n: (t1 tn, tn t1)} in B S*(S^1) and {n: t1 tn} in B H*(S^1)."""
    B1, B2 = Bar(circle_cochains(ring)), Bar(circle_cohomology(ring))
    t = lambda n: ("x",) * n
    cochains = {n: (B1.mul(t(1), t(n)), B1.mul(t(n), t(1))) for n in range(1, n_max + 1)}
    cohom = {n: B2.mul(t(1), t(n)) for n in range(1, n_max + 1)}
    return cochains, cohom


def suite_bar_s1(cfg: RunConfig):
    out = []
    ring = ZZ
    cochains, cohom = s1_products(cfg.n, ring)
    t = lambda n: ("x",) * n
    for n, (a, b) in cochains.items():
        expect = Vector(ring, {t(n): n, t(n + 1): n + 1})
        out.append(_check(f"bar-s1.t1tn[n={n}]", "t₁tₙ = tₙt₁ = ntₙ + (n+1)tₙ₊₁", a == expect and b == expect,
                          {"t1tn": a, "tnt1": b}))
    for n, a in cohom.items():
        expect = Vector(ring, {t(n + 1): n + 1})
        out.append(_check(f"bar-s1.cohomology[n={n}]", "t′₁t′ₙ = (n+1)t′ₙ₊₁", a == expect, a))
    a, b = cochains[1][0], cohom[1]
    out.append(_check("bar-s1.distinct", "t₁t₁ has a t₁ term in the first, none in the second",
                      a[t(1)] != 0 and b[t(1)] == 0, {"cochains": a, "cohomology": b}))
    z2 = IntegersMod(2)
    for A, expect_nonzero, label in [(circle_cochains(z2), True, "cochains"), (circle_cohomology(z2), False, "cohomology")]:
        res = steenrod_sq(A, A.vec("x"))
        ok = res.nonzero_in_homology == expect_nonzero and (res.cycle == A.vec("x") if expect_nonzero else not res.cycle)
        out.append(_check(f"bar-s1.sq0[{label}]",
                          "Sq⁰([x]) = [x] ≠ 0 for circle_cochains and Sq⁰ = 0 for circle_cohomology",
                          ok, res.cycle))
    return out


# -- cobar: unit map ---------------------------------------------------------

def suite_cobar(cfg: RunConfig):
    out = []
    for ring in _rings(cfg, [QQ, ZZ]):
        for C in [tensor_hopf_algebra(ring, {"v": 2}), DividedPowerAlgebra(ring, 2)]:
            with _Timer() as t:
                rep = check_unit_map(C, cfg.max_degree)
            ok = rep.ok
            out.append(_check(f"cobar.unit[{C.name},{ring}]",
                              "C → BΩC is a Hopf-algebra map degreewise ≤ 6 and a homology isomorphism",
                              ok, {"chain": rep.chain_map.failures[:2], "coalgebra": rep.coalgebra_map.failures[:2],
                                   "algebra": rep.algebra_map.failures[:2], "obstructions": rep.quasi_iso["obstructions"]},
                              t.seconds,
                              checked=rep.chain_map.checked + rep.coalgebra_map.checked + rep.algebra_map.checked))
    return out


# -- hopf twisting ---------------------------------------------------------

def suite_hopf_twist(cfg: RunConfig):
    out = []
    for C in brace_samples()[:2]:
        OC = Cobar(C)
        tau = universal_cobar_twisting(OC)
        tw = is_twisting(tau, C, OC, 1, cfg.max_degree)
        hp = is_hopf_twisting(tau, C, OC, 1, cfg.max_degree)
        out.append(_check(f"hopf-twist.universal[{C.name}]", "the universal twisting morphism C → ΩC is Hopf",
                          tw.ok and hp.ok, (tw.failures[:2], hp.failures[:2]), checked=tw.checked + hp.checked))
    A = Cobar(tensor_hopf_algebra(ZZ, {"v": 2, "w": 2, "u": 2}))
    try:
        with _Timer() as t:
            wit = counit_negative_test(A, [1, 2])
        # certify by recomputing both sides
        BA = Bar(A)
        OBA = Cobar(BA)
        from .barcobar import algebra_map_from_twisting, apply_linear, bar_projection
        eps = algebra_map_from_twisting(bar_projection(BA), OBA, A)
        src = OBA.bracev(OBA.vec(((wit.x,),)), [OBA.vec(((wit.y,),)), OBA.vec(((wit.z,),))])
        image = apply_linear(eps, src, A.ring)
        target = A.bracev(A.vec(wit.x), [A.vec(wit.y), A.vec(wit.z)])
        ok = image == wit.image and target == wit.target and image != target
        out.append(_check("hopf-twist.counit", "ΩBA → A fails brace preservation for A = ΩT(v,w,u)", ok,
                          {"x": wit.x, "y": wit.y, "z": wit.z, "image": image, "target": target}, t.seconds))
    except NoWitness as e:
        out.append(_check("hopf-twist.counit", "ΩBA → A fails brace preservation for A = ΩT(v,w,u)", False, str(e)))
    return out


# -- retraction ------------------------------------------------------------

def suite_retraction(cfg: RunConfig):
    from .tildecobar import PrimitiveModel, TildeCobar, check_ideal_stability, worked_example, verify_retraction

    out = []
    names = ["c1", "c2", "c3", "c4", "c5"][: cfg.generators]
    z2 = IntegersMod(2)
    M, x, hx, rec = worked_example(z2)
    o_expect = sj.element(z2, (1, 2, 3, 1), (1, 2, 1, 3), (2, 1, 3, 1))
    h_expect = M.element((1, 2, 1, 3, 1), ("c1", "c2", "c3"))
    out.append(_check("retraction.example", "h((1,2,3,1)(c)) = (1,2,1,3,1)(c) and o_α = (1,2,3,1)+(1,2,1,3)+(2,1,3,1) over ℤ/2",
                      hx == h_expect and rec.o_alpha == o_expect,
                      {"h": hx, "o_alpha": sj.fmt_element(rec.o_alpha), "j": rec.j, "S": sorted(rec.S)}))
    for ring in _rings(cfg, [ZZ, z2]):
        C = tensor_hopf_algebra(ring, {g: 2 for g in names})
        M = PrimitiveModel(C)
        with _Timer() as t:
            rep = verify_retraction(M, max_arity=min(cfg.max_arity, 3), max_op_degree=cfg.op_degree)
        fails = {k: v.failures[:2] for k, v in rep.checks.items() if v.failures}
        out.append(_check(f"retraction.equations[{ring}]", "∂h + h∂ = 1 − p, h² = 0, hp = ph = 0, π∘ι = id",
                          rep.ok, fails, t.seconds, checked=rep.summary()))
        T = TildeCobar(tensor_hopf_algebra(ring, {g: 2 for g in names[:2]}))
        with _Timer() as t:
            rep = check_ideal_stability(T, range(1, cfg.max_degree + 1))
        fails = {k: v.failures[:2] for k, v in rep.checks.items() if v.failures}
        out.append(_check(f"retraction.ideal[{ring}]", "∂(I_d) ⊆ I_{d−1} and π(I_d) = 0 for all window degrees",
                          rep.ok, fails, t.seconds, checked=rep.summary()))
    return out


# -- duality ---------------------------------------------------------------

def bar_duality_sample(ring=ZZ):
    """Finite algebra in degrees 0..-7 with a differential, used for (BA)^v = Omega(A^v)."""
    degrees = {"1": 0, "u": -2, "uu": -4, "e": -3, "ue": -5, "uue": -7}
    products = {("u", "u"): {"uu": 1}, ("u", "e"): {"ue": 1}, ("e", "u"): {"ue": 1},
                ("u", "ue"): {"uue": 1}, ("ue", "u"): {"uue": 1}, ("uu", "e"): {"uue": 1},
                ("e", "uu"): {"uue": 1}}
    return PresentedBialgebra(ring, degrees, "1", differential={"e": {"uu": 1}}, products=products,
                              name="A(u,e)", is_coalgebra=False)


def suite_duality(cfg: RunConfig):
    out = []
    for C in brace_samples():
        rep = check_cobar_duality(C, cfg.max_degree)
        out.append(_check(f"duality.cobar[{C.name}]", "(ΩC)^∨ ≅ B(C^∨) degreewise ≤ 6", rep.ok, rep.failures[:3],
                          checked=rep.checked))
    A = bar_duality_sample()
    rep = check_bar_duality(A, cfg.max_degree)
    out.append(_check(f"duality.bar[{A.name}]", "(BA)^∨ ≅ Ω(A^∨) degreewise ≤ 6", rep.ok, rep.failures[:3],
                      checked=rep.checked))
    for X, lo, hi in [(tensor_hopf_algebra(ZZ, {"v": 2, "w": 3}), 0, cfg.max_degree), (A, -7, 0)]:
        rep = check_double_dual(X, lo, hi)
        out.append(_check(f"duality.double[{X.name}]", "x ↦ (−1)^|x| x** identifies X with its double dual",
                          rep.ok, rep.failures[:3], checked=rep.checked))
    return out


# -- Chevalley-Eilenberg -----------------------------------------------------

def suite_ce(cfg: RunConfig):
    from .lie import abelian, heisenberg, run_all

    out = []
    cutoff = max(cfg.max_degree, 8) if cfg.ring is None else cfg.max_degree
    for ring in _rings(cfg, [QQ]):
        if not ring.has_half():
            out.append(Check(f"ce[{ring}]", "only ℚ and ℤ/p (p odd) are offered", "skip", str(ring)))
            continue
        for L in [abelian(ring, {"xi": 2}), heisenberg(ring)]:
            with _Timer() as t:
                rep = run_all(L, cutoff)
            fails = {k: v.failures[:2] for k, v in rep.checks.items() if v.failures}
            out.append(_check(f"ce.{L.name}[{ring}]",
                              "α passes is_twisting and is_hopf_twisting in every degree; Ω(UL)^∨ → C*(L) is a homology isomorphism (betti match)",
                              rep.ok, fails, t.seconds, checked=rep.summary(), betti=rep.betti, cutoff=cutoff))
    return out


RUNNERS = {
    "operad": suite_operad,
    "braces": suite_braces,
    "bar-s1": suite_bar_s1,
    "cobar": suite_cobar,
    "hopf-twist": suite_hopf_twist,
    "retraction": suite_retraction,
    "ce": suite_ce,
    "duality": suite_duality,
}

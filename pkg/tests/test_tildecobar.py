import itertools

import pytest

from s2cobar import surjection as sj
from s2cobar.errors import NotComplexityTwo, NotPrimitivelyGenerated
from s2cobar.hopf import tensor_hopf_algebra
from s2cobar.rings import ZZ, IntegersMod
from s2cobar.tildecobar import (
    UNIT,
    PrimitiveModel,
    TildeCobar,
    check_ideal_stability,
    homotopy_indices,
    ideal_span,
    worked_example,
    verify_retraction,
)
from s2cobar.vector import Vector

Z2 = IntegersMod(2)


def test_normal_form_pays_koszul_sign(tvw):
    F = TildeCobar(tvw).F
    v, w = ("v",), ("w",)  # desuspended degrees 1 and 2
    assert F.element((2, 1), (v, w)) == F.element((1, 2), (w, v))
    assert F.element((2, 1), (v, v)) == -F.element((1, 2), (v, v))
    assert F.element((2, 1, 2), (v, w)) == F.element((1, 2, 1), (w, v))


def test_arity_one_basis(tvw):
    F = TildeCobar(tvw).F
    gens = [("v",), ("w",)]
    assert F.basis_in_window(gens, 1, 1, 3) == [((1,), (("v",),))]
    assert F.basis_in_window(gens, 2, 1, 3) == [((1,), (("w",),))]


def test_basis_is_the_set_of_orbit_representatives():
    # brute force: every (u, word) normalizes to a window basis element, and all are hit
    C = tensor_hopf_algebra(ZZ, {"a": 3, "b": 3})
    F = TildeCobar(C).F
    gens = [("a",), ("b",)]
    for n in range(2, 8):
        basis = set(F.basis_in_window(gens, n, 3, 2))
        hit = set()
        for r in (1, 2, 3):
            for k in (0, 1, 2):
                for u in sj.s2_surjections(r, k):
                    for word in itertools.product(gens, repeat=r):
                        if k + 2 * r != n:
                            continue
                        (key, c), = F.element(u, word).items()
                        assert c in (1, -1)
                        hit.add(key)
        assert hit == basis


@pytest.mark.parametrize("ring", [ZZ, Z2])
def test_d_squared_and_chain_maps(nonprim, ring):
    from s2cobar.hopf import FreeTensorBialgebra

    C = FreeTensorBialgebra(ring, {"a": 2, "e": 3, "b": 4}, reduced_diagonal={"b": {(("a",), ("a",)): 1}},
                            differential={"e": {("a",): 1}})
    T = TildeCobar(C)
    gens = [c for m in range(2, 6) for c in C.reduced_basis(m)]
    for n in range(1, 6):
        for label in T.F.basis_in_window(gens, n, 3, 2):
            z = Vector.basis(ring, label)
            assert not T.d(T.d(z))
            assert T.pi(T.d(z)) == T.OC.dv(T.pi(z))
    for n in range(1, 6):
        for w in T.OC.basis(n):
            x = T.OC.vec(w)
            assert T.pi(T.iota(x)) == x
            assert T.d(T.iota(x)) == T.iota(T.OC.dv(x))


def test_pi_on_generators():
    C = tensor_hopf_algebra(Z2, {"c1": 2, "c2": 2, "c3": 2})
    T = TildeCobar(C)
    OC = T.OC
    c = [("c1",), ("c2",), ("c3",)]
    x = T.F.element((1, 2, 1), c[:2])
    assert T.pi(x) == OC.bracev(OC.vec((c[0],)), [OC.vec((c[1],))])
    y = T.F.element((1, 2, 3, 1), c)
    assert T.pi(y) == OC.vec((("c1", "c2"), ("c3",))) + OC.vec((("c2",), ("c1", "c3")))


def test_homotopy_example_mod2():
    # [PAPER] h((1,2,3,1)(c)) = (1,2,1,3,1)(c); o_alpha = (1,2,3,1) + (1,2,1,3) + (2,1,3,1)
    M, x, hx, rec = worked_example(Z2)
    assert hx == M.element((1, 2, 1, 3, 1), ("c1", "c2", "c3"))
    assert rec.o_alpha == sj.element(Z2, (1, 2, 3, 1), (1, 2, 1, 3), (2, 1, 3, 1))
    assert (rec.j, rec.S) == (1, frozenset())


def test_homotopy_example_integers():
    M, x, hx, rec = worked_example(ZZ)
    assert hx == M.element((1, 2, 1, 3, 1), ("c1", "c2", "c3"), -1)
    assert rec.o_alpha == sj.element(ZZ, ((1, 2, 1, 3), -1), (1, 2, 3, 1), ((2, 1, 3, 1), -1))
    assert M.d(hx) + M.h(M.d(x)) == x - M.p(x)


@pytest.mark.parametrize("ring", [ZZ, Z2])
def test_retraction_equations(ring):
    M = PrimitiveModel(tensor_hopf_algebra(ring, {"c1": 2, "c2": 2, "c3": 2}))
    rep = verify_retraction(M, max_arity=3, max_op_degree=4)
    assert rep.ok, {k: v.failures[:2] for k, v in rep.checks.items() if v.failures}


def test_retraction_odd_generators():
    M = PrimitiveModel(tensor_hopf_algebra(ZZ, {"c1": 3, "c2": 3}))
    assert verify_retraction(M, max_arity=3, max_op_degree=4).ok


def test_indices():
    assert homotopy_indices((1, 2, 3, 1)) == (1, frozenset())
    assert homotopy_indices((1, 2, 3, 2, 1)) == (2, frozenset({1}))
    assert homotopy_indices((1, 2, 3, 4, 2, 1)) == (2, frozenset({1}))
    assert homotopy_indices((1, 2, 3, 4, 2, 1), "first-repeated-value") == (1, frozenset())
    with pytest.raises(ValueError):
        homotopy_indices((1, 2, 3))


def test_arity_four_rules():
    gens = {f"c{i}": 2 for i in range(1, 5)}
    letters = tuple(gens)
    M = PrimitiveModel(tensor_hopf_algebra(ZZ, gens))
    y = M.element((1, 2, 3, 4, 2, 1), letters)
    with pytest.raises(NotComplexityTwo):
        M.h(y)
    M2 = PrimitiveModel(tensor_hopf_algebra(ZZ, gens), "first-repeated-value")
    hy = M2.h(y)
    assert M2.d(hy) + M2.h(M2.d(y)) == y - M2.p(y)
    assert not M2.h(hy)


def test_nonprimitive_refused(nonprim):
    with pytest.raises(NotPrimitivelyGenerated):
        PrimitiveModel(nonprim)


def test_ideal_generators_vanish_under_pi():
    C = tensor_hopf_algebra(ZZ, {"a": 2, "b": 2})
    T = TildeCobar(C)
    for c1 in C.reduced_basis(2):
        for c2 in C.reduced_basis(2) + C.reduced_basis(4):
            g = T.ideal_generator(c1, c2)
            assert not T.pi(g)
    W = ideal_span(T, 3)
    assert W.contains(T.ideal_generator(("a",), ("b",)))
    assert not W.contains(T.F.element((1, 2, 1), (("a",), ("b",))))


@pytest.mark.parametrize("ring", [ZZ, Z2])
def test_ideal_stability(ring):
    T = TildeCobar(tensor_hopf_algebra(ring, {"a": 2, "b": 2}))
    rep = check_ideal_stability(T, range(1, 6))
    assert rep.ok

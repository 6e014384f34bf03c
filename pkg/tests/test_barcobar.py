import pytest

from s2cobar.barcobar import (
    Bar,
    Cobar,
    algebra_map_from_twisting,
    bar_projection,
    check_bar_duality,
    check_cobar_duality,
    check_unit_map,
    coalgebra_map_from_twisting,
    counit_negative_test,
    is_hopf_twisting,
    is_twisting,
    twisting_from_algebra_map,
    twisting_from_coalgebra_map,
    universal_cobar_twisting,
)
from s2cobar.errors import NotATwistingMorphism
from s2cobar.hopf import (
    DividedPowerAlgebra,
    PresentedBialgebra,
    check_bialgebra,
    check_double_dual,
    tensor_hopf_algebra,
)
from s2cobar.rings import QQ, ZZ, IntegersMod
from s2cobar.suites import bar_duality_sample, brace_identity_failures, s1_products
from s2cobar.vector import Vector


def test_samples_are_bialgebras(tvw, nonprim):
    for C in (tvw, nonprim, DividedPowerAlgebra(ZZ, 2)):
        assert check_bialgebra(C, 0, 8) == []


def test_check_bialgebra_negative():
    C = PresentedBialgebra(ZZ, {"1": 0, "a": 1, "e": 2}, "1", coproducts={"e": {("a", "a"): 1}})
    assert check_bialgebra(C, 0, 2) == []
    bad = PresentedBialgebra(ZZ, {"1": 0, "a": 1, "b": 1, "e": 2, "f": 3}, "1",
                             coproducts={"e": {("a", "b"): 1}, "f": {("e", "a"): 1}},
                             is_algebra=False)
    assert ("coassociativity", "f") in check_bialgebra(bad, 0, 3)


@pytest.mark.parametrize("ring", [ZZ, IntegersMod(2)])
def test_cobar_d_squared_and_leibniz(nonprim, ring):
    A = Cobar(nonprim)
    for n in range(1, 7):
        for w in A.basis(n):
            assert not A.dv(A.d(w))
    for n in range(1, 4):
        for m in range(1, 4):
            for a in A.basis(n):
                for b in A.basis(m):
                    lhs = A.dv(A.mul(a, b))
                    rhs = A.mulv(A.d(a), A.vec(b)) + A.mulv(A.vec(a), A.d(b)) * (-1) ** n
                    assert lhs == rhs


def test_bar_d_squared():
    B = Bar(bar_duality_sample())
    for n in range(-7, 1):
        for w in B.basis(n):
            assert not B.dv(B.d(w))


def test_kadeishvili_braces(nonprim, tvw):
    for C in (tvw, nonprim):
        count, bad = brace_identity_failures(Cobar(C), 5)
        assert count > 0 and not bad


def test_s1_table():
    # [PAPER] t1 tn = tn t1 = n tn + (n+1) t_{n+1} in B S*(S^1); t'1 t'n = (n+1) t'_{n+1} in B H*(S^1)
    cochains, cohom = s1_products(5)
    t = lambda n: ("x",) * n
    for n in range(1, 6):
        expect = Vector(ZZ, {t(n): n, t(n + 1): n + 1})
        assert cochains[n] == (expect, expect)
        assert cohom[n] == Vector(ZZ, {t(n + 1): n + 1})


def test_twisting_round_trips(tvw):
    OC = Cobar(tvw)
    tau = universal_cobar_twisting(OC)
    assert is_twisting(tau, tvw, OC, 1, 6).ok
    assert is_hopf_twisting(tau, tvw, OC, 1, 6).ok
    G = algebra_map_from_twisting(tau, OC, OC)
    back = twisting_from_algebra_map(G)
    for n in range(1, 6):
        for c in tvw.reduced_basis(n):
            assert back(c) == tau(c)
    BOC = Bar(OC)
    F = coalgebra_map_from_twisting(tau, tvw, BOC)
    back = twisting_from_coalgebra_map(F, BOC)
    for n in range(1, 6):
        for c in tvw.reduced_basis(n):
            assert back(c) == tau(c)
    A = bar_duality_sample()
    BA = Bar(A)
    assert is_twisting(bar_projection(BA), BA, A, -7, -1).ok


def test_not_twisting_raises(tvw):
    OC = Cobar(tvw)
    f = lambda c: Vector.zero(ZZ) if c == tvw.unit or len(c) == 1 else Vector.basis(ZZ, (c,))
    with pytest.raises(NotATwistingMorphism):
        is_twisting(f, tvw, OC, 1, 6, raise_on_failure=True)


@pytest.mark.parametrize("ring", [QQ, ZZ])
def test_unit_map(ring):
    for C in (tensor_hopf_algebra(ring, {"v": 2}), DividedPowerAlgebra(ring, 2)):
        rep = check_unit_map(C, 6)
        assert rep.ok, rep


def test_counit_is_not_brace_preserving():
    A = Cobar(tensor_hopf_algebra(ZZ, {"v": 2, "w": 2, "u": 2}))
    wit = counit_negative_test(A, [1, 2])
    assert wit.image != wit.target


def test_duality(tvw, nonprim):
    for C in (tvw, nonprim):
        assert check_cobar_duality(C, 6).ok
    assert check_bar_duality(bar_duality_sample(), 6).ok
    assert check_double_dual(tvw, 0, 6).ok
    assert check_double_dual(bar_duality_sample(), -7, 0).ok

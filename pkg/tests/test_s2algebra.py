import itertools

import pytest

from s2cobar import surjection as sj
from s2cobar.barcobar import Cobar
from s2cobar.errors import ArityMismatch, NotACycle, NotComplexityTwo
from s2cobar.hopf import FreeTensorBialgebra, tensor_hopf_algebra
from s2cobar.rings import QQ, ZZ, IntegersMod
from s2cobar.s2algebra import (
    action_law_sides,
    chain_law_sides,
    check_identity_diff,
    check_identity_mult,
    circle_cochains,
    circle_cohomology,
    equivariance_sides,
    evaluate,
    koszul_sign,
    parse_sequence,
    steenrod_sq,
    tree_str,
)


@pytest.fixture(scope="module")
def cobar():
    return Cobar(tensor_hopf_algebra(ZZ, {"v": 2, "w": 3}))


def inputs(A):
    return [A.vec(b) for n in (1, 2) for b in A.basis(n)]


def test_circle_brace():
    A = circle_cochains()
    x = A.vec("x")
    assert A.bracev(x, [x]) == -x
    assert not A.mulv(x, x)
    assert evaluate(A, (1, 2, 1), [x, x]) == -x
    assert not circle_cohomology().bracev(x, [x])


def test_koszul_sign():
    assert koszul_sign([1, 1], [1, 0]) == -1
    assert koszul_sign([2, 1], [1, 0]) == 1
    assert koszul_sign([1, 1, 1], [2, 0, 1]) == 1


def test_evaluate_generators(cobar):
    A = cobar
    v, w = A.vec(A.basis(1)[0]), A.vec(A.basis(2)[0])
    assert evaluate(A, (1, 2), [v, w]) == A.mulv(v, w)
    assert evaluate(A, (1, 2, 1), [v, w]) == A.bracev(v, [w])
    assert evaluate(A, (1, 2, 1, 3, 1), [v, w, v]) == A.bracev(v, [w, v])
    with pytest.raises(ArityMismatch):
        evaluate(A, (1, 2, 1), [v])


def test_complexity_three_is_refused(cobar):
    v = cobar.vec(cobar.basis(1)[0])
    with pytest.raises(NotComplexityTwo):
        evaluate(cobar, sj.element(ZZ, (1, 2, 1, 2)), [v, v])


def test_parse_sequence():
    assert "{" in tree_str(parse_sequence((1, 2, 1, 3, 1)))
    with pytest.raises(NotComplexityTwo):
        parse_sequence((1, 2, 1, 2))


def test_brace_identities(cobar):
    xs = inputs(cobar)
    for x, y in itertools.product(xs, repeat=2):
        assert check_identity_diff(cobar, x, [y]).ok
        for z in xs[:3]:
            assert check_identity_mult(cobar, x, y, [z]).ok


def test_operad_action_laws(cobar):
    xs = inputs(cobar)[:3]
    ops = [u for n in (1, 2, 3) for d in (0, 1, 2) for u in sj.s2_surjections(n, d)]
    for u in ops:
        for args in itertools.product(xs, repeat=sj.arity(u)):
            lhs, rhs = chain_law_sides(cobar, u, list(args))
            assert lhs == rhs, u
            for perm in itertools.permutations(range(1, sj.arity(u) + 1)):
                lhs, rhs = equivariance_sides(cobar, u, perm, list(args))
                assert lhs == rhs, (u, perm)
    for u in [(1, 2), (1, 2, 1), (2, 1)]:
        for v in [(1, 2), (1, 2, 1), (2, 1, 2)]:
            for i in (1, 2):
                w = sj.compose(sj.element(ZZ, u), i, sj.element(ZZ, v))
                if any(sj.complexity(t) > 2 for t in w.keys()):
                    continue
                for args in itertools.product(xs[:2], repeat=3):
                    lhs, rhs = action_law_sides(cobar, u, i, v, list(args))
                    assert lhs == rhs, (u, i, v)


def test_steenrod_on_circle():
    z2 = IntegersMod(2)
    A = circle_cochains(z2)
    res = steenrod_sq(A, A.vec("x"))
    assert res.cycle == A.vec("x") and res.nonzero_in_homology and res.upper_degree == 1
    B = circle_cohomology(z2)
    assert not steenrod_sq(B, B.vec("x")).nonzero_in_homology


def test_steenrod_errors():
    with pytest.raises(ValueError):
        steenrod_sq(circle_cochains(QQ), circle_cochains(QQ).vec("x"))
    C = FreeTensorBialgebra(IntegersMod(2), {"a": 2, "e": 3}, differential={"e": {("a",): 1}})
    A = Cobar(C)
    e = A.vec(((("e",),)))
    assert A.dv(e)
    with pytest.raises(NotACycle):
        steenrod_sq(A, e)

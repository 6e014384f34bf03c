from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from s2cobar import linalg
from s2cobar.complexes import ChainComplex, LinearMap, homology, quasi_iso_report
from s2cobar.errors import InvalidValue, WindowTooNarrow
from s2cobar.rings import QQ, ZZ, IntegersMod, parse_ring
from s2cobar.vector import Vector

matrices = st.integers(1, 4).flatmap(
    lambda m: st.integers(1, 4).flatmap(
        lambda n: st.lists(st.lists(st.integers(-6, 6), min_size=n, max_size=n), min_size=m, max_size=m)))


def test_parse_ring():
    assert parse_ring("z") is ZZ
    assert parse_ring("q") is QQ
    assert parse_ring("zmod:4") == IntegersMod(4)
    assert parse_ring("z2") == IntegersMod(2)
    assert not IntegersMod(4).is_field and IntegersMod(5).is_field
    with pytest.raises(InvalidValue):
        parse_ring("reals")


def test_ring_arithmetic():
    assert QQ.inv(3) == Fraction(1, 3)
    assert IntegersMod(5).inv(2) == 3
    assert not ZZ.has_half() and QQ.has_half() and IntegersMod(3).has_half()
    assert not IntegersMod(2).has_half()


def test_vector_drops_zeros_and_reduces():
    v = Vector(IntegersMod(2), {"a": 2, "b": 3})
    assert dict(v.items()) == {"b": 1}
    w = Vector(ZZ, {"a": 1}) - Vector(ZZ, {"a": 1})
    assert not w
    assert (Vector(ZZ, {"a": 2}) * 3)["a"] == 6


@settings(max_examples=60, deadline=None)
@given(matrices)
def test_smith_normal_form(M):
    U, D, V = linalg.smith_normal_form(M)
    assert linalg.matmul(linalg.matmul(U, M), V) == D
    assert abs(linalg.det(U)) == 1 and abs(linalg.det(V)) == 1
    diag = [D[i][i] for i in range(min(len(D), len(D[0])))]
    for i in range(len(D)):
        for j in range(len(D[0])):
            if i != j:
                assert D[i][j] == 0
    nz = [d for d in diag if d]
    assert all(d > 0 for d in nz)
    assert all(nz[i + 1] % nz[i] == 0 for i in range(len(nz) - 1))


@settings(max_examples=60, deadline=None)
@given(matrices, st.lists(st.integers(-3, 3), min_size=4, max_size=4))
def test_hermite_membership(M, coeffs):
    n = len(M[0])
    H, piv = linalg.hermite_normal_form(M, n)
    v = [sum(c * row[j] for c, row in zip(coeffs, M)) for j in range(n)]
    assert not any(linalg.hnf_reduce(H, piv, v))


def test_hermite_nonmember():
    H, piv = linalg.hermite_normal_form([[2, 0], [0, 2]], 2)
    assert any(linalg.hnf_reduce(H, piv, [1, 0]))
    assert not any(linalg.hnf_reduce(H, piv, [4, -2]))


def rp2(ring):
    """Cellular chains of RP^2: d e2 = 2 e1, d e1 = 0."""
    basis = {0: ["e0"], 1: ["e1"], 2: ["e2"]}
    d = {"e2": Vector(ring, {"e1": 2}), "e1": Vector.zero(ring), "e0": Vector.zero(ring)}
    return ChainComplex(ring, lambda n: basis.get(n, []), lambda b: d[b], 0, 2, bounded=True, name="RP2")


def test_homology_rp2_integers():
    h = homology(rp2(ZZ), (0, 2))
    assert h.summary() == {0: (1, ()), 1: (0, (2,)), 2: (0, ())}


def test_homology_rp2_mod2_and_rationals():
    assert {n: h[0] for n, h in homology(rp2(IntegersMod(2)), (0, 2)).summary().items()} == {0: 1, 1: 1, 2: 1}
    assert {n: h[0] for n, h in homology(rp2(QQ), (0, 2)).summary().items()} == {0: 1, 1: 0, 2: 0}


def test_window_is_enforced():
    X = ChainComplex(ZZ, lambda n: [], lambda b: Vector.zero(ZZ), 0, 2)
    with pytest.raises(WindowTooNarrow):
        X.basis(5)


def test_quasi_iso_via_cone():
    X = rp2(QQ)
    ident = LinearMap(X, X, lambda b: Vector.basis(QQ, b))
    zero = LinearMap(X, X, lambda b: Vector.zero(QQ))
    assert quasi_iso_report(ident, 0, 2)[0]
    assert not quasi_iso_report(zero, 0, 2)[0]

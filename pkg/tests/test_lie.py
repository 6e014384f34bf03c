import pytest

from s2cobar.errors import AxiomViolation, InvalidValue, NonConfluentStraightening
from s2cobar.lie import CEChains, GradedLieAlgebra, UniversalEnvelope, abelian, build, heisenberg, run_all
from s2cobar.rings import QQ, ZZ, IntegersMod
from s2cobar.vector import Vector

Z3 = IntegersMod(3)


def jacobi_violator(check=True):
    # [a,b] = d, [d,c] = e, every other bracket of basis elements zero
    return GradedLieAlgebra(QQ, {"a": 2, "b": 2, "c": 2, "d": 4, "e": 6},
                            {("a", "b"): {"d": 1}, ("d", "c"): {"e": 1}}, check=check)


def test_envelope_relation():
    U = UniversalEnvelope(heisenberg(QQ))
    assert U.mul(("y",), ("x",)) == U.vec(("x", "y")) - U.vec(("z",))
    assert U.mul(("x",), ("y",)) == U.vec(("x", "y"))


def test_pbw_dimensions():
    L = heisenberg(QQ)
    U = UniversalEnvelope(L)
    dims = L.pbw_dimensions(8)
    assert dims[:5] == [1, 0, 2, 0, 4]
    assert [len(U.basis(n)) for n in range(9)] == dims


def test_odd_generator_squares():
    L = abelian(QQ, {"t": 1})
    U = UniversalEnvelope(L)
    assert not U.mul(("t",), ("t",))


def test_jacobi_violation_detected():
    with pytest.raises(AxiomViolation):
        jacobi_violator()


def test_nonconfluence_when_unchecked():
    U = UniversalEnvelope(jacobi_violator(check=False))
    with pytest.raises(NonConfluentStraightening):
        U.check_confluence(6)


def test_integers_refused():
    with pytest.raises(InvalidValue):
        heisenberg(ZZ)
    with pytest.raises(InvalidValue):
        heisenberg(QQ, (2, 2, 5))


def test_ce_differential():
    CE = CEChains(heisenberg(QQ))
    assert CE.basis(6) == [("x", "y")]
    assert CE.d(("x", "y")) == -CE.vec(("z",))
    for n in range(13):
        for b in CE.basis(n):
            assert not CE.dv(CE.d(b))


@pytest.mark.parametrize("ring", [QQ, Z3])
def test_run_all(ring):
    for L in (abelian(ring, {"xi": 2}), heisenberg(ring)):
        rep = run_all(L, 8)
        assert rep.ok, {k: v.failures[:2] for k, v in rep.checks.items() if v.failures}


def test_betti_agree_across_fields():
    b_q = run_all(heisenberg(QQ), 8, tilde=False).betti
    b_3 = run_all(heisenberg(Z3), 8, tilde=False).betti
    assert b_q == b_3
    assert b_q


def test_zero_lie_algebra():
    L = GradedLieAlgebra(QQ, {}, name="zero")
    rep = run_all(L, 4)
    assert rep.ok

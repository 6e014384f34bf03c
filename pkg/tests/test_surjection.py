import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from s2cobar import surjection as sj
from s2cobar.errors import ArityMismatch, InvalidValue
from s2cobar.rings import ZZ, IntegersMod
from s2cobar.suites import composition_coefficient, homotopy_law_cases
from s2cobar.vector import Vector

SMALL = [u for n in range(1, 4) for d in range(3) for u in sj.surjections(n, d)]
small = st.sampled_from(SMALL)


def vec(u, ring=ZZ):
    return Vector.basis(ring, u)


def test_d_of_121():
    assert sj.differential(vec((1, 2, 1))) == sj.element(ZZ, ((2, 1), 1), ((1, 2), -1))


def test_d_squared_small():
    for n in range(1, 4):
        for d in range(5):
            for u in sj.surjections(n, d):
                assert not sj.differential(sj.differential(vec(u)))


def test_counts_and_degenerates():
    assert len(sj.surjections(2, 1)) == 2
    assert sj.normalize([1, 1, 2], 2) is None
    assert sj.normalize([1, 2, 1], 2) == (1, 2, 1)
    with pytest.raises(InvalidValue):
        sj.normalize([1, 3], 2)


def test_complexity_and_generators():
    assert sj.complexity((1, 2, 3)) == 1
    assert sj.complexity((1, 2, 1)) == 2
    assert sj.complexity((1, 2, 1, 2)) == 3
    assert sj.brace_generator(2) == (1, 2, 1, 3, 1)
    assert sj.degree(sj.brace_generator(3)) == 3
    assert all(sj.complexity(u) <= 2 for u in sj.s2_surjections(3, 2))


def test_standardize_and_text():
    assert sj.standardize((2, 1, 3, 1)) == ((1, 2, 3, 2), (2, 1, 3))
    assert sj.parse("(1,2,1)") == (1, 2, 1)
    assert sj.parse("121") == (1, 2, 1)
    assert sj.fmt((1, 2, 1)) == "(1,2,1)"
    with pytest.raises(InvalidValue):
        sj.parse("1,x")


def test_sigma_action_checks_arity():
    with pytest.raises(ArityMismatch):
        sj.sigma_act((2, 1, 3), vec((1, 2, 1)))
    assert sj.sigma_act((2, 1), vec((1, 2, 1))) == vec((2, 1, 2))


@settings(max_examples=150, deadline=None)
@given(small, small, small, st.data())
def test_sequential_associativity(u, v, w, data):
    i = data.draw(st.integers(1, sj.arity(u)))
    j = data.draw(st.integers(1, sj.arity(v)))
    lhs = sj.compose(sj.compose(vec(u), i, vec(v)), i + j - 1, vec(w))
    rhs = sj.compose(vec(u), i, sj.compose(vec(v), j, vec(w)))
    assert lhs == rhs


@settings(max_examples=150, deadline=None)
@given(small.filter(lambda u: sj.arity(u) >= 2), small, small, st.data())
def test_parallel_associativity(u, v, w, data):
    k = data.draw(st.integers(2, sj.arity(u)))
    i = data.draw(st.integers(1, k - 1))
    sign = -1 if sj.degree(v) * sj.degree(w) % 2 else 1
    lhs = sj.compose(sj.compose(vec(u), k, vec(w)), i, vec(v))
    rhs = sj.compose(sj.compose(vec(u), i, vec(v)), k + sj.arity(v) - 1, vec(w)) * sign
    assert lhs == rhs


@settings(max_examples=150, deadline=None)
@given(small, small, st.data())
def test_leibniz(u, v, data):
    i = data.draw(st.integers(1, sj.arity(u)))
    sign = -1 if sj.degree(u) % 2 else 1
    lhs = sj.differential(sj.compose(vec(u), i, vec(v)))
    rhs = sj.compose(sj.differential(vec(u)), i, vec(v)) + sj.compose(vec(u), i, sj.differential(vec(v))) * sign
    assert lhs == rhs


@pytest.mark.parametrize("n", range(1, 6))
def test_brace_composition_sign(n):
    w, s, c = composition_coefficient(n)
    assert c * s == (-1) ** n


def test_homotopy_identity_counterexample():
    # u = (1,2,1), j = 1, S = {2}: d h + h d vanishes, yet 1 + t is the identity on u.
    x = vec((1, 2, 1))
    lhs = sj.differential(sj.insertion_homotopy(1, {2}, x)) + sj.insertion_homotopy(1, {2}, sj.differential(x))
    assert not lhs
    assert x + sj.t_operator(1, {2}, x) == x


@pytest.mark.parametrize("ring", [ZZ, IntegersMod(2)])
def test_homotopy_identity_on_initial_segments(ring):
    cases, bad = homotopy_law_cases(3, 3, ring, domain="initial")
    assert cases > 0 and not bad


def test_homotopy_identity_full_domain_fails():
    cases, bad = homotopy_law_cases(3, 2, ZZ)
    assert any(u == (1, 2, 1) and j == 1 and tuple(S) == (2,) for u, j, S, _ in bad)

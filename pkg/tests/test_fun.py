import math
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gqm import errors
from gqm.fun import (
    ONE, ZERO, F1Matrix, F1Vector, add_f1, f1_apply, f1_automorphisms, is_group, mul_f1, pg_n_1,
    q1_consistency_report, q1_spin_model, q1_two_spin_model, aa_distribution,
)
from gqm.qcount import gaussian_binomial


def test_monoid_table():
    assert mul_f1(ONE, ONE) == ONE
    assert mul_f1(ZERO, ONE) == ZERO
    assert mul_f1(ZERO, ZERO) == ZERO
    assert add_f1(ZERO, ONE) == ONE
    assert add_f1(ZERO, ZERO) == ZERO
    with pytest.raises(errors.AdditionForbidden):
        add_f1(ONE, ONE)


def test_apply_examples():
    e = lambda i: F1Vector.basis(3, i)
    assert f1_apply(F1Matrix.identity(3), e(2)) == e(2)
    swap = F1Matrix.from_permutation((1, 0, 2))
    assert f1_apply(swap, e(0)) == e(1)
    deficient = F1Matrix.from_entries([[1, 0, 0], [0, 0, 0], [0, 0, 1]])
    assert f1_apply(deficient, e(1)).is_zero()


def test_superposition_is_not_expressible():
    with pytest.raises(errors.AdditionForbidden):
        F1Vector.from_entries([1, 1, 0])
    with pytest.raises(errors.AdditionForbidden):
        F1Vector.basis(2, 0) + F1Vector.basis(2, 1)
    with pytest.raises(errors.AdditionForbidden):
        F1Matrix.from_entries([[1, 1], [0, 0]])


@settings(max_examples=300, deadline=None)
@given(st.integers(1, 7), st.data())
def test_apply_never_superposes(N, data):
    rows = data.draw(st.lists(st.one_of(st.none(), st.integers(0, N - 1)), min_size=N, max_size=N))
    M = F1Matrix(tuple(rows))
    support = data.draw(st.one_of(st.none(), st.integers(0, N - 1)))
    out = f1_apply(M, F1Vector(N, support))
    assert sum(1 for x in out.entries if x) <= 1
    # same answer as the 0/1 matrix product v M computed over the integers
    v = [int(i == support) for i in range(N)]
    prod = [sum(v[i] * M.entries[i][j] for i in range(N)) for j in range(N)]
    assert prod == [x.value for x in out.entries]


@pytest.mark.parametrize("N", range(1, 7))
def test_automorphisms_form_sn(N):
    autos = f1_automorphisms(N)
    assert len(autos) == math.factorial(N)
    assert all(a.is_automorphism() for a in autos)
    assert is_group(autos)


def test_automorphism_cap():
    with pytest.raises(errors.TooLarge):
        f1_automorphisms(9)


def test_composition_closure_random():
    rng = random.Random(3)
    autos = f1_automorphisms(5)
    members = set(autos)
    for _ in range(100):
        assert rng.choice(autos) @ rng.choice(autos) in members


def test_pg_examples():
    g = pg_n_1(3)
    assert g.points == ("a", "b", "c")
    assert set(g.subspaces[1]) == {frozenset("ab"), frozenset("bc"), frozenset("ca")}
    assert g.subspaces[2] == (frozenset("abc"),)
    g2 = pg_n_1(2)
    assert len(g2.points) == 2 and g2.count(1) == 1


def test_pg_counts_are_binomials():
    for N in range(1, 7):
        g = pg_n_1(N)
        for k in range(N):
            assert g.count(k) == gaussian_binomial(N, k + 1, 1) == math.comb(N, k + 1)


def test_spin_model():
    m = q1_spin_model()
    A = m.observables["A"]
    assert len(m.states) == 2
    assert A.expectation(m.states["up"]) == 1
    assert A.expectation(m.states["down"]) == -1
    with pytest.raises(errors.AdditionForbidden):
        m.superpose("up", "down")
    assert all(A.certain_outcome(v) is not None for v in m.states.values())


def test_two_spin_model():
    t = q1_two_spin_model()
    assert len(t.states) == 4 and len(t.entangled) == 0
    assert t.observable.certain_outcome(t.states["up,down"]) == (1, -1)
    assert aa_distribution(t, "up,down")[(1, -1)] == 1
    assert all(t.observable.certain_outcome(v) is not None for v in t.states.values())
    assert t.chsh_bound == 2


@pytest.mark.parametrize("N", range(2, 7))
def test_consistency_report(N):
    report = q1_consistency_report(N)
    assert all(c.passed for c in report), [c for c in report if not c.passed]


def test_report_examples():
    by_name = {c.name: c for c in q1_consistency_report(4)}
    assert by_name["|automorphisms| = N!"].actual == 24
    assert by_name["points of PG(3,1) = [N]_q at q=1"].actual == 4
    assert {c.name: c for c in q1_consistency_report(2)}["points of PG(1,1) = [N]_q at q=1"].actual == 2

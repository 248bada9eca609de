from fractions import Fraction as F

import pytest

from gqm import errors
from gqm.composite import (
    CorrelationRow, RowSkipped, TwoSpinState, chsh_max, chsh_value, correlation, enumerate_two_spin_states,
    joint_distribution, joint_probability, product_observable, singlet, singlet_bracket_rule, table1,
    tensor_bra, tensor_ket,
)
from gqm.gf import field_new, field_of_order
from gqm.measurement import distribution, spin_observable, spin_observables
from gqm.projective import bra, is_dual_basis, ket, projective_equal

ROWS = {
    "A_rs A_rs": ((F(0), F(1, 2), F(1, 2), F(0)), F(-1)),
    "A_rs A_rt": ((F(0), F(1, 3), F(1, 3), F(1, 3)), F(-1, 3)),
    "A_rs A_st": ((F(1, 3), F(1, 3), F(0), F(1, 3)), F(1, 3)),
    "A_rs A_tu": ((F(1, 4), F(1, 4), F(1, 4), F(1, 4)), F(0)),
}


def test_tensor_ket_examples():
    F2 = field_new(2)
    s = tensor_ket(ket(0, F2), ket(1, F2))
    assert str(s) == "[0,1,0,0]" and not s.is_entangled
    assert TwoSpinState.of([F2(1), F2(0), F2(0), F2(1)]).is_entangled


def test_product_kets_never_entangled(ctx):
    for r in range(ctx.q + 1):
        for s in range(ctx.q + 1):
            assert not tensor_ket(ket(r, ctx), ket(s, ctx)).is_entangled


@pytest.mark.parametrize("q", [2, 3, 4, 5])
def test_state_counts(q):
    ctx = field_of_order(q)
    everything, product, entangled = enumerate_two_spin_states(ctx)
    assert len(everything) == q**3 + q**2 + q + 1
    assert len(product) == (q + 1) ** 2
    assert len(entangled) == q * (q * q - 1)
    assert len(product) + len(entangled) == len(everything)
    # product states are exactly the tensor products of points
    tensors = {tensor_ket(ket(r, ctx), ket(s, ctx)).vector for r in range(q + 1) for s in range(q + 1)}
    assert tensors == {s.vector for s in product}


def test_singlet_examples():
    F2, F3 = field_new(2), field_new(3)
    assert str(singlet(0, 1, F2)) == "[0,1,1,0]"
    S3 = singlet(0, 1, F3)
    # stored canonically (last nonzero entry 1); same point as [0,1,2,0]
    assert projective_equal(S3.vector, [F3(0), F3(1), F3(2), F3(0)])
    assert str(S3) == "[0,2,1,0]"
    with pytest.raises(errors.DegenerateSinglet):
        singlet(1, 1, F3)


def test_all_singlets_equivalent(ctx):
    ref = singlet(0, 1, ctx)
    for r in range(ctx.q + 1):
        for s in range(ctx.q + 1):
            if r != s:
                S = singlet(r, s, ctx)
                assert S.is_entangled
                assert projective_equal(S.vector, ref.vector)


def test_singlet_bracket_rule(ctx):
    for r in range(ctx.q + 1):
        for s in range(ctx.q + 1):
            assert singlet_bracket_rule(r, s, ctx) == (0 if r == s else 1)


def test_singlet_sign_convention_matters_in_odd_characteristic():
    # with a plus sign the odd-characteristic state is not the singlet
    ctx = field_new(3)
    plus = TwoSpinState.of([ctx(0), ctx(1), ctx(1), ctx(0)])
    vals = {singlet_bracket_rule(r, r, ctx, plus) for r in range(4)}
    assert vals != {0}


def test_product_observable_basis():
    for q in (2, 3, 4, 5):
        ctx = field_of_order(q)
        obs = spin_observables(ctx)
        for A in obs:
            for B in obs:
                po = product_observable(A, B)
                assert is_dual_basis(po.duals)
                assert [pair for _, pair in po.entries] == [(1, 1), (1, -1), (-1, 1), (-1, -1)]
    ctx = field_new(3)
    A = spin_observable(1, 0, ctx)
    po = product_observable(A, A)
    assert po.duals[0] == tensor_bra(bra(1, ctx), bra(1, ctx))


def test_joint_examples_on_singlet():
    ctx = field_new(5)
    S = singlet(0, 1, ctx)
    rs = spin_observable(0, 1, ctx)
    assert joint_probability(product_observable(rs, rs), (1, -1), S) == F(1, 2)
    st = spin_observable(1, 2, ctx)
    assert joint_probability(product_observable(rs, st), (-1, 1), S) == 0
    tu = spin_observable(2, 3, ctx)
    assert set(joint_distribution(product_observable(rs, tu), S).values()) == {F(1, 4)}
    assert correlation(product_observable(rs, rs), S) == -1
    assert correlation(product_observable(rs, st), S) == F(1, 3)
    assert correlation(product_observable(rs, tu), S) == 0


@pytest.mark.parametrize("q", [2, 3])
def test_product_states_factorize(q):
    ctx = field_of_order(q)
    obs = spin_observables(ctx)
    for u in range(q + 1):
        for v in range(q + 1):
            psi = tensor_ket(ket(u, ctx), ket(v, ctx))
            for A in obs:
                pa = dict(distribution(A, ket(u, ctx)))
                for B in obs:
                    pb = dict(distribution(B, ket(v, ctx)))
                    for (o1, o2), p in joint_distribution(product_observable(A, B), psi).items():
                        assert p == pa[o1] * pb[o2]


@pytest.mark.parametrize("q", [2, 3])
def test_joint_normalization(q):
    ctx = field_of_order(q)
    obs = spin_observables(ctx, oriented=True)
    _, _, entangled = enumerate_two_spin_states(ctx)
    for psi in entangled:
        for A in obs:
            for B in obs:
                assert sum(joint_distribution(product_observable(A, B), psi).values()) == 1


def test_sign_covariance(ctx):
    S = singlet(0, 1, ctx)
    A, A_flip = spin_observable(0, 2, ctx), spin_observable(2, 0, ctx)
    B = spin_observable(1, 2, ctx)
    d = joint_distribution(product_observable(A, B), S)
    d_flip = joint_distribution(product_observable(A_flip, B), S)
    for (o1, o2), p in d.items():
        assert d_flip[(-o1, o2)] == p
    assert correlation(product_observable(A_flip, B), S) == -correlation(product_observable(A, B), S)


def test_table1(ctx):
    rows = table1(ctx)
    assert [r.label for r in rows] == list(ROWS)
    for row in rows:
        if ctx.q == 2 and row.label == "A_rs A_tu":
            assert isinstance(row, RowSkipped)
            continue
        assert isinstance(row, CorrelationRow)
        assert (row.probabilities, row.ev) == ROWS[row.label]


def test_chsh_value_collapse():
    ctx = field_new(3)
    S = singlet(0, 1, ctx)
    A, B = spin_observable(0, 1, ctx), spin_observable(0, 2, ctx)
    assert chsh_value(A, A, B, B, S) == 2 * correlation(product_observable(A, B), S)


def test_chsh_q2_example():
    ctx = field_new(2)
    S = singlet(0, 1, ctx)
    A01, A02 = spin_observable(0, 1, ctx), spin_observable(0, 2, ctx)
    assert -2 <= chsh_value(A01, A02, A01, A02, S) <= 2


def test_chsh_on_singlet_is_two(ctx):
    res = chsh_max(ctx)
    assert res.value == 2
    assert abs(chsh_value(*res.witness, res.state)) == 2
    assert abs(res.signed_value) == 2


def test_chsh_max_brute_force_q2():
    # independent check without the decomposition used by chsh_max
    ctx = field_new(2)
    S = singlet(0, 1, ctx)
    obs = spin_observables(ctx)
    E = {(A.name, B.name): correlation(product_observable(A, B), S) for A in obs for B in obs}
    best = max(
        abs(E[A.name, B.name] + E[A.name, b.name] + E[a.name, B.name] - E[a.name, b.name])
        for A in obs for a in obs for B in obs for b in obs
    )
    assert best == chsh_max(ctx).value == 2


@pytest.mark.parametrize("q", [2, 3])
def test_chsh_over_all_entangled_states(q):
    ctx = field_of_order(q)
    _, _, entangled = enumerate_two_spin_states(ctx)
    assert chsh_max(ctx, entangled).value == 2

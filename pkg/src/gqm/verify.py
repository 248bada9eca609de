"""Named pass/fail checks of the model's exact predictions.

Used by ``gqm verify-all`` and by the individual CLI subcommands.  Each
function takes a field and returns a list of :class:`Check`.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction as F

from . import composite, fun, lhv, measurement, projective, qcount
from .errors import AdditionForbidden
from .gf import FieldCtx, multiplicative_order

EXHAUSTIVE_AXIOM_Q = 32


@dataclass(frozen=True)
class Check:
    name: str
    passed: bool
    detail: str = ""


# probabilities (++, +-, -+, --) and correlation for each pattern on the singlet
TABLE1_EXPECTED = {
    "A_rs A_rs": ((F(0), F(1, 2), F(1, 2), F(0)), F(-1)),
    "A_rs A_rt": ((F(0), F(1, 3), F(1, 3), F(1, 3)), F(-1, 3)),
    "A_rs A_st": ((F(1, 3), F(1, 3), F(0), F(1, 3)), F(1, 3)),
    "A_rs A_tu": ((F(1, 4), F(1, 4), F(1, 4), F(1, 4)), F(0)),
}


def field_checks(ctx: FieldCtx) -> list[Check]:
    g = ctx.generator
    out = [
        Check("generator has order q-1", multiplicative_order(g) == ctx.q - 1, str(g)),
        Check("generator^(q-1) = 1", g ** (ctx.q - 1) == ctx.one),
    ]
    total = ctx.zero
    ok = True
    for m in range(1, ctx.p + 1):
        total = total + ctx.one
        if (m == ctx.p) != (not total):
            ok = False
    out.append(Check(f"characteristic is {ctx.p}", ok))
    if ctx.q <= EXHAUSTIVE_AXIOM_Q:
        out.append(Check("field axioms (exhaustive)", field_axioms_hold(ctx)))
    return out


def field_axioms_hold(ctx: FieldCtx) -> bool:
    els = list(ctx)
    zero, one = ctx.zero, ctx.one
    for a in els:
        if a + zero != a or a * one != a or a + (-a) != zero:
            return False
        if a and a * a.inverse() != one:
            return False
        for b in els:
            if a + b != b + a or a * b != b * a:
                return False
            for c in els:
                if (a + b) + c != a + (b + c) or (a * b) * c != a * (b * c):
                    return False
                if a * (b + c) != a * b + a * c:
                    return False
    return True


def count_checks(ctx: FieldCtx) -> list[Check]:
    q = ctx.q
    out = []
    pts = projective.enumerate_points(2, ctx)
    out.append(Check("|PG(1,q)| = q+1", len(pts) == q + 1, str(len(pts))))
    everything, product, entangled = composite.enumerate_two_spin_states(ctx)
    out.append(Check("two-spin states = q^3+q^2+q+1", len(everything) == q**3 + q**2 + q + 1, str(len(everything))))
    out.append(Check("product states = (q+1)^2", len(product) == (q + 1) ** 2, str(len(product))))
    out.append(Check("entangled states = q(q^2-1)", len(entangled) == q * (q * q - 1), str(len(entangled))))
    for N in range(1, 5):
        if q ** N > 10_000:
            break
        n = len(projective.enumerate_points(N, ctx))
        out.append(Check(f"|PG({N - 1},q)| = [{N}]_q", n == qcount.q_int(N, q), str(n)))
    return out


def subspace_oracle_checks(q: int, max_N: int = 4) -> list[Check]:
    out = []
    for N in range(1, max_N + 1):
        for k in range(-1, N):
            a = qcount.subspace_count(N, k, q)
            b = qcount.brute_force_subspace_count(N, k, q)
            out.append(Check(f"{k}-subspaces of PG({N - 1},{q}): formula = enumeration", a == b, f"{a} vs {b}"))
    return out


def spin_probability_checks(ctx: FieldCtx) -> list[Check]:
    labels = range(ctx.q + 1)
    kets = [projective.ket(t, ctx) for t in labels]
    scalars = [c for c in ctx if c]
    pattern_ok = norm_ok = invariance_ok = True
    for r, s in itertools.permutations(labels, 2):
        A = measurement.spin_observable(r, s, ctx)
        plus, minus = A.duals
        for t, psi in zip(labels, kets):
            p_plus = measurement.probability(plus, A, psi)
            p_minus = measurement.probability(minus, A, psi)
            want = {r: (0, 1), s: (1, 0)}.get(t, (F(1, 2), F(1, 2)))
            pattern_ok &= (p_plus, p_minus) == want
            norm_ok &= p_plus + p_minus == 1
            for c in scalars:
                raw = projective.scale(c, psi)
                invariance_ok &= measurement.probability(plus, A, raw) == p_plus
    return [
        Check("P(A_rs=+-1 | r, s, other) = (0,1), (1,0), (1/2,1/2)", pattern_ok),
        Check("probabilities sum to 1", norm_ok),
        Check("invariant under all nonzero scalings", invariance_ok),
    ]


def abs_map_checks(ctx: FieldCtx) -> list[Check]:
    els = list(ctx)
    ok = all(measurement.abs_map(a * b) == measurement.abs_map(a) * measurement.abs_map(b)
             for a in els for b in els)
    return [Check("|ab| = |a||b| for all a, b", ok)]


def factorization_checks(ctx: FieldCtx) -> list[Check]:
    """On |u>|v>, P(A(x)B = (o1, o2)) = P_A(o1|u) P_B(o2|v) for all spin observables."""
    labels = range(ctx.q + 1)
    obs = measurement.spin_observables(ctx)
    marg = {}
    for A in obs:
        for u in labels:
            marg[A.name, u] = dict((v, p) for v, p in measurement.distribution(A, projective.ket(u, ctx)))
    ok = True
    n = 0
    for u in labels:
        for v in labels:
            psi = composite.tensor_ket(projective.ket(u, ctx), projective.ket(v, ctx))
            for A in obs:
                for B in obs:
                    joint = composite.joint_distribution(composite.product_observable(A, B), psi)
                    for (o1, o2), p in joint.items():
                        ok &= p == marg[A.name, u][o1] * marg[B.name, v][o2]
                    n += 1
    return [Check("product states: joint = product of marginals", ok, f"{n} cases")]


def singlet_bracket_checks(ctx: FieldCtx) -> list[Check]:
    labels = range(ctx.q + 1)
    ok = all(
        composite.singlet_bracket_rule(r, s, ctx) == (0 if r == s else 1)
        for r in labels
        for s in labels
    )
    return [Check("|(<r|(x)<s|)|S>| = 1 - delta_rs", ok)]


def table1_checks(ctx: FieldCtx) -> list[Check]:
    out = []
    for row in composite.table1(ctx):
        if isinstance(row, composite.RowSkipped):
            ok = row.label == "A_rs A_tu" and ctx.q == 2
            out.append(Check(f"{row.label} skipped", ok, row.reason))
            continue
        probs, ev = TABLE1_EXPECTED[row.label]
        out.append(Check(f"{row.label} matches table", row.probabilities == probs and row.ev == ev))
    return out


def chsh_checks(ctx: FieldCtx, all_states: bool = False) -> list[Check]:
    res = composite.chsh_max(ctx)
    out = [Check("max CHSH on the singlet = 2", res.value == 2, str(res.value))]
    if all_states:
        _, _, entangled = composite.enumerate_two_spin_states(ctx)
        res = composite.chsh_max(ctx, entangled)
        out.append(Check("max CHSH over entangled states = 2", res.value == 2, str(res.value)))
    return out


def lhv_checks(ctx: FieldCtx) -> list[Check]:
    out = []
    T = lhv.gqm_joint_table(ctx, composite.singlet(0, 1, ctx))
    v = lhv.lhv_feasible(T.scenario, T)
    out.append(Check("singlet table has no local hidden variable model", not v.feasible, v.method))
    _, product, _ = composite.enumerate_two_spin_states(ctx)
    ok = True
    for psi in product:
        T = lhv.gqm_joint_table(ctx, psi)
        ok &= lhv.lhv_feasible(T.scenario, T).feasible
    out.append(Check("every product-state table is local", ok, f"{len(product)} states"))
    out.append(Check("deterministic CHSH max = 2", lhv.lhv_chsh_max(lhv.Scenario(2, 2)) == 2))
    return out


def fun_checks(max_N: int = 6) -> list[Check]:
    out = []
    m = fun.q1_spin_model()
    A = m.observables["A"]
    out.append(Check("q=1 spin: 2 states", len(m.states) == 2))
    out.append(Check("<A>_up = +1, <A>_down = -1",
                     A.expectation(m.states["up"]) == 1 and A.expectation(m.states["down"]) == -1))
    try:
        m.superpose("up", "down")
        forbidden = False
    except AdditionForbidden:
        forbidden = True
    out.append(Check("superposition raises AdditionForbidden", forbidden))
    t = fun.q1_two_spin_model()
    out.append(Check("q=1 two-spin: 4 states, 0 entangled", len(t.states) == 4 and not t.entangled))
    out.append(Check("every state is an eigenstate of AA",
                     all(t.observable.certain_outcome(psi) is not None for psi in t.states.values())))
    out.append(Check("q=1 CHSH bound = 2", t.chsh_bound == 2))
    for N in range(2, max_N + 1):
        for c in fun.q1_consistency_report(N):
            out.append(Check(f"N={N}: {c.name}", c.passed, f"{c.expected} vs {c.actual}"))
    return out

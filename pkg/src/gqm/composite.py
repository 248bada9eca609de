"""Two-spin systems on GF(q)**2 (x) GF(q)**2 = GF(q)**4.

Tensor components are ordered ``index = 2*i + j`` for ``|i> (x) |j>``.  A
4-vector psi is a product state iff the 2x2 reshape is singular, i.e.
``psi[0]*psi[3] - psi[1]*psi[2] == 0``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import permutations

from .errors import BadObservable, DegenerateSinglet, FieldMismatch, InternalInvariantViolation
from .gf import FieldCtx
from .measurement import ONE, ZERO, Observable, abs_map, born_weights, spin_indices, spin_observable, spin_observables
from .projective import DualVector, ProjVector, _entries, bra, bracket, enumerate_points, ket, signed

OUTCOME_PAIRS = ((1, 1), (1, -1), (-1, 1), (-1, -1))
PAIR_KEYS = ("pp", "pm", "mp", "mm")


def _is_entangled(entries) -> bool:
    a, b, c, d = entries
    return bool(a * d - b * c)


@dataclass(frozen=True)
class TwoSpinState:
    vector: ProjVector
    is_entangled: bool

    @classmethod
    def of(cls, entries) -> "TwoSpinState":
        entries = _entries(entries)
        if len(entries) != 4:
            raise FieldMismatch(f"two-spin states have 4 components, got {len(entries)}")
        vec = ProjVector(entries)
        return cls(vec, _is_entangled(vec.entries))

    @property
    def entries(self):
        return self.vector.entries

    @property
    def ctx(self):
        return self.vector.ctx

    def __str__(self):
        return str(self.vector)


def _kron(u, v):
    a, b = _entries(u), _entries(v)
    if len(a) != 2 or len(b) != 2:
        raise FieldMismatch("tensor factors must be 2-dimensional")
    a[0].ctx._check(b[0])
    return tuple(x * y for x in a for y in b)


def tensor_ket(u, v) -> TwoSpinState:
    return TwoSpinState.of(_kron(u, v))


def tensor_bra(x, y) -> DualVector:
    return DualVector(_kron(x, y))


def enumerate_two_spin_states(ctx: FieldCtx):
    """(all, product, entangled) states of PG(3, q), in point order."""
    everything = [TwoSpinState(v, _is_entangled(v.entries)) for v in enumerate_points(4, ctx)]
    product = [s for s in everything if not s.is_entangled]
    entangled = [s for s in everything if s.is_entangled]
    return everything, product, entangled


def singlet(r: int, s: int, ctx: FieldCtx) -> TwoSpinState:
    """|r>|s> - |s>|r> (a plus sign in characteristic two)."""
    if r == s:
        raise DegenerateSinglet(f"the singlet needs r != s, got r = s = {r}")
    rs = _kron(ket(r, ctx), ket(s, ctx))
    sr = _kron(ket(s, ctx), ket(r, ctx))
    return TwoSpinState.of(tuple(x + signed(y, True) for x, y in zip(rs, sr)))


def singlet_bracket_rule(r: int, s: int, ctx: FieldCtx, state: TwoSpinState | None = None) -> Fraction:
    """|(<r| (x) <s|) |S>|, which equals 1 - delta_rs."""
    if state is None:
        state = singlet(0, 1, ctx)
    return abs_map(bracket(tensor_bra(bra(r, ctx), bra(s, ctx)), state.vector))


@dataclass(frozen=True)
class ProductObservable:
    first: Observable
    second: Observable
    entries: tuple[tuple[DualVector, tuple[int, int]], ...]

    @property
    def name(self) -> str:
        return f"{self.first.name}{self.second.name}"

    @property
    def duals(self):
        return [d for d, _ in self.entries]


def _plus_minus(obs: Observable):
    if len(obs.outcomes) != 2 or any(len(d) != 2 for d in obs.duals):
        raise BadObservable(f"{obs} is not a two-outcome observable on a 2-level system")
    by_value = {v: d for d, v in obs.outcomes}
    if set(by_value) != {ONE, -ONE}:
        raise BadObservable(f"{obs} does not have outcomes +1 and -1")
    return by_value[ONE], by_value[-ONE]


def product_observable(A: Observable, B: Observable) -> ProductObservable:
    """The four tensor duals of A (x) B, ordered ++, +-, -+, --."""
    a_plus, a_minus = _plus_minus(A)
    b_plus, b_minus = _plus_minus(B)
    sides = {1: (a_plus, b_plus), -1: (a_minus, b_minus)}
    entries = tuple(
        (tensor_bra(sides[o1][0], sides[o2][1]), (o1, o2)) for o1, o2 in OUTCOME_PAIRS
    )
    return ProductObservable(A, B, entries)


def joint_distribution(po: ProductObservable, psi) -> dict[tuple[int, int], Fraction]:
    vec = psi.vector if isinstance(psi, TwoSpinState) else psi
    weights = born_weights(po.duals, vec)
    return {pair: w for (_, pair), w in zip(po.entries, weights)}


def joint_probability(po: ProductObservable, outcome_pair, psi) -> Fraction:
    return joint_distribution(po, psi)[tuple(outcome_pair)]


def correlation(po: ProductObservable, psi) -> Fraction:
    dist = joint_distribution(po, psi)
    return sum((o1 * o2 * p for (o1, o2), p in dist.items()), ZERO)


def chsh_value(A: Observable, a: Observable, B: Observable, b: Observable, psi) -> Fraction:
    """<AB> + <Ab> + <aB> - <ab>."""
    def E(x, y):
        return correlation(product_observable(x, y), psi)

    return E(A, B) + E(A, b) + E(a, B) - E(a, b)


# -- singlet correlation table ------------------------------------------------

@dataclass(frozen=True)
class CorrelationRow:
    label: str
    p_pp: Fraction
    p_pm: Fraction
    p_mp: Fraction
    p_mm: Fraction
    ev: Fraction

    @property
    def probabilities(self):
        return (self.p_pp, self.p_pm, self.p_mp, self.p_mm)


@dataclass(frozen=True)
class RowSkipped:
    label: str
    reason: str


# pattern label -> (number of distinct indices, index positions of (r,s) and (t,u))
TABLE1_PATTERNS = (
    ("A_rs A_rs", 2, ((0, 1), (0, 1))),
    ("A_rs A_rt", 3, ((0, 1), (0, 2))),
    ("A_rs A_st", 3, ((0, 1), (1, 2))),
    ("A_rs A_tu", 4, ((0, 1), (2, 3))),
)


def correlation_row(label: str, po: ProductObservable, psi) -> CorrelationRow:
    dist = joint_distribution(po, psi)
    probs = [dist[pair] for pair in OUTCOME_PAIRS]
    ev = probs[0] - probs[1] - probs[2] + probs[3]
    return CorrelationRow(label, *probs, ev)


def label_bracket_table(ctx: FieldCtx, psi) -> list[list[int]]:
    """z[x][y] = |(<x| (x) <y|) psi| for all spin labels x, y."""
    vec = psi.vector if isinstance(psi, TwoSpinState) else psi
    bras = [bra(x, ctx) for x in range(ctx.q + 1)]
    return [[int(abs_map(bracket(tensor_bra(bx, by), vec))) for by in bras] for bx in bras]


def _row_from_table(label, z, r, s, t, u):
    cells = (z[r][t], z[r][u], z[s][t], z[s][u])
    total = sum(cells)
    if total == 0:
        raise InternalInvariantViolation("no tensor dual has a nonzero bracket with the state")
    pp, pm, mp, mm = (Fraction(c, total) for c in cells)
    return CorrelationRow(label, pp, pm, mp, mm, pp - pm - mp + mm)


def table1(ctx: FieldCtx, state: TwoSpinState | None = None) -> list:
    """Correlation rows of the singlet for each index pattern.

    Every assignment of distinct labels to the pattern is evaluated and must
    give the same row; patterns needing more distinct labels than the q + 1
    available come back as :class:`RowSkipped`.  The sweep reads brackets
    from :func:`label_bracket_table`; the first assignment of each pattern is
    also recomputed through :func:`product_observable` as a cross-check.
    """
    if state is None:
        state = singlet(0, 1, ctx)
    labels = range(ctx.q + 1)
    z = label_bracket_table(ctx, state)
    rows = []
    for label, k, ((i, j), (m, n)) in TABLE1_PATTERNS:
        if k > len(labels):
            rows.append(RowSkipped(label, f"needs {k} distinct spin labels, GF({ctx.q}) has {len(labels)}"))
            continue
        found = None
        for idx in permutations(labels, k):
            row = _row_from_table(label, z, idx[i], idx[j], idx[m], idx[n])
            if found is None:
                po = product_observable(
                    spin_observable(idx[i], idx[j], ctx), spin_observable(idx[m], idx[n], ctx)
                )
                found = correlation_row(label, po, state)
                if row != found:
                    raise InternalInvariantViolation(f"{label}: bracket table disagrees with Born rule")
            elif row != found:
                raise InternalInvariantViolation(
                    f"{label} depends on the labels: {idx} gives {row}, expected {found}"
                )
        rows.append(found)
    return rows


# -- CHSH sweep ----------------------------------------------------------------

@dataclass(frozen=True)
class CHSHResult:
    value: Fraction          # max |<A,a;B,b>|
    witness: tuple[Observable, Observable, Observable, Observable]
    signed_value: Fraction   # <A,a;B,b> at the witness
    state: TwoSpinState
    states_checked: int
    observables_per_side: int


def spin_correlation_matrix(ctx: FieldCtx, psi, observables=None) -> list[list[Fraction]]:
    """E[i][j] = <A_i B_j> on psi for spin observables, via one bracket table.

    Uses |(<x| (x) <y|) psi| for all labels x, y once, instead of rebuilding
    product observables for every pair.
    """
    if observables is None:
        observables = spin_observables(ctx)
    z = label_bracket_table(ctx, psi)
    idx = [spin_indices(o) for o in observables]
    E = []
    for r, s in idx:
        row = []
        for t, u in idx:
            pp, pm, mp, mm = z[r][t], z[r][u], z[s][t], z[s][u]
            row.append(Fraction(pp - pm - mp + mm, pp + pm + mp + mm))
        E.append(row)
    return E


def chsh_max(ctx: FieldCtx, states=None, observables=None) -> CHSHResult:
    """max |<A,a;B,b>| over ordered quadruples of spin observables and states.

    Ties are broken by enumeration order of (state, A, a, B, b).
    """
    if states is None:
        states = [singlet(0, 1, ctx)]
    states = list(states)
    if not states:
        raise ValueError("chsh_max needs at least one state")
    if observables is None:
        observables = spin_observables(ctx)
    n = len(observables)
    # all correlations have denominators in {1, 2, 3, 4}; work in units of 1/12
    scale = 12
    best = None
    for si, psi in enumerate(states):
        E = [[int(e * scale) for e in row] for row in spin_correlation_matrix(ctx, psi, observables)]
        for A in range(n):
            EA = E[A]
            for a in range(n):
                Ea = E[a]
                u = [x + y for x, y in zip(EA, Ea)]
                v = [x - y for x, y in zip(EA, Ea)]
                top = max(max(u) + max(v), -(min(u) + min(v)))
                if best is None or top > best[0]:
                    best = (top, si, A, a, u, v)
    top, si, A, a, u, v = best
    for B in range(n):
        hit = next((b for b in range(n) if abs(u[B] + v[b]) == top), None)
        if hit is not None:
            break
    else:
        raise InternalInvariantViolation("CHSH witness not found")
    quad = (observables[A], observables[a], observables[B], observables[hit])
    signed_value = Fraction(u[B] + v[hit], scale)
    return CHSHResult(Fraction(top, scale), quad, signed_value, states[si], len(states), n)

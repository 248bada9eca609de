"""Exact local-hidden-variable feasibility for two-party, two-outcome tables.

A joint table lists P(o1, o2 | i, j) for observable i of party 1 and j of
party 2, outcomes in {+1, -1}.  It has a local hidden variable model iff it
is a convex combination of deterministic strategies, each of which fixes an
outcome for every observable on both sides.

Tables whose marginals signal are rejected at once.  Otherwise the decision
is a phase-1 linear program solved by a revised simplex in exact integer
arithmetic.  A feasible verdict carries the mixture weights; an infeasible
one carries a linear functional F on tables with
``F(table) > max_strategy F(strategy)`` (a marginal difference, or the
optimal phase-1 dual).  Both are checkable by
substitution with :func:`reproduces` and :func:`certificate_gap`.
"""

from __future__ import annotations

import itertools
import json
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

from .errors import BadTable, InternalInvariantViolation, TooLarge

OUTCOMES = ((1, 1), (1, -1), (-1, 1), (-1, -1))
OUTCOME_KEYS = {"pp": (1, 1), "pm": (1, -1), "mp": (-1, 1), "mm": (-1, -1)}
KEY_OF = {v: k for k, v in OUTCOME_KEYS.items()}

MAX_OBSERVABLES = 20  # m1 + m2; 2**20 strategies


@dataclass(frozen=True)
class Scenario:
    m1: int
    m2: int

    def __post_init__(self):
        if self.m1 < 1 or self.m2 < 1:
            raise BadTable(f"need at least one observable per side, got {self.m1}, {self.m2}")

    @property
    def pairs(self) -> list[tuple[int, int]]:
        return [(i, j) for i in range(self.m1) for j in range(self.m2)]


Strategy = tuple  # (outcomes of party 1, outcomes of party 2)


def deterministic_strategies(s: Scenario) -> list[Strategy]:
    """Every +-1 assignment, party 1's observables first; +1 before -1."""
    if s.m1 + s.m2 > MAX_OBSERVABLES:
        raise TooLarge(f"2**{s.m1 + s.m2} strategies exceeds the cap of 2**{MAX_OBSERVABLES}")
    out = []
    for bits in itertools.product((1, -1), repeat=s.m1 + s.m2):
        out.append((bits[: s.m1], bits[s.m1:]))
    return out


def strategy_behavior(s: Scenario, strat: Strategy) -> dict:
    a, b = strat
    return {(i, j): (a[i], b[j]) for i, j in s.pairs}


@dataclass
class JointTable:
    """probs[(i, j)][(o1, o2)] for every observable pair."""

    scenario: Scenario
    probs: dict

    def __post_init__(self):
        s = self.scenario
        clean = {}
        for pair in s.pairs:
            if pair not in self.probs:
                raise BadTable(f"missing observable pair {pair}")
            row = self.probs[pair]
            if set(row) != set(OUTCOMES):
                raise BadTable(f"pair {pair} must give all four outcome pairs")
            row = {o: Fraction(row[o]) for o in OUTCOMES}
            if any(p < 0 for p in row.values()):
                raise BadTable(f"negative probability at pair {pair}")
            if sum(row.values()) != 1:
                raise BadTable(f"probabilities at pair {pair} sum to {sum(row.values())}")
            clean[pair] = row
        extra = set(self.probs) - set(clean)
        if extra:
            raise BadTable(f"pairs outside the scenario: {sorted(extra)}")
        self.probs = clean

    def to_json(self) -> dict:
        return {
            "m1": self.scenario.m1,
            "m2": self.scenario.m2,
            "pairs": {
                f"{i},{j}": {KEY_OF[o]: _rat_str(p) for o, p in row.items()}
                for (i, j), row in self.probs.items()
            },
        }

    @classmethod
    def from_json(cls, doc) -> "JointTable":
        if isinstance(doc, str):
            try:
                doc = json.loads(doc)
            except json.JSONDecodeError as exc:
                raise BadTable(f"not valid JSON: {exc}") from None
        try:
            s = Scenario(int(doc["m1"]), int(doc["m2"]))
            probs = {}
            for key, row in doc["pairs"].items():
                i, j = (int(x) for x in key.split(","))
                probs[(i, j)] = {OUTCOME_KEYS[k]: Fraction(v) for k, v in row.items()}
        except (KeyError, TypeError, ValueError, AttributeError, ZeroDivisionError) as exc:
            if isinstance(exc, BadTable):
                raise
            raise BadTable(f"malformed joint table: {exc!r}") from None
        return cls(s, probs)


def _rat_str(x: Fraction) -> str:
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


@dataclass
class LhvVerdict:
    feasible: bool
    weights: dict | None = None       # strategy -> Fraction
    certificate: dict | None = None   # (i, j) -> {(o1, o2): Fraction}
    table_value: Fraction | None = None
    strategy_max: Fraction | None = None
    pivots: int = 0
    method: str = ""



# -- exact revised simplex -------------------------------------------------------
#
# An LP row is a list of (pair, outcome) terms; its right-hand side is the
# sum of those table entries, and a strategy contributes 1 to it when its
# behaviour on the row's pair is one of the listed outcomes.  A dual vector y
# therefore maps straight back to a functional on tables: the coefficient of
# (pair, outcome) is the sum of y over the rows listing it.

def _full_rows(s: Scenario):
    """Three rows per pair (pp, pm, mp; mm is implied) plus normalisation."""
    rows = [[(pair, o)] for pair in s.pairs for o in OUTCOMES[:3]]
    rows.append([((0, 0), o) for o in OUTCOMES])
    return rows


def _marginal_rows(s: Scenario):
    """Normalisation, P(a_i=+1), P(b_j=+1), P(a_i=+1, b_j=+1).

    Only equivalent to the full table for tables without signalling.
    """
    rows = [[((0, 0), o) for o in OUTCOMES]]
    rows += [[((i, 0), (1, 1)), ((i, 0), (1, -1))] for i in range(s.m1)]
    rows += [[((0, j), (1, 1)), ((0, j), (-1, 1))] for j in range(s.m2)]
    rows += [[(pair, (1, 1))] for pair in s.pairs]
    return rows


def _columns(s: Scenario, strategies, rows):
    lookup = {}
    for r, terms in enumerate(rows):
        for pair, o in terms:
            lookup.setdefault(pair, {}).setdefault(o, []).append(r)
    cols = []
    for a, b in strategies:
        col = []
        for pair, by_outcome in lookup.items():
            col.extend(by_outcome.get((a[pair[0]], b[pair[1]]), ()))
        cols.append(sorted(col))
    return cols


def _phase_one(cols, rhs, m):
    """Minimise the sum of artificials subject to A x + art = rhs, x >= 0.

    A is 0/1 with ``cols[j]`` listing the rows where column j is 1.  The
    basis inverse is carried fraction-free as adj(B) / det(B) (Edmonds'
    integer-preserving pivot), so every update is exact integer arithmetic.
    Entering columns follow the largest-coefficient rule; after ``_STALL``
    consecutive degenerate pivots the choice falls back to Bland's rule
    until the objective moves again, which rules out cycling.

    Returns (basis, x_basic, y, pivots) with y the optimal dual.
    """
    n = len(cols)
    scale = math.lcm(*(Fraction(v).denominator for v in rhs))
    X = [int(Fraction(v) * scale) for v in rhs]
    M = [[int(i == j) for j in range(m)] for i in range(m)]
    D = 1
    basis = list(range(n, n + m))          # artificial i has id n + i
    pivots = 0
    stalled = 0
    while True:
        Y = [0] * m
        for i, var in enumerate(basis):
            if var >= n:
                Y = [a + b for a, b in zip(Y, M[i])]
        sgn = 1 if D > 0 else -1
        entering = None
        best_gain = 0
        basic = set(basis)
        bland = stalled >= _STALL
        for j, col in enumerate(cols):
            if j in basic:
                continue
            gain = sgn * sum(Y[r] for r in col)
            if gain > best_gain:
                entering, best_gain = j, gain
                if bland:
                    break
        if entering is None:
            x = [Fraction(v, D * scale) for v in X]
            y = [Fraction(v, D) for v in Y]
            return basis, x, y, pivots

        col = cols[entering]
        U = [sum(row[r] for r in col) for row in M]
        leave = None
        best = None
        for i in range(m):
            if sgn * U[i] > 0:
                ratio = Fraction(X[i], U[i])
                if best is None or ratio < best or (ratio == best and basis[i] < basis[leave]):
                    best, leave = ratio, i
        if leave is None:
            raise InternalInvariantViolation("phase-one objective unbounded")
        stalled = stalled + 1 if best == 0 else 0

        P = U[leave]
        Mr, Xr = M[leave], X[leave]
        for i in range(m):
            if i == leave:
                continue
            f = U[i]
            if f:
                M[i] = [(P * a - f * b) // D for a, b in zip(M[i], Mr)]
                X[i] = (P * X[i] - f * Xr) // D
            elif P != D:
                M[i] = [P * a // D for a in M[i]]
                X[i] = P * X[i] // D
        D = P
        basis[leave] = entering
        pivots += 1


_STALL = 50


def signaling_certificate(s: Scenario, t: JointTable) -> dict | None:
    """A functional separating a signalling table from every local strategy.

    If some party's marginal for one of its observables depends on the other
    party's choice, the difference of the two marginals is zero on every
    deterministic strategy but not on the table.  Returns None for
    non-signalling tables.
    """
    def zero():
        return {pair: {o: Fraction(0) for o in OUTCOMES} for pair in s.pairs}

    p = t.probs
    for i in range(s.m1):
        base = p[(i, 0)][(1, 1)] + p[(i, 0)][(1, -1)]
        for j in range(1, s.m2):
            diff = p[(i, j)][(1, 1)] + p[(i, j)][(1, -1)] - base
            if diff:
                sign = 1 if diff > 0 else -1
                cert = zero()
                for o in ((1, 1), (1, -1)):
                    cert[(i, j)][o] += sign
                    cert[(i, 0)][o] -= sign
                return cert
    for j in range(s.m2):
        base = p[(0, j)][(1, 1)] + p[(0, j)][(-1, 1)]
        for i in range(1, s.m1):
            diff = p[(i, j)][(1, 1)] + p[(i, j)][(-1, 1)] - base
            if diff:
                sign = 1 if diff > 0 else -1
                cert = zero()
                for o in ((1, 1), (-1, 1)):
                    cert[(i, j)][o] += sign
                    cert[(0, j)][o] -= sign
                return cert
    return None


def lhv_feasible(s: Scenario, t: JointTable, method: str = "auto") -> LhvVerdict:
    """Decide whether t is a mixture of deterministic local strategies.

    ``method="auto"`` first looks for signalling (an immediate certificate)
    and otherwise solves the smaller LP over marginals and ++ probabilities;
    ``method="simplex"`` always solves the LP over the full table.  Weights
    and certificates are re-checked by substitution before returning.
    """
    if t.scenario != s:
        raise BadTable("table and scenario disagree")
    if method not in ("auto", "simplex"):
        raise ValueError(f"unknown method {method!r}")
    strategies = deterministic_strategies(s)

    if method == "auto":
        cert = signaling_certificate(s, t)
        if cert is not None:
            return _infeasible(s, t, cert, 0, "signaling")
        rows = _marginal_rows(s)
    else:
        rows = _full_rows(s)

    rhs = [sum((t.probs[pair][o] for pair, o in terms), Fraction(0)) for terms in rows]
    cols = _columns(s, strategies, rows)
    basis, x, y, pivots = _phase_one(cols, rhs, len(rows))
    n = len(cols)
    method_name = "simplex" if method == "simplex" else "marginal-simplex"

    residual = sum((v for var, v in zip(basis, x) if var >= n), Fraction(0))
    if residual == 0:
        weights = {strategies[var]: v for var, v in sorted(zip(basis, x)) if var < n and v}
        if not reproduces(s, t, weights):
            raise InternalInvariantViolation("simplex weights do not reproduce the table")
        return LhvVerdict(True, weights=weights, pivots=pivots, method=method_name)

    cert = {pair: {o: Fraction(0) for o in OUTCOMES} for pair in s.pairs}
    for yr, terms in zip(y, rows):
        for pair, o in terms:
            cert[pair][o] += yr
    return _infeasible(s, t, cert, pivots, method_name)


def _infeasible(s, t, cert, pivots, method_name):
    cert = normalize_certificate(s, cert)
    value, top = certificate_gap(s, t, cert)
    if not value > top:
        raise InternalInvariantViolation("certificate does not separate the table")
    return LhvVerdict(False, certificate=cert, table_value=value, strategy_max=top,
                      pivots=pivots, method=method_name)


def normalize_certificate(s: Scenario, cert: dict) -> dict:
    """Scale by a positive factor so the first nonzero coefficient is +-1."""
    for pair in s.pairs:
        for o in OUTCOMES:
            c = cert[pair][o]
            if c:
                f = abs(c)
                return {p: {o2: v / f for o2, v in row.items()} for p, row in cert.items()}
    return cert


def functional_value(s: Scenario, cert: dict, probs: dict) -> Fraction:
    return sum((cert[pair][o] * probs[pair][o] for pair in s.pairs for o in OUTCOMES), Fraction(0))


def certificate_gap(s: Scenario, t: JointTable, cert: dict) -> tuple[Fraction, Fraction]:
    """(F(table), max over deterministic strategies of F)."""
    value = functional_value(s, cert, t.probs)
    top = None
    for a, b in deterministic_strategies(s):
        v = sum((cert[(i, j)][(a[i], b[j])] for i, j in s.pairs), Fraction(0))
        if top is None or v > top:
            top = v
    return value, top


def reproduces(s: Scenario, t: JointTable, weights: dict) -> bool:
    if any(w < 0 for w in weights.values()) or sum(weights.values()) != 1:
        return False
    mix = {pair: {o: Fraction(0) for o in OUTCOMES} for pair in s.pairs}
    for strat, w in weights.items():
        for pair, o in strategy_behavior(s, strat).items():
            mix[pair][o] += w
    return mix == t.probs


def mixture_table(s: Scenario, weights: dict) -> JointTable:
    """The table produced by a convex combination of strategies."""
    mix = {pair: {o: Fraction(0) for o in OUTCOMES} for pair in s.pairs}
    for strat, w in weights.items():
        for pair, o in strategy_behavior(s, strat).items():
            mix[pair][o] += Fraction(w)
    return JointTable(s, mix)


def lhv_chsh_max(s: Scenario) -> Fraction:
    """max over deterministic strategies of |A B + A b + a B - a b|."""
    if (s.m1, s.m2) != (2, 2):
        raise BadTable("the CHSH combination needs two observables per side")
    best = None
    for (A, a), (B, b) in deterministic_strategies(s):
        v = abs(A * B + A * b + a * B - a * b)
        if best is None or v > best:
            best = v
    return Fraction(best)


# -- reference tables ------------------------------------------------------------

def uniform_table(s: Scenario) -> JointTable:
    q = Fraction(1, 4)
    return JointTable(s, {pair: {o: q for o in OUTCOMES} for pair in s.pairs})


def pr_box_table() -> JointTable:
    """Perfectly correlated on every pair except (1, 1), which anti-correlates."""
    s = Scenario(2, 2)
    half = Fraction(1, 2)
    probs = {}
    for i, j in s.pairs:
        same = (i, j) != (1, 1)
        probs[(i, j)] = {
            o: (half if (o[0] == o[1]) == same else Fraction(0)) for o in OUTCOMES
        }
    return JointTable(s, probs)


def gqm_joint_table(ctx, state, observables: Iterable | None = None) -> JointTable:
    """Joint table of a two-spin state over spin observables on both sides.

    Defaults to one orientation per direction pair: A_rs with r < s.
    """
    from .composite import joint_distribution, product_observable
    from .measurement import spin_observables

    obs = list(observables) if observables is not None else spin_observables(ctx, oriented=True)
    s = Scenario(len(obs), len(obs))
    probs = {}
    for i, A in enumerate(obs):
        for j, B in enumerate(obs):
            probs[(i, j)] = joint_distribution(product_observable(A, B), state)
    return JointTable(s, probs)

"""Outcome probabilities for states over GF(q).

The "absolute value" of a field element is 0 for zero and 1 otherwise.
Measuring an observable (a dual basis with a value per outcome) on a state
gives every outcome with a nonzero bracket the same weight::

    P(x | psi) = |<x|psi>|**2 / sum_y |<y|psi>|**2

All numbers are :class:`fractions.Fraction`.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import (
    BadBasis,
    BadObservable,
    DegenerateObservable,
    InternalInvariantViolation,
    OutcomeNotInObservable,
)
from .gf import FieldCtx, FieldElement
from .projective import DualVector, bra, bracket, is_dual_basis, projective_equal

Rat = Fraction

ZERO = Fraction(0)
ONE = Fraction(1)


def abs_map(k: FieldElement) -> Fraction:
    return ONE if k else ZERO


@dataclass(frozen=True)
class Observable:
    ctx: FieldCtx
    outcomes: tuple[tuple[DualVector, Fraction], ...]
    name: str = ""

    def __post_init__(self):
        outcomes = tuple((d, Fraction(v)) for d, v in self.outcomes)
        object.__setattr__(self, "outcomes", outcomes)
        duals = [d for d, _ in outcomes]
        for d in duals:
            self.ctx._check(d.entries[0])
        if not is_dual_basis(duals):
            raise BadBasis(f"outcomes of {self.name or 'observable'} do not form a dual basis")
        values = [v for _, v in outcomes]
        if len(set(values)) != len(values):
            raise BadObservable("outcome values must be distinct")

    @property
    def duals(self) -> list[DualVector]:
        return [d for d, _ in self.outcomes]

    @property
    def values(self) -> list[Fraction]:
        return [v for _, v in self.outcomes]

    def index_of(self, x: DualVector) -> int:
        for i, (d, _) in enumerate(self.outcomes):
            if d == x:
                return i
        for i, (d, _) in enumerate(self.outcomes):
            if len(d) == len(x) and projective_equal(d, x):
                return i
        raise OutcomeNotInObservable(f"{x} is not an outcome of {self.name or 'observable'}")

    def __str__(self):
        return self.name or "{" + ", ".join(f"{d}:{v}" for d, v in self.outcomes) + "}"


def born_weights(duals: Sequence, psi) -> list[Fraction]:
    """Probabilities of each dual in a basis, in order."""
    weights = [abs_map(bracket(d, psi)) ** 2 for d in duals]
    total = sum(weights)
    if total == 0:
        raise InternalInvariantViolation("no basis dual has a nonzero bracket with the state")
    return [w / total for w in weights]


def probability(x: DualVector, obs: Observable, psi) -> Fraction:
    i = obs.index_of(x)
    return born_weights(obs.duals, psi)[i]


def distribution(obs: Observable, psi) -> list[tuple[Fraction, Fraction]]:
    """(outcome value, probability) for every outcome of obs."""
    return list(zip(obs.values, born_weights(obs.duals, psi)))


def expectation(obs: Observable, psi) -> Fraction:
    return sum((v * p for v, p in distribution(obs, psi)), ZERO)


def eigenstates(obs: Observable, states) -> list[tuple[object, Fraction]]:
    """States on which one outcome of obs is certain, with that outcome."""
    out = []
    for psi in states:
        certain = [v for v, p in distribution(obs, psi) if p == 1]
        if len(certain) == 1:
            out.append((psi, certain[0]))
    return out


def spin_observable(r: int, s: int, ctx: FieldCtx) -> Observable:
    """A_rs: outcome +1 on <r|, -1 on <s|."""
    if r == s:
        raise DegenerateObservable(f"A_rs needs r != s, got r = s = {r}")
    return Observable(ctx, ((bra(r, ctx), ONE), (bra(s, ctx), -ONE)), name=spin_name(r, s))


def spin_name(r: int, s: int) -> str:
    return f"A_{r}{s}" if r < 10 and s < 10 else f"A_{r},{s}"


def spin_observables(ctx: FieldCtx, oriented: bool = False) -> list[Observable]:
    """All A_rs with r != s, ordered by (r, s).  With ``oriented`` only r < s."""
    labels = range(ctx.q + 1)
    return [
        spin_observable(r, s, ctx)
        for r in labels
        for s in labels
        if r != s and (r < s or not oriented)
    ]


def spin_indices(obs: Observable) -> tuple[int, int]:
    """Recover (r, s) for an observable built by :func:`spin_observable`."""
    ctx = obs.ctx
    plus, minus = obs.duals
    labels = range(ctx.q + 1)
    r = next(i for i in labels if bra(i, ctx) == plus)
    s = next(i for i in labels if bra(i, ctx) == minus)
    return r, s

"""States and outcomes over GF(q)**N and the projective geometry PG(N-1, q).

A state is a nonzero column vector up to a nonzero scalar; ``ProjVector``
always holds the canonical representative whose last nonzero entry is 1.
Outcomes are nonzero row vectors (``DualVector``).  Duals are kept exactly
as constructed so that the spin-model bras print with their usual labels;
use :func:`projective_equal` for label-free comparison.

For the two-level ("spin") model the q + 1 points of PG(1, q) are labelled
r = 0, 1, ..., q::

    |0> = [1, 0]     |1> = [0, 1]     |r> = [a**(r-1), 1]   (r >= 2)
    <0| = [0, -1]    <1| = [1, 0]     <r| = [1, -a**(r-1)]

with ``a`` the field's generator, so that <r|s> = 0 exactly when r == s.
"""

from __future__ import annotations

import itertools
from typing import Sequence

from .errors import BadBasis, BadIndex, FieldMismatch, ZeroVector
from .gf import FieldCtx, FieldElement


def signed(x: FieldElement, negative: bool) -> FieldElement:
    """x or -x.  In characteristic two the two coincide, which is how the
    dropped minus signs of the bras and of the singlet come about."""
    return -x if negative else x


def _entries(v) -> tuple[FieldElement, ...]:
    if isinstance(v, (ProjVector, DualVector)):
        return v.entries
    return tuple(v)


def _ctx_of(entries) -> FieldCtx:
    if not entries:
        raise ValueError("empty vector")
    ctx = entries[0].ctx
    for e in entries[1:]:
        ctx._check(e)
    return ctx


class _Vector:
    __slots__ = ("ctx", "entries")

    def __init__(self, entries: Sequence[FieldElement]):
        entries = tuple(entries)
        ctx = _ctx_of(entries)
        if not any(entries):
            raise ZeroVector("the zero vector is not allowed")
        self.ctx = ctx
        self.entries = entries

    @property
    def N(self) -> int:
        return len(self.entries)

    def __len__(self):
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)

    def __getitem__(self, i):
        return self.entries[i]

    def __eq__(self, other):
        if type(other) is not type(self):
            return NotImplemented
        return self.ctx == other.ctx and self.entries == other.entries

    def __hash__(self):
        return hash((type(self).__name__, self.entries))

    def key(self) -> tuple[int, ...]:
        return tuple(e.index for e in self.entries)

    def __str__(self):
        return "[" + ",".join(str(e) for e in self.entries) + "]"


class ProjVector(_Vector):
    """A point of PG(N-1, q), stored in canonical form."""

    __slots__ = ()

    def __init__(self, entries: Sequence[FieldElement]):
        super().__init__(entries)
        self.entries = _canonical_entries(self.entries)

    def __repr__(self):
        return f"ProjVector({self})"


class DualVector(_Vector):
    """A nonzero row vector (an outcome), kept as given."""

    __slots__ = ()

    def canonical(self) -> "DualVector":
        return DualVector(_canonical_entries(self.entries))

    def __repr__(self):
        return f"DualVector({self})"


def _canonical_entries(entries):
    last = next(e for e in reversed(entries) if e)
    s = last.inverse()
    return tuple(e * s for e in entries)


def canonicalize(v) -> ProjVector:
    """Scale v so that its last nonzero entry is 1."""
    entries = _entries(v)
    if not entries or not any(entries):
        raise ZeroVector("cannot canonicalize the zero vector")
    return ProjVector(entries)


def scale(c: FieldElement, v) -> tuple[FieldElement, ...]:
    """c * v as a raw entry tuple (not canonicalized)."""
    return tuple(c * e for e in _entries(v))


def projective_equal(u, v) -> bool:
    a, b = _entries(u), _entries(v)
    if len(a) != len(b):
        raise FieldMismatch("vectors of different dimension")
    _ctx_of(a)._check(b[0])
    return _canonical_entries(a) == _canonical_entries(b)


def bracket(x, psi) -> FieldElement:
    """<x|psi> = sum_i x_i psi_i."""
    a, b = _entries(x), _entries(psi)
    if len(a) != len(b):
        raise FieldMismatch(f"dual of length {len(a)} against vector of length {len(b)}")
    ctx = _ctx_of(a)
    ctx._check(b[0])
    total = ctx.zero
    for xi, yi in zip(a, b):
        total = total + xi * yi
    return total


def enumerate_points(N: int, ctx: FieldCtx) -> list[ProjVector]:
    """Canonical representatives of PG(N-1, q).

    Ordered by the position of the trailing 1, then by the free leading
    entries in lexicographic order of element indices.
    """
    out = []
    elems = list(ctx)
    for pos in range(N):
        for free in itertools.product(elems, repeat=pos):
            out.append(ProjVector(free + (ctx.one,) + (ctx.zero,) * (N - pos - 1)))
    return out


def _check_spin_index(r: int, ctx: FieldCtx):
    if not isinstance(r, int) or not 0 <= r <= ctx.q:
        raise BadIndex(f"spin index must be in [0, {ctx.q}], got {r!r}")


def ket(r: int, ctx: FieldCtx) -> ProjVector:
    _check_spin_index(r, ctx)
    if r == 0:
        return ProjVector((ctx.one, ctx.zero))
    if r == 1:
        return ProjVector((ctx.zero, ctx.one))
    return ProjVector((ctx.generator ** (r - 1), ctx.one))


def bra(r: int, ctx: FieldCtx) -> DualVector:
    _check_spin_index(r, ctx)
    if r == 0:
        return DualVector((ctx.zero, signed(ctx.one, True)))
    if r == 1:
        return DualVector((ctx.one, ctx.zero))
    return DualVector((ctx.one, signed(ctx.generator ** (r - 1), True)))


def spin_labels(ctx: FieldCtx) -> range:
    return range(ctx.q + 1)


def rank(rows) -> int:
    """Rank over GF(q) of a list of equal-length rows, by elimination."""
    m = [list(_entries(r)) for r in rows]
    if not m:
        return 0
    ncols = len(m[0])
    rk = 0
    for col in range(ncols):
        piv = next((i for i in range(rk, len(m)) if m[i][col]), None)
        if piv is None:
            continue
        m[rk], m[piv] = m[piv], m[rk]
        inv = m[rk][col].inverse()
        m[rk] = [e * inv for e in m[rk]]
        for i in range(len(m)):
            if i != rk and m[i][col]:
                f = m[i][col]
                m[i] = [a - f * b for a, b in zip(m[i], m[rk])]
        rk += 1
    return rk


def is_dual_basis(duals: Sequence[DualVector]) -> bool:
    duals = list(duals)
    if not duals:
        raise BadBasis("empty basis")
    N = len(duals[0])
    if len(duals) != N or any(len(d) != N for d in duals):
        raise BadBasis(f"a basis of the {N}-dimensional dual space needs {N} duals")
    return rank(duals) == N

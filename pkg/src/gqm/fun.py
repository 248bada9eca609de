"""The q = 1 limit, built on the field with one element.

F1 is the monoid {0, 1} under multiplication.  Adding 0 to anything is
allowed; 1 + 1 is not, and raises :class:`AdditionForbidden`.  A "vector"
in F1**N therefore has at most one nonzero coordinate, so the only states
are the N basis vectors and superposition cannot be written down.

Maps are N x N 0/1 matrices with at most one 1 per row.  Row i names the
image of basis vector i (equivalently the matrix acts on coordinate rows,
``v -> v M``), so applying a map never adds two coordinates and never
produces more than one nonzero entry.  The automorphisms are the
permutation matrices, a copy of S_N.
"""

from __future__ import annotations

import itertools
import math
import string
from dataclasses import dataclass
from fractions import Fraction

from .errors import AdditionForbidden, BadIndex, InvalidArgs, TooLarge
from .qcount import gaussian_binomial, q_factorial, q_int

MAX_AUTOMORPHISM_N = 8


@dataclass(frozen=True)
class F1Element:
    value: int

    def __post_init__(self):
        if self.value not in (0, 1):
            raise InvalidArgs(f"F1 has only 0 and 1, got {self.value!r}")

    def __mul__(self, other: "F1Element") -> "F1Element":
        return mul_f1(self, other)

    def __add__(self, other: "F1Element") -> "F1Element":
        return add_f1(self, other)

    def __bool__(self):
        return self.value == 1

    def __str__(self):
        return str(self.value)


ZERO = F1Element(0)
ONE = F1Element(1)


def mul_f1(a: F1Element, b: F1Element) -> F1Element:
    return ONE if (a.value and b.value) else ZERO


def add_f1(a: F1Element, b: F1Element) -> F1Element:
    if a.value and b.value:
        raise AdditionForbidden("1 + 1 is not defined over F1")
    return a if a.value else b


@dataclass(frozen=True)
class F1Vector:
    """A basis vector e_support of F1**N, or the zero vector (support None)."""

    N: int
    support: int | None

    def __post_init__(self):
        if self.N < 1:
            raise InvalidArgs("dimension must be positive")
        if self.support is not None and not 0 <= self.support < self.N:
            raise BadIndex(f"basis index {self.support} outside 0..{self.N - 1}")

    @classmethod
    def basis(cls, N: int, i: int) -> "F1Vector":
        return cls(N, i)

    @classmethod
    def zero(cls, N: int) -> "F1Vector":
        return cls(N, None)

    @classmethod
    def from_entries(cls, entries) -> "F1Vector":
        """Build from 0/1 coordinates; two or more 1s would be a superposition."""
        ones = [i for i, e in enumerate(entries) if _as_int(e)]
        if len(ones) > 1:
            raise AdditionForbidden(f"{list(entries)} is a sum of basis vectors")
        return cls(len(entries), ones[0] if ones else None)

    @property
    def entries(self) -> tuple[F1Element, ...]:
        return tuple(ONE if i == self.support else ZERO for i in range(self.N))

    def is_zero(self) -> bool:
        return self.support is None

    def __add__(self, other: "F1Vector") -> "F1Vector":
        if other.N != self.N:
            raise InvalidArgs("dimension mismatch")
        if self.support is None:
            return other
        if other.support is None:
            return self
        if self.support == other.support:
            add_f1(ONE, ONE)  # raises
        raise AdditionForbidden(f"e_{self.support} + e_{other.support} is a superposition")

    def scale(self, c: F1Element) -> "F1Vector":
        return self if c.value else F1Vector.zero(self.N)

    def __str__(self):
        return "[" + ",".join(str(e) for e in self.entries) + "]"


def _as_int(e) -> int:
    v = e.value if isinstance(e, F1Element) else int(e)
    if v not in (0, 1):
        raise InvalidArgs(f"F1 entries are 0 or 1, got {e!r}")
    return v


@dataclass(frozen=True)
class F1Matrix:
    """``rows[i]`` is the column holding row i's single 1, or None."""

    rows: tuple

    @classmethod
    def from_entries(cls, entries) -> "F1Matrix":
        out = []
        N = len(entries)
        for r, row in enumerate(entries):
            if len(row) != N:
                raise InvalidArgs("F1 matrices are square")
            ones = [j for j, e in enumerate(row) if _as_int(e)]
            if len(ones) > 1:
                raise AdditionForbidden(f"row {r} has {len(ones)} ones; maps may not add basis vectors")
            out.append(ones[0] if ones else None)
        return cls(tuple(out))

    @classmethod
    def from_permutation(cls, perm) -> "F1Matrix":
        return cls(tuple(perm))

    @classmethod
    def identity(cls, N: int) -> "F1Matrix":
        return cls(tuple(range(N)))

    @property
    def N(self) -> int:
        return len(self.rows)

    @property
    def entries(self) -> tuple[tuple[int, ...], ...]:
        return tuple(tuple(int(j == c) for j in range(self.N)) for c in self.rows)

    def is_automorphism(self) -> bool:
        return None not in self.rows and len(set(self.rows)) == self.N

    def compose(self, other: "F1Matrix") -> "F1Matrix":
        """The map "self, then other" (the matrix product self @ other)."""
        if other.N != self.N:
            raise InvalidArgs("dimension mismatch")
        return F1Matrix(tuple(None if c is None else other.rows[c] for c in self.rows))

    def __matmul__(self, other):
        if isinstance(other, F1Matrix):
            return self.compose(other)
        return NotImplemented


def f1_apply(M: F1Matrix, v: F1Vector) -> F1Vector:
    if M.N != v.N:
        raise InvalidArgs(f"{M.N}x{M.N} map applied to a vector of length {v.N}")
    out = F1Vector.zero(v.N) if v.support is None else F1Vector(v.N, M.rows[v.support])
    assert sum(1 for e in out.entries if e) <= 1
    return out


def f1_automorphisms(N: int) -> list[F1Matrix]:
    """The N! permutation matrices, in lexicographic order of permutations."""
    if N < 1:
        raise InvalidArgs("N must be positive")
    if N > MAX_AUTOMORPHISM_N:
        raise TooLarge(f"{N}! automorphisms exceeds the cap N <= {MAX_AUTOMORPHISM_N}")
    return [F1Matrix.from_permutation(p) for p in itertools.permutations(range(N))]


def is_group(elements) -> bool:
    """Closure, identity and inverses for a finite set of F1 maps."""
    elements = list(elements)
    if not elements:
        return False
    table = set(elements)
    ident = F1Matrix.identity(elements[0].N)
    if ident not in table:
        return False
    for g in elements:
        if not any(g.compose(h) == ident and h.compose(g) == ident for h in elements):
            return False
        for h in elements:
            if g.compose(h) not in table:
                return False
    return True


# -- PG(N-1, 1) ----------------------------------------------------------------

@dataclass(frozen=True)
class F1Geometry:
    N: int
    points: tuple[str, ...]
    subspaces: dict  # k -> tuple of frozensets of point labels

    def count(self, k: int) -> int:
        return len(self.subspaces[k])


def _labels(N):
    if N <= 26:
        return tuple(string.ascii_lowercase[:N])
    return tuple(f"p{i}" for i in range(N))


def pg_n_1(N: int) -> F1Geometry:
    """N points; the k-dimensional subspaces are the (k+1)-element subsets."""
    if N < 1:
        raise InvalidArgs("N must be positive")
    pts = _labels(N)
    subspaces = {
        k: tuple(frozenset(c) for c in itertools.combinations(pts, k + 1)) for k in range(N)
    }
    return F1Geometry(N, pts, subspaces)


# -- q = 1 spin models -----------------------------------------------------------

def f1_bracket(x: F1Vector, psi: F1Vector) -> F1Element:
    """sum_i x_i psi_i.  At most one term is nonzero, so no 1 + 1 arises."""
    if x.N != psi.N:
        raise InvalidArgs("dimension mismatch")
    total = ZERO
    for a, b in zip(x.entries, psi.entries):
        total = add_f1(total, mul_f1(a, b))
    return total


@dataclass(frozen=True)
class F1Observable:
    outcomes: tuple  # ((F1Vector dual, Fraction value), ...)
    name: str = ""

    def distribution(self, psi: F1Vector) -> list[tuple[Fraction, Fraction]]:
        weights = [Fraction(f1_bracket(d, psi).value) for d, _ in self.outcomes]
        total = sum(weights)
        return [(v, w / total) for (_, v), w in zip(self.outcomes, weights)]

    def expectation(self, psi: F1Vector) -> Fraction:
        return sum((v * p for v, p in self.distribution(psi)), Fraction(0))

    def certain_outcome(self, psi: F1Vector):
        certain = [v for v, p in self.distribution(psi) if p == 1]
        return certain[0] if len(certain) == 1 else None


@dataclass(frozen=True)
class SpinModel:
    states: dict        # label -> F1Vector
    duals: dict         # label -> F1Vector (row)
    observables: dict   # name -> F1Observable

    def superpose(self, a: str, b: str) -> F1Vector:
        return self.states[a] + self.states[b]


def q1_spin_model() -> SpinModel:
    up, down = F1Vector.basis(2, 0), F1Vector.basis(2, 1)
    bra_up, bra_down = F1Vector.basis(2, 0), F1Vector.basis(2, 1)
    A = F1Observable(((bra_up, Fraction(1)), (bra_down, Fraction(-1))), "A")
    return SpinModel({"up": up, "down": down}, {"up": bra_up, "down": bra_down}, {"A": A})


def f1_tensor(u: F1Vector, v: F1Vector) -> F1Vector:
    """Kronecker product: e_i (x) e_j = e_(i*N + j)."""
    if u.support is None or v.support is None:
        return F1Vector.zero(u.N * v.N)
    return F1Vector(u.N * v.N, u.support * v.N + v.support)


@dataclass(frozen=True)
class TwoSpinModel:
    states: dict            # "up,up" etc -> F1Vector of length 4
    entangled: tuple
    observable: F1Observable
    chsh_bound: Fraction


def q1_two_spin_model() -> TwoSpinModel:
    single = q1_spin_model()
    names = ("up", "down")
    states = {
        f"{a},{b}": f1_tensor(single.states[a], single.states[b]) for a in names for b in names
    }
    every = [F1Vector.basis(4, i) for i in range(4)]
    products = set(states.values())
    entangled = tuple(v for v in every if v not in products)

    sign = {"up": 1, "down": -1}
    outcomes = []
    for a in names:
        for b in names:
            dual = f1_tensor(single.duals[a], single.duals[b])
            outcomes.append((dual, (sign[a], sign[b])))
    AA = F1Observable(tuple(outcomes), "AA")

    # the only observables per side are A and A_01 = -A, so each side's pair
    # (A, a) is the certain outcome times a choice of signs
    best = Fraction(0)
    for psi in states.values():
        x, y = AA.certain_outcome(psi)
        for s1, s2, t1, t2 in itertools.product((1, -1), repeat=4):
            A, a = s1 * x, s2 * x
            B, b = t1 * y, t2 * y
            best = max(best, Fraction(abs(A * B + A * b + a * B - a * b)))
    return TwoSpinModel(states, entangled, AA, best)


def aa_distribution(model: TwoSpinModel, label: str) -> dict:
    """Outcome pair -> probability for AA measured on a product state."""
    psi = model.states[label]
    weights = [f1_bracket(d, psi).value for d, _ in model.observable.outcomes]
    total = sum(weights)
    return {pair: Fraction(w, total) for (_, pair), w in zip(model.observable.outcomes, weights)}


# -- comparison with the formal q -> 1 limit -------------------------------------

@dataclass(frozen=True)
class Check:
    name: str
    expected: object
    actual: object

    @property
    def passed(self) -> bool:
        return self.expected == self.actual


def q1_consistency_report(N: int) -> list[Check]:
    if N < 2:
        raise InvalidArgs("the report needs N >= 2")
    geom = pg_n_1(N)
    states = [F1Vector.basis(N, i) for i in range(N)]
    autos = f1_automorphisms(N)
    checks = [
        Check(f"points of PG({N - 1},1) = [N]_q at q=1", q_int(N, 1), len(geom.points)),
        Check("nonzero vectors of F1^N = states", len(geom.points), len(states)),
        Check("|automorphisms| = [N]_q! at q=1", q_factorial(N, 1), len(autos)),
        Check("|automorphisms| = N!", math.factorial(N), len(autos)),
        Check("automorphisms form a group", True, is_group(autos)),
    ]
    for k in range(N):
        checks.append(Check(
            f"{k}-subspaces = Gaussian binomial ({N} {k + 1})_1",
            gaussian_binomial(N, k + 1, 1),
            geom.count(k),
        ))
        checks.append(Check(
            f"points per {k}-subspace = [k+1]_1",
            q_int(k + 1, 1),
            len(geom.subspaces[k][0]),
        ))
    # any dual basis of F1^N* is the N unit rows in some order
    duals = [F1Vector.basis(N, i) for i in range(N)]
    every_eigen = all(
        sum(1 for d in duals if f1_bracket(d, psi).value) == 1 for psi in states
    )
    checks.append(Check("every state is an eigenstate of every observable", True, every_eigen))
    return checks

"""q-analog counting: [N]_q, q-factorials, Gaussian binomials, subspace counts.

Everything is computed from sums and products of powers of q, never from
``(q**N - 1) / (q - 1)``, so q = 1 is an ordinary input and yields the
classical N, N! and binomial coefficients.
"""

from __future__ import annotations

import itertools

from .errors import InvalidArgs, InvalidField
from .gf import field_new, prime_power


def _check_q(q):
    if not isinstance(q, int) or q < 1:
        raise InvalidArgs(f"q must be a positive integer, got {q!r}")


def q_int(N: int, q: int) -> int:
    """1 + q + ... + q**(N-1)."""
    _check_q(q)
    if N < 0:
        raise InvalidArgs(f"N must be non-negative, got {N}")
    return sum(q ** i for i in range(N))


def q_factorial(N: int, q: int) -> int:
    out = 1
    for k in range(1, N + 1):
        out *= q_int(k, q)
    return out


def gaussian_binomial(N: int, M: int, q: int) -> int:
    """Number of M-dimensional subspaces of an N-dimensional space over GF(q)."""
    if not 0 <= M <= N:
        raise InvalidArgs(f"need 0 <= M <= N, got N={N}, M={M}")
    num = q_factorial(N, q)
    den = q_factorial(M, q) * q_factorial(N - M, q)
    value, rem = divmod(num, den)
    if rem:
        raise AssertionError(f"inexact Gaussian binomial ({N} {M})_{q}")
    return value


def subspace_count(N: int, k: int, q: int) -> int:
    """Number of k-dimensional projective subspaces of PG(N-1, q).

    k = -1 is the empty subspace and k = N-1 the whole space.
    """
    if not -1 <= k <= N - 1:
        raise InvalidArgs(f"need -1 <= k <= N-1, got N={N}, k={k}")
    return gaussian_binomial(N, k + 1, q)


def points_per_subspace(k: int, q: int) -> int:
    return q_int(k + 1, q)


def brute_force_subspace_count(N: int, k: int, q: int) -> int:
    """Count (k+1)-dimensional linear subspaces of GF(q)**N by enumeration.

    Subspaces are grown one dimension at a time: each d-dimensional
    subspace S is extended by every vector v outside it, the span of
    S + {v} is closed explicitly, and the resulting point sets are
    deduplicated.  Independent of the q-analog formulas above.
    """
    try:
        p, n = prime_power(q)
    except InvalidField:
        raise InvalidField(f"q={q} is not a prime power") from None
    if not -1 <= k <= N - 1:
        raise InvalidArgs(f"need -1 <= k <= N-1, got N={N}, k={k}")
    ctx = field_new(p, n)
    add, mul = ctx._add, ctx._mul

    vectors = list(itertools.product(range(q), repeat=N))
    zero = (0,) * N
    level = {frozenset([zero])}
    for _ in range(k + 1):
        nxt = set()
        for space in level:
            for v in vectors:
                if v in space:
                    continue
                span = set()
                for s in space:
                    for c in range(q):
                        span.add(tuple(add(si, mul(c, vi)) for si, vi in zip(s, v)))
                nxt.add(frozenset(span))
        level = nxt
    return len(level)

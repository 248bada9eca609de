"""Exact arithmetic in the Galois field GF(q), q = p**n.

Elements are polynomials over GF(p) of degree < n, reduced modulo a fixed
monic irreducible polynomial.  Internally every element is stored as the
integer ``c0 + c1*p + ... + c(n-1)*p**(n-1)``; that integer is also the
element's position in :func:`enumerate_elements`, so ordering by index is
the same as ordering the coefficient lists with the highest degree most
significant (GF(4) enumerates as ``0, 1, x, x+1``).

Field construction is deterministic:

* the modulus is the lexicographically smallest monic irreducible
  polynomial of degree n, comparing coefficient lists ``[c0, c1, ...]``
  from the constant term upwards;
* the generator is the first element in enumeration order whose
  multiplicative order is q - 1.

Multiplication and inversion go through discrete log tables built once per
field, which keeps everything O(1) at the sizes used here.
"""

from __future__ import annotations

import functools
import itertools

from .errors import (
    DivisionByZero,
    FieldMismatch,
    FieldTooLarge,
    InvalidDegree,
    InvalidField,
    InvalidPrime,
)

MAX_ORDER = 1 << 16  # covers 3**10 = 59049


def is_prime(m: int) -> bool:
    if m < 2:
        return False
    if m < 4:
        return True
    if m % 2 == 0:
        return False
    d = 3
    while d * d <= m:
        if m % d == 0:
            return False
        d += 2
    return True


def prime_factors(m: int) -> list[int]:
    """Distinct prime factors of m, ascending."""
    out = []
    d = 2
    while d * d <= m:
        if m % d == 0:
            out.append(d)
            while m % d == 0:
                m //= d
        d += 1
    if m > 1:
        out.append(m)
    return out


def prime_power(q: int) -> tuple[int, int]:
    """Return (p, n) with q == p**n, or raise InvalidField."""
    if not isinstance(q, int) or q < 2:
        raise InvalidField(f"q={q!r} is not a prime power")
    fs = prime_factors(q)
    if len(fs) != 1:
        raise InvalidField(f"q={q} is not a prime power")
    p = fs[0]
    n = 0
    while q > 1:
        q //= p
        n += 1
    return p, n


# -- polynomials over GF(p), ascending coefficient lists -------------------

def _trim(a):
    a = list(a)
    while a and a[-1] == 0:
        a.pop()
    return a


def _poly_mod(a, m, p):
    """Remainder of a modulo the monic polynomial m."""
    a = _trim(a)
    dm = len(m) - 1
    while len(a) - 1 >= dm:
        c = a[-1]
        shift = len(a) - 1 - dm
        for i, mc in enumerate(m):
            a[shift + i] = (a[shift + i] - c * mc) % p
        a = _trim(a)
    return a


def _poly_mulmod(a, b, m, p):
    if not a or not b:
        return []
    prod = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                prod[i + j] = (prod[i + j] + x * y) % p
    return _poly_mod(prod, m, p)


def _monic_polys(p, d):
    """All monic polynomials of degree d, as ascending coefficient lists."""
    for low in itertools.product(range(p), repeat=d):
        yield list(low) + [1]


def is_irreducible(poly, p: int) -> bool:
    """Trial division by every monic polynomial of degree 1 .. deg/2."""
    poly = _trim(poly)
    deg = len(poly) - 1
    if deg < 1:
        return False
    for d in range(1, deg // 2 + 1):
        for f in _monic_polys(p, d):
            if not _poly_mod(poly, f, p):
                return False
    return True


def smallest_irreducible(p: int, n: int) -> tuple[int, ...]:
    for low in itertools.product(range(p), repeat=n):
        cand = list(low) + [1]
        if is_irreducible(cand, p):
            return tuple(cand)
    raise AssertionError(f"no irreducible polynomial of degree {n} over GF({p})")


# -- field context ----------------------------------------------------------

class FieldCtx:
    """Construction data and lookup tables for one GF(p**n)."""

    __slots__ = ("p", "n", "q", "modulus", "_coeffs", "_exp", "_log", "_gen", "_elements")

    def __init__(self, p: int, n: int):
        if not isinstance(p, int) or not is_prime(p):
            raise InvalidPrime(f"p={p!r} is not prime")
        if not isinstance(n, int) or n < 1:
            raise InvalidDegree(f"n={n!r} must be a positive integer")
        if p ** n > MAX_ORDER:
            raise FieldTooLarge(f"GF({p}^{n}) exceeds the supported order {MAX_ORDER}")
        self.p = p
        self.n = n
        self.q = q = p ** n
        self.modulus = smallest_irreducible(p, n)
        self._coeffs = [self._digits(i) for i in range(q)]

        gen_idx = self._find_generator()
        exp = [0] * (q - 1)
        log = [None] * q
        cur = [1]
        g = list(self._coeffs[gen_idx])
        for k in range(q - 1):
            idx = self._encode(cur)
            exp[k] = idx
            log[idx] = k
            cur = _poly_mulmod(cur, g, self.modulus, p)
        if self._encode(cur) != 1 or any(log[i] is None for i in range(1, q)):
            raise AssertionError("generator does not generate the multiplicative group")
        self._exp = exp
        self._log = log
        self._gen = FieldElement(self, gen_idx)
        self._elements = tuple(FieldElement(self, i) for i in range(q))

    def _digits(self, i):
        out = []
        for _ in range(self.n):
            i, r = divmod(i, self.p)
            out.append(r)
        return tuple(out)

    def _encode(self, coeffs):
        idx = 0
        for c in reversed(list(coeffs) + [0] * (self.n - len(coeffs))):
            idx = idx * self.p + c % self.p
        return idx

    def _slow_pow(self, idx, k):
        result = [1]
        base = list(self._coeffs[idx])
        while k:
            if k & 1:
                result = _poly_mulmod(result, base, self.modulus, self.p)
            base = _poly_mulmod(base, base, self.modulus, self.p)
            k >>= 1
        return self._encode(result)

    def _find_generator(self):
        order = self.q - 1
        cofactors = [order // ell for ell in prime_factors(order)]
        for idx in range(1, self.q):
            if all(self._slow_pow(idx, c) != 1 for c in cofactors):
                return idx
        raise AssertionError("multiplicative group has no generator")

    # raw index arithmetic, used by the element class and by hot loops
    def _add(self, i, j):
        if self.p == 2:
            return i ^ j
        if self.n == 1:
            return (i + j) % self.p
        a, b = self._coeffs[i], self._coeffs[j]
        return self._encode([(x + y) % self.p for x, y in zip(a, b)])

    def _neg(self, i):
        if self.p == 2 or i == 0:
            return i
        if self.n == 1:
            return self.p - i
        return self._encode([(-x) % self.p for x in self._coeffs[i]])

    def _mul(self, i, j):
        if i == 0 or j == 0:
            return 0
        return self._exp[(self._log[i] + self._log[j]) % (self.q - 1)]

    def _inv(self, i):
        if i == 0:
            raise DivisionByZero("inverse of zero")
        return self._exp[(-self._log[i]) % (self.q - 1)]

    def _pow(self, i, k):
        if k < 0:
            i = self._inv(i)
            k = -k
        if i == 0:
            return 1 if k == 0 else 0
        return self._exp[(self._log[i] * k) % (self.q - 1)]

    @property
    def generator(self) -> "FieldElement":
        return self._gen

    @property
    def zero(self) -> "FieldElement":
        return self._elements[0]

    @property
    def one(self) -> "FieldElement":
        return self._elements[1]

    @property
    def characteristic(self) -> int:
        return self.p

    def log(self, a: "FieldElement") -> int:
        """Discrete logarithm of a nonzero element base the generator."""
        self._check(a)
        if a._i == 0:
            raise DivisionByZero("log of zero")
        return self._log[a._i]

    def from_index(self, i: int) -> "FieldElement":
        return self._elements[i]

    def from_coeffs(self, coeffs) -> "FieldElement":
        coeffs = list(coeffs)
        if len(coeffs) > self.n:
            raise ValueError(f"expected at most {self.n} coefficients")
        return self._elements[self._encode(coeffs)]

    def __call__(self, k) -> "FieldElement":
        """Coerce an integer (through the prime subfield) or an element."""
        if isinstance(k, FieldElement):
            self._check(k)
            return k
        return self._elements[k % self.p]

    def _check(self, a):
        if a.ctx is not self and a.ctx != self:
            raise FieldMismatch(f"element of {a.ctx} used in {self}")

    def __iter__(self):
        return iter(self._elements)

    def __len__(self):
        return self.q

    def __eq__(self, other):
        if self is other:
            return True
        if not isinstance(other, FieldCtx):
            return NotImplemented
        return (self.p, self.n, self.modulus) == (other.p, other.n, other.modulus)

    def __hash__(self):
        return hash((self.p, self.n, self.modulus))

    def __repr__(self):
        return f"GF({self.q})" if self.n == 1 else f"GF({self.p}^{self.n})"

    def modulus_str(self) -> str:
        return _poly_str(self.modulus)


def _poly_str(coeffs, var="x"):
    terms = []
    for d in range(len(coeffs) - 1, -1, -1):
        c = coeffs[d]
        if not c:
            continue
        mono = "" if d == 0 else (var if d == 1 else f"{var}^{d}")
        if not mono:
            terms.append(str(c))
        else:
            terms.append(mono if c == 1 else f"{c}{mono}")
    return "+".join(terms) if terms else "0"


class FieldElement:
    """An element of GF(q), identified by its coefficient list."""

    __slots__ = ("ctx", "_i")

    def __init__(self, ctx: FieldCtx, index: int):
        self.ctx = ctx
        self._i = index

    @property
    def coeffs(self) -> tuple[int, ...]:
        return self.ctx._coeffs[self._i]

    @property
    def index(self) -> int:
        return self._i

    def _other(self, b):
        if isinstance(b, FieldElement):
            self.ctx._check(b)
            return b._i
        if isinstance(b, int):
            return b % self.ctx.p
        return None

    def _wrap(self, i):
        return self.ctx._elements[i]

    def __add__(self, b):
        j = self._other(b)
        return NotImplemented if j is None else self._wrap(self.ctx._add(self._i, j))

    __radd__ = __add__

    def __neg__(self):
        return self._wrap(self.ctx._neg(self._i))

    def __sub__(self, b):
        j = self._other(b)
        if j is None:
            return NotImplemented
        return self._wrap(self.ctx._add(self._i, self.ctx._neg(j)))

    def __rsub__(self, b):
        return (-self) + b

    def __mul__(self, b):
        j = self._other(b)
        return NotImplemented if j is None else self._wrap(self.ctx._mul(self._i, j))

    __rmul__ = __mul__

    def inverse(self) -> "FieldElement":
        return self._wrap(self.ctx._inv(self._i))

    def __truediv__(self, b):
        j = self._other(b)
        if j is None:
            return NotImplemented
        return self._wrap(self.ctx._mul(self._i, self.ctx._inv(j)))

    def __rtruediv__(self, b):
        return self.inverse() * b

    def __pow__(self, k: int):
        return self._wrap(self.ctx._pow(self._i, k))

    def __bool__(self):
        return self._i != 0

    def __eq__(self, b):
        if isinstance(b, FieldElement):
            return self._i == b._i and self.ctx == b.ctx
        return NotImplemented

    def __hash__(self):
        return hash((self._i, self.ctx.q))

    def __lt__(self, b):
        self.ctx._check(b)
        return self._i < b._i

    def __str__(self):
        if self.ctx.n == 1:
            return str(self._i)
        return _poly_str(self.coeffs)

    def __repr__(self):
        return f"{self.ctx!r}({self})"

    def serialize(self) -> str:
        """``"p^n:c0,c1,..."``, the CLI wire form."""
        return f"{self.ctx.p}^{self.ctx.n}:" + ",".join(map(str, self.coeffs))


@functools.lru_cache(maxsize=None)
def field_new(p: int, n: int = 1) -> FieldCtx:
    """Build (and memoise) GF(p**n)."""
    return FieldCtx(p, n)


def field_of_order(q: int) -> FieldCtx:
    p, n = prime_power(q)
    return field_new(p, n)


def parse_element(text: str) -> FieldElement:
    head, _, body = text.partition(":")
    p, _, n = head.partition("^")
    ctx = field_new(int(p), int(n))
    return ctx.from_coeffs([int(c) for c in body.split(",")])


def enumerate_elements(ctx: FieldCtx) -> list[FieldElement]:
    return list(ctx._elements)


def _check_pair(a, b):
    if not (isinstance(a, FieldElement) and isinstance(b, FieldElement)):
        raise TypeError("field elements expected")
    a.ctx._check(b)


def add(a: FieldElement, b: FieldElement) -> FieldElement:
    _check_pair(a, b)
    return a + b


def sub(a: FieldElement, b: FieldElement) -> FieldElement:
    _check_pair(a, b)
    return a - b


def neg(a: FieldElement) -> FieldElement:
    return -a


def mul(a: FieldElement, b: FieldElement) -> FieldElement:
    _check_pair(a, b)
    return a * b


def inv(a: FieldElement) -> FieldElement:
    return a.inverse()


def power(a: FieldElement, k: int) -> FieldElement:
    return a ** k


def multiplicative_order(a: FieldElement) -> int:
    if not a:
        raise DivisionByZero("zero has no multiplicative order")
    k, x = 1, a
    while x != a.ctx.one:
        x = x * a
        k += 1
    return k

import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gqm import errors
from gqm.gf import (
    add, enumerate_elements, field_new, field_of_order, inv, is_irreducible, multiplicative_order,
    mul, neg, parse_element, power, prime_power, sub,
)
from gqm.verify import field_axioms_hold


def test_gf2_trivial():
    F = field_new(2, 1)
    assert F.modulus == (0, 1)
    assert F.generator == F.one
    assert F.one + F.one == F.zero
    assert [e.index for e in enumerate_elements(F)] == [0, 1]


def test_gf3_enumeration():
    F = field_new(3)
    assert [str(e) for e in enumerate_elements(F)] == ["0", "1", "2"]


def test_gf4_modulus_generator_and_order():
    F = field_new(2, 2)
    assert F.modulus == (1, 1, 1)
    assert F.modulus_str() == "x^2+x+1"
    a = F.generator
    assert [str(e) for e in F] == ["0", "1", "x", "x+1"]
    assert a * a == a + F.one
    assert (a + 1) + (a + 1) == F.zero


def test_gf4_modulus_is_the_only_irreducible_quadratic():
    # a monic quadratic over F2 is irreducible iff it has no root in F2
    irreducible = []
    for c0, c1 in itertools.product(range(2), repeat=2):
        poly = (c0, c1, 1)
        has_root = any((c0 + c1 * x + x * x) % 2 == 0 for x in range(2))
        assert is_irreducible(poly, 2) == (not has_root)
        if not has_root:
            irreducible.append(poly)
    assert irreducible == [field_new(2, 2).modulus]


def test_lexicographic_modulus_choice():
    # low-degree coefficients compared first
    for p, n in [(2, 3), (3, 2), (3, 3), (5, 2), (2, 4)]:
        m = field_new(p, n).modulus
        for coeffs in itertools.product(range(p), repeat=n):
            if list(coeffs) < list(m[:n]):
                assert not is_irreducible(coeffs + (1,), p)


def test_gf9_has_imaginary_unit():
    F = field_new(3, 2)
    roots = [t for t in F if t * t == -F.one]
    assert len(roots) == 2
    assert F.modulus == (1, 0, 1)


def test_gf5_examples():
    F = field_new(5)
    assert add(F(2), F(4)) == F(1)
    assert inv(F(2)) == F(3)
    assert power(F(2), -1) == F(3)
    assert sub(F(1), F(3)) == F(3)
    assert neg(F(1)) == F(4)
    assert mul(F(3), F(4)) == F(2)


@pytest.mark.parametrize("q", [2, 3, 4, 5, 7, 8, 9, 16, 25, 27, 49, 81, 121, 243])
def test_generator_has_full_order_and_is_first(q):
    F = field_of_order(q)
    g = F.generator
    assert g ** (q - 1) == F.one
    assert multiplicative_order(g) == q - 1
    assert len({(g ** k).index for k in range(q - 1)}) == q - 1
    for e in F:
        if e.index >= g.index:
            break
        if e:
            assert multiplicative_order(e) < q - 1


@pytest.mark.parametrize("q", [2, 3, 4, 5, 7, 8, 9])
def test_field_axioms_exhaustive(q):
    assert field_axioms_hold(field_of_order(q))


@pytest.mark.parametrize("q", [2, 3, 4, 5, 7, 8, 9, 25, 27])
def test_characteristic(q):
    F = field_of_order(q)
    total = F.zero
    for m in range(1, F.p + 1):
        total = total + F.one
        assert bool(total) == (m != F.p)


def test_prime_field_matches_integer_arithmetic():
    for p in (2, 3, 5, 7, 11, 13):
        F = field_new(p)
        for x in range(p):
            for y in range(p):
                assert (F(x) + F(y)).index == (x + y) % p
                assert (F(x) * F(y)).index == (x * y) % p


def _schoolbook_mulmod(a, b, m, p):
    # independent oracle: plain convolution then long division by the monic modulus
    prod = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            prod[i + j] = (prod[i + j] + x * y) % p
    n = len(m) - 1
    for d in range(len(prod) - 1, n - 1, -1):
        c = prod[d]
        if c:
            for k in range(n + 1):
                prod[d - n + k] = (prod[d - n + k] - c * m[k]) % p
    return tuple(prod[:n])


@settings(max_examples=300, deadline=None)
@given(st.sampled_from([(2, 5), (3, 4), (5, 3), (7, 2), (2, 8)]), st.data())
def test_multiplication_matches_polynomial_oracle(pn, data):
    p, n = pn
    F = field_new(p, n)
    a = F.from_index(data.draw(st.integers(0, F.q - 1)))
    b = F.from_index(data.draw(st.integers(0, F.q - 1)))
    assert (a * b).coeffs == _schoolbook_mulmod(a.coeffs, b.coeffs, F.modulus, p)
    if b:
        assert (a / b) * b == a


def test_construction_is_deterministic():
    a, b = field_new(3, 3), field_new(3, 3)
    assert a.modulus == b.modulus and a.generator.index == b.generator.index
    assert [e.index for e in a] == [e.index for e in b]


def test_large_field_cap():
    F = field_new(3, 10)
    assert F.q == 59049
    with pytest.raises(errors.FieldTooLarge):
        field_new(2, 17)


def test_errors():
    with pytest.raises(errors.InvalidPrime):
        field_new(4, 1)
    with pytest.raises(errors.InvalidDegree):
        field_new(2, 0)
    with pytest.raises(errors.DivisionByZero):
        inv(field_new(5).zero)
    with pytest.raises(errors.FieldMismatch):
        add(field_new(3).one, field_new(5).one)
    with pytest.raises(errors.InvalidField):
        prime_power(6)


def test_serialization_round_trip():
    for q in (4, 9, 27):
        F = field_of_order(q)
        for e in F:
            assert parse_element(e.serialize()) == e
    assert field_new(3, 2).from_coeffs([1, 2]).serialize() == "3^2:1,2"

import math

import pytest

from gqm import errors
from gqm.qcount import (
    brute_force_subspace_count, gaussian_binomial, points_per_subspace, q_factorial, q_int,
    subspace_count,
)


def test_q_int_examples():
    assert q_int(2, 3) == 4
    assert q_int(4, 1) == 4
    assert q_int(0, 7) == 0
    assert q_int(5, 2) == 31


def test_q_factorial_examples():
    assert q_factorial(3, 1) == 6
    assert q_factorial(2, 2) == 3
    assert q_factorial(3, 2) == 21
    assert q_factorial(0, 5) == 1


def test_gaussian_binomial_examples():
    assert gaussian_binomial(4, 2, 1) == 6
    assert gaussian_binomial(2, 1, 5) == 6
    assert gaussian_binomial(4, 2, 2) == 35
    with pytest.raises(errors.InvalidArgs):
        gaussian_binomial(2, 3, 2)


def test_symmetry():
    for N in range(7):
        for M in range(N + 1):
            for q in range(1, 6):
                assert gaussian_binomial(N, M, q) == gaussian_binomial(N, N - M, q)


def test_q_equals_one_degeneration():
    for N in range(9):
        assert q_int(N, 1) == N
        assert q_factorial(N, 1) == math.factorial(N)
        for M in range(N + 1):
            assert gaussian_binomial(N, M, 1) == math.comb(N, M)


def test_closed_form_agrees_for_q_above_one():
    for q in (2, 3, 4, 5, 7):
        for N in range(8):
            assert q_int(N, q) * (q - 1) == q**N - 1


def test_subspace_count_examples():
    assert subspace_count(3, 1, 2) == 7
    assert subspace_count(3, 1, 1) == 3
    assert subspace_count(2, 0, 7) == 8
    assert subspace_count(3, -1, 2) == 1
    assert points_per_subspace(1, 3) == 4


def test_brute_force_examples():
    assert brute_force_subspace_count(2, 0, 3) == 4
    assert brute_force_subspace_count(4, 1, 2) == 35
    assert brute_force_subspace_count(3, 2, 2) == 1


@pytest.mark.parametrize("q", [2, 3])
def test_formula_matches_enumeration(q):
    for N in range(1, 5):
        for k in range(-1, N):
            assert subspace_count(N, k, q) == brute_force_subspace_count(N, k, q)


def test_brute_force_gf4():
    assert brute_force_subspace_count(3, 1, 4) == subspace_count(3, 1, 4) == 21


def test_brute_force_rejects_non_prime_power():
    with pytest.raises(errors.InvalidField):
        brute_force_subspace_count(2, 0, 6)

"""Kernel: binomials, q-integers, valuations, named identities."""

import math
from fractions import Fraction

import pytest

from qeuler import (
    OutOfDomain,
    QIsOne,
    QParam,
    binom_int,
    binom_product_merge,
    binom_product_shift,
    binom_tail_merge,
    padic_valuation,
    q_int,
    q_int_neg,
)


def test_binom_small_pascal():
    assert binom_int(5, 2) == 10


def test_binom_negative_upper_index():
    # product formula (-2)(-3)(-4)/6
    assert binom_int(-2, 3) == -4


@pytest.mark.parametrize("n", [-7, -1, 0, 3, 12])
def test_binom_empty_product(n):
    assert binom_int(n, 0) == 1


def test_binom_rejects_negative_lower():
    with pytest.raises(OutOfDomain):
        binom_int(3, -1)


def test_binom_reflection_identity():
    # binom(-r, k) == (-1)^k binom(r+k-1, k); a real test because the
    # implementation uses the falling-factorial product, not reflection.
    for r in range(1, 13):
        for k in range(13):
            assert binom_int(-r, k) == (-1) ** k * binom_int(r + k - 1, k)


def test_binom_matches_math_comb_for_nonnegative():
    for n in range(12):
        for k in range(12):
            assert binom_int(n, k) == math.comb(n, k)


def test_q_int_examples():
    assert q_int(3, 2) == 7  # 1 + 2 + 4
    assert q_int(0, Fraction(7, 3)) == 0
    assert q_int(4, 1) == 4  # q = 1 degenerates to x


def test_q_int_matches_geometric_sum():
    for q in (Fraction(1, 2), Fraction(2, 3), Fraction(6), Fraction(-2)):
        for x in range(9):
            assert q_int(x, q) == sum(q**i for i in range(x))


def test_q_int_product_property():
    for q in (Fraction(1, 2), Fraction(6), Fraction(-3, 7)):
        for x in range(12):
            assert q_int(x, q) * (1 - q) == 1 - q**x


def test_q_int_neg_examples():
    # alternating geometric sum: 1 + (-2) = -1
    assert q_int_neg(2, 2) == -1
    for q in (Fraction(1, 2), Fraction(6), Fraction(5, 3)):
        assert q_int_neg(1, q) == 1  # (1+q)/(1+q)
    # direct substitution oracle: (1 - (-2)^3)/(1 + 2) = 9/3
    assert q_int_neg(3, 2) == 3


def test_q_int_neg_matches_alternating_sum():
    for q in (Fraction(1, 2), Fraction(6), Fraction(2, 3)):
        for x in range(9):
            assert q_int_neg(x, q) == sum((-q) ** i for i in range(x))


def test_q_int_neg_rejects_q_one():
    with pytest.raises(QIsOne):
        q_int_neg(3, 1)


def test_qparam_validation():
    QParam(Fraction(6), 5)  # v_5(5) = 1, fine
    QParam(Fraction(11, 6), 5)  # v_5(5/6) = 1, fine
    QParam(Fraction(1), 5)  # q = 1 has v_5(0) = inf
    with pytest.raises(OutOfDomain):
        QParam(Fraction(3), 5)  # v_5(2) = 0
    with pytest.raises(OutOfDomain):
        QParam(Fraction(6, 5), 5)  # p divides the denominator
    with pytest.raises(OutOfDomain):
        QParam(Fraction(6), 4)  # not an odd prime


def test_padic_valuation():
    assert padic_valuation(50, 5) == 2
    assert padic_valuation(Fraction(4, 25), 5) == -2
    assert padic_valuation(Fraction(0), 5) == math.inf


def _shift_grid(limit):
    for r in range(2, limit + 1):
        for j in range(limit + 1):
            for k in range(limit + 1):
                if j + k > 0 and r != 1 - k:
                    yield r, j, k


def test_binom_product_shift_exhaustive():
    assert all(binom_product_shift(r, j, k) for r, j, k in _shift_grid(10))


def test_binom_product_merge_exhaustive():
    assert all(
        binom_product_merge(r, j, k)
        for r in range(2, 11)
        for j in range(11)
        for k in range(11)
    )


def test_binom_tail_merge_exhaustive():
    assert all(
        binom_tail_merge(r, j, k)
        for r in range(1, 11)
        for j in range(11)
        for k in range(11)
    )


def test_identity_domain_guards():
    with pytest.raises(OutOfDomain):
        binom_product_shift(1, 0, 0)  # j + k == 0
    with pytest.raises(OutOfDomain):
        binom_product_merge(1, 2, 2)  # r < 2
    with pytest.raises(OutOfDomain):
        binom_tail_merge(0, 1, 1)  # r < 1

"""Coefficient tables: defining relations, closed forms, classical sequences."""

from fractions import Fraction

import pytest

from wprec.constants import (
    ALPHA,
    GAMMA_FACT,
    GAMMA_ODD,
    ConstantTable,
    alpha,
    beta,
    gamma_fact,
    gamma_kdv,
    gamma_odd,
    shift_polynomial,
)
from wprec.multiindex import ZERO, MultiIndex, delta, indices_of_weight, splits2
from wprec.numbers import double_factorial, euler_number, factorial


def _denominator(table):
    return {
        "alpha": lambda w: double_factorial(2 * w + 1),
        "gamma_odd": lambda w: double_factorial(2 * w - 1),
        "gamma_fact": factorial,
    }[table.kind]


def test_defining_convolution_all_tables():
    """Every row of the triangular system sums to zero, evaluated literally.

    The solver derives the b entry from the other terms of its row, so
    re-evaluating the whole row is an independent check of the algebra.
    """
    for table in (ALPHA, GAMMA_ODD, GAMMA_FACT):
        denom = _denominator(table)
        assert table.value(ZERO) == 1
        for w in range(1, 9):
            for b in indices_of_weight(w):
                row = Fraction(0)
                for left, right in splits2(b):
                    sign = -1 if left.length % 2 else 1
                    row += (
                        sign
                        * table.value(left)
                        / (
                            left.factorial()
                            * right.factorial()
                            * denom(right.weight)
                        )
                    )
                assert row == 0, (table.kind, b)


def test_alpha_single_index_closed_form():
    for l in range(1, 16):
        assert alpha(delta(l)) == Fraction(1, double_factorial(2 * l + 1))


def test_alpha_repeated_ones_closed_form():
    assert beta(1) == Fraction(1, 3)
    assert beta(2) == Fraction(7, 90)
    # 3! beta_3 = alpha({1:3}) = 31/315, so beta_3 = 31/1890.
    assert beta(3) == Fraction(31, 1890)
    for l in range(1, 9):
        assert alpha(MultiIndex({1: l})) == factorial(l) * beta(l)
    with pytest.raises(ValueError):
        beta(0)


def test_alpha_small_frozen():
    assert alpha(ZERO) == 1
    assert alpha(delta(1)) == Fraction(1, 3)
    assert alpha(delta(3)) == Fraction(1, 105)
    assert alpha(MultiIndex({1: 1, 2: 1})) == Fraction(11, 315)
    assert alpha(MultiIndex({1: 3})) == Fraction(31, 315)


def test_gamma_odd_euler_sequence():
    # (2l-1)!! gamma_odd({1: l}) runs through the secant numbers.
    for l in range(9):
        b = MultiIndex({1: l}) if l else ZERO
        assert gamma_odd(b) * double_factorial(2 * l - 1) == euler_number(l)


def test_gamma_fact_bessel_sequence():
    frozen = [
        Fraction(1),
        Fraction(1),
        Fraction(3, 2),
        Fraction(19, 6),
        Fraction(211, 24),
        Fraction(1217, 40),
    ]
    for k, value in enumerate(frozen):
        b = MultiIndex({1: k}) if k else ZERO
        assert gamma_fact(b) == value


def test_gamma_single_index_rows():
    for l in range(1, 11):
        assert gamma_odd(delta(l)) == Fraction(1, double_factorial(2 * l - 1))
        assert gamma_fact(delta(l)) == Fraction(1, factorial(l))


def test_gamma_kdv_inverts_alpha():
    """sum over L + L' = b of (alpha_L / L!) gamma_kdv(L') = [b == 0]."""
    assert gamma_kdv(ZERO) == 1
    for w in range(9):
        for b in indices_of_weight(w):
            acc = sum(
                alpha(left) / left.factorial() * gamma_kdv(right)
                for left, right in splits2(b)
            )
            assert acc == (1 if not b else 0), b


def test_gamma_kdv_closed_form():
    b = MultiIndex({1: 2, 3: 1})
    assert gamma_kdv(b) == Fraction(-1, 2 * double_factorial(11))
    assert gamma_kdv(delta(2)) == Fraction(-1, 15)


def test_shift_polynomial_frozen():
    s1 = delta(1)
    assert shift_polynomial(2, 6) == {s1: Fraction(1)}
    assert shift_polynomial(3, 6) == {
        delta(2): Fraction(1),
        MultiIndex({1: 2}): Fraction(-1, 2),
    }
    assert shift_polynomial(4, 6) == {
        delta(3): Fraction(1),
        MultiIndex({1: 1, 2: 1}): Fraction(-1),
        MultiIndex({1: 3}): Fraction(1, 6),
    }


def test_shift_polynomial_truncation_and_errors():
    # Homogeneous of weight k - 1: all-or-nothing under the cutoff.
    assert shift_polynomial(5, 3) == {}
    assert shift_polynomial(5, 4) != {}
    with pytest.raises(ValueError):
        shift_polynomial(1, 6)


def test_fresh_table_matches_module_table():
    mine = ConstantTable("alpha", lambda w: double_factorial(2 * w + 1))
    for w in range(6):
        for b in indices_of_weight(w):
            assert mine.value(b) == alpha(b)

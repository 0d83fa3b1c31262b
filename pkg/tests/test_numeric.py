from fractions import Fraction as F

import pytest

from wassalg.numeric import (
    check_order,
    exact_root,
    format_number,
    integer_order,
    integerize,
    parse_number,
    power,
    root,
    to_fraction,
)


def test_to_fraction_goes_through_repr():
    assert to_fraction(0.1) == F(1, 10)
    assert to_fraction("3/4") == F(3, 4)
    assert to_fraction(7) == F(7)


def test_parse_number_modes():
    assert parse_number("1/3", exact=True) == F(1, 3)
    assert isinstance(parse_number("1/4", exact=False), float)
    assert parse_number(2, exact=True) == 2


@pytest.mark.parametrize("p,expected", [(1, 1), (2, 2), (F(3), 3), (3.0, 3), (1.5, None), (F(5, 2), None)])
def test_integer_order(p, expected):
    assert integer_order(p) == expected


def test_check_order_rejects_below_one():
    with pytest.raises(ValueError):
        check_order(0.5)
    check_order(1)


def test_exact_root_and_root():
    assert exact_root(F(8, 27), 3) == F(2, 3)
    assert exact_root(F(2), 2) is None
    assert root(F(9, 4), 2) == F(3, 2)
    assert root(F(2), 2) == pytest.approx(2**0.5)
    assert root(F(0), 3) == 0
    assert power(F(2, 3), 3) == F(8, 27)


def test_integerize_common_denominator():
    ints, den = integerize([F(1, 2), F(1, 3), F(1, 6)])
    assert den == 6 and ints == [3, 2, 1]


def test_format_number_is_lossless():
    assert format_number(F(1, 3)) == "1/3"
    assert format_number(F(4)) == "4"
    x = 0.1 + 0.2
    assert float(format_number(x)) == x

from fractions import Fraction

import pytest

from plrs import decimal_str, format_fraction, parse_fraction, round_to_bits


def test_format_and_parse_round_trip():
    for q in [Fraction(0), Fraction(5), Fraction(-7, 3), Fraction(10**40, 3**30)]:
        assert parse_fraction(format_fraction(q)) == q


def test_format_integer_has_no_slash():
    assert format_fraction(Fraction(8, 4)) == "2"
    assert format_fraction(Fraction(3, 7)) == "3/7"


def test_decimal_str_rounds_half_away():
    assert decimal_str(Fraction(1, 3), 6) == "0.333333"
    assert decimal_str(Fraction(2, 3), 6) == "0.666667"
    assert decimal_str(Fraction(1, 2), 0) == "1"
    assert decimal_str(Fraction(-1, 8), 3) == "-0.125"
    assert decimal_str(Fraction(5, 1), 2) == "5.00"


def test_decimal_str_huge_values_exact():
    q = Fraction(10**50 + 1, 10**50)
    assert decimal_str(q, 50) == "1." + "0" * 49 + "1"


def test_round_to_bits_identity_for_dyadics():
    x = Fraction(5, 16)
    assert round_to_bits(x, 20) == x


def test_round_to_bits_precision():
    x = Fraction(1, 3)
    for bits in (16, 53, 128):
        r = round_to_bits(x, bits)
        assert abs(r - x) <= Fraction(1, 2**bits)
        # dyadic: denominator is a power of two
        assert r.denominator & (r.denominator - 1) == 0


def test_round_to_bits_negative_symmetric():
    x = Fraction(-1, 3)
    assert round_to_bits(x, 40) == -round_to_bits(-x, 40)


def test_round_to_bits_zero_and_bad_bits():
    assert round_to_bits(Fraction(0), 10) == 0
    with pytest.raises(ValueError):
        round_to_bits(Fraction(1), 0)

from fractions import Fraction

import pytest

from gradlab.unit.field import I, OMEGA, ONE, ZETA, FieldElement
from gradlab.unit.notation import NotationError, parse_combination, parse_scalar, parse_scalar_or_strings


@pytest.mark.parametrize(
    "text, value",
    [
        ("1/2", FieldElement.from_rational(Fraction(1, 2))),
        ("-i", -I),
        ("w^2", OMEGA ** 2),
        ("-w^2", -(OMEGA ** 2)),
        ("2w", OMEGA * 2),
        ("z^-1", ZETA ** -1),
        ("(1+w)/(1-w)", (ONE + OMEGA) / (ONE - OMEGA)),
        ("3i/4", I * Fraction(3, 4)),
    ],
)
def test_parse_scalar(text, value):
    assert parse_scalar(text) == value


@pytest.mark.parametrize("text", ["", "x", "(1+w", "1 2 )", "w^i"])
def test_parse_scalar_rejects(text):
    with pytest.raises(NotationError):
        parse_scalar(text)


def test_parse_scalar_or_strings():
    assert parse_scalar_or_strings(["1/2", "0/1", "0/1", "0/1"]) == Fraction(1, 2)
    assert parse_scalar_or_strings("w") == OMEGA


def test_parse_combination():
    terms = parse_combination("i b35 - b37 - i b46 + b48")
    assert terms == [("b", 35, I), ("b", 37, -ONE), ("b", 46, -I), ("b", 48, ONE)]


def test_parse_combination_calibrated():
    terms = parse_combination("(1+w) B2 + w^2 B13")
    assert terms == [("B", 2, ONE + OMEGA), ("B", 13, OMEGA ** 2)]


def test_parse_combination_requires_basis_vector():
    with pytest.raises(NotationError):
        parse_combination("i b35 + 2")

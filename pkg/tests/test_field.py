import random
from fractions import Fraction

import pytest

from gradlab.unit.field import I, OMEGA, ONE, ZERO, ZETA, FieldElement, roots_of_unity


def random_elements(n=30, seed=123):
    rng = random.Random(seed)

    def coefficient():
        return Fraction(rng.randint(-6, 6), rng.randint(1, 6))

    return [FieldElement(*(coefficient() for _ in range(4))) for _ in range(n)]


def test_minimal_polynomial():
    assert ZETA ** 4 - ZETA ** 2 + ONE == ZERO


def test_named_roots():
    assert I * I == -ONE
    assert OMEGA ** 3 == ONE
    assert OMEGA != ONE
    assert ONE + OMEGA + OMEGA ** 2 == ZERO
    assert ZETA ** 12 == ONE


def test_rational_equality_and_hash():
    half = FieldElement.from_rational(Fraction(1, 2))
    assert half == Fraction(1, 2)
    assert hash(half) == hash(Fraction(1, 2))
    assert FieldElement(2, 0, 0, 0) == 2


def test_representation_is_canonical():
    a = FieldElement(Fraction(2, 4), Fraction(1, 2), 0, 0)
    b = FieldElement(Fraction(1, 2), Fraction(2, 4), 0, 0)
    assert a == b
    assert hash(a) == hash(b)


def test_immutable():
    with pytest.raises(AttributeError):
        ONE._den = 2


def test_zero_has_no_inverse():
    with pytest.raises(ZeroDivisionError):
        ZERO.inverse()


def test_ring_axioms():
    elems = random_elements()
    for a, b, c in zip(elems, elems[1:], elems[2:]):
        assert (a + b) + c == a + (b + c)
        assert a * (b * c) == (a * b) * c
        assert a * (b + c) == a * b + a * c
        assert a * b == b * a


def test_inverse():
    for a in random_elements(seed=7):
        if a.is_zero():
            continue
        assert a * a.inverse() == ONE
        assert ONE / a == a.inverse()


def test_conjugation_is_field_automorphism():
    elems = random_elements(seed=11)
    for a, b in zip(elems, elems[1:]):
        assert (a * b).conjugate() == a.conjugate() * b.conjugate()
        assert (a + b).conjugate() == a.conjugate() + b.conjugate()
        assert a.conjugate().conjugate() == a


def test_conjugation_swaps_omega():
    assert OMEGA.conjugate() == OMEGA ** 2
    assert I.conjugate() == -I


def test_galois_requires_unit():
    with pytest.raises(ValueError):
        ZETA.galois(2)


def test_roots_of_unity():
    roots = roots_of_unity(12)
    assert len(set(roots)) == 12
    assert all(r ** 12 == ONE for r in roots)
    assert roots_of_unity(3) == [ONE, OMEGA, OMEGA ** 2]
    with pytest.raises(ValueError):
        roots_of_unity(5)


@pytest.mark.parametrize(
    "value, order",
    [(ONE, 1), (-ONE, 2), (OMEGA, 3), (I, 4), (-OMEGA, 6), (ZETA, 12), (FieldElement(2), None)],
)
def test_root_of_unity_order(value, order):
    assert value.root_of_unity_order() == order


def test_log_base():
    assert FieldElement.from_rational(Fraction(1, 4)).log_base(2) == -2
    assert FieldElement.from_rational(9).log_base(3) == 2
    assert FieldElement.from_rational(6).log_base(2) is None
    assert I.log_base(2) is None
    with pytest.raises(ValueError):
        ONE.log_base(1)


def test_zeta_exponent_and_polar():
    assert OMEGA.zeta_exponent() == 4
    assert (-ONE).zeta_exponent() == 6
    assert FieldElement(2).zeta_exponent() is None
    assert (I * 3).polar() == (Fraction(3), 3)


def test_nth_root():
    assert FieldElement(4).nth_root(2) ** 2 == FieldElement(4)
    assert (-ONE).nth_root(2) ** 2 == -ONE
    assert FieldElement(2).nth_root(2) is None


def test_strings_roundtrip():
    a = FieldElement(Fraction(1, 3), -2, 0, Fraction(5, 7))
    assert a.to_strings() == ["1/3", "-2/1", "0/1", "5/7"]
    assert FieldElement.from_strings(a.to_strings()) == a
    with pytest.raises(ValueError):
        FieldElement.from_strings(["1/1"])


@pytest.mark.parametrize(
    "value, text",
    [
        (FieldElement.from_rational(Fraction(1, 2)), "1/2"),
        (I, "i"),
        (-I, "-i"),
        (OMEGA, "ω"),
        (OMEGA ** 2, "ω²"),
        (-ONE, "-1"),
    ],
)
def test_labels(value, text):
    assert value.to_label() == text

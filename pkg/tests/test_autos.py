from fractions import Fraction

import pytest
from pydantic import ValidationError

from gradlab.core.autos import (
    G_RELATIONS,
    H1_TABLE,
    H2_TABLE,
    MONOMIAL_EXPONENTS,
    GeneratorDescriptor,
    MissingCalibrationError,
    Operator,
    OrthoMatrix,
    cartan_block,
    table_position_map,
)
from gradlab.core.autos.matrices import PARAMETRIC_FAMILIES
from gradlab.core.liealg import DIM, INDEX
from gradlab.unit.field import I, OMEGA, ONE, FieldElement, roots_of_unity
from gradlab.unit.linalg import Matrix


def test_parametric_entry(autos):
    p = autos.build_matrix("p", 2)
    assert p[6, 7] == I * Fraction(3, 4)
    assert p[7, 6] == -I * Fraction(3, 4)
    assert p[6, 6] == Fraction(5, 4)
    assert p[0, 0] == ONE


@pytest.mark.parametrize("family", PARAMETRIC_FAMILIES)
@pytest.mark.parametrize("param", [2, 3, OMEGA, -1])
def test_parametric_families_are_orthogonal(autos, family, param):
    m = autos.build_matrix(family, param).matrix
    assert (m @ m.transpose()).is_identity()


def test_build_matrix_rejects(autos):
    with pytest.raises(ValueError):
        autos.build_matrix("p", 0)
    with pytest.raises(ValueError):
        autos.build_matrix("x", 1)
    with pytest.raises(ValueError):
        autos.build_matrix("gi", 15)
    with pytest.raises(ValueError):
        OrthoMatrix(Matrix.identity(8).scale(2))


@pytest.mark.parametrize("index, factors", sorted(G_RELATIONS.items()))
def test_g_relations(autos, index, factors):
    assert autos.build_matrix("gi", index) == autos.product_of_f(factors)


def test_ad_f1_flips_b18(autos):
    op = autos.ad_operator(autos.build_matrix("fi", 1))
    k = INDEX[(1, 8)]
    image = op.image(k)
    assert image[k] == -ONE
    assert sum(1 for x in image if x) == 1
    assert op.image(INDEX[(1, 2)])[INDEX[(1, 2)]] == ONE
    assert op.order() == 2


def test_ad_is_antihomomorphism(autos):
    P = autos.build_matrix("p", 3)
    Q = autos.build_matrix("gi", 14)
    assert autos.ad_operator(P) @ autos.ad_operator(Q) == autos.ad_operator(Q @ P)


def test_g_minus_one_lies_in_g1_g2(autos):
    # q1's torus already contains G1 G2, so its finite part is only Z_2^3
    half_turn = autos.build_matrix("g", -1)
    assert half_turn == autos.build_matrix("gi", 13)
    G1 = autos.ad_operator(autos.build_matrix("gi", 1))
    G2 = autos.ad_operator(autos.build_matrix("gi", 2))
    assert autos.ad_operator(half_turn) == G1 @ G2


@pytest.mark.parametrize(
    "family, param",
    [("fi", 3), ("gi", 8), ("gi", 12), ("g", 2), ("h", 2), ("p", OMEGA), ("s", 7)],
)
def test_named_automorphisms(autos, family, param):
    assert autos.is_automorphism(autos.ad_operator(autos.build_matrix(family, param)))


def test_rejects_non_automorphism(autos):
    rows = [[ONE if r == c else FieldElement(0) for c in range(DIM)] for r in range(DIM)]
    rows[0][0] = FieldElement(2)
    scaled = Operator(Matrix(rows, cols=DIM))
    assert not autos.is_automorphism(scaled)
    defects = autos.automorphism_defects(scaled)
    assert defects and all(d.startswith("A[") for d in defects)
    assert autos.automorphism_defects(Operator.zero(), limit=1)[0] == "not invertible"


def test_operator_power_and_order(autos):
    op = autos.ad_operator(autos.build_matrix("gi", 14))
    assert op.power(2).is_identity()
    assert op.order() == 2
    assert autos.ad_operator(autos.build_matrix("g", 2)).order() is None
    with pytest.raises(ValueError):
        op.power(-1)


def test_candidate_eigenvalues(autos):
    torus = GeneratorDescriptor(family="g", param="2")
    assert autos.candidate_eigenvalues(torus) == [FieldElement(Fraction(1, 4)), FieldElement(Fraction(1, 2)), ONE, FieldElement(2), FieldElement(4)]
    assert autos.candidate_eigenvalues(GeneratorDescriptor(family="F", index=1)) == [-ONE, ONE]
    assert autos.candidate_eigenvalues(GeneratorDescriptor(family="H1")) == roots_of_unity(12)
    scaled = GeneratorDescriptor(family="t", values=["2", "1", "2", "1/2"], base=2)
    assert FieldElement(4) in autos.candidate_eigenvalues(scaled)
    unlabelled = GeneratorDescriptor(family="t", values=["2", "1", "1", "1"])
    with pytest.raises(ValueError):
        autos.candidate_eigenvalues(unlabelled)


def test_operator_for_standard(autos):
    op = autos.operator_for(GeneratorDescriptor(family="F", index=2))
    assert op.descriptor.label() == "F2"
    assert op == autos.ad_operator(autos.build_matrix("fi", 2))
    squared = autos.operator_for(GeneratorDescriptor(family="G", index=14, power=2))
    assert squared.is_identity()


def test_table_operators_need_calibration(autos):
    with pytest.raises(MissingCalibrationError):
        autos.operator_for(GeneratorDescriptor(family="H1"))
    with pytest.raises(MissingCalibrationError):
        autos.operator_for(GeneratorDescriptor(family="t", values=["1", "w", "w", "w"]))


def test_descriptor_validation():
    with pytest.raises(ValidationError):
        GeneratorDescriptor(family="F", index=9)
    with pytest.raises(ValidationError):
        GeneratorDescriptor(family="t", values=["1", "2", "3"])
    with pytest.raises(ValidationError):
        GeneratorDescriptor(family="p")
    with pytest.raises(ValidationError):
        GeneratorDescriptor(family="H2", power=0)


def test_descriptor_labels_and_kinds():
    assert GeneratorDescriptor(family="g", param="2").label() == "Ad g(2)"
    assert GeneratorDescriptor(family="H2", power=2).label() == "H2^2"
    assert GeneratorDescriptor(family="t", values=["1", "w^2", "w^2", "w^2"]).label() == "t(1,w^2,w^2,w^2)"
    assert GeneratorDescriptor(family="g", param="2").generator_kind().base == 2
    assert GeneratorDescriptor(family="p", param="w").generator_kind().kind == "finite"
    assert GeneratorDescriptor(family="F", index=4).generator_kind().kind == "finite"
    assert GeneratorDescriptor(family="t", values=["2", "1", "2", "1/2"], base=2).generator_kind().kind == "torus"


def test_monomial_positions():
    assert len(MONOMIAL_EXPONENTS) == 24
    assert MONOMIAL_EXPONENTS[5] == (1, 0, 0, 0)
    assert MONOMIAL_EXPONENTS[14] == (1, 2, 1, 1)
    for pos in range(5, 17):
        assert MONOMIAL_EXPONENTS[pos + 12] == tuple(-x for x in MONOMIAL_EXPONENTS[pos])


@pytest.mark.parametrize("table", [H1_TABLE, H2_TABLE])
def test_tables_permute_root_positions(table):
    pmap = table_position_map(table)
    assert pmap is not None
    assert sorted(t for t, _ in pmap.values()) == list(range(5, DIM + 1))
    assert all(c in (ONE, -ONE) for _, c in pmap.values())
    assert cartan_block(table).rank() == 4

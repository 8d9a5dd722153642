from fractions import Fraction

import pytest

from gradlab.core.autos import GeneratorDescriptor, GeneratorKind
from gradlab.core.diag import Diagonalizer, GradingPart, LabeledDecomposition
from gradlab.core.gradecheck import GradingChecker, GroupStructure, MalformedLabelError
from gradlab.core.liealg import DIM, INDEX
from gradlab.unit.field import OMEGA, ONE, FieldElement
from gradlab.unit.linalg import Subspace, unit_vector

TORUS_2 = GeneratorKind(kind="torus", base=2)
FINITE = GeneratorKind(kind="finite")


@pytest.fixture(scope="module")
def checker():
    return GradingChecker()


def _diagonalize(autos, indices):
    gens = []
    for k in indices:
        desc = GeneratorDescriptor(family="F", index=k)
        gens.append((autos.operator_for(desc), autos.candidate_eigenvalues(desc)))
    return Diagonalizer().simultaneous_diagonalize(gens)


def _line(k):
    return [unit_vector(DIM, k)]


@pytest.mark.parametrize(
    "group, text",
    [
        (GroupStructure(1, (2, 2, 2, 2)), "Z×Z_2^4"),
        (GroupStructure(0, (2, 2, 2, 4)), "Z_2^3×Z_4"),
        (GroupStructure(4), "Z^4"),
        (GroupStructure(0, (2, 2, 6)), "Z_2^2×Z_6"),
        (GroupStructure(0), "1"),
    ],
)
def test_group_render(group, text):
    assert group.render() == text


@pytest.mark.parametrize("free, factors", [(0, (4, 2)), (0, (1, 2)), (-1, ())])
def test_group_validation(free, factors):
    with pytest.raises(ValueError):
        GroupStructure(free, factors)


def test_group_dict_roundtrip():
    g = GroupStructure(2, (3,))
    assert GroupStructure.from_dict(g.to_dict()) == g


def test_universal_group_finite(checker):
    d = LabeledDecomposition.from_parts([((ONE,), _line(0)), ((OMEGA,), _line(1)), ((OMEGA ** 2,), _line(2))])
    assert checker.universal_group(d, [FINITE]) == GroupStructure(0, (3,))


def test_universal_group_torus(checker):
    labels = [FieldElement(2), FieldElement(Fraction(1, 2)), ONE, FieldElement(4)]
    d = LabeledDecomposition.from_parts([((v,), _line(k)) for k, v in enumerate(labels)], kinds=[TORUS_2])
    assert checker.universal_group(d) == GroupStructure(1)


def test_universal_group_mixed(checker):
    parts = [
        ((FieldElement(2), -ONE), _line(0)),
        ((FieldElement(2), ONE), _line(1)),
        ((ONE, ONE), _line(2)),
    ]
    d = LabeledDecomposition.from_parts(parts, kinds=[TORUS_2, FINITE])
    assert checker.universal_group(d) == GroupStructure(1, (2,))


def test_malformed_label(checker):
    d = LabeledDecomposition.from_parts([((FieldElement(3),), _line(0))], kinds=[TORUS_2])
    with pytest.raises(MalformedLabelError):
        checker.universal_group(d)
    with pytest.raises(MalformedLabelError):
        checker.universal_group(d, [TORUS_2, FINITE])


def test_closure_and_type(autos, checker):
    d = _diagonalize(autos, [1])
    assert checker.verify_closure(d).passed
    assert checker.grading_type(d)[6] == 1 and checker.grading_type(d)[20] == 1
    assert checker.identity_dimension(d) == 21
    assert checker.universal_group(d) == GroupStructure(0, (2,))


def test_closure_detects_bad_labels(autos, checker):
    d = _diagonalize(autos, [1])
    swapped = LabeledDecomposition(
        [GradingPart((ONE,), d.part((-1,))), GradingPart((-ONE,), d.part((1,)))],
        kinds=[FINITE],
    )
    report = checker.verify_closure(swapped, max_violations=3)
    assert not report.passed
    assert 1 <= len(report.violations) <= 3
    assert report.violations[0].render().startswith("[L(")


def test_refines(autos, checker):
    fine = _diagonalize(autos, [1, 2])
    coarse = _diagonalize(autos, [1])
    assert checker.refines(fine, coarse)
    assert not checker.refines(coarse, fine)
    assert checker.refines(fine, fine)


def test_additive_label(checker):
    kinds = [TORUS_2, FINITE, FINITE, FINITE, FINITE]
    label = (FieldElement(Fraction(1, 2)), ONE, -ONE, -ONE, -ONE)
    element = checker.additive_label(label, kinds, [0, 2, 2, 2, 2])
    assert element == (-1, 0, 1, 1, 1)
    assert checker.render_additive(element, kinds) == "(-1, 0̄, 1̄, 1̄, 1̄)"


def test_generator_orders(autos, checker):
    d = _diagonalize(autos, [1, 2])
    assert checker.generator_orders(d) == [2, 2]


def test_golden_and_report(autos, checker):
    d = _diagonalize(autos, [1])
    b18 = Subspace.span(_line(INDEX[(1, 8)]), DIM)
    golden = [((-ONE,), d.part((-1,))), ((ONE,), b18), ((OMEGA,), b18)]
    matched, failures = checker.check_golden(d, golden)
    assert matched == 1
    assert len(failures) == 2
    report = checker.report("f1", d, expected_type=checker.grading_type(d), golden=golden[:1])
    assert report.passed
    data = report.to_dict()
    assert data["passed"] is True
    assert data["group_text"] == "Z_2"
    failing = checker.report("f1", d, expected_group=GroupStructure(0, (2, 2)))
    assert not failing.passed
    assert failing.to_dict()["matches_expected"]["group"] is False


@pytest.mark.parametrize("indices, group", [([1], GroupStructure(0, (2,))), ([1, 2], GroupStructure(0, (2, 2)))])
def test_bracket_group_matches_labels(autos, checker, indices, group):
    d = _diagonalize(autos, indices)
    assert checker.bracket_group(d) == group
    assert checker.universal_group(d) == group
    assert checker.report("f", d).bracket_group == group


def test_bracket_group_rejects_non_grading(checker):
    parts = [((ONE,), _line(INDEX[(1, 2)])), ((-ONE,), _line(INDEX[(2, 3)])), ((OMEGA,), _line(INDEX[(3, 4)]))]
    d = LabeledDecomposition.from_parts(parts, kinds=[FINITE])
    with pytest.raises(ValueError):
        checker.bracket_group(d)
    report = checker.report("bad", d)
    assert not report.closure.passed
    assert report.bracket_group is None

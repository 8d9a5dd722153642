import pytest

from gradlab.core.autos import GeneratorDescriptor
from gradlab.core.diag import CommutationError, Diagonalizer, GradingPart, LabeledDecomposition, SplitError, label_text
from gradlab.core.liealg import DIM, INDEX
from gradlab.unit.field import I, OMEGA, ONE, FieldElement
from gradlab.unit.linalg import Subspace, unit_vector


@pytest.fixture(scope="module")
def diagonalizer():
    return Diagonalizer()


def _gen(autos, **kwargs):
    desc = GeneratorDescriptor(**kwargs)
    return autos.operator_for(desc), autos.candidate_eigenvalues(desc)


def test_single_involution(autos, diagonalizer):
    d = diagonalizer.simultaneous_diagonalize([_gen(autos, family="F", index=1)])
    assert d.labels() == [(-ONE,), (ONE,)]
    assert d.part((-1,)).dim == 7
    assert d.part((1,)).dim == 21
    assert d.part((-1,)).contains(unit_vector(DIM, INDEX[(1, 8)]))


def test_torus_eigenvalues(autos, diagonalizer):
    d = diagonalizer.simultaneous_diagonalize([_gen(autos, family="p", param="2")])
    assert sorted(d.dims()) == [6, 6, 16]
    plus = d.part((2,))
    minus = d.part((FieldElement(1) / 2,))
    assert plus is not None and minus is not None
    assert plus.dim == minus.dim == 6


def test_labels_are_sorted_independent_of_order(autos, diagonalizer):
    gens = [_gen(autos, family="F", index=k) for k in (1, 2, 3)]
    a = diagonalizer.simultaneous_diagonalize(gens)
    b = diagonalizer.simultaneous_diagonalize(list(reversed(gens)))
    assert len(a) == len(b) == 7
    flipped = {tuple(reversed(p.label)): p.subspace for p in b.parts}
    assert all(flipped[p.label] == p.subspace for p in a.parts)


def test_missing_candidate_raises(autos, diagonalizer):
    op, _ = _gen(autos, family="g", param="2")
    with pytest.raises(SplitError) as info:
        diagonalizer.split_part(Subspace.full(DIM), op, [ONE])
    assert info.value.found == [10]


def test_non_invariant_part_raises(autos, diagonalizer):
    op, candidates = _gen(autos, family="G", index=14)
    part = Subspace.span([unit_vector(DIM, INDEX[(1, 2)])], DIM)
    with pytest.raises(SplitError):
        diagonalizer.split_part(part, op, candidates)


def test_non_commuting_generators(autos, diagonalizer):
    gens = [_gen(autos, family="p", param="2"), _gen(autos, family="G", index=8)]
    with pytest.raises(CommutationError) as info:
        diagonalizer.simultaneous_diagonalize(gens)
    assert info.value.pair == (0, 1)


def test_decomposition_rejects_duplicate_labels():
    space = Subspace.span([unit_vector(DIM, 0)], DIM)
    with pytest.raises(ValueError):
        LabeledDecomposition([GradingPart((ONE,), space), GradingPart((ONE,), space)])
    with pytest.raises(ValueError):
        LabeledDecomposition([GradingPart((ONE,), space), GradingPart((ONE, ONE), space)])


def test_from_parts_and_merge():
    d = LabeledDecomposition.from_parts(
        [
            ((ONE,), [unit_vector(DIM, 0)]),
            ((-ONE,), [unit_vector(DIM, 1)]),
            ((I,), [unit_vector(DIM, 2), unit_vector(DIM, 3)]),
        ]
    )
    assert d.total_dim() == 4
    merged = d.merge([(-1,), (I,)])
    assert len(merged) == 2
    assert merged.part((-1,)).dim == 3
    with pytest.raises(KeyError):
        d.merge([(OMEGA,)])


def test_conjugate_swaps_labels():
    d = LabeledDecomposition.from_parts([((OMEGA,), [[I] + [0] * (DIM - 1)])])
    conj = d.conjugate()
    assert conj.labels() == [(OMEGA ** 2,)]
    assert conj.parts[0].subspace == d.parts[0].subspace


def test_label_text():
    assert label_text((FieldElement(1) / 2, ONE, -ONE)) == "(1/2, 1, -1)"

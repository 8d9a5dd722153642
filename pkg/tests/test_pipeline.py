import copy

import pytest

from gradlab.core.catalog import GRADING_IDS
from gradlab.core.gradecheck import GroupStructure
from gradlab.unit.field import OMEGA, ONE

STANDARD_IDS = [i for i in GRADING_IDS if i not in ("q12", "q13", "q14")]
CALIBRATED_IDS = ["q12", "q13", "q14"]


def test_verify_q5(pipeline):
    report = pipeline.verify("q5")
    assert report.passed
    assert report.type == (28,)
    assert report.group == GroupStructure(0, (2,) * 7)
    assert report.golden_matched == report.golden_total == 28
    assert report.identity_dim == 0
    assert report.conjugation is None
    assert "MAD T_{0,8}^{(0)}" in report.notes


def test_decompose_is_cached(pipeline):
    assert pipeline.decompose("q5") is pipeline.decompose("Q5")


@pytest.mark.parametrize("grading_id", STANDARD_IDS)
def test_standard_gradings(pipeline, grading_id):
    report = pipeline.verify(grading_id)
    assert report.closure.passed
    assert report.type_matches, report.type
    assert report.group_matches, report.group.render()
    assert report.golden_failures == []
    assert report.passed


@pytest.mark.parametrize("grading_id", STANDARD_IDS)
def test_label_group_agrees_with_bracket_relations(pipeline, grading_id):
    report = pipeline.verify(grading_id)
    assert report.bracket_group == report.group, (report.bracket_group, report.group)


def test_q1_group_differs_from_heading(pipeline):
    report = pipeline.verify("q1")
    assert report.passed
    assert report.group == GroupStructure(1, (2, 2, 2))
    assert report.bracket_group == GroupStructure(1, (2, 2, 2))
    assert any(n.startswith("标题群 Z×Z_2^4 ≠ Z×Z_2^3") for n in report.notes)


def test_cartan_grading_identity(pipeline):
    report = pipeline.verify("q10")
    assert report.identity_dim == 4
    assert report.group == GroupStructure(4)


def test_compare(pipeline):
    result = pipeline.compare("q5", "q10")
    assert not result.first_refines_second
    assert not result.second_refines_first
    assert result.verdict() == "neither refines the other"
    same = pipeline.compare("q5", "q5")
    assert same.first_refines_second and same.second_refines_first
    assert same.to_dict()["verdict"] == "q5 and q5 are the same grading"


def test_coarsening_is_refined_by_original(pipeline):
    d = pipeline.decompose("q5")
    coarse = d.merge([d.labels()[0], d.labels()[1]])
    assert pipeline.checker.refines(d, coarse)
    assert not pipeline.checker.refines(coarse, d)


def test_export_roundtrip(pipeline):
    payload = pipeline.export("q6")
    assert payload["id"] == "q6"
    assert payload["type"] == [28]
    assert payload["group"] == {"free_rank": 1, "invariant_factors": [2, 2, 2, 2, 2]}
    assert len(payload["components"]) == 28
    assert len(payload["components"][0]["label"]) == 6
    report = pipeline.verify_payload(payload)
    assert report.passed
    assert report.golden_matched == 28


def test_tampered_export_fails(pipeline):
    payload = copy.deepcopy(pipeline.export("q5"))
    first, second = payload["components"][0], payload["components"][1]
    first["label"], second["label"] = second["label"], first["label"]
    report = pipeline.verify_payload(payload)
    assert not report.passed
    assert report.golden_failures


def test_unknown_export_is_checked_without_catalog(pipeline):
    payload = copy.deepcopy(pipeline.export("q5"))
    payload["id"] = "custom"
    report = pipeline.verify_payload(payload)
    assert report.passed
    assert report.expected_type is None
    assert report.golden_total == 0


def test_import_rejects_malformed(pipeline):
    payload = copy.deepcopy(pipeline.export("q5"))
    payload["components"][0]["basis"] = [[["1/1", "0/1", "0/1", "0/1"]]]
    with pytest.raises(ValueError):
        pipeline.import_decomposition(payload)


def test_verify_many_keeps_order(pipeline):
    reports = pipeline.verify_many(["q6", "q5"], jobs=2)
    assert [r.grading_id for r in reports] == ["q6", "q5"]
    assert all(r.passed for r in reports)


@pytest.mark.slow
@pytest.mark.parametrize("grading_id", CALIBRATED_IDS)
def test_calibrated_gradings(pipeline, grading_id):
    report = pipeline.verify(grading_id)
    assert report.closure.passed
    assert report.golden_failures == []
    assert report.conjugation is True
    assert report.passed


@pytest.mark.slow
def test_q12_labels_are_cube_roots(pipeline):
    d = pipeline.decompose("q12")
    roots = {ONE, OMEGA, OMEGA ** 2}
    assert all(set(label) <= roots for label in d.labels())
    assert pipeline.checker.identity_dimension(d) == 0
    assert len(d) == 26


@pytest.mark.slow
def test_verify_all_parallel(pipeline):
    reports = pipeline.verify_many(list(GRADING_IDS), jobs=4)
    assert [r.grading_id for r in reports] == list(GRADING_IDS)
    assert all(r.passed for r in reports)


@pytest.mark.slow
def test_fine_gradings_do_not_refine_each_other(pipeline):
    for k, first in enumerate(GRADING_IDS):
        for second in GRADING_IDS[k + 1:]:
            result = pipeline.compare(first, second)
            assert not result.first_refines_second, (first, second)
            assert not result.second_refines_first, (first, second)

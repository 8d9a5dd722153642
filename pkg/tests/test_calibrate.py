import pytest

from gradlab.core.autos import H1_TABLE, H2_TABLE, MONOMIAL_EXPONENTS
from gradlab.core.calibrate import CalibratedBasis, CalibrationError, Calibrator
from gradlab.core.liealg import DIM
from gradlab.unit.field import ONE
from gradlab.unit.linalg import Matrix, unit_vector
from gradlab.unit.notation import parse_scalar


@pytest.fixture(scope="module")
def calibrator():
    return Calibrator()


def _standard_basis() -> CalibratedBasis:
    return CalibratedBasis([unit_vector(DIM, k) for k in range(DIM)])


def test_cartan_decomposition(calibrator):
    d = calibrator.cartan_decomposition()
    assert len(d) == 25
    assert sorted(d.dims())[-1] == 4
    assert all(kind.kind == "torus" for kind in d.kinds)


def test_error_report():
    exc = CalibrationError("H1 不是自同构", "#3", ["A[b12,b13] ≠ [A b12, A b13]"])
    assert exc.report().splitlines() == ["H1 不是自同构", "candidate: #3", "  A[b12,b13] ≠ [A b12, A b13]"]


def test_error_report_is_capped():
    exc = CalibrationError("H2 不是自同构", "#0", [f"A[x{k}]" for k in range(25)])
    lines = exc.report().splitlines()
    assert lines[2:12] == [f"  A[x{k}]" for k in range(10)]
    assert lines[-1] == "  ... 25 in total"


def test_best_failure_prefers_fewest_defects():
    early = CalibrationError("根基矩阵不可逆", "#0")
    many = CalibrationError("H1 不是自同构", "#1", ["a", "b", "c"])
    few = CalibrationError("H2 不是自同构", "#2", ["a"])
    assert Calibrator.best_failure([early, many, few]) is few
    assert Calibrator.best_failure([early, many]) is many
    assert Calibrator.best_failure([early]) is early


def test_certify_rejects_standard_basis(calibrator):
    with pytest.raises(CalibrationError) as info:
        calibrator.certify(_standard_basis(), "standard")
    assert info.value.candidate == "standard"


def test_basis_shape():
    with pytest.raises(ValueError):
        CalibratedBasis([unit_vector(DIM, 0)])


def test_basis_record_roundtrip():
    basis = _standard_basis()
    restored = CalibratedBasis.from_json(basis.to_json())
    assert restored == basis
    assert restored.matrix == Matrix.identity(DIM)
    assert basis.describe(1) == "b12"


def test_corrupt_cache_is_rejected(tmp_path, calibrator):
    path = tmp_path / "calibration.json"
    path.write_text('{"vectors": []}', encoding="utf-8")
    with pytest.raises(ValueError):
        calibrator.load(path)


@pytest.mark.slow
def test_calibration_certifies(pipeline, autos):
    basis = pipeline.calibration()
    assert basis.inverse @ basis.matrix == Matrix.identity(DIM)
    h1 = autos.operator_from_table(H1_TABLE, basis)
    h2 = autos.operator_from_table(H2_TABLE, basis)
    assert autos.is_automorphism(h1) and h1.order() == 3
    assert autos.is_automorphism(h2) and h2.order() == 6
    assert basis.provenance["cartan"] in ("coroots", "kernel")
    assert basis.root_exponents[14] == MONOMIAL_EXPONENTS[14]


@pytest.mark.slow
def test_torus_operators_are_automorphisms(pipeline, autos):
    basis = pipeline.calibration()
    values = [parse_scalar(v) for v in ("2", "1", "2", "1/2")]
    op = autos.torus_operator(*values, basis)
    assert autos.is_automorphism(op)
    with pytest.raises(ValueError):
        autos.torus_operator(ONE, ONE, ONE, 0, basis)


@pytest.mark.slow
def test_cache_roundtrip(pipeline, calibration_path, calibrator):
    basis = pipeline.calibration()
    assert calibration_path.exists()
    assert calibrator.load(calibration_path) == basis
    assert calibrator.from_payload(basis.to_record().model_dump()) == basis
    assert calibrator.load_or_calibrate(calibration_path) == basis

import json

import pytest

from gradlab.__main__ import main
from gradlab.core import Tool
from gradlab.core.selftest import SelfTest


@pytest.fixture(autouse=True)
def isolated(tmp_path, monkeypatch):
    monkeypatch.chdir(tmp_path)


def run(capsys, *argv):
    status = Tool().run(list(argv))
    out, err = capsys.readouterr()
    return status, out, err


def test_list(capsys):
    status, out, _ = run(capsys, "list")
    assert status == 0
    lines = out.splitlines()
    assert lines[0].split()[:3] == ["id", "group", "type"]
    assert len(lines) == 15
    assert any(line.startswith("q14") and "Z_2^3×Z_3" in line for line in lines)


def test_list_json(capsys):
    status, out, _ = run(capsys, "list", "--format", "json")
    rows = json.loads(out)
    assert status == 0
    assert [r["id"] for r in rows][:2] == ["q1", "q2"]
    assert rows[4]["group"] == {"free_rank": 0, "invariant_factors": [2] * 7}


def test_verify_q5(capsys):
    status, out, _ = run(capsys, "verify", "q5")
    assert status == 0
    assert out.startswith("q5  PASS")
    assert "golden     28/28" in out
    assert "Z_2^7" in out


def test_verify_json(capsys):
    status, out, _ = run(capsys, "verify", "Q5", "--format", "json")
    (report,) = json.loads(out)
    assert status == 0
    assert report["id"] == "q5"
    assert report["passed"] is True
    assert report["type"] == [28]


def test_verify_additive(capsys):
    status, out, _ = run(capsys, "verify", "q1", "--additive")
    assert status == 0
    assert "(-1, 0̄, 1̄, 1̄, 1̄)" in out


def test_compute(capsys):
    status, out, _ = run(capsys, "compute", "q10")
    assert status == 0
    assert out.startswith("q10: 25 components, type (24,0,0,1)")
    assert "dim 4" in out


def test_compare(capsys):
    status, out, _ = run(capsys, "compare", "q5", "q10")
    assert status == 0
    assert out.splitlines()[-1] == "neither refines the other"


@pytest.mark.parametrize(
    "argv",
    [
        ["verify", "q15"],
        ["compare", "q5"],
        ["frobnicate"],
        ["list", "q1"],
        ["verify", "q5", "--jobs", "0"],
        ["verify-file"],
    ],
)
def test_usage_errors(capsys, argv):
    status, _, err = run(capsys, *argv)
    assert status == 2
    assert err


def test_export_and_verify_file(capsys, tmp_path):
    target = tmp_path / "out" / "q6.json"
    status, out, _ = run(capsys, "export", "q6", "--out", str(target))
    assert status == 0
    assert out == ""
    payload = json.loads(target.read_text(encoding="utf-8"))
    assert payload["id"] == "q6"
    status, out, _ = run(capsys, "verify-file", str(target))
    assert status == 0
    assert out.startswith("q6  PASS")


def test_verify_file_detects_tampering(capsys, tmp_path):
    target = tmp_path / "q5.json"
    run(capsys, "export", "q5", "--out", str(target))
    payload = json.loads(target.read_text(encoding="utf-8"))
    payload["components"][0]["label"], payload["components"][1]["label"] = (
        payload["components"][1]["label"],
        payload["components"][0]["label"],
    )
    target.write_text(json.dumps(payload), encoding="utf-8")
    status, out, _ = run(capsys, "verify-file", str(target))
    assert status == 1
    assert "FAIL" in out


def test_verify_file_missing(capsys, tmp_path):
    status, _, err = run(capsys, "verify-file", str(tmp_path / "absent.json"))
    assert status == 1
    assert "absent.json" in err


def test_config_file(capsys, tmp_path):
    (tmp_path / "gradlab.toml").write_text('output_format = "json"\n', encoding="utf-8")
    status, out, _ = run(capsys, "verify", "q5")
    assert status == 0
    assert json.loads(out)[0]["passed"] is True


def test_selftest_json(capsys, monkeypatch):
    monkeypatch.setattr(SelfTest, "suites", lambda self: {"relations": self.relations})
    status, out, _ = run(capsys, "selftest", "--format", "json")
    assert status == 0
    assert json.loads(out) == [{"name": "relations", "passed": True, "cases": 9, "failures": []}]


def test_main_entry(capsys):
    assert main(["list"]) == 0
    assert "q1" in capsys.readouterr().out


@pytest.mark.slow
def test_verify_all(capsys):
    status, out, _ = run(capsys, "verify-all", "--jobs", "4")
    assert status == 0
    assert out.splitlines()[-1] == "14/14 gradings certified"


@pytest.mark.slow
def test_calibrate(capsys, tmp_path):
    status, out, _ = run(capsys, "calibrate", "--calibration", str(tmp_path / "cal.json"))
    assert status == 0
    assert (tmp_path / "cal.json").exists()
    assert "B13" in out

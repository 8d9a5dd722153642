from pathlib import Path

import pytest
from pydantic import ValidationError

from gradlab.config import Config, RunConfig, load_config


def test_defaults(tmp_path):
    config = load_config(cwd=tmp_path)
    assert config == Config()
    assert config.calibration_path == Path("calibration.json")
    assert config.jobs == 1
    assert config.output_format == "text"


def test_layering(tmp_path):
    (tmp_path / "pyproject.toml").write_text('[tool.gradlab]\njobs = 3\nlog_level = "INFO"\n', encoding="utf-8")
    assert load_config(cwd=tmp_path).jobs == 3
    (tmp_path / "gradlab.toml").write_text('jobs = 5\noutput_format = "json"\n', encoding="utf-8")
    config = load_config(cwd=tmp_path)
    assert (config.jobs, config.output_format, config.log_level) == (5, "json", "INFO")
    config = load_config(cwd=tmp_path, overrides={"jobs": 2, "output_format": None})
    assert (config.jobs, config.output_format) == (2, "json")


def test_explicit_file(tmp_path):
    explicit = tmp_path / "custom.toml"
    explicit.write_text('[tool.gradlab]\nadditive_labels = true\n', encoding="utf-8")
    (tmp_path / "gradlab.toml").write_text("jobs = 7\n", encoding="utf-8")
    config = load_config(explicit, cwd=tmp_path)
    assert config.additive_labels
    assert config.jobs == 1
    with pytest.raises(FileNotFoundError):
        load_config(tmp_path / "missing.toml", cwd=tmp_path)


def test_invalid_values(tmp_path):
    with pytest.raises(ValidationError):
        load_config(cwd=tmp_path, overrides={"jobs": 0})
    with pytest.raises(ValidationError):
        load_config(cwd=tmp_path, overrides={"output_format": "xml"})


def test_run_config_ids():
    run = RunConfig(command="compare", ids=["Q5", " q10"])
    assert run.ids == ["q5", "q10"]
    with pytest.raises(ValidationError):
        RunConfig(command="verify", ids=["q15"])


@pytest.mark.parametrize(
    "command, ids",
    [("compare", ["q1"]), ("verify", []), ("list", ["q1"]), ("verify-all", ["q2"]), ("export", [])],
)
def test_run_config_arity(command, ids):
    with pytest.raises(ValidationError):
        RunConfig(command=command, ids=ids)


def test_verify_file_needs_path(tmp_path):
    with pytest.raises(ValidationError):
        RunConfig(command="verify-file")
    assert RunConfig(command="verify-file", path=tmp_path / "x.json").path.name == "x.json"

import json

import numpy as np
import pytest

from fockbridge.core.config import settings
from fockbridge.core.exceptions import ConfigError, ProfileWriteError
from fockbridge.schemas.continuum import ProfileKind, ProfileRequest
from fockbridge.schemas.report import CheckReport, CheckStatus
from fockbridge.schemas.run_config import RunConfig
from fockbridge.verification.checks import SELECTORS, resolve
from fockbridge.verification.services.config_service import load_run_config, parse_run_config
from fockbridge.verification.services.profile_service import emit_profile
from fockbridge.verification.services.report_service import (
    render_report,
    render_summary,
    resolve_output_dir,
    write_reports,
)
from fockbridge.verification.services.suite_service import SuiteService, run_suite


def test_empty_config_is_valid():
    assert parse_run_config("{}") == RunConfig()
    assert parse_run_config("") == RunConfig()


def test_malformed_json_reports_position():
    with pytest.raises(ConfigError) as excinfo:
        parse_run_config('{"seed": 1,\n "lattice": }', "run.json")
    assert "line 2" in str(excinfo.value)
    assert excinfo.value.exit_code == 2


@pytest.mark.parametrize(
    "text,field",
    [
        ('{"lattice": {"mode_count": 4}}', "lattice.mode_count"),
        ('{"seeds": 3}', "seeds"),
        ('{"quadrature": {"cutoff_factor": 5}}', "quadrature.cutoff_factor"),
    ],
)
def test_invalid_fields_are_named(text, field):
    with pytest.raises(ConfigError) as excinfo:
        parse_run_config(text)
    assert field in str(excinfo.value)


def test_fermi_truncation_is_validated():
    with pytest.raises(ConfigError):
        parse_run_config('{"lattice": {"mode_count": 3, "n_max": 4, "statistics": "fermi"}}')


def test_seed_override(tmp_path):
    path = tmp_path / "run.json"
    path.write_text('{"seed": 5}')
    assert load_run_config(path).seed == 5
    assert load_run_config(path, seed=9).seed == 9
    with pytest.raises(ConfigError):
        load_run_config(tmp_path / "missing.json")


def test_report_record_uses_pass_key():
    record = CheckReport.evaluate("x", "anchor", 1e-13, 1e-12).to_record()
    assert list(record) == ["name", "anchor", "deviation", "tolerance", "pass", "seconds", "status", "reason"]
    assert record["pass"] is True
    assert record["seconds"] is None
    skipped = CheckReport.skipped("y", "anchor", 1e-10, "empty domain").to_record()
    assert skipped["pass"] is None and skipped["deviation"] is None
    assert CheckReport.evaluate("z", "anchor", 2.0, 1.0).status == CheckStatus.FAILED


def test_selectors_resolve_in_registry_order():
    assert resolve(["all"]) == [check for checks in SELECTORS.values() for check in checks]
    assert resolve(["fock", "algebra"]) == SELECTORS["algebra"] + SELECTORS["fock"]
    with pytest.raises(ValueError):
        resolve(["nope"])


def test_algebra_suite_is_deterministic():
    config = RunConfig()
    first = run_suite(config, ["algebra"], word="PPPXPPXX")
    second = SuiteService(config, word="PPPXPPXX", workers=3).run(["algebra"])
    assert first.passed
    assert first.exit_code == 0
    assert render_report(first) == render_report(second)
    assert all(report.seconds is None for report in first.reports)
    assert "normal_order_PPPXPPXX" in [report.name for report in first.reports]


def test_timings_are_recorded_on_request():
    config = RunConfig(record_timings=True)
    result = SuiteService(config).run(["fock"])
    assert all(report.seconds is not None for report in result.reports)
    assert "timings:" in render_summary(result)


def test_truncated_equivalence_is_skipped_not_failed():
    config = RunConfig(lattice={"n_max": 1})
    result = SuiteService(config).run(["equivalence"])
    routes = [report for report in result.reports if report.name.startswith("route_")]
    assert routes and all(report.status == CheckStatus.SKIPPED for report in routes)
    assert result.passed


def test_output_dir_precedence(monkeypatch):
    config = RunConfig(output_dir="from_config")
    monkeypatch.setattr(settings, "FOCKBRIDGE_OUT", None)
    assert str(resolve_output_dir(config)) == "from_config"
    assert str(resolve_output_dir(config, "from_cli")) == "from_cli"
    monkeypatch.setattr(settings, "FOCKBRIDGE_OUT", "from_env")
    assert str(resolve_output_dir(config, "from_cli")) == "from_env"


def test_reports_are_written(tmp_path):
    result = SuiteService(RunConfig()).run(["fock"])
    report_path, summary_path = write_reports(result, tmp_path / "out")
    records = json.loads(report_path.read_text())
    assert [record["name"] for record in records] == [report.name for report in result.reports]
    assert report_path.read_text().endswith("\n")
    assert "passed" in summary_path.read_text()


def test_profile_csv(tmp_path):
    path = emit_profile(ProfileRequest(kind=ProfileKind.NW_CHI, points=51), tmp_path / "chi.csv")
    lines = path.read_text().splitlines()
    assert lines[0] == "chi,re,im,abs"
    rows = np.loadtxt(path, delimiter=",", skiprows=1)
    assert rows.shape == (51, 4)
    np.testing.assert_allclose(rows[:, 3], rows[::-1, 3], rtol=1e-9, atol=1e-12)


def test_anticommutator_kernel_csv(tmp_path):
    path = emit_profile(ProfileRequest(kind=ProfileKind.ANTICOMMUTATOR_KERNEL), tmp_path / "kernel.csv")
    rows = np.loadtxt(path, delimiter=",", skiprows=1)
    assert abs(rows[len(rows) // 2, 1]) > 1e-6


def test_profile_write_error_names_path(tmp_path):
    blocker = tmp_path / "file"
    blocker.write_text("")
    with pytest.raises(ProfileWriteError) as excinfo:
        emit_profile(ProfileRequest(kind=ProfileKind.ANTICOMMUTATOR_KERNEL), blocker / "kernel.csv")
    assert str(blocker) in str(excinfo.value)

"""Tests for the command-line adapter."""

import io
import json

import pytest
from unittest.mock import Mock

from src.adapters.driving.cli_adapter import (
    EXIT_CHECK_FAILED,
    EXIT_NUMERICAL,
    EXIT_OK,
    EXIT_USAGE,
    CLIAdapter,
    ServiceBundle,
    attach_signed_values,
    parse_inline_complex_list,
    parse_range,
)
from src.config import ApplicationConfig, EnsembleDefaults
from src.container import DIContainer
from src.domain.entities.base import NumericalError, ValidationError
from src.domain.entities.ensemble import CheckOutcome, CheckStatus


@pytest.fixture
def test_config(tmp_path):
    """Configuration writing ensemble reports under a temporary directory."""
    return ApplicationConfig(ensemble=EnsembleDefaults(output_dir=str(tmp_path / "reports")))


@pytest.fixture
def container(test_config):
    """Container providing the real service factory."""
    return DIContainer(test_config)


@pytest.fixture
def run_cli(container, test_config):
    """Run a command line; returns the exit code and the decoded stdout."""
    def run(*argv):
        stdout = io.StringIO()
        cli = CLIAdapter(service_factory=container.build_services, config=test_config, stdout=stdout)
        code = cli.run(list(argv))
        text = stdout.getvalue()
        return code, json.loads(text) if text else None

    return run


@pytest.fixture
def mock_bundle():
    """Bundle of mock driving ports."""
    return ServiceBundle(Mock(), Mock(), Mock(), Mock())


def mock_cli(bundle, config=None):
    factory = Mock(return_value=bundle)
    return CLIAdapter(service_factory=factory, config=config, stdout=io.StringIO()), factory


class TestParsers:
    """Test cases for the argument helpers."""

    def test_inline_complex_list(self):
        assert parse_inline_complex_list("1, 2+3i, -i", "roots") == [1, 2 + 3j, -1j]

    @pytest.mark.parametrize("text", ["", "1,,2", "1, x"])
    def test_inline_complex_list_rejects(self, text):
        with pytest.raises(ValidationError) as exc_info:
            parse_inline_complex_list(text, "roots")
        assert exc_info.value.field == "roots"

    def test_range(self):
        assert parse_range("2..5", "degree", int) == (2, 5)
        assert parse_range("3", "degree", int) == (3, 3)
        assert parse_range("0.5..2", "range", float) == (0.5, 2.0)

    def test_range_rejects(self):
        with pytest.raises(ValidationError, match="expected min..max"):
            parse_range("a..b", "degree", int)

    def test_attach_signed_values(self):
        argv = ["critical", "--coeffs", "-1,0,0,1", "--tol", "1e-9"]
        assert attach_signed_values(argv) == ["critical", "--coeffs=-1,0,0,1", "--tol", "1e-9"]


class TestCriticalCommand:
    """Test cases for ``critical``."""

    def test_roots_golden(self, run_cli):
        code, output = run_cli("critical", "--roots", "3,1")

        assert code == EXIT_OK
        assert output == {"critical_points": [[2.0, 0.0]], "verification_residual": 0.0}

    def test_negative_leading_coefficient_value(self, run_cli):
        """Test that --coeffs accepts a value starting with a minus sign."""
        code, output = run_cli("critical", "--coeffs", "-1,0,0,1")

        assert code == EXIT_OK
        assert len(output["critical_points"]) == 2
        for re, im in output["critical_points"]:
            assert abs(complex(re, im)) <= 1e-6

    def test_non_monic_coefficients(self, run_cli):
        code, output = run_cli("critical", "--coeffs", "6,-8,2")

        assert code == EXIT_OK
        assert output["critical_points"][0] == pytest.approx([2.0, 0.0], abs=1e-9)

    def test_input_file(self, run_cli, tmp_path):
        path = tmp_path / "roots.json"
        path.write_text(json.dumps({"roots": [[3, 0], [1, 0]]}))

        code, output = run_cli("critical", "--input", str(path))

        assert code == EXIT_OK
        assert output["critical_points"] == [[2.0, 0.0]]

    def test_input_file_without_known_key(self, run_cli, tmp_path):
        path = tmp_path / "bad.json"
        path.write_text(json.dumps({"zeros": [1, 2]}))

        assert run_cli("critical", "--input", str(path))[0] == EXIT_USAGE

    def test_missing_input_file(self, run_cli, tmp_path):
        assert run_cli("critical", "--input", str(tmp_path / "absent.json"))[0] == EXIT_USAGE

    def test_zero_leading_coefficient(self, run_cli):
        assert run_cli("critical", "--coeffs", "1,2,0")[0] == EXIT_USAGE

    def test_input_is_required(self, run_cli):
        assert run_cli("critical")[0] == EXIT_USAGE

    def test_roots_and_coeffs_are_exclusive(self, run_cli):
        assert run_cli("critical", "--roots", "1,2", "--coeffs", "1,1")[0] == EXIT_USAGE

    def test_help_exits_cleanly(self, run_cli):
        assert run_cli("--help")[0] == EXIT_OK

    def test_numerical_failure(self, mock_bundle, capsys):
        mock_bundle.differentiator.critical_points.side_effect = NumericalError("QR did not converge")
        cli, _ = mock_cli(mock_bundle)

        assert cli.run(["critical", "--roots", "1,2"]) == EXIT_NUMERICAL
        assert "numerical failure: QR did not converge" in capsys.readouterr().err

    def test_unexpected_error(self, mock_bundle):
        mock_bundle.differentiator.critical_points.side_effect = RuntimeError("boom")
        cli, _ = mock_cli(mock_bundle)

        assert cli.run(["critical", "--roots", "1,2"]) == EXIT_NUMERICAL


class TestInspectCommand:
    """Test cases for ``inspect``."""

    def test_circulant_golden(self, run_cli):
        code, output = run_cli("inspect", "--roots", "1,-1", "--show", "circulant")

        assert code == EXIT_OK
        assert output == {"first_row": [[0.0, 0.0], [1.0, 0.0]]}

    def test_submatrix(self, run_cli):
        code, output = run_cli("inspect", "--roots", "3,1", "--show", "submatrix")
        assert output == {"rows": 1, "cols": 1, "entries": [[2.0, 0.0]]}

    @pytest.mark.parametrize("view", ["b", "btilde"])
    def test_b_views(self, run_cli, view):
        code, output = run_cli("inspect", "--roots", "3,1", "--show", view)

        assert code == EXIT_OK
        assert output["entries"][0] == pytest.approx([4.0, 0.0])

    def test_gram(self, run_cli):
        code, output = run_cli("inspect", "--roots", "3,1", "--show", "gram")
        assert output["first_row"] == [[5.0, 0.0], [4.0, 0.0]]

    def test_unknown_view(self, run_cli):
        assert run_cli("inspect", "--roots", "3,1", "--show", "hessian")[0] == EXIT_USAGE


class TestVerifyCommand:
    """Test cases for ``verify``."""

    def test_degree_one_rejected(self, run_cli, capsys):
        code, output = run_cli("verify", "--roots", "1")

        assert code == EXIT_USAGE
        assert output is None
        assert "degree at least 2" in capsys.readouterr().err

    def test_passing_checks(self, run_cli):
        code, output = run_cli("verify", "--roots", "1,0,-1", "--checks", "schoenberg,quartic_centered")

        assert code == EXIT_OK
        assert [report["name"] for report in output] == ["schoenberg", "quartic_centered"]
        assert all(report["passed"] and report["equality"] for report in output)

    def test_non_centered_check_is_skipped(self, run_cli, capsys):
        code, output = run_cli("verify", "--roots", "3,1", "--checks", "quartic_centered")

        assert code == EXIT_OK
        assert output[0]["status"] == "skipped"
        assert "skipped quartic_centered" in capsys.readouterr().err

    def test_all_checks_on_random_roots(self, run_cli):
        code, output = run_cli("verify", "--roots", "1.5-0.3i, -0.7+1.1i, 0.2+0.4i, -1-i")

        assert code == EXIT_OK
        assert {report["status"] for report in output} <= {"passed", "skipped"}

    def test_phi_option(self, run_cli):
        code, output = run_cli("verify", "--roots", "3,1", "--checks", "thm12", "--phi", "power(3)")

        assert code == EXIT_OK
        assert [report["name"] for report in output] == ["thm12:power(3)"]

    def test_unknown_check(self, run_cli):
        assert run_cli("verify", "--roots", "1,2", "--checks", "riemann")[0] == EXIT_USAGE

    def test_failed_check_exit_code(self, mock_bundle, capsys):
        mock_bundle.ensemble.evaluate.return_value = [
            CheckOutcome(label="schoenberg", status=CheckStatus.FAILED, slack=-1.0)
        ]
        cli, _ = mock_cli(mock_bundle)

        assert cli.run(["verify", "--roots", "1,2"]) == EXIT_CHECK_FAILED
        assert "failed checks: schoenberg" in capsys.readouterr().err

    def test_tolerance_layering(self, mock_bundle, tmp_path):
        """Test --tol first, then the config file's tolerances."""
        config_path = tmp_path / "tol.json"
        config_path.write_text(json.dumps({"tolerances": {"quartic_pass": 1e-5}}))
        mock_bundle.ensemble.evaluate.return_value = []
        cli, factory = mock_cli(mock_bundle)

        code = cli.run(["verify", "--roots", "1,2", "--tol", "1e-6", "--config", str(config_path)])

        tolerances = factory.call_args.kwargs["tolerances"]
        assert code == EXIT_OK
        assert tolerances.quadratic_pass == 1e-6
        assert tolerances.quartic_pass == 1e-5
        config = mock_bundle.ensemble.evaluate.call_args.args[2]
        assert config.tolerances == tolerances

    def test_solver_selection(self, mock_bundle):
        mock_bundle.ensemble.evaluate.return_value = []
        cli, factory = mock_cli(mock_bundle)

        cli.run(["verify", "--roots", "1,2", "--eigensolver", "lapack", "--root-finder", "companion"])

        assert factory.call_args.kwargs["eigensolver"] == "lapack"
        assert factory.call_args.kwargs["root_finder"] == "companion"


class TestEnsembleCommand:
    """Test cases for ``ensemble``."""

    def test_unit_circle_anomalies(self, run_cli, capsys):
        code, output = run_cli(
            "ensemble", "--family", "unit-circle", "--equispaced", "--degree", "3..3",
            "--count", "3", "--checks", "quartic_general",
        )

        assert code == EXIT_OK
        assert output["anomalies"] == 3
        assert output["checks"]["quartic_general"]["anomalies"] == [0, 1, 2]
        assert "3 equality anomalies" in capsys.readouterr().err

    def test_collinear_schoenberg_equality(self, run_cli):
        code, output = run_cli(
            "ensemble", "--family", "collinear", "--count", "5", "--seed", "2", "--checks", "schoenberg",
        )

        assert code == EXIT_OK
        assert output["checks"]["schoenberg"]["equality_cases"] == 5

    def test_reports_written(self, run_cli, tmp_path):
        code, output = run_cli("ensemble", "--count", "2", "--checks", "schur", "--run-name", "smoke")

        lines = (tmp_path / "reports" / "smoke" / "instances.jsonl").read_text().splitlines()
        assert code == EXIT_OK
        assert len(lines) == 2
        assert output["records"].endswith("instances.jsonl")

    def test_config_file(self, run_cli, tmp_path):
        config_path = tmp_path / "ensemble.json"
        config_path.write_text(json.dumps({
            "family": "unit_circle",
            "equispaced": True,
            "degree_range": [3, 3],
            "count": 2,
            "checks": ["quartic_general"],
        }))

        code, output = run_cli("ensemble", "--config", str(config_path))

        assert code == EXIT_OK
        assert output["instances"] == 2
        assert output["anomalies"] == 2

    def test_flags_override_config_file(self, run_cli, tmp_path):
        config_path = tmp_path / "ensemble.json"
        config_path.write_text(json.dumps({"count": 7, "checks": "schoenberg"}))

        code, output = run_cli("ensemble", "--config", str(config_path), "--count", "2")

        assert output["instances"] == 2

    def test_environment_seed_wins(self, tmp_path):
        """Test that a configured seed replaces --seed."""
        def records(seed_override, seed_flag, name):
            config = ApplicationConfig(ensemble=EnsembleDefaults(
                seed=seed_override, output_dir=str(tmp_path / "reports")
            ))
            cli = CLIAdapter(DIContainer(config).build_services, config, stdout=io.StringIO())
            cli.run(["ensemble", "--count", "2", "--checks", "schur", "--seed", str(seed_flag),
                     "--run-name", name])
            return (tmp_path / "reports" / name / "instances.jsonl").read_text()

        assert records(5, 1, "a") == records(None, 5, "b")
        assert records(None, 1, "c") != records(None, 5, "d")

    def test_unwritable_output(self, run_cli, tmp_path, capsys):
        blocker = tmp_path / "blocker"
        blocker.write_text("")

        code, _ = run_cli("ensemble", "--count", "1", "--checks", "schur", "--output", str(blocker / "out"))

        assert code == EXIT_NUMERICAL
        assert "cannot write" in capsys.readouterr().err

    @pytest.mark.parametrize("flags", [
        ["--family", "spiral"],
        ["--degree", "1..4"],
        ["--degree", "2-4"],
        ["--count", "0"],
        ["--pattern", "2,x"],
    ])
    def test_invalid_settings(self, run_cli, flags):
        assert run_cli("ensemble", "--checks", "schur", *flags)[0] == EXIT_USAGE

    def test_failures_exit_code(self, mock_bundle):
        summary = Mock(total_failures=2, total_anomalies=0, records_path="r.jsonl")
        summary.to_dict.return_value = {"failures": 2}
        mock_bundle.ensemble.run_suite.return_value = summary
        cli, _ = mock_cli(mock_bundle)

        assert cli.run(["ensemble", "--count", "1", "--checks", "schur"]) == EXIT_CHECK_FAILED

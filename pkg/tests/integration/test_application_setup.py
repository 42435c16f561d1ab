"""Integration tests for complete application setup and dependency injection."""

import json

import pytest
from unittest.mock import patch

from src.adapters.driven.companion_root_finder_adapter import CompanionRootFinderAdapter
from src.adapters.driven.jsonl_report_adapter import JsonlReportAdapter
from src.adapters.driven.lapack_eigensolver_adapter import LapackEigenSolverAdapter
from src.adapters.driven.qr_eigensolver_adapter import QREigenSolverAdapter
from src.adapters.driving.cli_adapter import CLIAdapter, ServiceBundle
from src.config import ApplicationConfig, EnsembleDefaults, SolverConfig, load_config
from src.container import DIContainer, get_container, reset_container
from src.domain.entities.tolerances import ToleranceProfile
from src.domain.services.differentiator_service import DifferentiatorService
from src.domain.services.ensemble_service import EnsembleService
from src.domain.services.inequality_service import InequalityService
from src.domain.services.majorization_service import MajorizationService
from src.main import CirculantDifferentiatorApplication, main


@pytest.fixture
def test_config(tmp_path):
    """Create test configuration."""
    return ApplicationConfig(
        tolerances=ToleranceProfile(oracle_max_iter=300),
        solvers=SolverConfig(eigensolver="lapack", root_finder="companion"),
        ensemble=EnsembleDefaults(workers=2, output_dir=str(tmp_path / "reports")),
        debug=True,
        log_level="DEBUG",
    )


@pytest.fixture(autouse=True)
def cleanup_globals():
    """Cleanup global instances after each test."""
    yield
    reset_container()


class TestDIContainer:
    """Test dependency injection container."""

    def test_container_initialization(self, test_config):
        """Test that container initializes with proper configuration."""
        container = DIContainer(test_config)

        assert container.config == test_config
        assert container.config.debug is True

    def test_adapters_follow_solver_config(self, test_config):
        container = DIContainer(test_config)

        assert isinstance(container.get_eigensolver(), LapackEigenSolverAdapter)
        assert isinstance(container.get_root_finder(), CompanionRootFinderAdapter)
        assert isinstance(container.get_report_writer(), JsonlReportAdapter)

    def test_default_solvers(self):
        container = DIContainer(ApplicationConfig())
        assert type(container.get_eigensolver()) is QREigenSolverAdapter

    def test_adapters_are_cached(self, test_config):
        container = DIContainer(test_config)

        assert container.get_eigensolver() is container.get_eigensolver()
        assert container.get_report_writer() is container.get_report_writer()

    def test_services_share_dependencies(self, test_config):
        """Test that every service talks to the same differentiator."""
        container = DIContainer(test_config)

        differentiator = container.get_differentiator_service()
        inequality = container.get_inequality_service()
        majorization = container.get_majorization_service()
        ensemble = container.get_ensemble_service()

        assert isinstance(differentiator, DifferentiatorService)
        assert isinstance(inequality, InequalityService)
        assert isinstance(majorization, MajorizationService)
        assert isinstance(ensemble, EnsembleService)
        assert inequality._differentiator is differentiator
        assert majorization._differentiator is differentiator
        assert ensemble._differentiator is differentiator
        assert ensemble._workers == 2
        assert differentiator.tolerances.oracle_max_iter == 300

    @patch('src.container.EnsembleService')
    def test_ensemble_service_creation(self, mock_ensemble_service, test_config):
        """Test ensemble service creation with proper dependencies."""
        container = DIContainer(test_config)

        container.get_ensemble_service()

        mock_ensemble_service.assert_called_once()
        call_args = mock_ensemble_service.call_args
        assert 'report_writer' in call_args.kwargs
        assert call_args.kwargs['workers'] == 2

    def test_build_services_overrides(self, test_config, tmp_path):
        container = DIContainer(test_config)
        tolerances = ToleranceProfile().with_base(1e-6)

        bundle = container.build_services(
            tolerances=tolerances, eigensolver="qr", output_dir=str(tmp_path / "other"), workers=1
        )

        assert isinstance(bundle, ServiceBundle)
        assert bundle.differentiator.tolerances == tolerances
        assert type(bundle.differentiator._eigensolver) is QREigenSolverAdapter
        assert isinstance(bundle.differentiator._root_finder, CompanionRootFinderAdapter)
        assert bundle.ensemble._report_writer._output_dir == tmp_path / "other"

    def test_cli_adapter_creation(self, test_config):
        container = DIContainer(test_config)

        cli = container.get_cli_adapter()

        assert isinstance(cli, CLIAdapter)
        assert cli is container.get_cli_adapter()


class TestGlobalInstances:
    """Test global instance management."""

    def test_get_container_singleton(self, test_config):
        """Test that get_container returns singleton instance."""
        container1 = get_container(test_config)
        container2 = get_container()

        assert container1 is container2
        assert container1.config == test_config

    def test_reset_container(self, test_config):
        """Test container reset functionality."""
        container1 = get_container(test_config)
        reset_container()
        container2 = get_container(test_config)

        assert container1 is not container2


class TestConfiguration:
    """Test environment-driven configuration."""

    def test_defaults(self, monkeypatch):
        for key in ("CIRC_TOL", "CIRC_ORACLE_MAX_ITER", "CIRC_SEED", "CIRC_EIGENSOLVER",
                    "CIRC_ROOT_FINDER", "CIRC_WORKERS", "DEBUG"):
            monkeypatch.delenv(key, raising=False)

        config = load_config()

        assert config.tolerances == ToleranceProfile()
        assert config.solvers == SolverConfig()
        assert config.ensemble.seed is None
        assert config.debug is False

    def test_configuration_loading_from_environment(self, monkeypatch, tmp_path):
        """Test that configuration is loaded from environment variables."""
        monkeypatch.setenv("CIRC_TOL", "1e-6")
        monkeypatch.setenv("CIRC_ORACLE_MAX_ITER", "800")
        monkeypatch.setenv("CIRC_EIGENSOLVER", "LAPACK")
        monkeypatch.setenv("CIRC_ROOT_FINDER", "companion")
        monkeypatch.setenv("CIRC_SEED", "42")
        monkeypatch.setenv("CIRC_WORKERS", "4")
        monkeypatch.setenv("CIRC_OUTPUT_DIR", str(tmp_path))
        monkeypatch.setenv("DEBUG", "true")

        config = load_config()

        assert config.tolerances.quadratic_pass == 1e-6
        assert config.tolerances.quartic_equality == pytest.approx(1e-5)
        assert config.tolerances.oracle_max_iter == 800
        assert config.solvers == SolverConfig(eigensolver="lapack", root_finder="companion")
        assert config.ensemble.seed == 42
        assert config.ensemble.workers == 4
        assert config.ensemble.output_dir == str(tmp_path)
        assert config.debug is True

    def test_malformed_values_fall_back(self, monkeypatch):
        monkeypatch.delenv("CIRC_ORACLE_MAX_ITER", raising=False)
        monkeypatch.setenv("CIRC_TOL", "tiny")
        monkeypatch.setenv("CIRC_EIGENSOLVER", "jacobi")
        monkeypatch.setenv("CIRC_WORKERS", "-3")

        config = load_config()

        assert config.tolerances == ToleranceProfile()
        assert config.solvers.eigensolver == "qr"
        assert config.ensemble.workers == 1


class TestApplication:
    """Test the application entry point."""

    def test_application_uses_config(self, test_config):
        app = CirculantDifferentiatorApplication(test_config)

        assert app.config == test_config
        assert app.container is get_container()

    def test_shutdown_resets_container(self, test_config):
        app = CirculantDifferentiatorApplication(test_config)
        app.shutdown()

        assert get_container(ApplicationConfig()) is not app.container

    def test_main_runs_command(self, monkeypatch, tmp_path, capsys):
        """Test the console entry point end to end."""
        monkeypatch.setenv("CIRC_OUTPUT_DIR", str(tmp_path))

        code = main(["critical", "--roots", "3,1"])

        assert code == 0
        assert json.loads(capsys.readouterr().out) == {
            "critical_points": [[2.0, 0.0]],
            "verification_residual": 0.0,
        }

    def test_main_returns_usage_code(self, capsys):
        assert main(["verify", "--roots", "1"]) == 2
        assert "degree at least 2" in capsys.readouterr().err

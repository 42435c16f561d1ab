"""Dependency injection container for the circulant differentiator application."""

import logging
from typing import Optional

from .config import ApplicationConfig, load_config
from .utils import logger as console

# Domain
from .domain.entities.tolerances import ToleranceProfile
from .domain.ports.driven.eigensolver_port import EigenSolverPort
from .domain.ports.driven.root_finder_port import RootFinderPort
from .domain.services.differentiator_service import DifferentiatorService
from .domain.services.inequality_service import InequalityService
from .domain.services.majorization_service import MajorizationService
from .domain.services.ensemble_service import EnsembleService

# Driving adapters
from .adapters.driving.cli_adapter import CLIAdapter, ServiceBundle

# Driven adapters
from .adapters.driven.aberth_root_finder_adapter import AberthRootFinderAdapter
from .adapters.driven.companion_root_finder_adapter import CompanionRootFinderAdapter
from .adapters.driven.qr_eigensolver_adapter import QREigenSolverAdapter
from .adapters.driven.lapack_eigensolver_adapter import LapackEigenSolverAdapter
from .adapters.driven.jsonl_report_adapter import JsonlReportAdapter


logger = logging.getLogger(__name__)


class DIContainer:
    """Dependency injection container for the circulant differentiator.

    This container follows the hexagonal architecture pattern and wires
    all dependencies according to the dependency inversion principle.
    Default services are built lazily from the configuration;
    ``build_services`` assembles a fresh bundle for per-command settings.
    """

    def __init__(self, config: Optional[ApplicationConfig] = None):
        """Initialize the dependency injection container.

        Args:
            config: Application configuration (loads from environment if None)
        """
        self._config = config or load_config()
        self._setup_logging()

        self._root_finder: Optional[RootFinderPort] = None
        self._eigensolver: Optional[EigenSolverPort] = None
        self._report_writer: Optional[JsonlReportAdapter] = None

        self._differentiator_service: Optional[DifferentiatorService] = None
        self._inequality_service: Optional[InequalityService] = None
        self._majorization_service: Optional[MajorizationService] = None
        self._ensemble_service: Optional[EnsembleService] = None

        self._cli_adapter: Optional[CLIAdapter] = None

    def _setup_logging(self) -> None:
        """Setup logging configuration."""
        logging.basicConfig(
            level=getattr(logging, self._config.log_level.upper(), logging.WARNING),
            format='%(asctime)s - %(name)s - %(levelname)s - %(message)s'
        )

        if self._config.debug:
            logging.getLogger().setLevel(logging.DEBUG)
        console.set_verbose(self._config.debug)

    @property
    def config(self) -> ApplicationConfig:
        """Get application configuration."""
        return self._config

    # Driven adapters (infrastructure)

    @staticmethod
    def create_root_finder(name: str) -> RootFinderPort:
        if name == "companion":
            return CompanionRootFinderAdapter()
        return AberthRootFinderAdapter()

    def create_eigensolver(self, name: str, tolerances: ToleranceProfile) -> EigenSolverPort:
        if name == "lapack":
            return LapackEigenSolverAdapter(hermitian_tol=tolerances.hermitian_tol)
        return QREigenSolverAdapter(hermitian_tol=tolerances.hermitian_tol)

    def get_root_finder(self) -> RootFinderPort:
        """Get root finder adapter instance.

        Returns:
            Root oracle selected by the solver configuration
        """
        if self._root_finder is None:
            logger.info(f"Initializing {self._config.solvers.root_finder} root finder")
            self._root_finder = self.create_root_finder(self._config.solvers.root_finder)

        return self._root_finder

    def get_eigensolver(self) -> EigenSolverPort:
        """Get eigensolver adapter instance.

        Returns:
            Eigensolver selected by the solver configuration
        """
        if self._eigensolver is None:
            logger.info(f"Initializing {self._config.solvers.eigensolver} eigensolver")
            self._eigensolver = self.create_eigensolver(
                self._config.solvers.eigensolver, self._config.tolerances
            )

        return self._eigensolver

    def get_report_writer(self) -> JsonlReportAdapter:
        """Get report writer adapter instance.

        Returns:
            JSONL report adapter writing under the configured output directory
        """
        if self._report_writer is None:
            logger.info("Initializing JSONL report adapter")
            self._report_writer = JsonlReportAdapter(self._config.ensemble.output_dir)

        return self._report_writer

    # Domain services

    def get_differentiator_service(self) -> DifferentiatorService:
        if self._differentiator_service is None:
            logger.info("Initializing differentiator service")
            self._differentiator_service = DifferentiatorService(
                eigensolver=self.get_eigensolver(),
                root_finder=self.get_root_finder(),
                tolerances=self._config.tolerances,
            )

        return self._differentiator_service

    def get_inequality_service(self) -> InequalityService:
        if self._inequality_service is None:
            logger.info("Initializing inequality service")
            self._inequality_service = InequalityService(
                self.get_differentiator_service(), self._config.tolerances
            )

        return self._inequality_service

    def get_majorization_service(self) -> MajorizationService:
        if self._majorization_service is None:
            logger.info("Initializing majorization service")
            self._majorization_service = MajorizationService(
                self.get_differentiator_service(), self.get_eigensolver(), self._config.tolerances
            )

        return self._majorization_service

    def get_ensemble_service(self) -> EnsembleService:
        if self._ensemble_service is None:
            logger.info("Initializing ensemble service")
            self._ensemble_service = EnsembleService(
                differentiator=self.get_differentiator_service(),
                inequality=self.get_inequality_service(),
                majorization=self.get_majorization_service(),
                report_writer=self.get_report_writer(),
                workers=self._config.ensemble.workers,
            )

        return self._ensemble_service

    def build_services(
        self,
        tolerances: Optional[ToleranceProfile] = None,
        eigensolver: Optional[str] = None,
        root_finder: Optional[str] = None,
        output_dir: Optional[str] = None,
        workers: Optional[int] = None,
    ) -> ServiceBundle:
        """Fresh services for one command's settings; unset arguments use the configuration.

        Returns:
            Bundle of the four driving ports
        """
        tolerances = tolerances or self._config.tolerances
        eigensolver_port = self.create_eigensolver(eigensolver or self._config.solvers.eigensolver, tolerances)
        differentiator = DifferentiatorService(
            eigensolver=eigensolver_port,
            root_finder=self.create_root_finder(root_finder or self._config.solvers.root_finder),
            tolerances=tolerances,
        )
        inequality = InequalityService(differentiator, tolerances)
        majorization = MajorizationService(differentiator, eigensolver_port, tolerances)
        ensemble = EnsembleService(
            differentiator=differentiator,
            inequality=inequality,
            majorization=majorization,
            report_writer=JsonlReportAdapter(output_dir or self._config.ensemble.output_dir),
            workers=self._config.ensemble.workers if workers is None else workers,
        )
        return ServiceBundle(differentiator, inequality, majorization, ensemble)

    # Driving adapters

    def get_cli_adapter(self) -> CLIAdapter:
        """Get CLI adapter instance.

        Returns:
            CLI adapter building services through this container
        """
        if self._cli_adapter is None:
            logger.info("Initializing CLI adapter")
            self._cli_adapter = CLIAdapter(service_factory=self.build_services, config=self._config)

        return self._cli_adapter


# Global container instance
_container: Optional[DIContainer] = None


def get_container(config: Optional[ApplicationConfig] = None) -> DIContainer:
    """Get the global dependency injection container instance.

    Args:
        config: Optional configuration (only used on first call)

    Returns:
        Global container instance
    """
    global _container

    if _container is None:
        _container = DIContainer(config)
        logger.info("Created global dependency injection container")

    return _container


def reset_container() -> None:
    """Reset the global container (mainly for testing)."""
    global _container

    _container = None
    logger.info("Reset global dependency injection container")

"""Ensemble driving port (primary interface)."""

from abc import ABC, abstractmethod
from typing import Iterable, Iterator, List, Optional

from ...entities.ensemble import CheckName, CheckOutcome, EnsembleConfig, EnsembleSummary
from ...entities.polynomial import RootSet


class EnsemblePort(ABC):
    """Primary port for random ensembles and batch verification."""

    @abstractmethod
    def generate(self, config: EnsembleConfig) -> Iterator[RootSet]:
        """Deterministic stream of root sets for a config.

        Args:
            config: Ensemble configuration

        Returns:
            Iterator over ``config.count`` root sets
        """
        pass

    @abstractmethod
    def evaluate(
        self, roots: RootSet, checks: Iterable[CheckName], config: EnsembleConfig, index: int = 0
    ) -> List[CheckOutcome]:
        """Run the selected checks on one root set; failures are returned, not raised.

        Args:
            roots: Instance to check
            checks: Checks to run
            config: Provides tolerances, transforms and family context
            index: Instance index, seeds per-instance randomness

        Returns:
            One outcome per check label
        """
        pass

    @abstractmethod
    def run_suite(
        self,
        config: EnsembleConfig,
        checks: Iterable[CheckName],
        run_name: Optional[str] = None,
    ) -> EnsembleSummary:
        """Generate, check and persist a whole ensemble.

        Args:
            config: Ensemble configuration
            checks: Checks to run on every instance
            run_name: Optional subdirectory of the output directory

        Returns:
            Aggregated summary with the written file paths

        Raises:
            ReportWriteError: If a report file cannot be written
        """
        pass

"""Inequality check driving port (primary interface)."""

from abc import ABC, abstractmethod
from typing import Dict, Optional

from ...entities.circulant import Circulant
from ...entities.polynomial import RootSet
from ...entities.reports import CriticalPointResult, InequalityReport, PowerSums


class InequalityCheckPort(ABC):
    """Primary port for the scalar inequalities on critical points.

    Every check accepts an optional precomputed ``CriticalPointResult`` so a
    caller running several checks on one instance pays for one eigensolve.
    """

    @abstractmethod
    def power_sums(self, roots: RootSet) -> PowerSums:
        """s1, s2, m2, m4 of the roots."""
        pass

    @abstractmethod
    def schoenberg_check(
        self, roots: RootSet, critical: Optional[CriticalPointResult] = None
    ) -> InequalityReport:
        """sum |w|^2 <= |s1|^2/n^2 + (n-2)/n * m2."""
        pass

    @abstractmethod
    def quartic_general_check(
        self, roots: RootSet, critical: Optional[CriticalPointResult] = None
    ) -> InequalityReport:
        """sum |w|^4 against the five-term right-hand side."""
        pass

    @abstractmethod
    def quartic_centered_check(
        self, roots: RootSet, critical: Optional[CriticalPointResult] = None
    ) -> InequalityReport:
        """sum |w|^4 <= (n-4)/n m4 + m2^2/n^2 + |s2|^2/n^2 for centered roots.

        Raises:
            NonCenteredError: If |s1| exceeds the centering tolerance
        """
        pass

    @abstractmethod
    def debruin_sharma_check(
        self, roots: RootSet, critical: Optional[CriticalPointResult] = None
    ) -> InequalityReport:
        """sum |w|^4 <= (n-4)/n m4 + 2 m2^2/n^2 for centered roots.

        Raises:
            NonCenteredError: If |s1| exceeds the centering tolerance
        """
        pass

    @abstractmethod
    def schur_check(
        self, roots: RootSet, critical: Optional[CriticalPointResult] = None
    ) -> InequalityReport:
        """sum |w|^2 <= Tr(C_{n-1} C*_{n-1})."""
        pass

    @abstractmethod
    def trace_bb(self, circulant: Circulant) -> float:
        """Tr(B B~) from the closed-form trace formula."""
        pass

    @abstractmethod
    def collinearity(self, roots: RootSet, tol: Optional[float] = None) -> bool:
        """Whether all roots lie on one straight line."""
        pass

    @abstractmethod
    def proof_identities(self, roots: RootSet) -> Dict[str, float]:
        """Scaled residuals of the identities behind the inequalities.

        Returns:
            Mapping from identity name to residual divided by scale**order
        """
        pass

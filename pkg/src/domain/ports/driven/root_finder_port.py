"""Root finder driven port (secondary interface)."""

from abc import ABC, abstractmethod

from ...entities.polynomial import Polynomial, RootSet


class RootFinderPort(ABC):
    """Secondary port for the independent polynomial root oracle.

    Implementations never look at circulants; they are the second route
    against which the eigenvalue route is compared.
    """

    @abstractmethod
    def find_roots(self, polynomial: Polynomial, tol: float, max_iter: int) -> RootSet:
        """Compute all roots of a polynomial, counting multiplicity.

        Non-monic input is normalized by its leading coefficient first.

        Args:
            polynomial: Polynomial of degree at least 1
            tol: Relative stopping tolerance
            max_iter: Iteration budget

        Returns:
            Canonically ordered roots

        Raises:
            ValidationError: If the polynomial is constant
            ConvergenceError: If the iteration budget is exhausted
        """
        pass

"""Main application module for the circulant differentiator.

This module provides the command-line entry point and handles the wiring
of all dependencies using the dependency injection container.
"""

import logging
import sys
from typing import Optional, Sequence

from .container import get_container, reset_container, DIContainer
from .config import ApplicationConfig


logger = logging.getLogger(__name__)


class CirculantDifferentiatorApplication:
    """Main application class for the circulant differentiator.

    This class encapsulates the container and runs one command line
    through the CLI adapter.
    """

    def __init__(self, config: Optional[ApplicationConfig] = None):
        """Initialize the application.

        Args:
            config: Optional application configuration
        """
        self._container = get_container(config)

    @property
    def container(self) -> DIContainer:
        """Get the dependency injection container."""
        return self._container

    @property
    def config(self) -> ApplicationConfig:
        """Get the application configuration."""
        return self._container.config

    def run(self, argv: Optional[Sequence[str]] = None) -> int:
        """Execute one command line.

        Args:
            argv: Arguments without the program name (sys.argv[1:] when None)

        Returns:
            Process exit code
        """
        cli = self._container.get_cli_adapter()
        exit_code = cli.run(argv)
        logger.debug(f"Command finished with exit code {exit_code}")
        return exit_code

    def shutdown(self) -> None:
        """Release the global container."""
        reset_container()


def main(argv: Optional[Sequence[str]] = None) -> int:
    """Console entry point."""
    app = CirculantDifferentiatorApplication()
    try:
        return app.run(argv)
    finally:
        app.shutdown()


if __name__ == "__main__":
    sys.exit(main())

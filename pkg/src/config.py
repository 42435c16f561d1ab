"""Configuration management for the circulant differentiator application."""

import os
from dataclasses import dataclass, field
from typing import Optional

from .domain.entities.tolerances import ToleranceProfile


EIGENSOLVERS = ("qr", "lapack")
ROOT_FINDERS = ("aberth", "companion")


@dataclass
class SolverConfig:
    """Which adapters back the numerical ports."""
    eigensolver: str = "qr"
    root_finder: str = "aberth"


@dataclass
class EnsembleDefaults:
    """Defaults for ensemble runs."""
    seed: Optional[int] = None  # overrides --seed when set
    workers: int = 1
    output_dir: str = "circulant-reports"


@dataclass
class ApplicationConfig:
    """Main application configuration."""
    tolerances: ToleranceProfile = field(default_factory=ToleranceProfile)
    solvers: SolverConfig = field(default_factory=SolverConfig)
    ensemble: EnsembleDefaults = field(default_factory=EnsembleDefaults)
    debug: bool = False
    log_level: str = "WARNING"


def load_config() -> ApplicationConfig:
    """Load configuration from environment variables and defaults.

    Returns:
        Application configuration object
    """
    # Tolerance configuration
    tolerances = ToleranceProfile()
    base_tol = _get_float_env("CIRC_TOL", None)
    if base_tol is not None and base_tol > 0:
        tolerances = tolerances.with_base(base_tol)
    max_iter = _get_int_env("CIRC_ORACLE_MAX_ITER", tolerances.oracle_max_iter)
    if max_iter > 0:
        tolerances = ToleranceProfile.from_dict({"oracle_max_iter": max_iter}, tolerances)

    # Solver configuration
    solvers = SolverConfig(
        eigensolver=_get_choice_env("CIRC_EIGENSOLVER", EIGENSOLVERS, "qr"),
        root_finder=_get_choice_env("CIRC_ROOT_FINDER", ROOT_FINDERS, "aberth"),
    )

    # Ensemble configuration
    seed = os.getenv("CIRC_SEED")
    ensemble = EnsembleDefaults(
        seed=_get_int_env("CIRC_SEED", 0) if seed is not None else None,
        workers=max(1, _get_int_env("CIRC_WORKERS", 1)),
        output_dir=os.getenv("CIRC_OUTPUT_DIR", "circulant-reports"),
    )

    # Main application configuration
    return ApplicationConfig(
        tolerances=tolerances,
        solvers=solvers,
        ensemble=ensemble,
        debug=_get_bool_env("DEBUG", False),
        log_level=os.getenv("LOG_LEVEL", "WARNING"),
    )


def _get_bool_env(key: str, default: bool) -> bool:
    """Get boolean value from environment variable.

    Args:
        key: Environment variable key
        default: Default value if not found

    Returns:
        Boolean value
    """
    value = os.getenv(key)
    if value is None:
        return default

    return value.lower() in ("true", "1", "yes", "on")


def _get_int_env(key: str, default: int) -> int:
    """Get integer value from environment variable.

    Args:
        key: Environment variable key
        default: Default value if not found

    Returns:
        Integer value
    """
    value = os.getenv(key)
    if value is None:
        return default

    try:
        return int(value)
    except ValueError:
        return default


def _get_float_env(key: str, default: Optional[float]) -> Optional[float]:
    """Get float value from environment variable, ``default`` when unset or malformed."""
    value = os.getenv(key)
    if value is None:
        return default

    try:
        return float(value)
    except ValueError:
        return default


def _get_choice_env(key: str, choices: tuple, default: str) -> str:
    value = os.getenv(key)
    if value is None or value.lower() not in choices:
        return default
    return value.lower()

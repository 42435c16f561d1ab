"""Tolerance profile shared by the numerical services."""

from dataclasses import asdict, dataclass, fields, replace
from typing import Any, Dict

import numpy as np

from .base import ValidationError, ValueObject


@dataclass(frozen=True)
class ToleranceProfile(ValueObject):
    """Every threshold the checks use.

    Inequality thresholds are multiplied by scale**order at the call site,
    scale = max(1, max |lambda|).
    """

    oracle_tol: float = 1e-12
    oracle_max_iter: int = 500
    eig_tol: float = float(np.finfo(float).eps)
    hermitian_tol: float = 1e-10
    normality_tol: float = 1e-9
    collinearity_tol: float = 1e-8
    centered_tol: float = 1e-9
    selfadjoint_tol: float = 1e-10
    quadratic_pass: float = 1e-8
    quadratic_equality: float = 1e-7
    quartic_pass: float = 1e-7
    quartic_equality: float = 1e-6
    majorization_tol: float = 1e-8
    identity_tol: float = 1e-8
    match_tol: float = 1e-6
    rank_one_tol: float = 1e-10

    def __post_init__(self):
        self._validate()

    def _validate(self) -> None:
        for item in fields(self):
            value = getattr(self, item.name)
            if not value > 0:
                raise ValidationError(f"{item.name} must be positive", item.name)
        if self.quadratic_equality < self.quadratic_pass or self.quartic_equality < self.quartic_pass:
            raise ValidationError("equality thresholds must not be tighter than pass thresholds",
                                  "quadratic_equality")

    def pass_tolerance(self, order: int) -> float:
        return self.quadratic_pass if order == 2 else self.quartic_pass

    def equality_tolerance(self, order: int) -> float:
        return self.quadratic_equality if order == 2 else self.quartic_equality

    def with_base(self, tol: float) -> "ToleranceProfile":
        """Single-scalar override: pass thresholds become ``tol``, equality ``10 * tol``."""
        if not tol > 0:
            raise ValidationError("tolerance must be positive", "tol")
        return replace(
            self,
            quadratic_pass=tol,
            quadratic_equality=10 * tol,
            quartic_pass=tol,
            quartic_equality=10 * tol,
            majorization_tol=tol,
        )

    def to_dict(self) -> Dict[str, Any]:
        return asdict(self)

    @classmethod
    def from_dict(cls, data: Dict[str, Any], base: "ToleranceProfile" = None) -> "ToleranceProfile":
        """Override selected fields of ``base`` (defaults when None)."""
        known = {item.name for item in fields(cls)}
        unknown = set(data) - set(known)
        if unknown:
            raise ValidationError(f"unknown tolerance keys: {sorted(unknown)}", "tolerances")
        values = {
            key: int(value) if key == "oracle_max_iter" else float(value)
            for key, value in data.items()
        }
        return replace(base or cls(), **values)

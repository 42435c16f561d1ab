"""Result and verdict value objects produced by the checking services."""

import math
import re
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Dict, Optional

import numpy as np

from .base import ValidationError, ValueObject, complex_to_pair
from .circulant import Circulant
from .matrix import Spectrum, real_vector
from .polynomial import RootSet


@dataclass(frozen=True)
class PowerSums(ValueObject):
    """s1 = sum lambda, s2 = sum lambda^2, m2 = sum |lambda|^2, m4 = sum |lambda|^4."""

    s1: complex
    s2: complex
    m2: float
    m4: float
    n: int

    def __post_init__(self):
        self._validate()

    def _validate(self) -> None:
        if self.n < 1:
            raise ValidationError("n must be positive", "n")
        if self.m2 < 0 or self.m4 < 0:
            raise ValidationError("moment sums must be nonnegative", "m2")
        if self.m2 ** 2 > self.n * self.m4 * (1 + 1e-12) + 1e-300:
            raise ValidationError("m2^2 <= n*m4 violated", "m4")

    @classmethod
    def of(cls, roots: RootSet) -> "PowerSums":
        values = roots.roots
        moduli_sq = np.abs(values) ** 2
        return cls(
            s1=complex(np.sum(values)),
            s2=complex(np.sum(values ** 2)),
            m2=float(np.sum(moduli_sq)),
            m4=float(np.sum(moduli_sq ** 2)),
            n=len(roots),
        )

    def to_dict(self) -> Dict[str, Any]:
        return {
            "s1": complex_to_pair(self.s1),
            "s2": complex_to_pair(self.s2),
            "m2": self.m2,
            "m4": self.m4,
            "n": self.n,
        }


class InequalityName(Enum):
    """Scalar inequalities the library checks."""
    SCHOENBERG = "schoenberg"
    QUARTIC_GENERAL = "quartic_general"
    QUARTIC_CENTERED = "quartic_centered"
    DEBRUIN_SHARMA = "debruin_sharma"
    SCHUR = "schur"

    @property
    def order(self) -> int:
        """Homogeneity degree of both sides."""
        if self in (InequalityName.SCHOENBERG, InequalityName.SCHUR):
            return 2
        return 4


@dataclass(frozen=True)
class InequalityReport(ValueObject):
    """Verdict for lhs <= rhs with equality and collinearity flags."""

    name: InequalityName
    lhs: float
    rhs: float
    slack: float
    equality: bool
    collinear: bool
    passed: bool
    tolerance: float = 0.0

    @property
    def order(self) -> int:
        return self.name.order

    @property
    def anomaly(self) -> bool:
        """Equality attained by roots that are not collinear."""
        return self.equality and not self.collinear

    def to_dict(self) -> Dict[str, Any]:
        return {
            "name": self.name.value,
            "lhs": self.lhs,
            "rhs": self.rhs,
            "slack": self.slack,
            "equality": self.equality,
            "collinear": self.collinear,
            "passed": self.passed,
            "anomaly": self.anomaly,
        }


class PhiKind(Enum):
    """Supported increasing transforms with convex Phi(exp(t))."""
    IDENTITY = "identity"
    POWER = "power"
    SHIFTED_LOG = "shifted_log"


_PHI_PATTERN = re.compile(r"^\s*(identity|power|shifted_log)\s*(?:[(:]\s*([0-9.eE+-]+)\s*\)?)?\s*$")


@dataclass(frozen=True)
class PhiTransform(ValueObject):
    """Phi applied entrywise before a majorization comparison."""

    kind: PhiKind = PhiKind.IDENTITY
    parameter: float = 1.0

    def __post_init__(self):
        self._validate()

    def _validate(self) -> None:
        if not isinstance(self.kind, PhiKind):
            raise ValidationError("kind must be a valid PhiKind", "kind")
        if self.kind is not PhiKind.IDENTITY and not (self.parameter > 0 and math.isfinite(self.parameter)):
            raise ValidationError(f"{self.kind.value} needs a positive parameter", "parameter")

    @classmethod
    def identity(cls) -> "PhiTransform":
        return cls(PhiKind.IDENTITY)

    @classmethod
    def power(cls, p: float) -> "PhiTransform":
        return cls(PhiKind.POWER, float(p))

    @classmethod
    def shifted_log(cls, epsilon: float) -> "PhiTransform":
        return cls(PhiKind.SHIFTED_LOG, float(epsilon))

    @classmethod
    def parse(cls, text: str) -> "PhiTransform":
        """Parse ``identity``, ``power(2)``, ``power:2`` or ``shifted_log(0.1)``."""
        match = _PHI_PATTERN.match(text)
        if not match:
            raise ValidationError(f"unknown transform {text!r}", "phi")
        kind = PhiKind(match.group(1))
        if kind is PhiKind.IDENTITY:
            return cls.identity()
        if match.group(2) is None:
            raise ValidationError(f"{kind.value} needs a parameter", "phi")
        try:
            return cls(kind, float(match.group(2)))
        except ValueError:
            raise ValidationError(f"bad parameter in {text!r}", "phi")

    @property
    def label(self) -> str:
        if self.kind is PhiKind.IDENTITY:
            return "identity"
        return f"{self.kind.value}({self.parameter:g})"

    def apply(self, values: Any) -> np.ndarray:
        t = np.asarray(values, dtype=float)
        if self.kind is PhiKind.POWER:
            return np.power(np.maximum(t, 0.0), self.parameter)
        if self.kind is PhiKind.SHIFTED_LOG:
            return np.log(np.maximum(t, 0.0) + self.parameter)
        return t.copy()


@dataclass(frozen=True, eq=False)
class MajorizationReport(ValueObject):
    """Weak majorization of ``left`` by ``right`` (both sorted descending)."""

    left: Any
    right: Any
    prefix_slacks: Any
    holds: bool
    strong: bool
    name: str = "weak"
    tolerance: float = 0.0
    details: Dict[str, float] = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "left", real_vector(self.left))
        object.__setattr__(self, "right", real_vector(self.right))
        object.__setattr__(self, "prefix_slacks", real_vector(self.prefix_slacks))

    @property
    def min_slack(self) -> float:
        return float(np.min(self.prefix_slacks)) if self.prefix_slacks.size else 0.0

    def with_name(self, name: str, details: Optional[Dict[str, float]] = None) -> "MajorizationReport":
        return MajorizationReport(
            left=self.left,
            right=self.right,
            prefix_slacks=self.prefix_slacks,
            holds=self.holds,
            strong=self.strong,
            name=name,
            tolerance=self.tolerance,
            details=dict(details or self.details),
        )

    def to_dict(self) -> Dict[str, Any]:
        return {
            "name": self.name,
            "left": self.left.tolist(),
            "right": self.right.tolist(),
            "prefix_slacks": self.prefix_slacks.tolist(),
            "holds": self.holds,
            "strong": self.strong,
            "details": dict(self.details),
        }


@dataclass(frozen=True, eq=False)
class CriticalPointResult(ValueObject):
    """Eigenvalues of C_{n-1} together with the circulant that produced them."""

    critical_points: Spectrum
    circulant_used: Circulant
    verification_residual: float

    def __post_init__(self):
        if len(self.critical_points) != self.circulant_used.n - 1:
            raise ValidationError(
                f"expected {self.circulant_used.n - 1} critical points, got {len(self.critical_points)}",
                "critical_points",
            )

    @property
    def values(self) -> np.ndarray:
        return self.critical_points.values

    def to_dict(self) -> Dict[str, Any]:
        residual = self.verification_residual
        return {
            "critical_points": [complex_to_pair(w) for w in self.critical_points.values],
            "verification_residual": None if math.isnan(residual) else residual,
        }

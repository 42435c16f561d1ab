"""Ensemble configuration, per-check outcomes and aggregated summaries."""

import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Dict, Iterable, List, Optional, Tuple

from .base import ValidationError, ValueObject, complex_to_pair, pair_to_complex
from .reports import PhiTransform
from .tolerances import ToleranceProfile


MAX_DEGREE = 64
MAX_SEED = 2 ** 64


class RootFamily(Enum):
    """Random root-set families."""
    GAUSSIAN = "gaussian"
    UNIT_CIRCLE = "unit_circle"
    COLLINEAR = "collinear"
    REAL_POSITIVE = "real_positive"
    MULTIPLE_ROOTS = "multiple_roots"
    NEAR_COLLINEAR = "near_collinear"

    @classmethod
    def parse(cls, text: str) -> "RootFamily":
        try:
            return cls(text.strip().lower().replace("-", "_"))
        except ValueError:
            raise ValidationError(f"unknown family {text!r}", "family")


class CheckName(Enum):
    """Checks the ensemble runner and the CLI can evaluate per instance."""
    SCHOENBERG = "schoenberg"
    QUARTIC_GENERAL = "quartic_general"
    QUARTIC_CENTERED = "quartic_centered"
    DEBRUIN_SHARMA = "debruin_sharma"
    SCHUR = "schur"
    KYFAN = "kyfan"
    THM12 = "thm12"
    THM13 = "thm13"
    WEYL = "weyl"
    DERIVATIVE_IDENTITY = "derivative_identity"
    NORMALITY_EQUIVALENCE = "normality_equivalence"
    ORACLE = "oracle"
    PERTURBATION = "perturbation"
    TRACE_IDENTITIES = "trace_identities"

    @classmethod
    def parse_list(cls, text: str) -> Tuple["CheckName", ...]:
        """Parse a comma-separated list; ``all`` selects every check."""
        tokens = [t.strip().lower().replace("-", "_") for t in text.split(",") if t.strip()]
        if not tokens:
            raise ValidationError("no checks selected", "checks")
        if "all" in tokens:
            return tuple(cls)
        selected = []
        for token in tokens:
            try:
                check = cls(token)
            except ValueError:
                raise ValidationError(f"unknown check {token!r}", "checks")
            if check not in selected:
                selected.append(check)
        return tuple(selected)


DEFAULT_PHIS = (PhiTransform.identity(), PhiTransform.power(2.0), PhiTransform.power(4.0))


@dataclass(frozen=True)
class EnsembleConfig(ValueObject):
    """What to generate and how to judge it."""

    family: RootFamily = RootFamily.GAUSSIAN
    degree_range: Tuple[int, int] = (2, 8)
    count: int = 100
    seed: int = 0
    sigma: float = 1.0
    alpha: Optional[complex] = None
    beta: Optional[complex] = None
    positive_range: Tuple[float, float] = (0.1, 10.0)
    pattern: Tuple[int, ...] = (2, 1)
    noise: float = 1e-3
    equispaced: bool = False
    centered: bool = False
    phis: Tuple[PhiTransform, ...] = DEFAULT_PHIS
    tolerances: ToleranceProfile = field(default_factory=ToleranceProfile)

    def __post_init__(self):
        self._validate()

    def _validate(self) -> None:
        if not isinstance(self.family, RootFamily):
            raise ValidationError("family must be a valid RootFamily", "family")
        if self.count < 1:
            raise ValidationError("count must be at least 1", "count")
        low, high = self.degree_range
        if not 2 <= low <= high <= MAX_DEGREE:
            raise ValidationError(
                f"degree range must satisfy 2 <= min <= max <= {MAX_DEGREE}, got {low}..{high}",
                "degree_range",
            )
        if not 0 <= self.seed < MAX_SEED:
            raise ValidationError("seed must be a 64-bit unsigned integer", "seed")
        if not self.sigma > 0:
            raise ValidationError("sigma must be positive", "sigma")
        lo, hi = self.positive_range
        if not 0 < lo < hi:
            raise ValidationError("positive range must satisfy 0 < low < high", "positive_range")
        if not self.pattern or any(m < 1 for m in self.pattern):
            raise ValidationError("multiplicity pattern entries must be >= 1", "pattern")
        if self.noise < 0:
            raise ValidationError("noise must be nonnegative", "noise")
        if not self.phis:
            raise ValidationError("at least one transform is required", "phis")

    def to_dict(self) -> Dict[str, Any]:
        return {
            "family": self.family.value,
            "degree_range": list(self.degree_range),
            "count": self.count,
            "seed": self.seed,
            "sigma": self.sigma,
            "alpha": None if self.alpha is None else complex_to_pair(self.alpha),
            "beta": None if self.beta is None else complex_to_pair(self.beta),
            "positive_range": list(self.positive_range),
            "pattern": list(self.pattern),
            "noise": self.noise,
            "equispaced": self.equispaced,
            "centered": self.centered,
            "phis": [phi.label for phi in self.phis],
        }

    @classmethod
    def from_dict(cls, data: Dict[str, Any], tolerances: Optional[ToleranceProfile] = None) -> "EnsembleConfig":
        """Build a config from a JSON object; missing keys keep their defaults."""
        kwargs: Dict[str, Any] = {}
        if "family" in data:
            kwargs["family"] = RootFamily.parse(str(data["family"]))
        if "degree_range" in data:
            low, high = data["degree_range"]
            kwargs["degree_range"] = (int(low), int(high))
        for key in ("count", "seed"):
            if key in data:
                kwargs[key] = int(data[key])
        for key in ("sigma", "noise"):
            if key in data:
                kwargs[key] = float(data[key])
        for key in ("alpha", "beta"):
            if data.get(key) is not None:
                kwargs[key] = pair_to_complex(data[key])
        if "positive_range" in data:
            lo, hi = data["positive_range"]
            kwargs["positive_range"] = (float(lo), float(hi))
        if "pattern" in data:
            kwargs["pattern"] = tuple(int(m) for m in data["pattern"])
        for key in ("equispaced", "centered"):
            if key in data:
                kwargs[key] = bool(data[key])
        if "phis" in data:
            kwargs["phis"] = tuple(PhiTransform.parse(str(p)) for p in data["phis"])
        base = tolerances or ToleranceProfile()
        if "tolerances" in data:
            base = ToleranceProfile.from_dict(data["tolerances"], base)
        kwargs["tolerances"] = base
        return cls(**kwargs)


class CheckStatus(Enum):
    PASSED = "passed"
    FAILED = "failed"
    SKIPPED = "skipped"


@dataclass(frozen=True)
class CheckOutcome(ValueObject):
    """One check evaluated on one instance."""

    label: str
    status: CheckStatus
    slack: Optional[float] = None
    residual: Optional[float] = None
    equality: bool = False
    anomaly: bool = False
    message: str = ""
    payload: Dict[str, Any] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.status is CheckStatus.PASSED

    def to_dict(self) -> Dict[str, Any]:
        data: Dict[str, Any] = {"status": self.status.value}
        if self.slack is not None:
            data["slack"] = _finite_or_none(self.slack)
        if self.residual is not None:
            data["residual"] = _finite_or_none(self.residual)
        data["equality"] = self.equality
        data["anomaly"] = self.anomaly
        if self.message:
            data["message"] = self.message
        data.update(self.payload)
        return data


def _finite_or_none(value: float) -> Optional[float]:
    return value if math.isfinite(value) else None


@dataclass
class CheckTally:
    """Running statistics for one check label."""

    passed: int = 0
    failed: int = 0
    skipped: int = 0
    min_slack: float = math.inf
    max_residual: float = 0.0
    equality_cases: int = 0
    anomalies: List[int] = field(default_factory=list)
    failures: List[int] = field(default_factory=list)

    @property
    def evaluated(self) -> int:
        return self.passed + self.failed

    def record(self, index: int, outcome: CheckOutcome) -> None:
        if outcome.status is CheckStatus.SKIPPED:
            self.skipped += 1
            return
        if outcome.passed:
            self.passed += 1
        else:
            self.failed += 1
            self.failures.append(index)
        if outcome.slack is not None and not math.isnan(outcome.slack):
            self.min_slack = min(self.min_slack, outcome.slack)
        if outcome.residual is not None and not math.isnan(outcome.residual):
            self.max_residual = max(self.max_residual, abs(outcome.residual))
        if outcome.equality:
            self.equality_cases += 1
        if outcome.anomaly:
            self.anomalies.append(index)

    def merge(self, other: "CheckTally") -> "CheckTally":
        """Combine two tallies; associative and order-preserving on index lists."""
        return CheckTally(
            passed=self.passed + other.passed,
            failed=self.failed + other.failed,
            skipped=self.skipped + other.skipped,
            min_slack=min(self.min_slack, other.min_slack),
            max_residual=max(self.max_residual, other.max_residual),
            equality_cases=self.equality_cases + other.equality_cases,
            anomalies=sorted(self.anomalies + other.anomalies),
            failures=sorted(self.failures + other.failures),
        )

    def to_dict(self) -> Dict[str, Any]:
        return {
            "pass": self.passed,
            "fail": self.failed,
            "skipped": self.skipped,
            "min_slack": _finite_or_none(self.min_slack),
            "max_residual": self.max_residual,
            "equality_cases": self.equality_cases,
            "anomalies": list(self.anomalies),
            "failures": list(self.failures),
        }


@dataclass
class EnsembleSummary:
    """Per-check tallies over one ensemble run."""

    instance_count: int = 0
    tallies: Dict[str, CheckTally] = field(default_factory=dict)
    records_path: Optional[str] = None
    summary_path: Optional[str] = None

    def record(self, index: int, outcomes: Iterable[CheckOutcome]) -> None:
        self.instance_count += 1
        for outcome in outcomes:
            self.tallies.setdefault(outcome.label, CheckTally()).record(index, outcome)

    def merge(self, other: "EnsembleSummary") -> "EnsembleSummary":
        tallies = {label: tally for label, tally in self.tallies.items()}
        for label, tally in other.tallies.items():
            tallies[label] = tallies[label].merge(tally) if label in tallies else tally
        return EnsembleSummary(
            instance_count=self.instance_count + other.instance_count,
            tallies=tallies,
            records_path=self.records_path or other.records_path,
            summary_path=self.summary_path or other.summary_path,
        )

    @property
    def total_failures(self) -> int:
        return sum(t.failed for t in self.tallies.values())

    @property
    def total_anomalies(self) -> int:
        return sum(len(t.anomalies) for t in self.tallies.values())

    def rows(self) -> List[Dict[str, Any]]:
        """Flat rows for the CSV summary, sorted by check label."""
        rows = []
        for label in sorted(self.tallies):
            tally = self.tallies[label]
            rows.append({
                "check": label,
                "pass": tally.passed,
                "fail": tally.failed,
                "skipped": tally.skipped,
                "min_slack": "" if not math.isfinite(tally.min_slack) else repr(tally.min_slack),
                "max_residual": repr(tally.max_residual),
                "equality_cases": tally.equality_cases,
                "anomalies": len(tally.anomalies),
            })
        return rows

    def to_dict(self) -> Dict[str, Any]:
        return {
            "instances": self.instance_count,
            "checks": {label: self.tallies[label].to_dict() for label in sorted(self.tallies)},
            "records": self.records_path,
            "summary": self.summary_path,
            "failures": self.total_failures,
            "anomalies": self.total_anomalies,
        }

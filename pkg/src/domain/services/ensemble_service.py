"""Ensemble service: random root families and batch verification."""

import logging
from concurrent.futures import ThreadPoolExecutor
from typing import Any, Dict, Iterable, Iterator, List, Optional, Tuple

import numpy as np

from ..ports.driving.differentiator_port import DifferentiatorPort
from ..ports.driving.ensemble_port import EnsemblePort
from ..ports.driving.inequality_check_port import InequalityCheckPort
from ..ports.driving.majorization_check_port import MajorizationCheckPort
from ..ports.driven.report_writer_port import ReportWriterPort
from ..entities.base import DomainError, NonCenteredError, complex_to_pair
from ..entities.ensemble import (
    CheckName,
    CheckOutcome,
    CheckStatus,
    EnsembleConfig,
    EnsembleSummary,
    RootFamily,
)
from ..entities.polynomial import RootSet
from ..entities.reports import CriticalPointResult, InequalityReport, MajorizationReport


logger = logging.getLogger(__name__)

# Above this degree the coefficient-route checks lose the accuracy they assert.
COEFFICIENT_ROUTE_MAX_DEGREE = 20


def _inequality_outcome(report: InequalityReport, passed: Optional[bool] = None) -> CheckOutcome:
    ok = report.passed if passed is None else passed
    return CheckOutcome(
        label=report.name.value,
        status=CheckStatus.PASSED if ok else CheckStatus.FAILED,
        slack=report.slack,
        equality=report.equality,
        anomaly=report.anomaly,
        payload={"lhs": report.lhs, "rhs": report.rhs, "collinear": report.collinear},
    )


def _majorization_outcome(
    report: MajorizationReport, residual: Optional[float] = None, passed: Optional[bool] = None
) -> CheckOutcome:
    ok = report.holds if passed is None else passed
    return CheckOutcome(
        label=report.name,
        status=CheckStatus.PASSED if ok else CheckStatus.FAILED,
        slack=report.min_slack,
        residual=residual,
        equality=report.strong,
        payload={"details": dict(report.details)} if report.details else {},
    )


def _residual_outcome(label: str, residual: float, tolerance: float) -> CheckOutcome:
    return CheckOutcome(
        label=label,
        status=CheckStatus.PASSED if residual <= tolerance else CheckStatus.FAILED,
        residual=residual,
    )


def _skipped(label: str, message: str) -> CheckOutcome:
    return CheckOutcome(label=label, status=CheckStatus.SKIPPED, message=message)


class EnsembleService(EnsemblePort):
    """Domain service implementing EnsemblePort.

    Instances come from numpy's PCG64 generator seeded with the config
    seed; per-instance randomness (the perturbation check) is seeded with
    (seed, index) so it does not depend on evaluation order.
    """

    def __init__(
        self,
        differentiator: DifferentiatorPort,
        inequality: InequalityCheckPort,
        majorization: MajorizationCheckPort,
        report_writer: ReportWriterPort,
        workers: int = 1,
    ):
        """Initialize the ensemble service.

        Args:
            differentiator: Critical point port
            inequality: Scalar inequality port
            majorization: Majorization port
            report_writer: Port persisting records and summaries
            workers: Thread count for instance evaluation
        """
        self._differentiator = differentiator
        self._inequality = inequality
        self._majorization = majorization
        self._report_writer = report_writer
        self._workers = max(1, int(workers))

    # Generation

    @staticmethod
    def collinear_roots(t: np.ndarray, alpha: complex, beta: complex) -> RootSet:
        """Roots alpha * t_j + beta for real t_j."""
        return RootSet(complex(alpha) * np.asarray(t, dtype=float) + complex(beta))

    @staticmethod
    def multiplicities(pattern: Tuple[int, ...], n: int) -> List[int]:
        """Cycle the pattern until the total reaches n, truncating the last entry."""
        counts: List[int] = []
        total = 0
        index = 0
        while total < n:
            m = min(pattern[index % len(pattern)], n - total)
            counts.append(m)
            total += m
            index += 1
        return counts

    def generate(self, config: EnsembleConfig) -> Iterator[RootSet]:
        rng = np.random.default_rng(config.seed)
        low, high = config.degree_range
        for _ in range(config.count):
            n = int(rng.integers(low, high + 1))
            roots = self._draw(config, rng, n)
            yield roots.centered() if config.centered else roots

    def _draw(self, config: EnsembleConfig, rng: np.random.Generator, n: int) -> RootSet:
        family = config.family
        if family is RootFamily.GAUSSIAN:
            return RootSet(config.sigma * (rng.standard_normal(n) + 1j * rng.standard_normal(n)))

        if family is RootFamily.UNIT_CIRCLE:
            if config.equispaced:
                angles = 2.0 * np.pi * np.arange(n) / n
            else:
                angles = rng.uniform(0.0, 2.0 * np.pi, n)
            return RootSet(np.exp(1j * angles))

        if family in (RootFamily.COLLINEAR, RootFamily.NEAR_COLLINEAR):
            alpha, beta = self._line(config, rng)
            if config.equispaced:
                t = np.linspace(-1.0, 1.0, n)
            else:
                t = config.sigma * rng.standard_normal(n)
            if family is RootFamily.COLLINEAR:
                return self.collinear_roots(t, alpha, beta)
            offsets = config.noise * rng.standard_normal(n)
            return RootSet(alpha * (t + 1j * offsets) + beta)

        if family is RootFamily.REAL_POSITIVE:
            lo, hi = config.positive_range
            return RootSet(rng.uniform(lo, hi, n).astype(complex))

        counts = self.multiplicities(config.pattern, n)
        distinct = config.sigma * (rng.standard_normal(len(counts)) + 1j * rng.standard_normal(len(counts)))
        return RootSet(np.repeat(distinct, counts))

    @staticmethod
    def _line(config: EnsembleConfig, rng: np.random.Generator) -> Tuple[complex, complex]:
        """Direction and offset: the configured values, else a random unit direction and Gaussian offset."""
        alpha = config.alpha
        if alpha is None:
            alpha = complex(np.exp(1j * rng.uniform(0.0, 2.0 * np.pi)))
        beta = config.beta
        if beta is None:
            beta = complex(config.sigma * rng.standard_normal(), config.sigma * rng.standard_normal())
        return complex(alpha), complex(beta)

    # Evaluation

    def evaluate(
        self, roots: RootSet, checks: Iterable[CheckName], config: EnsembleConfig, index: int = 0
    ) -> List[CheckOutcome]:
        checks = tuple(checks)
        try:
            critical = self._differentiator.critical_points(roots)
        except DomainError as e:
            logger.warning(f"Instance {index}: critical points failed: {e}")
            return [CheckOutcome(label=c.value, status=CheckStatus.FAILED, message=str(e)) for c in checks]

        outcomes: List[CheckOutcome] = []
        for check in checks:
            try:
                outcomes.extend(self._run_check(check, roots, critical, config, index))
            except NonCenteredError as e:
                outcomes.append(_skipped(check.value, str(e)))
            except DomainError as e:
                logger.warning(f"Instance {index}: {check.value} raised {e}")
                outcomes.append(CheckOutcome(label=check.value, status=CheckStatus.FAILED, message=str(e)))
        return outcomes

    def _run_check(
        self,
        check: CheckName,
        roots: RootSet,
        critical: CriticalPointResult,
        config: EnsembleConfig,
        index: int,
    ) -> List[CheckOutcome]:
        tolerances = config.tolerances
        scale = roots.scale
        n = len(roots)
        inequality = self._inequality
        majorization = self._majorization

        if check is CheckName.SCHOENBERG:
            return [_inequality_outcome(inequality.schoenberg_check(roots, critical))]
        if check is CheckName.QUARTIC_GENERAL:
            return [_inequality_outcome(inequality.quartic_general_check(roots, critical))]
        if check is CheckName.QUARTIC_CENTERED:
            return [_inequality_outcome(inequality.quartic_centered_check(roots, critical))]
        if check is CheckName.DEBRUIN_SHARMA:
            centered = inequality.quartic_centered_check(roots, critical)
            report = inequality.debruin_sharma_check(roots, critical)
            margin = tolerances.quartic_pass * scale ** 4
            chain = centered.lhs <= centered.rhs + margin and centered.rhs <= report.rhs + margin
            outcome = _inequality_outcome(report, passed=report.passed and chain)
            outcome.payload["centered_rhs"] = centered.rhs
            return [outcome]
        if check is CheckName.SCHUR:
            return [_inequality_outcome(inequality.schur_check(roots, critical))]

        if check is CheckName.KYFAN:
            report = majorization.kyfan_check(roots, critical)
            cross = report.details.get("cross_check", 0.0)
            return [_majorization_outcome(
                report, residual=cross, passed=report.holds and cross <= tolerances.match_tol * scale
            )]
        if check is CheckName.THM12:
            return [
                _majorization_outcome(majorization.thm12_check(roots, phi, critical))
                for phi in config.phis
            ]
        if check is CheckName.THM13:
            if not roots.is_real(tolerances.hermitian_tol) or np.any(roots.roots.real <= 0):
                return [_skipped(check.value, "roots are not real and positive")]
            return [
                _majorization_outcome(majorization.thm13_check(roots, phi))
                for phi in config.phis
            ]
        if check is CheckName.WEYL:
            report = majorization.weyl_domination_report(roots)
            details = report.details
            rank_one = (
                details["second_singular_value"] <= tolerances.rank_one_tol
                and details["min_eigenvalue"] >= -tolerances.rank_one_tol
                and details["outer_product_residual"] <= tolerances.rank_one_tol
            )
            return [_majorization_outcome(
                report, residual=details["second_singular_value"], passed=report.holds and rank_one
            )]

        if check is CheckName.DERIVATIVE_IDENTITY:
            if n > COEFFICIENT_ROUTE_MAX_DEGREE:
                return [_skipped(check.value, f"degree above {COEFFICIENT_ROUTE_MAX_DEGREE}")]
            return [_residual_outcome(check.value, critical.verification_residual, tolerances.identity_tol)]
        if check is CheckName.NORMALITY_EQUIVALENCE:
            normal, collinear = self._differentiator.normality_equivalence(roots)
            return [CheckOutcome(
                label=check.value,
                status=CheckStatus.PASSED if normal == collinear else CheckStatus.FAILED,
                payload={"normal": normal, "collinear": collinear},
            )]
        if check is CheckName.ORACLE:
            matching = self._differentiator.oracle_distance(roots, critical)
            return [_residual_outcome(check.value, matching.max_distance / scale, tolerances.match_tol)]
        if check is CheckName.PERTURBATION:
            if n > COEFFICIENT_ROUTE_MAX_DEGREE:
                return [_skipped(check.value, f"degree above {COEFFICIENT_ROUTE_MAX_DEGREE}")]
            rng = np.random.default_rng([config.seed, index])
            alpha = complex(rng.standard_normal(), rng.standard_normal()) * scale
            outcome = _residual_outcome(
                check.value, self._differentiator.perturbation_residual(roots, alpha), tolerances.identity_tol
            )
            outcome.payload["alpha"] = complex_to_pair(alpha)
            return [outcome]

        identities = inequality.proof_identities(roots)
        outcome = _residual_outcome(check.value, max(identities.values()), tolerances.identity_tol)
        outcome.payload["identities"] = identities
        return [outcome]

    # Batch

    def run_suite(
        self,
        config: EnsembleConfig,
        checks: Iterable[CheckName],
        run_name: Optional[str] = None,
    ) -> EnsembleSummary:
        checks = tuple(checks)
        logger.info(
            f"Running {config.count} {config.family.value} instances "
            f"(seed {config.seed}, checks {','.join(c.value for c in checks)})"
        )
        self._report_writer.open_run(run_name)
        summary = EnsembleSummary()
        closed = False
        try:
            instances = list(self.generate(config))

            def task(i: int) -> List[CheckOutcome]:
                return self.evaluate(instances[i], checks, config, i)

            if self._workers > 1:
                with ThreadPoolExecutor(max_workers=self._workers) as pool:
                    results = list(pool.map(task, range(len(instances))))
            else:
                results = [task(i) for i in range(len(instances))]

            for index, (roots, outcomes) in enumerate(zip(instances, results)):
                self._report_writer.write_record(self._record(index, roots, outcomes))
                summary.record(index, outcomes)

            self._report_writer.close_run(summary)
            closed = True
        finally:
            if not closed:
                self._report_writer.abort_run()
        logger.info(
            f"Ensemble finished: {summary.total_failures} failures, {summary.total_anomalies} anomalies"
        )
        return summary

    @staticmethod
    def _record(index: int, roots: RootSet, outcomes: List[CheckOutcome]) -> Dict[str, Any]:
        return {
            "index": index,
            "degree": len(roots),
            "roots": [complex_to_pair(z) for z in roots.roots],
            "checks": {outcome.label: outcome.to_dict() for outcome in outcomes},
        }

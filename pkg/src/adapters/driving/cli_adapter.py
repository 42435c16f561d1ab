"""Command-line adapter (driving adapter)."""

import argparse
import json
import sys
from dataclasses import dataclass
from typing import Any, Callable, Dict, IO, List, Optional, Sequence

from ...config import EIGENSOLVERS, ROOT_FINDERS, ApplicationConfig
from ...domain.ports.driving.differentiator_port import DifferentiatorPort
from ...domain.ports.driving.ensemble_port import EnsemblePort
from ...domain.ports.driving.inequality_check_port import InequalityCheckPort
from ...domain.ports.driving.majorization_check_port import MajorizationCheckPort
from ...domain.ports.driven.report_writer_port import ReportWriteError
from ...domain.entities.base import DomainError, NumericalError, ValidationError, pair_to_complex
from ...domain.entities.circulant import Circulant
from ...domain.entities.ensemble import DEFAULT_PHIS, CheckName, CheckStatus, EnsembleConfig
from ...domain.entities.polynomial import Polynomial, RootSet
from ...domain.entities.reports import PhiTransform
from ...domain.entities.tolerances import ToleranceProfile
from ...utils import logger


EXIT_OK = 0
EXIT_USAGE = 2
EXIT_NUMERICAL = 3
EXIT_CHECK_FAILED = 4

VIEWS = ("circulant", "submatrix", "gram", "b", "btilde", "sqrt_gram")
# Options whose values may start with "-" (e.g. --coeffs "-1,0,0,1").
SIGNED_VALUE_OPTIONS = ("--roots", "--coeffs", "--alpha", "--beta")


@dataclass
class ServiceBundle:
    """The driving ports one command talks to."""
    differentiator: DifferentiatorPort
    inequality: InequalityCheckPort
    majorization: MajorizationCheckPort
    ensemble: EnsemblePort


# factory(tolerances=..., eigensolver=..., root_finder=..., output_dir=..., workers=...)
ServiceFactory = Callable[..., ServiceBundle]


def parse_inline_complex_list(text: str, field: str) -> List[complex]:
    """Parse ``"1, 2+3i, -i"``: comma-separated ``a``, ``bi`` or ``a+bi`` entries."""
    entries = [entry.strip() for entry in text.split(",")]
    if not text.strip() or any(not entry for entry in entries):
        raise ValidationError(f"empty entry in {field} list {text!r}", field)
    try:
        return [pair_to_complex(entry) for entry in entries]
    except ValidationError as e:
        raise ValidationError(e.message, field)


def parse_range(text: str, field: str, kind: Callable[[str], Any]) -> tuple:
    """Parse ``"lo..hi"``; a single value gives ``(v, v)``."""
    parts = text.split("..")
    try:
        if len(parts) == 1:
            value = kind(parts[0].strip())
            return value, value
        if len(parts) == 2:
            return kind(parts[0].strip()), kind(parts[1].strip())
    except ValueError:
        pass
    raise ValidationError(f"cannot parse {field} range {text!r}; expected min..max", field)


def attach_signed_values(argv: Sequence[str]) -> List[str]:
    """Rewrite ``--coeffs -1,0,1`` as ``--coeffs=-1,0,1`` so argparse keeps the value."""
    result: List[str] = []
    tokens = list(argv)
    index = 0
    while index < len(tokens):
        token = tokens[index]
        if token in SIGNED_VALUE_OPTIONS and index + 1 < len(tokens):
            result.append(f"{token}={tokens[index + 1]}")
            index += 2
            continue
        result.append(token)
        index += 1
    return result


def load_json_file(path: str, field: str) -> Dict[str, Any]:
    try:
        with open(path, "r", encoding="utf-8") as f:
            data = json.load(f)
    except OSError as e:
        raise ValidationError(f"cannot read {path}: {e.strerror or e}", field)
    except json.JSONDecodeError as e:
        raise ValidationError(f"invalid JSON in {path}: {e}", field)
    if not isinstance(data, dict):
        raise ValidationError(f"{path} must contain a JSON object", field)
    return data


class CLIAdapter:
    """Driving adapter that translates command lines to domain operations.

    Exit codes: 0 success, 2 usage or parse error, 3 numerical failure,
    4 a selected check failed. Results go to stdout as JSON, diagnostics
    to stderr.
    """

    def __init__(
        self,
        service_factory: ServiceFactory,
        config: Optional[ApplicationConfig] = None,
        stdout: Optional[IO[str]] = None,
    ):
        """Initialize the CLI adapter.

        Args:
            service_factory: Builds the driving ports for one command's settings
            config: Application configuration (defaults when None)
            stdout: Stream for JSON results (sys.stdout when None)
        """
        self._service_factory = service_factory
        self._config = config or ApplicationConfig()
        self._stdout = stdout

    def build_parser(self) -> argparse.ArgumentParser:
        parser = argparse.ArgumentParser(
            prog="circulant-differentiator",
            description="Critical points of polynomials as eigenvalues of a circulant submatrix.",
        )
        subparsers = parser.add_subparsers(dest="command", required=True)

        def add_input(sub: argparse.ArgumentParser) -> None:
            group = sub.add_mutually_exclusive_group(required=True)
            group.add_argument("--roots", help='comma-separated roots, e.g. "1, 2+3i, -i"')
            group.add_argument("--coeffs", help="comma-separated ascending coefficients a_0,...,a_n")
            group.add_argument("--input", help='JSON file with {"roots": ...} or {"coeffs": ...}')

        def add_solvers(sub: argparse.ArgumentParser) -> None:
            sub.add_argument("--eigensolver", choices=EIGENSOLVERS, default=None)
            sub.add_argument("--root-finder", dest="root_finder", choices=ROOT_FINDERS, default=None)
            sub.add_argument("--tol", type=float, default=None, help="base tolerance for all checks")
            sub.add_argument("--config", default=None, help="JSON file with tolerance/ensemble overrides")

        critical = subparsers.add_parser("critical", help="critical points via the circulant route")
        add_input(critical)
        add_solvers(critical)

        verify = subparsers.add_parser("verify", help="run checks on one polynomial")
        add_input(verify)
        add_solvers(verify)
        verify.add_argument("--checks", default="all", help="comma-separated check names or 'all'")
        verify.add_argument("--phi", action="append", default=None,
                            help="transform for thm12/thm13, e.g. power(2); repeatable")

        ensemble = subparsers.add_parser("ensemble", help="run checks on a random ensemble")
        add_solvers(ensemble)
        ensemble.add_argument("--checks", default=None)
        ensemble.add_argument("--family", default=None)
        ensemble.add_argument("--count", type=int, default=None)
        ensemble.add_argument("--seed", type=int, default=None)
        ensemble.add_argument("--degree", default=None, help="min..max")
        ensemble.add_argument("--sigma", type=float, default=None)
        ensemble.add_argument("--alpha", default=None)
        ensemble.add_argument("--beta", default=None)
        ensemble.add_argument("--noise", type=float, default=None)
        ensemble.add_argument("--range", dest="positive_range", default=None, help="lo..hi for real_positive")
        ensemble.add_argument("--pattern", default=None, help="multiplicity pattern, e.g. 2,1")
        ensemble.add_argument("--equispaced", action="store_true", default=None)
        ensemble.add_argument("--centered", action="store_true", default=None)
        ensemble.add_argument("--phi", action="append", default=None)
        ensemble.add_argument("--workers", type=int, default=None)
        ensemble.add_argument("--output", default=None, help="output directory")
        ensemble.add_argument("--run-name", dest="run_name", default=None)

        inspect = subparsers.add_parser("inspect", help="print intermediate matrices")
        add_input(inspect)
        add_solvers(inspect)
        inspect.add_argument("--show", choices=VIEWS, default="circulant")

        return parser

    def run(self, argv: Optional[Sequence[str]] = None) -> int:
        """Parse ``argv`` and dispatch; returns the process exit code."""
        parser = self.build_parser()
        try:
            args = parser.parse_args(attach_signed_values(sys.argv[1:] if argv is None else argv))
        except SystemExit as e:
            return EXIT_OK if e.code in (None, 0) else EXIT_USAGE

        handlers = {
            "critical": self.cmd_critical,
            "verify": self.cmd_verify,
            "ensemble": self.cmd_ensemble,
            "inspect": self.cmd_inspect,
        }
        try:
            return handlers[args.command](args)
        except ValidationError as e:
            logger.error(f"{e.message}" + (f" ({e.field})" if e.field else ""))
            return EXIT_USAGE
        except NumericalError as e:
            logger.error(f"numerical failure: {e}")
            return EXIT_NUMERICAL
        except ReportWriteError as e:
            logger.error(str(e))
            return EXIT_NUMERICAL
        except DomainError as e:
            logger.error(str(e))
            return EXIT_USAGE
        except Exception as e:
            logger.error(f"unexpected error: {type(e).__name__}: {e}")
            return EXIT_NUMERICAL

    # Commands

    def cmd_critical(self, args: argparse.Namespace) -> int:
        services = self._services(args)
        roots = self._read_roots(args, services)
        result = services.differentiator.critical_points(roots)
        self._emit(result.to_dict())
        return EXIT_OK

    def cmd_verify(self, args: argparse.Namespace) -> int:
        services = self._services(args)
        roots = self._read_roots(args, services)
        if len(roots) < 2:
            raise ValidationError(f"verify needs degree at least 2, got {len(roots)}", "roots")
        checks = CheckName.parse_list(args.checks)
        config = EnsembleConfig(
            phis=self._parse_phis(args.phi) or DEFAULT_PHIS,
            tolerances=self._tolerances(args),
        )

        outcomes = services.ensemble.evaluate(roots, checks, config)
        reports = []
        failures = []
        for outcome in outcomes:
            if outcome.status is CheckStatus.SKIPPED:
                logger.warn(f"skipped {outcome.label}: {outcome.message}")
            elif not outcome.passed:
                failures.append(outcome.label)
            reports.append({"name": outcome.label, "passed": outcome.passed, **outcome.to_dict()})
        self._emit(reports)

        if failures:
            logger.error(f"failed checks: {', '.join(failures)}")
            return EXIT_CHECK_FAILED
        return EXIT_OK

    def cmd_ensemble(self, args: argparse.Namespace) -> int:
        file_data = load_json_file(args.config, "config") if args.config else {}
        data = {key: value for key, value in file_data.items() if key != "checks"}
        data.update(self._ensemble_overrides(args))
        if self._config.ensemble.seed is not None:
            data["seed"] = self._config.ensemble.seed

        config = EnsembleConfig.from_dict(data, tolerances=self._base_tolerances(args))
        checks_text = args.checks or file_data.get("checks") or "all"
        if isinstance(checks_text, list):
            checks_text = ",".join(str(c) for c in checks_text)
        checks = CheckName.parse_list(checks_text)

        services = self._services(args, tolerances=config.tolerances)
        summary = services.ensemble.run_suite(config, checks, run_name=args.run_name)
        self._emit(summary.to_dict())

        if summary.total_failures:
            logger.error(f"{summary.total_failures} check failures, see {summary.records_path}")
            return EXIT_CHECK_FAILED
        if summary.total_anomalies:
            logger.warn(f"{summary.total_anomalies} equality anomalies recorded")
        return EXIT_OK

    def cmd_inspect(self, args: argparse.Namespace) -> int:
        services = self._services(args)
        roots = self._read_roots(args, services)
        circulant = Circulant.from_spectrum(roots)
        view = args.show
        if view == "circulant":
            output = circulant.to_dict()
        elif view == "submatrix":
            output = circulant.leading_submatrix().to_dict()
        elif view == "gram":
            output = circulant.gram().to_dict()
        elif view == "sqrt_gram":
            output = circulant.sqrt_gram().to_dict()
        else:
            b, b_tilde = services.differentiator.b_matrices(circulant)
            output = (b if view == "b" else b_tilde).to_dict()
        self._emit(output)
        return EXIT_OK

    # Helpers

    def _emit(self, payload: Any) -> None:
        stream = self._stdout or sys.stdout
        stream.write(json.dumps(payload, indent=2, sort_keys=True, allow_nan=False) + "\n")

    def _base_tolerances(self, args: argparse.Namespace) -> ToleranceProfile:
        """Configured profile with --tol applied; config-file overrides come later."""
        profile = self._config.tolerances
        if args.tol is not None:
            profile = profile.with_base(args.tol)
        return profile

    def _tolerances(self, args: argparse.Namespace) -> ToleranceProfile:
        profile = self._base_tolerances(args)
        if args.config:
            overrides = load_json_file(args.config, "config").get("tolerances", {})
            profile = ToleranceProfile.from_dict(overrides, profile)
        return profile

    def _services(self, args: argparse.Namespace, tolerances: Optional[ToleranceProfile] = None) -> ServiceBundle:
        defaults = self._config.ensemble
        workers = getattr(args, "workers", None)
        return self._service_factory(
            tolerances=tolerances or self._tolerances(args),
            eigensolver=args.eigensolver or self._config.solvers.eigensolver,
            root_finder=args.root_finder or self._config.solvers.root_finder,
            output_dir=getattr(args, "output", None) or defaults.output_dir,
            workers=workers if workers is not None else defaults.workers,
        )

    def _read_roots(self, args: argparse.Namespace, services: ServiceBundle) -> RootSet:
        if args.roots is not None:
            return RootSet(parse_inline_complex_list(args.roots, "roots"))
        if args.coeffs is not None:
            polynomial = self._polynomial(parse_inline_complex_list(args.coeffs, "coeffs"))
            return services.differentiator.roots_of(polynomial)

        data = load_json_file(args.input, "input")
        if "roots" in data:
            return RootSet.from_dict(data)
        if "coeffs" in data:
            return services.differentiator.roots_of(
                self._polynomial([pair_to_complex(c) for c in data["coeffs"]])
            )
        raise ValidationError(f"{args.input} needs a 'roots' or 'coeffs' key", "input")

    @staticmethod
    def _polynomial(coeffs: List[complex]) -> Polynomial:
        if len(coeffs) < 2 or coeffs[-1] == 0:
            raise ValidationError("coefficients need degree at least 1 and a nonzero leading entry", "coeffs")
        return Polynomial(coeffs, monic=False).normalized()

    @staticmethod
    def _parse_phis(labels: Optional[List[str]]) -> tuple:
        return tuple(PhiTransform.parse(label) for label in labels) if labels else ()

    @staticmethod
    def _ensemble_overrides(args: argparse.Namespace) -> Dict[str, Any]:
        """Flags given on the command line, in EnsembleConfig.from_dict form."""
        overrides: Dict[str, Any] = {}
        if args.family is not None:
            overrides["family"] = args.family
        if args.degree is not None:
            overrides["degree_range"] = list(parse_range(args.degree, "degree", int))
        if args.positive_range is not None:
            overrides["positive_range"] = list(parse_range(args.positive_range, "range", float))
        if args.pattern is not None:
            try:
                overrides["pattern"] = [int(m) for m in args.pattern.split(",")]
            except ValueError:
                raise ValidationError(f"cannot parse pattern {args.pattern!r}", "pattern")
        for key in ("count", "seed", "sigma", "noise", "equispaced", "centered"):
            value = getattr(args, key)
            if value is not None:
                overrides[key] = value
        for key in ("alpha", "beta"):
            value = getattr(args, key)
            if value is not None:
                overrides[key] = pair_to_complex(value)
        if args.phi:
            overrides["phis"] = list(args.phi)
        return overrides

"""Unit tests for MajorizationService."""

import numpy as np
import pytest
from unittest.mock import Mock

from src.adapters.driven.aberth_root_finder_adapter import AberthRootFinderAdapter
from src.adapters.driven.qr_eigensolver_adapter import QREigenSolverAdapter
from src.domain.entities.base import ValidationError
from src.domain.entities.polynomial import RootSet
from src.domain.entities.reports import PhiTransform
from src.domain.services.differentiator_service import DifferentiatorService
from src.domain.services.majorization_service import MajorizationService


TOL = 1e-8


def roots_of_unity(n):
    return RootSet(np.exp(2j * np.pi * np.arange(n) / n))


def gaussian_roots(n, seed):
    rng = np.random.default_rng(seed)
    return RootSet(rng.standard_normal(n) + 1j * rng.standard_normal(n))


@pytest.fixture
def service():
    """Majorization service over the numpy eigensolver."""
    eigensolver = QREigenSolverAdapter()
    differentiator = DifferentiatorService(eigensolver, AberthRootFinderAdapter())
    return MajorizationService(differentiator, eigensolver)


class TestWeakMajorizes:
    """Test cases for weak_majorizes."""

    def test_permutation_is_strong(self, service):
        report = service.weak_majorizes([1, 2, 3], [3, 2, 1], TOL)

        assert np.array_equal(report.left, [3, 2, 1])
        assert report.holds and report.strong

    def test_failing_prefix(self, service):
        report = service.weak_majorizes([4, 0], [3, 2], TOL)

        assert not report.holds
        assert np.allclose(report.prefix_slacks, [-1, 1])
        assert report.min_slack == pytest.approx(-1)

    def test_weak_not_strong(self, service):
        report = service.weak_majorizes([0, 0], [1, 1], TOL)
        assert report.holds and not report.strong

    def test_tolerance_absorbs_rounding(self, service):
        assert service.weak_majorizes([1 + 1e-12, 1], [1, 1], TOL).holds
        assert not service.weak_majorizes([1 + 1e-6, 1], [1, 1], TOL).holds

    def test_empty_vectors(self, service):
        report = service.weak_majorizes([], [], TOL)
        assert report.holds and report.strong

    def test_length_mismatch(self, service):
        with pytest.raises(ValidationError):
            service.weak_majorizes([1, 2], [1], TOL)


class TestKyFanCheck:
    """Test cases for the real-part majorization."""

    def test_real_roots_are_strong(self, service):
        report = service.kyfan_check(RootSet([1, 0, -1]))

        assert report.name == "kyfan"
        assert np.allclose(report.left, [1 / np.sqrt(3), -1 / np.sqrt(3)])
        assert np.allclose(report.right, report.left)
        assert report.holds and report.strong
        assert report.details["cross_check"] <= 1e-9

    def test_roots_of_unity(self, service):
        """Test H_2 = [[0, 1/2], [1/2, 0]] against critical points at the origin."""
        report = service.kyfan_check(roots_of_unity(3))

        assert np.allclose(report.right, [0.5, -0.5])
        assert np.allclose(report.left, [0, 0])
        assert report.holds and report.strong
        assert report.details["cross_check"] <= 1e-9

    def test_imaginary_pair(self, service):
        report = service.kyfan_check(RootSet([1j, -1j]))

        assert np.allclose(report.left, [0])
        assert np.allclose(report.right, [0])
        assert report.holds

    def test_reuses_critical_points(self, service):
        roots = gaussian_roots(5, 2)
        critical = service._differentiator.critical_points(roots)

        assert service.kyfan_check(roots, critical).to_dict() == service.kyfan_check(roots).to_dict()

    @pytest.mark.parametrize("n,seed", [(3, 1), (6, 2), (11, 3), (14, 4)])
    def test_random_roots_hold(self, service, n, seed):
        report = service.kyfan_check(gaussian_roots(n, seed))

        assert report.holds
        assert report.strong
        assert report.details["cross_check"] <= 1e-6 * gaussian_roots(n, seed).scale

    def test_cross_check_uses_real_part_circulant(self):
        eigensolver = QREigenSolverAdapter()
        differentiator = Mock(wraps=DifferentiatorService(eigensolver, AberthRootFinderAdapter()))
        service = MajorizationService(differentiator, eigensolver)
        roots = RootSet([3, 1 + 2j, -1j])

        service.kyfan_check(roots)

        differentiator.roots_of.assert_not_called()
        real_parts = differentiator.critical_points.call_args_list[-1].args[0]
        assert np.allclose(sorted(real_parts.roots.real), [0, 1, 3])
        assert np.all(real_parts.roots.imag == 0)

    @pytest.mark.parametrize("n,seed", [(16, 7), (24, 8), (32, 9)])
    def test_clustered_real_parts(self, service, n, seed):
        """Test unit-circle roots, whose real parts crowd near +-1."""
        rng = np.random.default_rng(seed)
        roots = RootSet(np.exp(1j * rng.uniform(0, 2 * np.pi, n)))

        report = service.kyfan_check(roots)

        assert report.holds and report.strong
        assert report.details["cross_check"] <= 1e-6


class TestThm12Check:
    """Test cases for the modulus majorization against sqrt(eta)."""

    @pytest.mark.parametrize("n", [3, 4, 7])
    def test_roots_of_unity(self, service, n):
        report = service.thm12_check(roots_of_unity(n), PhiTransform.identity())

        assert report.name == "thm12:identity"
        assert np.allclose(report.left, 0, atol=1e-12)
        assert np.allclose(report.right, 1)
        assert report.holds and not report.strong

    def test_three_one(self, service):
        """Test |w| = 2 against the critical point 5 of (z - 9)(z - 1)."""
        report = service.thm12_check(RootSet([3, 1]), PhiTransform.identity())

        assert np.allclose(report.left, [2])
        assert np.allclose(report.right, [np.sqrt(5)])
        assert report.holds

    @pytest.mark.parametrize("phi", [
        PhiTransform.power(2),
        PhiTransform.power(0.5),
        PhiTransform.shifted_log(0.1),
    ])
    def test_transforms(self, service, phi):
        report = service.thm12_check(RootSet([1, -1]), phi)

        assert report.name == f"thm12:{phi.label}"
        assert report.holds

    @pytest.mark.parametrize("seed", [5, 6, 7])
    def test_random_roots_hold(self, service, seed):
        roots = gaussian_roots(9, seed)

        assert service.thm12_check(roots, PhiTransform.identity()).holds
        assert service.thm12_check(roots, PhiTransform.power(3)).holds


class TestWeylDomination:
    """Test cases for sigma_i^2 <= eta_i and the rank-one difference."""

    def test_roots_of_unity(self, service):
        report = service.weyl_domination_report(roots_of_unity(3))

        assert report.name == "weyl"
        assert np.allclose(report.left, [1, 0], atol=1e-12)
        assert np.allclose(report.right, [1, 1])
        assert report.holds
        assert report.details["outer_product_residual"] <= 1e-12
        assert report.details["second_singular_value"] <= 1e-12

    def test_three_one(self, service):
        report = service.weyl_domination_report(RootSet([3, 1]))

        assert np.allclose(report.left, [4])
        assert np.allclose(report.right, [5])
        assert report.details["min_gap"] == pytest.approx(1 / 9)

    def test_symmetric_pair(self, service):
        assert service.weyl_domination(RootSet([1, -1]))

    @pytest.mark.parametrize("n,seed", [(4, 8), (9, 9), (16, 10)])
    def test_random_roots(self, service, n, seed):
        report = service.weyl_domination_report(gaussian_roots(n, seed))

        assert report.holds
        assert report.details["outer_product_residual"] <= 1e-10
        assert report.details["second_singular_value"] <= 1e-10
        assert report.details["min_eigenvalue"] >= -1e-10

    def test_degree_one_rejected(self, service):
        with pytest.raises(ValidationError):
            service.weyl_domination(RootSet([1]))


class TestThm13Check:
    """Test cases for positive real roots."""

    def test_repeated_root_is_strong(self, service):
        report = service.thm13_check(RootSet([1, 1, 1]), PhiTransform.identity())

        assert np.allclose(report.left, [1, 1])
        assert np.allclose(report.right, [1, 1])
        assert report.holds and report.strong

    def test_three_one(self, service):
        report = service.thm13_check(RootSet([3, 1]), PhiTransform.identity())

        assert np.allclose(report.left, [2])
        assert np.allclose(report.right, [np.sqrt(5)])
        assert report.name == "thm13:identity"

    def test_one_two_three(self, service):
        """Test 2 +- 1/sqrt(3) against sqrt(7) and sqrt(7/3)."""
        report = service.thm13_check(RootSet([1, 2, 3]), PhiTransform.power(2))

        assert np.allclose(report.left, [(2 + 1 / np.sqrt(3)) ** 2, (2 - 1 / np.sqrt(3)) ** 2])
        assert np.allclose(report.right, [7, 7 / 3])
        assert report.holds and not report.strong

    @pytest.mark.parametrize("roots", [[1, -2], [1, 0], [1, 1j]])
    def test_non_positive_roots_rejected(self, service, roots):
        with pytest.raises(ValidationError, match="real and positive"):
            service.thm13_check(RootSet(roots), PhiTransform.identity())


PHIS = [
    PhiTransform.identity(),
    PhiTransform.power(2),
    PhiTransform.power(0.5),
    PhiTransform.power(3),
    PhiTransform.shifted_log(0.1),
]


def log_prefix_dominated(a, b, tol):
    """Prefix sums of log(sorted a) bounded by those of log(sorted b)."""
    left = np.log(np.sort(np.asarray(a, dtype=float))[::-1])
    right = np.log(np.sort(np.asarray(b, dtype=float))[::-1])
    return bool(np.all(np.cumsum(right) - np.cumsum(left) >= -tol))


class TestTransformStability:
    """Weak majorization recomputed after each monotone transform."""

    @pytest.mark.parametrize("phi", PHIS)
    def test_constructed_pair(self, service, phi):
        a, b = [2.0, 2.0], [3.0, 1.5]
        assert service.weak_majorizes(a, b, TOL).holds
        assert log_prefix_dominated(a, b, TOL)

        assert service.weak_majorizes(phi.apply(a), phi.apply(b), TOL).holds

    @pytest.mark.parametrize("phi", PHIS)
    @pytest.mark.parametrize("n,seed", [(4, 31), (9, 32), (16, 33)])
    def test_moduli_against_singular_values(self, service, n, seed, phi):
        """Test |critical points| against sqrt(eta), which log-prefix dominates them."""
        base = service.thm12_check(gaussian_roots(n, seed), PhiTransform.identity())
        a, b = base.left, base.right
        assert np.all(a > 0)
        assert base.holds
        assert log_prefix_dominated(a, b, 1e-9)

        assert service.weak_majorizes(phi.apply(a), phi.apply(b), TOL).holds

    def test_without_log_domination_transform_can_break(self, service):
        a, b = [1.0, 1.0], [2.0, 0.1]
        assert service.weak_majorizes(a, b, TOL).holds
        assert not log_prefix_dominated(a, b, TOL)

        root = PhiTransform.power(0.5)
        assert not service.weak_majorizes(root.apply(a), root.apply(b), TOL).holds

"""Aberth-Ehrlich simultaneous root finder adapter."""

import logging
from typing import List, Tuple

import numpy as np
from numpy.polynomial import polynomial as npoly

from ...domain.entities.base import ConvergenceError, ValidationError
from ...domain.entities.polynomial import Polynomial, RootSet
from ...domain.ports.driven.root_finder_port import RootFinderPort


logger = logging.getLogger(__name__)

# Angular offset of the starting circle; breaks symmetric stalls.
INITIAL_ANGLE_OFFSET = 0.37
# Iterations without any backward-error halving before the loop stops.
STALL_WINDOW = 25
# Allowed coefficient error of the re-expanded roots, in units of tol.
REEXPANSION_FACTOR = 10.0
# Relative distance below which approximations may belong to one multiple root.
CLUSTER_RADIUS = 1e-3


class AberthRootFinderAdapter(RootFinderPort):
    """Root oracle iterating all roots at once with Aberth corrections.

    Each root is frozen once its backward error reaches rounding level;
    frozen roots still repel the others through the Aberth sum. The
    result is accepted only if re-expanding the roots reproduces the
    coefficients to ``REEXPANSION_FACTOR * tol``.
    """

    def find_roots(self, polynomial: Polynomial, tol: float, max_iter: int) -> RootSet:
        if polynomial.degree < 1:
            raise ValidationError("constant polynomial", "coeffs")
        coeffs = np.array(polynomial.coeffs, dtype=complex) / polynomial.coeffs[-1]
        coeffs[-1] = 1.0
        n = coeffs.size - 1
        if n == 1:
            return RootSet([-coeffs[0]])

        z = self._initial_guess(coeffs)
        frozen = np.zeros(n, dtype=bool)
        best = np.full(n, np.inf)
        last_progress = 0
        eps = np.finfo(float).eps

        iteration = 0
        for iteration in range(1, max_iter + 1):
            ratio, backward = self._newton_ratio(z, coeffs)
            frozen |= backward <= 8.0 * n * eps
            if frozen.all():
                break
            if np.any((backward < 0.5 * best) & ~frozen):
                last_progress = iteration
            best = np.minimum(best, backward)
            if iteration - last_progress >= STALL_WINDOW:
                logger.debug(f"Aberth stalled at backward error {np.max(backward[~frozen]):.3e} (degree {n})")
                break

            step = self._aberth_step(z, ratio)
            step[frozen] = 0.0
            z = z - step

        return self._verified(z, coeffs, tol, iteration)

    @staticmethod
    def _reexpansion_error(z: np.ndarray, coeffs: np.ndarray) -> float:
        return Polynomial.from_roots(z).relative_difference(Polynomial(coeffs))

    def _collapse_clusters(self, z: np.ndarray, coeffs: np.ndarray) -> np.ndarray:
        """Replace tight clusters by a multiple root where that helps.

        A cluster of m approximations to an m-fold root is only pinned down
        to about eps^(1/m), which leaves its centroid off. The m-fold root
        is a simple root of p^(m-1), so Newton on that derivative from the
        centroid recovers it; each collapse is kept only if the re-expansion
        error drops.
        """
        z = np.array(z)
        error = self._reexpansion_error(z, coeffs)
        for members in self._clusters(z):
            m = members.size
            derivative = npoly.polyder(coeffs, m - 1)
            candidate = np.array(z)
            candidate[members] = self._newton(derivative, complex(np.mean(z[members])))
            candidate_error = self._reexpansion_error(candidate, coeffs)
            if candidate_error < error:
                z, error = candidate, candidate_error
        return z

    @staticmethod
    def _clusters(z: np.ndarray) -> List[np.ndarray]:
        """Groups of two or more roots linked within CLUSTER_RADIUS * max(1, |z|)."""
        n = z.size
        radius = CLUSTER_RADIUS * np.maximum(1.0, np.abs(z))
        linked = np.abs(z[:, None] - z[None, :]) <= np.maximum(radius[:, None], radius[None, :])
        labels = -np.ones(n, dtype=int)
        for start in range(n):
            if labels[start] >= 0:
                continue
            labels[start] = start
            stack = [start]
            while stack:
                i = stack.pop()
                for j in np.flatnonzero(linked[i] & (labels < 0)):
                    labels[j] = start
                    stack.append(int(j))
        groups = [np.flatnonzero(labels == label) for label in np.unique(labels)]
        return [g for g in groups if g.size > 1]

    @staticmethod
    def _newton(coeffs: np.ndarray, z: complex, max_iter: int = 50) -> complex:
        eps = np.finfo(float).eps
        slope_coeffs = npoly.polyder(coeffs)
        for _ in range(max_iter):
            slope = npoly.polyval(z, slope_coeffs)
            if slope == 0:
                break
            step = npoly.polyval(z, coeffs) / slope
            z = z - step
            if abs(step) <= 4.0 * eps * max(1.0, abs(z)):
                break
        return complex(z)

    def _verified(self, z: np.ndarray, coeffs: np.ndarray, tol: float, iterations: int) -> RootSet:
        """Accept ``z`` only if prod (x - z_k) matches ``coeffs``.

        Raises:
            ConvergenceError: If the relative coefficient error exceeds
                REEXPANSION_FACTOR * tol
        """
        n = coeffs.size - 1
        if not np.all(np.isfinite(z)):
            raise ConvergenceError(f"Aberth iteration diverged for degree {n}", iterations=iterations)
        error = self._reexpansion_error(z, coeffs)
        if error > REEXPANSION_FACTOR * tol:
            z = self._collapse_clusters(z, coeffs)
            error = self._reexpansion_error(z, coeffs)
        if error > REEXPANSION_FACTOR * tol:
            raise ConvergenceError(
                f"Aberth iteration did not converge for degree {n}",
                residual=error,
                iterations=iterations,
            )
        logger.debug(f"Aberth converged in {iterations} iterations (degree {n}, coefficient error {error:.3e})")
        return RootSet(z)

    @staticmethod
    def _initial_guess(coeffs: np.ndarray) -> np.ndarray:
        """Points on a circle enclosing every root.

        Radius is the smaller of the Cauchy bound 1 + max|a_k| and the
        Fujiwara bound 2 * max |a_{n-k}|^(1/k).
        """
        n = coeffs.size - 1
        magnitudes = np.abs(coeffs[:-1])
        cauchy = 1.0 + float(np.max(magnitudes))
        k = np.arange(n, 0, -1)
        fujiwara = 2.0 * float(np.max(magnitudes ** (1.0 / k)))
        radius = min(cauchy, fujiwara) if fujiwara > 0 else 1.0
        angles = 2.0 * np.pi * np.arange(n) / n + INITIAL_ANGLE_OFFSET
        return radius * np.exp(1j * angles)

    @staticmethod
    def _newton_ratio(z: np.ndarray, coeffs: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
        """p(z)/p'(z) and the relative backward error |p(z)| / sum |a_k||z|^k.

        Points outside the unit disk are evaluated through the reversed
        polynomial in w = 1/z so nothing overflows.
        """
        n = coeffs.size - 1
        ratio = np.empty(z.size, dtype=complex)
        backward = np.empty(z.size)
        inside = np.abs(z) <= 1.0
        tiny = np.finfo(float).tiny

        with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
            if inside.any():
                zi = z[inside]
                p = npoly.polyval(zi, coeffs)
                dp = npoly.polyval(zi, npoly.polyder(coeffs))
                ratio[inside] = p / dp
                scale = npoly.polyval(np.abs(zi), np.abs(coeffs))
                backward[inside] = np.abs(p) / np.maximum(scale, tiny)
            outside = ~inside
            if outside.any():
                zo = z[outside]
                w = 1.0 / zo
                reversed_coeffs = coeffs[::-1]
                q = npoly.polyval(w, reversed_coeffs)
                dq = npoly.polyval(w, npoly.polyder(reversed_coeffs))
                ratio[outside] = zo * q / (n * q - w * dq)
                scale = npoly.polyval(np.abs(w), np.abs(reversed_coeffs))
                backward[outside] = np.abs(q) / np.maximum(scale, tiny)
        return ratio, backward

    @staticmethod
    def _aberth_step(z: np.ndarray, ratio: np.ndarray) -> np.ndarray:
        """Correction r / (1 - r * sum_{j != k} 1/(z_k - z_j))."""
        diff = z[:, None] - z[None, :]
        with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
            inverse = np.where(diff != 0, 1.0 / np.where(diff != 0, diff, 1.0), 0.0)
            np.fill_diagonal(inverse, 0.0)
            repulsion = inverse.sum(axis=1)
            step = ratio / (1.0 - ratio * repulsion)
            infinite = np.isinf(ratio)
            step[infinite] = -1.0 / repulsion[infinite]
        step[~np.isfinite(step)] = 0.0
        return step

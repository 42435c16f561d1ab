"""Dense eigensolver adapter built from Householder reflections and QR/QL sweeps."""

import logging
from typing import List, Optional, Tuple

import numpy as np

from ...domain.entities.base import ConvergenceError, ValidationError
from ...domain.entities.matrix import DenseMatrix, Spectrum
from ...domain.entities.polynomial import Polynomial
from ...domain.ports.driven.eigensolver_port import CHAR_POLY_MAX_DIMENSION, EigenSolverPort


logger = logging.getLogger(__name__)

EPS = float(np.finfo(float).eps)
# QR sweeps allowed per matrix dimension without isolating an eigenvalue.
SWEEPS_PER_DIMENSION = 30
# Every this many sweeps without deflation, an exceptional shift is used.
EXCEPTIONAL_SHIFT_PERIOD = 10


def _householder_vector(x: np.ndarray) -> Tuple[Optional[np.ndarray], complex]:
    """Unit v with (I - 2vv*) x = alpha e_1; ``None`` when x is already reduced."""
    tail = np.linalg.norm(x[1:])
    if tail == 0.0:
        return None, complex(x[0])
    norm_x = np.hypot(abs(x[0]), tail)
    phase = x[0] / abs(x[0]) if x[0] != 0 else 1.0
    alpha = -phase * norm_x
    v = np.array(x, dtype=complex)
    v[0] -= alpha
    v /= np.linalg.norm(v)
    return v, complex(alpha)


def hessenberg(a: np.ndarray) -> np.ndarray:
    """Upper Hessenberg matrix unitarily similar to ``a``."""
    h = np.array(a, dtype=complex)
    n = h.shape[0]
    for k in range(n - 2):
        v, _ = _householder_vector(h[k + 1:, k])
        if v is None:
            continue
        h[k + 1:, k:] -= 2.0 * np.outer(v, v.conj() @ h[k + 1:, k:])
        h[:, k + 1:] -= 2.0 * np.outer(h[:, k + 1:] @ v, v.conj())
        h[k + 2:, k] = 0.0
    return h


def tridiagonalize(a: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    """Real symmetric tridiagonal (diagonal, subdiagonal) similar to Hermitian ``a``.

    The complex off-diagonal entries are replaced by their moduli, which a
    diagonal unitary similarity achieves.
    """
    t = np.array(a, dtype=complex)
    n = t.shape[0]
    for k in range(n - 2):
        v, _ = _householder_vector(t[k + 1:, k])
        if v is None:
            continue
        t[k + 1:, :] -= 2.0 * np.outer(v, v.conj() @ t[k + 1:, :])
        t[:, k + 1:] -= 2.0 * np.outer(t[:, k + 1:] @ v, v.conj())
    return t.diagonal().real.copy(), np.abs(np.diagonal(t, -1))


def _givens(a: complex, b: complex) -> Tuple[float, complex]:
    """(c, s) with real c such that [[c, s], [-conj(s), c]] @ [a, b] = [r, 0]."""
    if b == 0:
        return 1.0, 0j
    if a == 0:
        return 0.0, np.conj(b) / abs(b)
    r = np.hypot(abs(a), abs(b))
    return abs(a) / r, (a / abs(a)) * np.conj(b) / r


def _eig2(block: np.ndarray) -> Tuple[complex, complex]:
    """Eigenvalues of a 2x2 block without cancellation in the smaller one."""
    a, b, c, d = block[0, 0], block[0, 1], block[1, 0], block[1, 1]
    mid = (a + d) / 2.0
    disc = np.sqrt(((a - d) / 2.0) ** 2 + b * c)
    if (np.conj(mid) * disc).real < 0:
        disc = -disc
    first = mid + disc
    det = a * d - b * c
    second = det / first if first != 0 else mid - disc
    return complex(first), complex(second)


def _wilkinson_shift(h: np.ndarray, hi: int) -> complex:
    """Eigenvalue of the trailing 2x2 block closer to h[hi, hi]."""
    first, second = _eig2(h[hi - 1:hi + 1, hi - 1:hi + 1])
    corner = h[hi, hi]
    return first if abs(first - corner) <= abs(second - corner) else second


def _qr_sweep(h: np.ndarray, lo: int, hi: int, shift: complex) -> None:
    """One explicitly shifted QR step on the active window, in place."""
    block = h[lo:hi + 1, lo:hi + 1]
    m = block.shape[0]
    diagonal = np.arange(m)
    block[diagonal, diagonal] -= shift
    rotations: List[Tuple[float, complex]] = []
    for k in range(m - 1):
        c, s = _givens(block[k, k], block[k + 1, k])
        rows = block[k:k + 2, k:].copy()
        block[k, k:] = c * rows[0] + s * rows[1]
        block[k + 1, k:] = -np.conj(s) * rows[0] + c * rows[1]
        block[k + 1, k] = 0.0
        rotations.append((c, s))
    for k, (c, s) in enumerate(rotations):
        bottom = min(k + 2, m)
        cols = block[:bottom, k:k + 2].copy()
        block[:bottom, k] = c * cols[:, 0] + np.conj(s) * cols[:, 1]
        block[:bottom, k + 1] = -s * cols[:, 0] + c * cols[:, 1]
    block[diagonal, diagonal] += shift


def _ql_implicit(diagonal: np.ndarray, off: np.ndarray) -> np.ndarray:
    """Eigenvalues of a real symmetric tridiagonal matrix by implicit QL.

    ``off[i]`` couples ``diagonal[i]`` and ``diagonal[i + 1]``.
    """
    d = [float(x) for x in diagonal]
    n = len(d)
    e = [float(x) for x in off] + [0.0]
    anorm = (max(abs(x) for x in d) if d else 0.0) + (max(e) if e else 0.0)
    floor = EPS * EPS * anorm
    limit = SWEEPS_PER_DIMENSION * max(n, 1)

    for l in range(n):
        iterations = 0
        while True:
            m = l
            while m < n - 1:
                dd = abs(d[m]) + abs(d[m + 1])
                if abs(e[m]) <= EPS * dd or abs(e[m]) <= floor:
                    break
                m += 1
            if m == l:
                break
            iterations += 1
            if iterations > limit:
                raise ConvergenceError(
                    "implicit QL did not converge", residual=abs(e[l]), iterations=iterations
                )
            g = (d[l + 1] - d[l]) / (2.0 * e[l])
            r = float(np.hypot(g, 1.0))
            g = d[m] - d[l] + e[l] / (g + (r if g >= 0 else -r))
            s = c = 1.0
            p = 0.0
            underflow = False
            for i in range(m - 1, l - 1, -1):
                f = s * e[i]
                b = c * e[i]
                r = float(np.hypot(f, g))
                e[i + 1] = r
                if r == 0.0:
                    d[i + 1] -= p
                    e[m] = 0.0
                    underflow = True
                    break
                s = f / r
                c = g / r
                g = d[i + 1] - p
                r = (d[i] - g) * s + 2.0 * c * b
                p = s * r
                d[i + 1] = g + p
                g = c * r - b
            if underflow:
                continue
            d[l] -= p
            e[l] = g
            e[m] = 0.0
    return np.array(d, dtype=float)


def faddeev_leverrier(a: np.ndarray) -> np.ndarray:
    """Ascending coefficients of det(zI - a) by the Faddeev-LeVerrier recursion.

    The matrix is scaled to unit max-entry first and the coefficients
    rescaled afterwards.
    """
    n = a.shape[0]
    scale = max(1.0, float(np.max(np.abs(a))))
    b = np.asarray(a, dtype=complex) / scale
    coeffs = np.zeros(n + 1, dtype=complex)
    coeffs[n] = 1.0
    identity = np.eye(n, dtype=complex)
    m = np.zeros((n, n), dtype=complex)
    for k in range(1, n + 1):
        m = b @ m + coeffs[n - k + 1] * identity
        coeffs[n - k] = -np.trace(b @ m) / k
    return coeffs * scale ** np.arange(n, -1, -1)


class QREigenSolverAdapter(EigenSolverPort):
    """Eigensolver written out in numpy.

    General matrices: Householder Hessenberg reduction, then single-shift
    complex QR with Wilkinson shifts and deflation. Hermitian matrices:
    Householder tridiagonalization, then implicit QL.
    """

    def __init__(self, hermitian_tol: float = 1e-10):
        """Initialize the adapter.

        Args:
            hermitian_tol: Self-adjointness tolerance used for M M* inside singular_values
        """
        self._hermitian_tol = hermitian_tol

    def eig_general(self, matrix: DenseMatrix, tol: float) -> Spectrum:
        n = matrix.require_square()
        norm = matrix.frobenius_norm()
        h = hessenberg(matrix.data)
        eigenvalues = np.zeros(n, dtype=complex)
        floor = EPS * norm
        neglected = 0.0
        hi = n - 1
        stalled = 0
        total = 0

        while hi >= 0:
            lo = hi
            while lo > 0:
                sub = abs(h[lo, lo - 1])
                if sub <= tol * (abs(h[lo - 1, lo - 1]) + abs(h[lo, lo])) or sub <= floor:
                    neglected += sub
                    h[lo, lo - 1] = 0.0
                    break
                lo -= 1

            if lo == hi:
                eigenvalues[hi] = h[hi, hi]
                hi -= 1
                stalled = 0
                continue
            if lo == hi - 1:
                eigenvalues[hi - 1], eigenvalues[hi] = _eig2(h[lo:hi + 1, lo:hi + 1])
                hi -= 2
                stalled = 0
                continue

            if stalled >= SWEEPS_PER_DIMENSION * n:
                raise ConvergenceError(
                    f"QR iteration isolated no eigenvalue in {stalled} sweeps",
                    residual=float(abs(h[hi, hi - 1])) / (norm or 1.0),
                    iterations=total,
                )
            stalled += 1
            total += 1
            if stalled % EXCEPTIONAL_SHIFT_PERIOD == 0:
                shift = h[hi, hi] + 0.75 * abs(h[hi, hi - 1]) * np.exp(1j * stalled)
            else:
                shift = _wilkinson_shift(h, hi)
            _qr_sweep(h, lo, hi, shift)

        logger.debug(f"QR eigensolver: n={n}, sweeps={total}")
        residual = neglected / norm if norm > 0 else 0.0
        return Spectrum(eigenvalues, residual=residual)

    def eig_hermitian(self, matrix: DenseMatrix, tol: float) -> np.ndarray:
        matrix.require_square()
        if not matrix.is_hermitian(tol):
            raise ValidationError(
                f"matrix is not Hermitian (relative defect {matrix.hermitian_defect():.3e})", "data"
            )
        a = np.asarray(matrix.data)
        diagonal, off = tridiagonalize((a + a.conj().T) / 2.0)
        return np.sort(_ql_implicit(diagonal, off))[::-1]

    def singular_values(self, matrix: DenseMatrix) -> np.ndarray:
        matrix.require_square()
        a = np.asarray(matrix.data)
        product = a @ a.conj().T
        product = (product + product.conj().T) / 2.0
        values = self.eig_hermitian(DenseMatrix(product), self._hermitian_tol)
        return np.sqrt(np.maximum(values, 0.0))

    def char_poly(self, matrix: DenseMatrix) -> Polynomial:
        n = matrix.require_square()
        if n > CHAR_POLY_MAX_DIMENSION:
            raise ValidationError(
                f"characteristic polynomial limited to dimension {CHAR_POLY_MAX_DIMENSION}, got {n}",
                "data",
            )
        coeffs = faddeev_leverrier(matrix.data)
        coeffs[-1] = 1.0
        return Polynomial(coeffs)

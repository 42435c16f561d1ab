"""Eigensolver adapter delegating to numpy's LAPACK bindings."""

import numpy as np

from ...domain.entities.base import NumericalError, ValidationError
from ...domain.entities.matrix import DenseMatrix, Spectrum
from .qr_eigensolver_adapter import QREigenSolverAdapter


class LapackEigenSolverAdapter(QREigenSolverAdapter):
    """Same port, LAPACK kernels for the eigenvalue problems.

    The characteristic polynomial stays on Faddeev-LeVerrier so it remains
    independent of any eigensolver.
    """

    def eig_general(self, matrix: DenseMatrix, tol: float) -> Spectrum:
        matrix.require_square()
        try:
            values = np.linalg.eigvals(matrix.data)
        except np.linalg.LinAlgError as e:
            raise NumericalError(f"LAPACK eigenvalue computation failed: {e}")
        return Spectrum(values, residual=0.0)

    def eig_hermitian(self, matrix: DenseMatrix, tol: float) -> np.ndarray:
        matrix.require_square()
        if not matrix.is_hermitian(tol):
            raise ValidationError(
                f"matrix is not Hermitian (relative defect {matrix.hermitian_defect():.3e})", "data"
            )
        try:
            values = np.linalg.eigvalsh(matrix.data)
        except np.linalg.LinAlgError as e:
            raise NumericalError(f"LAPACK Hermitian eigenvalues failed: {e}")
        return np.sort(values)[::-1]

    def singular_values(self, matrix: DenseMatrix) -> np.ndarray:
        matrix.require_square()
        try:
            values = np.linalg.svd(matrix.data, compute_uv=False)
        except np.linalg.LinAlgError as e:
            raise NumericalError(f"LAPACK singular values failed: {e}")
        return np.sort(values)[::-1]

"""Dense complex matrix helpers: spectra, the two norms, Hadamard products.

All functions are pure and act on plain numpy arrays (coerced to complex128).
Everything targets desk-scale dense matrices, n up to ~100.
"""

from __future__ import annotations

import numpy as np

from .errors import (
    DimensionMismatchError,
    NotHermitianError,
    NotSquareError,
    PcpkitError,
)


def as_complex_matrix(a) -> np.ndarray:
    """Coerce ``a`` to a finite 2-D complex128 array."""
    arr = np.asarray(a, dtype=np.complex128)
    if arr.ndim != 2:
        raise PcpkitError(f"expected a 2-D matrix, got ndim={arr.ndim}")
    if not np.isfinite(arr).all():
        raise PcpkitError("matrix entries must be finite (no NaN or Inf)")
    return arr


def as_complex_vector(a) -> np.ndarray:
    """Coerce ``a`` to a finite 1-D complex128 array."""
    arr = np.asarray(a, dtype=np.complex128)
    if arr.ndim != 1:
        raise PcpkitError(f"expected a 1-D vector, got ndim={arr.ndim}")
    if not np.isfinite(arr).all():
        raise PcpkitError("vector entries must be finite (no NaN or Inf)")
    return arr


def require_square(A: np.ndarray) -> np.ndarray:
    A = as_complex_matrix(A)
    if A.shape[0] != A.shape[1]:
        raise NotSquareError(f"matrix must be square, got shape {A.shape}")
    return A


def hermiticity_tolerance(A: np.ndarray) -> float:
    """Absolute tolerance for Hermiticity checks, scaled by the largest entry."""
    amax = float(np.abs(A).max()) if A.size else 0.0
    return 1e-10 * max(1.0, amax)


def hermiticity_defect(A: np.ndarray) -> float:
    return float(np.abs(A - A.conj().T).max()) if A.size else 0.0


def is_hermitian(A: np.ndarray, tol: float | None = None) -> bool:
    A = require_square(A)
    if tol is None:
        tol = hermiticity_tolerance(A)
    return hermiticity_defect(A) <= tol


def hermitian_eigenvalues(A: np.ndarray) -> np.ndarray:
    """Eigenvalues of a Hermitian matrix, real and sorted in decreasing order.

    Raises ``NotHermitianError`` when the Hermiticity defect exceeds the
    entry-scaled tolerance; the spectrum always comes from the dedicated
    Hermitian eigensolver, never from a general one.
    """
    A = require_square(A)
    defect = hermiticity_defect(A)
    if defect > hermiticity_tolerance(A):
        raise NotHermitianError(f"matrix is not Hermitian (defect {defect:.3e})")
    return np.linalg.eigvalsh(A)[::-1]


def is_psd(A: np.ndarray, scale_tol: float = 1e-9) -> bool:
    """True iff A is Hermitian (within tolerance) with spectrum >= -scale_tol * max(1, trace norm)."""
    A = require_square(A)
    if hermiticity_defect(A) > hermiticity_tolerance(A):
        return False
    w = np.linalg.eigvalsh(A)
    floor = scale_tol * max(1.0, float(np.abs(w).sum()))
    return bool(w.min() >= -floor) if w.size else True


def trace_norm(A: np.ndarray) -> float:
    """Sum of singular values.

    Computed by direct SVD: squaring into a Gram matrix first would halve the
    working precision near vanishing singular values, which the norm-gap
    comparisons cannot afford.
    """
    A = as_complex_matrix(A)
    if A.size == 0:
        return 0.0
    return float(np.linalg.svd(A, compute_uv=False).sum())


def entrywise_one_norm(A: np.ndarray) -> float:
    """Sum of entry magnitudes."""
    A = as_complex_matrix(A)
    return float(np.abs(A).sum())


def hadamard(u: np.ndarray, v: np.ndarray) -> np.ndarray:
    """Entrywise product of two arrays of identical shape."""
    u = np.asarray(u, dtype=np.complex128)
    v = np.asarray(v, dtype=np.complex128)
    if u.shape != v.shape:
        raise DimensionMismatchError(f"shape mismatch {u.shape} vs {v.shape}")
    return u * v


def phase_normalize_columns(M: np.ndarray, tol: float = 1e-12) -> np.ndarray:
    """Rotate each column by a global phase so its first non-negligible entry is positive real.

    Zero columns are left untouched.  Useful when comparing factorizations that
    are only defined up to a per-column phase.
    """
    M = as_complex_matrix(M).copy()
    for j in range(M.shape[1]):
        col = M[:, j]
        mags = np.abs(col)
        if mags.size == 0 or mags.max() <= tol:
            continue
        lead = col[mags > tol * max(1.0, mags.max())][0]
        M[:, j] = col * (abs(lead) / lead)
    return M

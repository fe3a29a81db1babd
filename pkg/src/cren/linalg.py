"""Dense complex linear-algebra kernel for bipartite operators.

All functions accept and return plain numpy arrays (complex128). Inputs are
validated, never mutated; every returned array is freshly allocated.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import (
    DimensionMismatchError,
    NegativeEigenvalueError,
    NotHermitianError,
    NotSquareError,
    ValidationError,
)

HERMITICITY_TOL = 1e-10
PSD_CLAMP_TOL = 1e-9


@dataclass(frozen=True)
class BipartiteDims:
    """Subsystem dimensions (dim_a, dim_b) of a bipartite Hilbert space."""

    dim_a: int
    dim_b: int

    def __post_init__(self):
        if self.dim_a < 1 or self.dim_b < 1:
            raise ValidationError(f"subsystem dimensions must be >= 1, got {self}")

    @property
    def total(self) -> int:
        return self.dim_a * self.dim_b

    @property
    def min_dim(self) -> int:
        return min(self.dim_a, self.dim_b)

    def __str__(self) -> str:
        return f"{self.dim_a}x{self.dim_b}"


def as_complex_matrix(m: np.ndarray) -> np.ndarray:
    """Coerce to a finite complex128 2-D array (copy, read-only)."""
    arr = np.array(m, dtype=complex)
    if arr.ndim != 2:
        raise ValidationError(f"expected a 2-D matrix, got ndim={arr.ndim}")
    if not np.all(np.isfinite(arr.view(float))):
        raise ValidationError("matrix contains NaN or Inf entries")
    arr.flags.writeable = False
    return arr


def _require_square(m: np.ndarray) -> np.ndarray:
    arr = as_complex_matrix(m)
    if arr.shape[0] != arr.shape[1]:
        raise NotSquareError(f"matrix is {arr.shape[0]}x{arr.shape[1]}, expected square")
    return arr


def _require_bipartite(m: np.ndarray, dims: BipartiteDims) -> np.ndarray:
    arr = _require_square(m)
    if arr.shape[0] != dims.total:
        raise DimensionMismatchError(
            f"matrix side {arr.shape[0]} does not match dims {dims} (total {dims.total})"
        )
    return arr


def hermiticity_defect(m: np.ndarray) -> float:
    """Max-norm distance to the Hermitian part, ||M - M^dag||_max."""
    return float(np.abs(m - m.conj().T).max()) if m.size else 0.0


def hermitian_eig(
    m: np.ndarray, hermiticity_tol: float = HERMITICITY_TOL
) -> tuple[np.ndarray, np.ndarray]:
    """Eigendecomposition of a Hermitian matrix, eigenvalues descending.

    Returns (eigenvalues, eigenvectors) with eigenvectors as columns, so
    M = Q diag(w) Q^dag. Ties keep whatever basis LAPACK returns; callers
    must not rely on a particular choice inside degenerate subspaces.
    """
    arr = _require_square(m)
    defect = hermiticity_defect(arr)
    if defect > hermiticity_tol:
        raise NotHermitianError(
            f"hermiticity defect {defect:.3e} exceeds tolerance {hermiticity_tol:.3e}"
        )
    w, q = np.linalg.eigh(arr)
    return w[::-1].copy(), q[:, ::-1].copy()


def trace_norm(m: np.ndarray) -> float:
    """Sum of singular values, ||M||_1."""
    arr = _require_square(m)
    return float(np.linalg.svd(arr, compute_uv=False).sum())


def matrix_sqrt_psd(m: np.ndarray, clamp_tol: float = PSD_CLAMP_TOL) -> np.ndarray:
    """Principal square root of a Hermitian PSD matrix.

    Eigenvalues in [-clamp_tol, 0] are clamped to zero; anything below
    -clamp_tol is rejected rather than repaired.
    """
    arr = _require_square(m)
    w, q = hermitian_eig(arr)
    if w.min(initial=0.0) < -clamp_tol:
        raise NegativeEigenvalueError(
            f"eigenvalue {w.min():.3e} below -clamp_tol ({-clamp_tol:.3e})"
        )
    w = np.clip(w, 0.0, None)
    return (q * np.sqrt(w)) @ q.conj().T


def partial_transpose(m: np.ndarray, dims: BipartiteDims) -> np.ndarray:
    """Transpose the second subsystem: <ij|M^Tb|kl> = <il|M|kj>."""
    arr = _require_bipartite(m, dims)
    da, db = dims.dim_a, dims.dim_b
    t = arr.reshape(da, db, da, db).transpose(0, 3, 2, 1)
    return np.ascontiguousarray(t).reshape(dims.total, dims.total)


def partial_trace(m: np.ndarray, dims: BipartiteDims, which: str) -> np.ndarray:
    """Trace out subsystem `which` ("A" or "B"); the other subsystem remains."""
    arr = _require_bipartite(m, dims)
    da, db = dims.dim_a, dims.dim_b
    t = arr.reshape(da, db, da, db)
    if which == "B":
        return np.einsum("ijkj->ik", t)
    if which == "A":
        return np.einsum("ijil->jl", t)
    raise ValidationError(f"which must be 'A' or 'B', got {which!r}")


def kron(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Kronecker product A (x) B."""
    return np.kron(as_complex_matrix(a), as_complex_matrix(b))


def unitarity_defect(u: np.ndarray) -> float:
    """Max-norm of U^dag U - I."""
    arr = as_complex_matrix(u)
    return float(np.abs(arr.conj().T @ arr - np.eye(arr.shape[1])).max())

"""Closed-form entanglement measures.

Negativity from the partial transpose, its Schmidt-level pure-state form,
closed forms for the isotropic and Werner families, the g/f functions the
pure-state measure factors through, and the two-qubit Wootters concurrence
used as an independent oracle.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np

from .errors import (
    DegenerateDimensionError,
    DimensionMismatchError,
    InternalInconsistencyError,
    NotNormalizedError,
    NotPSDError,
    NotTwoQubitError,
    NotUnitaryError,
    ParameterOutOfRangeError,
)
from .linalg import (
    BipartiteDims,
    as_complex_matrix,
    hermitian_eig,
    matrix_sqrt_psd,
    partial_transpose,
    trace_norm,
    unitarity_defect,
)
from .states import DensityMatrix, PureState, schmidt_decompose

ZERO_CLAMP = 1e-12
UNITARY_TOL = 1e-10


class Method(str, Enum):
    """Provenance of a measure value, for table labeling."""

    CLOSED_FORM = "closed_form"
    PARTIAL_TRANSPOSE = "partial_transpose"
    SCHMIDT = "schmidt"
    ORACLE = "oracle"


@dataclass(frozen=True)
class MeasureValue:
    value: float
    method: Method
    dims_used: BipartiteDims


def _clamp_zero(value: float) -> float:
    """Snap float noise to zero; reject values negative beyond noise."""
    if value < -ZERO_CLAMP:
        raise InternalInconsistencyError(
            f"measure evaluated to {value!r}, below the -{ZERO_CLAMP} noise floor"
        )
    return max(value, 0.0)


def negativity(rho: DensityMatrix) -> MeasureValue:
    """(||rho^Tb||_1 - 1) / (d - 1) with d = min(dim_a, dim_b).

    For min dimension 1 every state is separable and the value is 0 by
    convention (no d - 1 denominator is formed).
    """
    d = rho.dims.min_dim
    if d < 2:
        return MeasureValue(0.0, Method.CLOSED_FORM, rho.dims)
    value = (trace_norm(partial_transpose(rho.matrix, rho.dims)) - 1.0) / (d - 1)
    return MeasureValue(_clamp_zero(value), Method.PARTIAL_TRANSPOSE, rho.dims)


def _check_schmidt_vector(mu: np.ndarray) -> np.ndarray:
    vec = np.array(mu, dtype=float)
    if vec.ndim != 1:
        raise NotNormalizedError("Schmidt probabilities must be a 1-D vector")
    if vec.min(initial=0.0) < -ZERO_CLAMP:
        raise NotNormalizedError(f"negative Schmidt probability {vec.min()!r}")
    if abs(vec.sum() - 1.0) > 1e-10:
        raise NotNormalizedError(f"Schmidt probabilities sum to {vec.sum()!r}, expected 1")
    return np.clip(vec, 0.0, None)


def pure_negativity(mu: np.ndarray) -> MeasureValue:
    """Pure-state negativity 2/(d-1) * sum_{i<j} sqrt(mu_i mu_j)."""
    vec = _check_schmidt_vector(mu)
    d = len(vec)
    if d < 2:
        raise DegenerateDimensionError("need at least 2 Schmidt probabilities")
    s = np.sqrt(vec)
    i, j = np.triu_indices(d, k=1)
    value = 2.0 / (d - 1) * float((s[i] * s[j]).sum())
    return MeasureValue(_clamp_zero(value), Method.SCHMIDT, BipartiteDims(d, d))


def cren_pure(psi: PureState) -> MeasureValue:
    """Convex-roof extended negativity of a pure state.

    A pure state is its own optimal decomposition, so this is just the
    pure-state negativity of its Schmidt probabilities.
    """
    if psi.dims.min_dim < 2:
        return MeasureValue(0.0, Method.SCHMIDT, psi.dims)
    mu = schmidt_decompose(psi).probabilities
    value = pure_negativity(mu).value
    return MeasureValue(value, Method.SCHMIDT, psi.dims)


def g_function(rho: np.ndarray, clamp_tol: float = 1e-9) -> float:
    """[tr sqrt(rho)]^2 for a Hermitian PSD matrix.

    Concave and unitarily invariant; equals d on I/d and 1 on pure
    projectors.
    """
    arr = as_complex_matrix(rho)
    w, _ = hermitian_eig(arr)
    if w.min(initial=0.0) < -clamp_tol:
        raise NotPSDError(f"eigenvalue {w.min():.3e} below -{clamp_tol}")
    total = float(np.sqrt(np.clip(w, 0.0, None)).sum())
    return total * total


def f_function(rho_a: np.ndarray, d: int) -> float:
    """(g(rho_a) - 1)/(d - 1), the reduced-state form of pure negativity.

    `d` must equal the side of rho_a; the value coincides with
    pure_negativity applied to the eigenvalue vector of rho_a.
    """
    arr = as_complex_matrix(rho_a)
    if arr.shape[0] != d:
        raise DimensionMismatchError(f"d={d} does not match matrix side {arr.shape[0]}")
    if d < 2:
        raise DegenerateDimensionError("f is undefined for d < 2")
    return (g_function(arr) - 1.0) / (d - 1)


def cren_isotropic(fidelity: float, d: int) -> MeasureValue:
    """Closed form for isotropic states: max{(F d - 1)/(d - 1), 0}."""
    if d < 2:
        raise ParameterOutOfRangeError(f"dimension must be >= 2, got {d}")
    if not 0.0 <= fidelity <= 1.0:
        raise ParameterOutOfRangeError(f"fidelity must lie in [0, 1], got {fidelity!r}")
    value = max((fidelity * d - 1.0) / (d - 1), 0.0)
    return MeasureValue(value, Method.CLOSED_FORM, BipartiteDims(d, d))


def cren_werner(weight: float, d: int) -> MeasureValue:
    """Closed form for Werner states: max{(2W - 1)/(d - 1), 0}."""
    if d < 2:
        raise ParameterOutOfRangeError(f"dimension must be >= 2, got {d}")
    if not 0.0 <= weight <= 1.0:
        raise ParameterOutOfRangeError(f"weight must lie in [0, 1], got {weight!r}")
    value = max((2.0 * weight - 1.0) / (d - 1), 0.0)
    return MeasureValue(value, Method.CLOSED_FORM, BipartiteDims(d, d))


_SIGMA_Y = np.array([[0.0, -1.0j], [1.0j, 0.0]])


def wootters_concurrence(rho: DensityMatrix) -> MeasureValue:
    """Two-qubit concurrence max{0, l1 - l2 - l3 - l4}.

    The l_i are the descending square roots of the eigenvalues of
    rho (sy (x) sy) rho* (sy (x) sy), computed through the Hermitian
    form sqrt(rho) (sy (x) sy) rho* (sy (x) sy) sqrt(rho) to avoid a
    non-Hermitian eigenproblem.
    """
    if (rho.dims.dim_a, rho.dims.dim_b) != (2, 2):
        raise NotTwoQubitError(f"concurrence requires 2x2 dims, got {rho.dims}")
    yy = np.kron(_SIGMA_Y, _SIGMA_Y)
    sq = matrix_sqrt_psd(rho.matrix)
    herm = sq @ yy @ rho.matrix.conj() @ yy @ sq
    lam = np.sqrt(np.clip(np.linalg.eigvalsh(herm), 0.0, None))[::-1]
    value = max(0.0, float(lam[0] - lam[1] - lam[2] - lam[3]))
    return MeasureValue(value, Method.ORACLE, rho.dims)


def _check_unitary(u: np.ndarray, d: int, name: str) -> np.ndarray:
    arr = as_complex_matrix(u)
    if arr.shape != (d, d):
        raise DimensionMismatchError(f"{name} has shape {arr.shape}, expected ({d}, {d})")
    defect = unitarity_defect(arr)
    if defect > UNITARY_TOL:
        raise NotUnitaryError(f"{name} unitarity defect {defect:.3e} exceeds {UNITARY_TOL}")
    return arr


def isotropic_fidelity_of_pure(mu: np.ndarray, v: np.ndarray) -> float:
    """Fidelity parameter of a twirled pure state from its Schmidt data.

    F(mu, V) = (1/d) |sum_k sqrt(mu_k) V_kk|^2 with V the product of the
    local basis changes (transpose of A side times B side).
    """
    vec = _check_schmidt_vector(mu)
    d = len(vec)
    varr = _check_unitary(v, d, "V")
    amp = np.sqrt(vec) @ np.diagonal(varr)
    value = float(np.abs(amp) ** 2) / d
    return min(max(value, 0.0), 1.0)


def werner_overlap_of_pure(mu: np.ndarray, lam: np.ndarray) -> float:
    """Antisymmetric weight of a twirled pure state from its Schmidt data.

    W(mu, L) = 1/2 sum_{i<j} |sqrt(mu_i) L_ji - sqrt(mu_j) L_ij|^2 with L
    the product of the local basis changes (adjoint of A side times B side).
    """
    vec = _check_schmidt_vector(mu)
    d = len(vec)
    larr = _check_unitary(lam, d, "Lambda")
    s = np.sqrt(vec)
    i, j = np.triu_indices(d, k=1)
    terms = np.abs(s[i] * larr[j, i] - s[j] * larr[i, j]) ** 2
    value = 0.5 * float(terms.sum())
    return min(max(value, 0.0), 1.0)

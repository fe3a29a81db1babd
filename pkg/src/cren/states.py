"""Bipartite state construction and analysis.

Pure and mixed state containers with validation on construction, Schmidt
decomposition, the isotropic and Werner families with their analytic
twirling projections, and seeded random state generation.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import (
    DimensionMismatchError,
    NotHermitianError,
    NotNormalizedError,
    NotPSDError,
    NotSquareBipartitionError,
    ParameterOutOfRangeError,
    RankOutOfRangeError,
    TraceNotOneError,
)
from .linalg import BipartiteDims, as_complex_matrix, hermiticity_defect

NORM_TOL = 1e-10
TRACE_TOL = 1e-10
EIG_FLOOR = -1e-9


@dataclass(frozen=True)
class PureState:
    """Unit vector on a bipartite Hilbert space, basis order |a*dim_b + b>."""

    dims: BipartiteDims
    amplitudes: np.ndarray

    def __post_init__(self):
        vec = np.array(self.amplitudes, dtype=complex)
        if vec.ndim != 1 or vec.shape[0] != self.dims.total:
            raise DimensionMismatchError(
                f"amplitude vector has shape {vec.shape}, expected ({self.dims.total},)"
            )
        if not np.all(np.isfinite(vec.view(float))):
            raise NotNormalizedError("amplitudes contain NaN or Inf")
        norm = float(np.linalg.norm(vec))
        if abs(norm - 1.0) > NORM_TOL:
            raise NotNormalizedError(f"norm {norm!r} deviates from 1 by more than {NORM_TOL}")
        vec.flags.writeable = False
        object.__setattr__(self, "amplitudes", vec)

    def coefficient_matrix(self) -> np.ndarray:
        """Reshape amplitudes to the dim_a x dim_b coefficient matrix."""
        return self.amplitudes.reshape(self.dims.dim_a, self.dims.dim_b)

    def projector(self) -> np.ndarray:
        return np.outer(self.amplitudes, self.amplitudes.conj())

    def to_density(self) -> "DensityMatrix":
        return DensityMatrix(self.dims, self.projector())


@dataclass(frozen=True)
class DensityMatrix:
    """Hermitian, PSD, unit-trace operator on a bipartite space.

    Construction validates; states failing the PSD floor are rejected,
    not repaired.
    """

    dims: BipartiteDims
    matrix: np.ndarray

    def __post_init__(self):
        arr = as_complex_matrix(self.matrix)
        if arr.shape != (self.dims.total, self.dims.total):
            raise DimensionMismatchError(
                f"matrix shape {arr.shape} does not match dims {self.dims}"
            )
        defect = hermiticity_defect(arr)
        if defect > NORM_TOL:
            raise NotHermitianError(f"hermiticity defect {defect:.3e} exceeds {NORM_TOL}")
        tr = complex(np.trace(arr))
        if abs(tr - 1.0) > TRACE_TOL:
            raise TraceNotOneError(f"trace {tr!r} deviates from 1 by more than {TRACE_TOL}")
        lo = float(np.linalg.eigvalsh(arr).min())
        if lo < EIG_FLOOR:
            raise NotPSDError(f"eigenvalue {lo:.3e} below floor {EIG_FLOOR}")
        object.__setattr__(self, "matrix", arr)


@dataclass(frozen=True)
class SchmidtDecomposition:
    """Schmidt probabilities (descending) and the local basis unitaries.

    Reconstruction: psi = (U_A (x) U_B) sum_j sqrt(mu_j) |jj>. With
    degenerate probabilities the unitaries are one valid choice among
    many; only the reconstruction is contractual.
    """

    probabilities: np.ndarray
    local_unitary_a: np.ndarray
    local_unitary_b: np.ndarray


def validate_density(matrix: np.ndarray, dims: BipartiteDims) -> DensityMatrix:
    """Certify a raw matrix as a density matrix on `dims`."""
    return DensityMatrix(dims, matrix)


def schmidt_decompose(psi: PureState) -> SchmidtDecomposition:
    """Schmidt decomposition via SVD of the coefficient matrix.

    Probabilities are the squared singular values, sorted descending.
    """
    u, s, vh = np.linalg.svd(psi.coefficient_matrix(), full_matrices=True)
    return SchmidtDecomposition(
        probabilities=s * s,
        local_unitary_a=u,
        local_unitary_b=vh.T.copy(),
    )


def schmidt_reconstruct(dec: SchmidtDecomposition, dims: BipartiteDims) -> PureState:
    """Rebuild the pure state from Schmidt data."""
    coeff = np.sqrt(dec.probabilities)
    mat = (dec.local_unitary_a[:, : len(coeff)] * coeff) @ dec.local_unitary_b[:, : len(coeff)].T
    return PureState(dims, mat.reshape(-1))


def max_entangled(d: int) -> PureState:
    """The canonical maximally entangled state (1/sqrt(d)) sum_j |jj>."""
    vec = np.zeros(d * d, dtype=complex)
    vec[:: d + 1] = 1.0 / np.sqrt(d)
    return PureState(BipartiteDims(d, d), vec)


def swap_operator(d: int) -> np.ndarray:
    """Exchange operator S|ij> = |ji> on a d x d bipartite space."""
    s = np.zeros((d * d, d * d), dtype=complex)
    for i in range(d):
        for j in range(d):
            s[i * d + j, j * d + i] = 1.0
    return s


def symmetric_projector(d: int) -> np.ndarray:
    return (np.eye(d * d, dtype=complex) + swap_operator(d)) / 2.0


def antisymmetric_projector(d: int) -> np.ndarray:
    return (np.eye(d * d, dtype=complex) - swap_operator(d)) / 2.0


def _check_family_params(param: float, d: int, name: str) -> None:
    if d < 2:
        raise ParameterOutOfRangeError(f"family dimension must be >= 2, got {d}")
    if not 0.0 <= param <= 1.0:
        raise ParameterOutOfRangeError(f"{name} must lie in [0, 1], got {param!r}")


def isotropic_state(fidelity: float, d: int) -> DensityMatrix:
    """Mixture of the maximally entangled projector and white noise.

    rho_F = (1-F)/(d^2-1) (I - P_+) + F P_+, where P_+ projects onto the
    maximally entangled state and F is recoverable via fidelity_param.
    """
    _check_family_params(fidelity, d, "fidelity")
    p_plus = max_entangled(d).projector()
    eye = np.eye(d * d, dtype=complex)
    mat = (1.0 - fidelity) / (d * d - 1) * (eye - p_plus) + fidelity * p_plus
    return DensityMatrix(BipartiteDims(d, d), mat)


def werner_state(weight: float, d: int) -> DensityMatrix:
    """Exchange-invariant state with antisymmetric weight W.

    rho_W = 2(1-W)/(d(d+1)) P_sym + 2W/(d(d-1)) P_anti; W is recoverable
    via werner_param.
    """
    _check_family_params(weight, d, "weight")
    mat = 2.0 * (1.0 - weight) / (d * (d + 1)) * symmetric_projector(d)
    mat += 2.0 * weight / (d * (d - 1)) * antisymmetric_projector(d)
    return DensityMatrix(BipartiteDims(d, d), mat)


def _require_square_bipartition(rho: DensityMatrix) -> int:
    if rho.dims.dim_a != rho.dims.dim_b:
        raise NotSquareBipartitionError(
            f"operation requires dim_a == dim_b, got {rho.dims}"
        )
    return rho.dims.dim_a


def fidelity_param(rho: DensityMatrix) -> float:
    """Overlap <Phi+|rho|Phi+> with the maximally entangled state."""
    d = _require_square_bipartition(rho)
    phi = max_entangled(d).amplitudes
    val = float(np.real(phi.conj() @ rho.matrix @ phi))
    return min(max(val, 0.0), 1.0)


def werner_param(rho: DensityMatrix) -> float:
    """Overlap tr(rho P_anti) with the antisymmetric subspace."""
    d = _require_square_bipartition(rho)
    val = float(np.real(np.trace(rho.matrix @ antisymmetric_projector(d))))
    return min(max(val, 0.0), 1.0)


def twirl_isotropic(rho: DensityMatrix) -> DensityMatrix:
    """Project onto the isotropic family, preserving the fidelity parameter.

    Analytic form of averaging rho over U (x) U* conjugations; idempotent.
    """
    d = _require_square_bipartition(rho)
    return isotropic_state(fidelity_param(rho), d)


def twirl_werner(rho: DensityMatrix) -> DensityMatrix:
    """Project onto the Werner family, preserving the antisymmetric weight.

    Analytic form of averaging rho over U (x) U conjugations; idempotent.
    """
    d = _require_square_bipartition(rho)
    return werner_state(werner_param(rho), d)


def random_pure(dims: BipartiteDims, seed: int) -> PureState:
    """Haar-random pure state: normalized complex Gaussian vector (PCG64)."""
    rng = np.random.default_rng(seed)
    vec = rng.standard_normal(dims.total) + 1j * rng.standard_normal(dims.total)
    return PureState(dims, vec / np.linalg.norm(vec))


def random_density(dims: BipartiteDims, rank: int, seed: int) -> DensityMatrix:
    """Normalized Wishart matrix of the requested rank (PCG64)."""
    if not 1 <= rank <= dims.total:
        raise RankOutOfRangeError(f"rank must be in [1, {dims.total}], got {rank}")
    rng = np.random.default_rng(seed)
    g = rng.standard_normal((dims.total, rank)) + 1j * rng.standard_normal((dims.total, rank))
    mat = g @ g.conj().T
    mat /= np.real(np.trace(mat))
    mat = (mat + mat.conj().T) / 2.0
    return DensityMatrix(dims, mat)

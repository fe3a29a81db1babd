"""Variational convex-roof minimization of the average pure-state negativity.

The minimum over pure-state decompositions of a density matrix is searched
by parameterizing all size-K decompositions through left-orthonormal K x r
matrices acting on the eigen-ensemble (the purification freedom) and
refining seeded random starting points on that manifold. The result is an
upper bound on the convex roof together with the decomposition that
attains it; local search carries no global optimality certificate.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import (
    ConfigInvalidError,
    DegenerateDimensionError,
    DimensionMismatchError,
    NotIsometryError,
    RankMismatchError,
    ValidationError,
)
from .linalg import BipartiteDims, hermitian_eig
from .measures import pure_negativity
from .states import DensityMatrix, PureState

RANK_CUTOFF = 1e-10
WEIGHT_PRUNE = 1e-12
ISOMETRY_TOL = 1e-8

# Smoothing schedule for the nuclear-norm part of the objective. Each stage
# descends sum_k (sum_i sqrt(s_ki^2 + eps))^2-type surrogates; the kinks of
# sqrt at zero singular values are the only non-smooth points, so annealing
# eps to zero recovers the exact objective while keeping gradients finite.
_EPS_STAGES = (1e-2, 1e-4, 1e-6, 1e-9, 0.0)
_KICK_AMPLITUDES = (0.3, 0.1, 0.03)
_KICK_ROUNDS = 3
_STALL_LIMIT = 10


@dataclass(frozen=True)
class Decomposition:
    """Weighted pure-state ensemble {p_k, psi_k} of a density matrix."""

    weights: np.ndarray
    states: tuple[PureState, ...]

    def __post_init__(self):
        w = np.array(self.weights, dtype=float)
        if w.ndim != 1 or len(w) != len(self.states) or len(w) == 0:
            raise ValidationError("weights and states must be equal-length and non-empty")
        if w.min() <= 0.0:
            raise ValidationError(f"weights must be positive, got min {w.min()!r}")
        if abs(w.sum() - 1.0) > 1e-8:
            raise ValidationError(f"weights sum to {w.sum()!r}, expected 1")
        dims = self.states[0].dims
        if any(s.dims != dims for s in self.states):
            raise DimensionMismatchError("all member states must share the same dims")
        w.flags.writeable = False
        object.__setattr__(self, "weights", w)

    @property
    def size(self) -> int:
        return len(self.states)

    @property
    def dims(self) -> BipartiteDims:
        return self.states[0].dims

    def reconstruct(self) -> np.ndarray:
        """The mixture sum_k p_k |psi_k><psi_k| as a raw matrix."""
        out = np.zeros((self.dims.total, self.dims.total), dtype=complex)
        for p, psi in zip(self.weights, self.states):
            out += p * psi.projector()
        return out


@dataclass(frozen=True)
class OptimizerConfig:
    """Knobs for optimize_cren.

    ensemble_size None means min(2 * rank, rank + 4), chosen per state.
    A restart stops once the objective improves by less than
    value_tolerance for 10 consecutive iterations, the line search cannot
    find a step above step_tolerance, or max_iterations is exhausted.
    """

    ensemble_size: int | None = None
    restarts: int = 16
    max_iterations: int = 2000
    step_tolerance: float = 1e-12
    value_tolerance: float = 1e-7
    seed: int = 42


@dataclass(frozen=True)
class CrenResult:
    """Optimizer output. `value` is an upper bound on the convex roof.

    `converged` reports whether the restart that produced `value` stopped
    by its tolerance criterion rather than by the iteration cap.
    """

    value: float
    witness: Decomposition
    restarts_used: int
    iterations: int
    converged: bool
    seed: int


@dataclass(frozen=True)
class VerificationReport:
    reconstruction_residual: float
    weight_sum_deviation: float
    member_norm_deviations: tuple[float, ...]
    tolerance: float
    passes: bool


def _eigen_ensemble(rho: DensityMatrix) -> tuple[np.ndarray, np.ndarray]:
    """Support eigenvalues (descending, > cutoff) and their eigenvectors."""
    w, q = hermitian_eig(rho.matrix)
    keep = w > RANK_CUTOFF
    return w[keep], q[:, keep]


def expand_decomposition(rho: DensityMatrix, isometry: np.ndarray) -> Decomposition:
    """Decomposition generated by a K x r left-orthonormal matrix.

    Members are psi_k ~ sum_j T_kj sqrt(lam_j) |e_j> over the eigen-ensemble
    of rho; T^dag T = I guarantees the mixture reproduces rho.
    """
    lam, vecs = _eigen_ensemble(rho)
    r = len(lam)
    t = np.array(isometry, dtype=complex)
    if t.ndim != 2 or t.shape[1] != r:
        raise RankMismatchError(
            f"isometry shape {t.shape} does not match rank {r} of the state"
        )
    if t.shape[0] < r:
        raise NotIsometryError(f"isometry needs at least rank many rows, got {t.shape[0]}")
    defect = float(np.abs(t.conj().T @ t - np.eye(r)).max())
    if defect > ISOMETRY_TOL:
        raise NotIsometryError(f"columns deviate from orthonormality by {defect:.3e}")
    return _decomposition_from_rows((t * np.sqrt(lam)) @ vecs.T, rho.dims, merge=False)


def _decomposition_from_rows(
    unnormalized: np.ndarray, dims: BipartiteDims, merge: bool
) -> Decomposition:
    """Build a Decomposition from unnormalized member vectors (rows).

    Zero-weight members are always pruned. With merge=True, members equal
    up to global phase are coalesced, so a pure input yields a
    single-member witness.
    """
    weights = np.einsum("kn,kn->k", unnormalized, unnormalized.conj()).real
    keep = weights > WEIGHT_PRUNE
    weights = weights[keep]
    members = unnormalized[keep] / np.sqrt(weights)[:, None]
    merged_w: list[float] = []
    merged_v: list[np.ndarray] = []
    for w, v in zip(weights, members):
        if merge:
            hit = next(
                (i for i, u in enumerate(merged_v) if abs(abs(np.vdot(u, v)) - 1.0) < 1e-10),
                None,
            )
            if hit is not None:
                merged_w[hit] += w
                continue
        merged_w.append(float(w))
        merged_v.append(v)
    total = sum(merged_w)
    return Decomposition(
        weights=np.array(merged_w) / total,
        states=tuple(PureState(dims, v) for v in merged_v),
    )


def decomposition_objective(dec: Decomposition) -> float:
    """Average pure-state negativity sum_k p_k N_p(mu_k) of the ensemble."""
    d = dec.dims.min_dim
    if d < 2:
        return 0.0
    total = 0.0
    for p, psi in zip(dec.weights, dec.states):
        s = np.linalg.svd(psi.coefficient_matrix(), compute_uv=False)
        total += p * pure_negativity(s * s).value
    return total


def verify_decomposition(
    dec: Decomposition, rho: DensityMatrix, tol: float = 1e-8
) -> VerificationReport:
    """Check that an ensemble reconstructs rho within tol (max norm)."""
    if dec.dims != rho.dims:
        raise DimensionMismatchError(
            f"decomposition dims {dec.dims} do not match state dims {rho.dims}"
        )
    residual = float(np.abs(dec.reconstruct() - rho.matrix).max())
    weight_dev = abs(float(dec.weights.sum()) - 1.0)
    norm_devs = tuple(
        abs(float(np.linalg.norm(s.amplitudes)) - 1.0) for s in dec.states
    )
    passes = residual <= tol and weight_dev <= tol and all(nd <= tol for nd in norm_devs)
    return VerificationReport(residual, weight_dev, norm_devs, tol, passes)


# ---------------------------------------------------------------------------
# Local refinement on the isometry manifold
# ---------------------------------------------------------------------------


def _qf(x: np.ndarray) -> np.ndarray:
    """Q factor of a thin QR, with phases fixed so the map is deterministic."""
    q, r = np.linalg.qr(x)
    diag = np.diagonal(r)
    safe = np.where(np.abs(diag) < 1e-300, 1.0, diag)
    return q * (safe / np.abs(safe)).conj()


def _surrogate(t: np.ndarray, basis: np.ndarray, d_min: int, eps: float):
    """Smoothed objective pieces for ensemble matrix T and scaled eigenbasis."""
    c = np.einsum("kj,jab->kab", t, basis)
    gram = np.einsum("kab,kcb->kac", c, c.conj())
    lam, u = np.linalg.eigh(gram)
    lam = np.clip(lam, 0.0, None)
    root = np.sqrt(lam + eps)
    nuclear = root.sum(axis=1) - np.sqrt(eps) * lam.shape[1]
    weight = lam.sum(axis=1)
    value = float((nuclear**2 - weight).sum()) / (d_min - 1)
    return value, c, lam, u, root, nuclear


def _surrogate_value(t: np.ndarray, basis: np.ndarray, d_min: int, eps: float) -> float:
    c = np.einsum("kj,jab->kab", t, basis)
    lam = np.clip(np.linalg.eigvalsh(np.einsum("kab,kcb->kac", c, c.conj())), 0.0, None)
    nuclear = np.sqrt(lam + eps).sum(axis=1) - np.sqrt(eps) * lam.shape[1]
    return float((nuclear**2 - lam.sum(axis=1)).sum()) / (d_min - 1)


def _surrogate_grad(t, basis, d_min, eps):
    value, c, lam, u, root, nuclear = _surrogate(t, basis, d_min, eps)
    # d nuclear / d C^bar = P C with P = U diag(1/(2 sqrt(lam+eps))) U^dag;
    # the floor keeps the direction finite at exactly zero singular values.
    h = 1.0 / (2.0 * np.maximum(root, 1e-9))
    p = np.einsum("kai,ki,kbi->kab", u, h, u.conj())
    pc = np.einsum("kab,kbc->kac", p, c)
    gc = (2.0 * nuclear[:, None, None] * pc - c) / (d_min - 1)
    return value, np.einsum("kab,jab->kj", gc, basis.conj())


def _descend(t, basis, d_min, eps, budget, value_tol, step_tol):
    """Projected-gradient descent with backtracking; monotone by construction."""
    f, g = _surrogate_grad(t, basis, d_min, eps)
    alpha, stall, used = 0.1, 0, 0
    while used < budget:
        used += 1
        m = t.conj().T @ g
        direction = g - t @ (m + m.conj().T) / 2.0
        a, accepted = alpha, False
        for _ in range(60):
            trial = _qf(t - a * direction)
            f_trial = _surrogate_value(trial, basis, d_min, eps)
            if np.isfinite(f_trial) and f_trial < f:
                accepted = True
                break
            a *= 0.5
            if a < step_tol:
                break
        if not accepted:
            return f, t, used, True
        gain = f - f_trial
        t = trial
        f, g = _surrogate_grad(t, basis, d_min, eps)
        alpha = min(a * 1.5, 1.0)
        stall = stall + 1 if gain < value_tol else 0
        if stall >= _STALL_LIMIT:
            return f, t, used, True
    return f, t, used, False


def _refine(t, basis, d_min, cfg: OptimizerConfig):
    """Anneal the smoothing through the stage schedule, then report exactly."""
    used = 0
    converged = True
    for eps in _EPS_STAGES:
        stage_tol = max(cfg.value_tolerance, eps * 1e-3)
        _, t, it, _ = _descend(
            t, basis, d_min, eps, cfg.max_iterations - used, stage_tol, cfg.step_tolerance
        )
        used += it
        if used >= cfg.max_iterations:
            converged = False
            break
    return _surrogate_value(t, basis, d_min, 0.0), t, used, converged


def _isometry_from_decomposition(
    dec: Decomposition, lam: np.ndarray, vecs: np.ndarray
) -> np.ndarray:
    """Recover the ensemble matrix of a decomposition over rho's eigenbasis."""
    rows = np.sqrt(dec.weights)[:, None] * np.array([s.amplitudes for s in dec.states])
    t = (rows @ vecs.conj()) / np.sqrt(lam)
    gram = t.conj().T @ t
    defect = float(np.abs(gram - np.eye(len(lam))).max())
    if defect > 1e-6:
        raise NotIsometryError(
            f"warm-start decomposition does not reproduce the state (defect {defect:.3e})"
        )
    # polar projection onto exact isometries
    u, _, vh = np.linalg.svd(t, full_matrices=False)
    return u @ vh


def optimize_cren(
    rho: DensityMatrix,
    config: OptimizerConfig | None = None,
    warm_starts: tuple[Decomposition, ...] = (),
) -> CrenResult:
    """Upper bound on the convex-roof extended negativity of rho.

    Runs config.restarts seeded starts (one eigen-ensemble start, the rest
    Haar-random isometries), refines each by projected gradient descent
    with an annealed smoothing of the objective, then tries accept-only
    perturbation kicks around the best point. Deterministic given
    (config.seed, rho); the best-so-far objective never increases.

    warm_starts adds extra restarts seeded from given decompositions of
    rho (their member count may differ from config.ensemble_size).
    """
    cfg = config or OptimizerConfig()
    if cfg.restarts < 1:
        raise ConfigInvalidError(f"restarts must be >= 1, got {cfg.restarts}")
    if cfg.max_iterations < 1:
        raise ConfigInvalidError(f"max_iterations must be >= 1, got {cfg.max_iterations}")
    if cfg.value_tolerance <= 0 or cfg.step_tolerance <= 0:
        raise ConfigInvalidError("tolerances must be positive")
    if rho.dims.min_dim < 2:
        raise DegenerateDimensionError(
            "convex-roof search needs min(dim_a, dim_b) >= 2; such states are separable"
        )
    for dec in warm_starts:
        if dec.dims != rho.dims:
            raise DimensionMismatchError("warm start dims do not match the state")

    lam, vecs = _eigen_ensemble(rho)
    rank = len(lam)
    k = cfg.ensemble_size if cfg.ensemble_size is not None else min(2 * rank, rank + 4)
    if k < rank:
        raise ConfigInvalidError(f"ensemble_size {k} is below the state rank {rank}")

    da, db = rho.dims.dim_a, rho.dims.dim_b
    basis = (np.sqrt(lam)[:, None] * vecs.T).reshape(rank, da, db)
    d_min = rho.dims.min_dim

    seeds = np.random.SeedSequence(cfg.seed).spawn(len(warm_starts) + cfg.restarts + 1)
    starts: list[np.ndarray] = []
    for dec in warm_starts:
        starts.append(_isometry_from_decomposition(dec, lam, vecs))
    eigen_start = np.zeros((k, rank), dtype=complex)
    eigen_start[:rank, :rank] = np.eye(rank)
    starts.append(eigen_start)
    for i in range(cfg.restarts - 1):
        rng = np.random.default_rng(seeds[len(warm_starts) + i])
        x = rng.standard_normal((k, rank)) + 1j * rng.standard_normal((k, rank))
        starts.append(_qf(x))

    best_f, best_t, best_conv = np.inf, None, False
    iterations = 0
    for t0 in starts:
        f, t, used, conv = _refine(t0, basis, d_min, cfg)
        iterations += used
        if f < best_f:
            best_f, best_t, best_conv = f, t, conv

    if best_f > 1e-8:
        rng = np.random.default_rng(seeds[-1])
        for _ in range(_KICK_ROUNDS):
            improved = False
            for amp in _KICK_AMPLITUDES:
                noise = rng.standard_normal(best_t.shape) + 1j * rng.standard_normal(
                    best_t.shape
                )
                f, t, used, conv = _refine(_qf(best_t + amp * noise), basis, d_min, cfg)
                iterations += used
                if f < best_f - 1e-12:
                    best_f, best_t, best_conv = f, t, conv
                    improved = True
            if not improved:
                break

    witness = _decomposition_from_rows((best_t * np.sqrt(lam)) @ vecs.T, rho.dims, merge=True)
    return CrenResult(
        value=decomposition_objective(witness),
        witness=witness,
        restarts_used=len(starts),
        iterations=iterations,
        converged=best_conv,
        seed=cfg.seed,
    )

"""Convex-roof extended negativity for bipartite quantum states.

Exact closed forms for pure, isotropic, and Werner states; a variational
convex-roof optimizer producing certified upper bounds with witness
decompositions for arbitrary mixed states; validated against the
partial-transpose negativity and the two-qubit Wootters concurrence.
"""

from .convexroof import (
    CrenResult,
    Decomposition,
    OptimizerConfig,
    VerificationReport,
    decomposition_objective,
    expand_decomposition,
    optimize_cren,
    verify_decomposition,
)
from .linalg import (
    BipartiteDims,
    hermitian_eig,
    kron,
    matrix_sqrt_psd,
    partial_trace,
    partial_transpose,
    trace_norm,
)
from .measures import (
    MeasureValue,
    Method,
    cren_isotropic,
    cren_pure,
    cren_werner,
    f_function,
    g_function,
    isotropic_fidelity_of_pure,
    negativity,
    pure_negativity,
    werner_overlap_of_pure,
    wootters_concurrence,
)
from .stateio import StateFile, parse_state, write_state
from .states import (
    DensityMatrix,
    PureState,
    SchmidtDecomposition,
    antisymmetric_projector,
    fidelity_param,
    isotropic_state,
    max_entangled,
    random_density,
    random_pure,
    schmidt_decompose,
    schmidt_reconstruct,
    swap_operator,
    symmetric_projector,
    twirl_isotropic,
    twirl_werner,
    validate_density,
    werner_param,
    werner_state,
)

__version__ = "0.1.0"

__all__ = [
    "BipartiteDims",
    "CrenResult",
    "Decomposition",
    "DensityMatrix",
    "MeasureValue",
    "Method",
    "OptimizerConfig",
    "PureState",
    "SchmidtDecomposition",
    "StateFile",
    "VerificationReport",
    "antisymmetric_projector",
    "cren_isotropic",
    "cren_pure",
    "cren_werner",
    "decomposition_objective",
    "expand_decomposition",
    "f_function",
    "fidelity_param",
    "g_function",
    "hermitian_eig",
    "isotropic_fidelity_of_pure",
    "isotropic_state",
    "kron",
    "matrix_sqrt_psd",
    "max_entangled",
    "negativity",
    "optimize_cren",
    "parse_state",
    "partial_trace",
    "partial_transpose",
    "pure_negativity",
    "random_density",
    "random_pure",
    "schmidt_decompose",
    "schmidt_reconstruct",
    "swap_operator",
    "symmetric_projector",
    "trace_norm",
    "twirl_isotropic",
    "twirl_werner",
    "validate_density",
    "verify_decomposition",
    "werner_overlap_of_pure",
    "werner_param",
    "werner_state",
    "wootters_concurrence",
    "write_state",
]

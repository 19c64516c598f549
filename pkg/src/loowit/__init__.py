"""Optimal linear and nonlinear entanglement witnesses from local orthogonal
observables, with the PPT/realignment criteria and I-concurrence lower bounds
they induce for bipartite states."""

from .criteria import (
    ConcurrenceBound,
    Criterion,
    Verdict,
    concurrence_lower_bounds,
    concurrence_pure,
    evaluate_all,
)
from .loo import (
    LOOBasis,
    OperatorSchmidt,
    OrthogonalRotation,
    gell_mann_basis,
    haar_rotation,
    operator_schmidt,
    pauli_basis,
    rotate,
    transpose_basis,
)
from .oracle import OracleReport, recompute_witness_direct, sampled_max_trace
from .qstate import (
    DensityMatrix,
    SchmidtDecomposition,
    Violation,
    load_state,
    make_state,
    mixture,
    partial_trace,
    partial_transpose,
    pure_state,
    realign,
    save_state,
    schmidt,
    trace_norm,
    validate,
    white_noise_mixture,
)
from .witness import (
    CorrelationData,
    CorrelationKind,
    LinearOptimum,
    NonlinearOptimum,
    WitnessCertificate,
    certify,
    correlation_matrix,
    covariance_matrix,
    linear_witness_value,
    lmax_pure,
    nonlinear_witness_value,
    optimal_linear_min,
    optimal_nonlinear_min,
)

__version__ = "0.1.0"

__all__ = [
    "ConcurrenceBound",
    "CorrelationData",
    "CorrelationKind",
    "Criterion",
    "DensityMatrix",
    "LOOBasis",
    "LinearOptimum",
    "NonlinearOptimum",
    "OperatorSchmidt",
    "OracleReport",
    "OrthogonalRotation",
    "SchmidtDecomposition",
    "Verdict",
    "Violation",
    "WitnessCertificate",
    "certify",
    "concurrence_lower_bounds",
    "concurrence_pure",
    "correlation_matrix",
    "covariance_matrix",
    "evaluate_all",
    "gell_mann_basis",
    "haar_rotation",
    "linear_witness_value",
    "lmax_pure",
    "load_state",
    "make_state",
    "mixture",
    "nonlinear_witness_value",
    "operator_schmidt",
    "optimal_linear_min",
    "optimal_nonlinear_min",
    "partial_trace",
    "partial_transpose",
    "pauli_basis",
    "pure_state",
    "realign",
    "recompute_witness_direct",
    "rotate",
    "save_state",
    "schmidt",
    "trace_norm",
    "transpose_basis",
    "validate",
    "white_noise_mixture",
]

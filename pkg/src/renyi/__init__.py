"""Renyi entropies, divergences, and verification of their matrix-inequality bounds."""

from .classical import (
    SupportStats,
    entropy_type_beta,
    entropy_type_beta_chain,
    info_function_beta,
    order_from_type,
    probability_vector,
    renyi_entropy,
    shannon_entropy,
    support_stats,
    t1_bound,
    type_beta_product_bound,
)
from .divergence import (
    DivergenceResult,
    OptimizationOutcome,
    T5ClosedForm,
    bloch_grid_minimum,
    conditional_entropy,
    equality_condition_check,
    mutual_information,
    renyi_relative_entropy,
    subsystem_entropy,
    t4_lower_bound,
    t5_closed_form,
    t6_lower_bound,
    triangle_bound_check,
)
from .harness import (
    SUITES,
    SuiteReport,
    derive_rng,
    random_density,
    random_pd,
    random_simplex,
    replay,
    run_suite,
)
from .linalg import (
    Definiteness,
    PsdClass,
    SpectralDecomposition,
    as_hermitian,
    classify_definiteness,
    kron,
    lemma2_check,
    lemma3_check,
    lemma4_check,
    log_det,
    matrix_power,
    partial_trace_a,
    partial_trace_b,
    spectral_decompose,
    trace_product,
)
from .quantum import (
    DensityMatrix,
    EntropyValue,
    log_dim_cap,
    quantum_renyi_entropy,
    t3_bound,
    von_neumann_entropy,
)
from .report import BoundReport

__version__ = "0.1.0"

__all__ = [
    "BoundReport",
    "Definiteness",
    "DensityMatrix",
    "DivergenceResult",
    "EntropyValue",
    "OptimizationOutcome",
    "PsdClass",
    "SpectralDecomposition",
    "SUITES",
    "SuiteReport",
    "SupportStats",
    "T5ClosedForm",
    "as_hermitian",
    "bloch_grid_minimum",
    "classify_definiteness",
    "conditional_entropy",
    "derive_rng",
    "entropy_type_beta",
    "entropy_type_beta_chain",
    "equality_condition_check",
    "info_function_beta",
    "kron",
    "lemma2_check",
    "lemma3_check",
    "lemma4_check",
    "log_det",
    "log_dim_cap",
    "matrix_power",
    "mutual_information",
    "order_from_type",
    "partial_trace_a",
    "partial_trace_b",
    "probability_vector",
    "quantum_renyi_entropy",
    "random_density",
    "random_pd",
    "random_simplex",
    "renyi_entropy",
    "renyi_relative_entropy",
    "replay",
    "run_suite",
    "shannon_entropy",
    "spectral_decompose",
    "subsystem_entropy",
    "support_stats",
    "t1_bound",
    "t3_bound",
    "t4_lower_bound",
    "t5_closed_form",
    "t6_lower_bound",
    "trace_product",
    "triangle_bound_check",
    "type_beta_product_bound",
    "von_neumann_entropy",
]

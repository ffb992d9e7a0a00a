"""Stationary and alternating iterations for rectangular linear systems.

Solves Ax = b in the minimum-norm least-squares sense through splittings
A = U - V whose range and null space agree with A, built on the
Moore-Penrose inverse.  The package classifies splittings (regular, weak
regular, nonnegative), decides convergence through the spectral radius of
the iteration matrix, compares competing splittings, and runs the
two-splitting alternating scheme together with its induced single splitting.
"""

from .matcore import (
    DEFAULT_TOLS,
    NumericalError,
    Tolerances,
    as_matrix,
    as_vector,
    dominates,
    entrywise_cmp,
    is_nonneg,
    min_norm_lsq,
    numerical_rank,
    orth_projectors,
    pinv,
    positive_row_sums,
    subspace_equal,
)
from .spectral import (
    MAX_EIG_SIZE,
    SpectrumReport,
    eigenvalues,
    gelfand_radius,
    neumann_sum,
    perron_pair,
    spectral_radius,
    subinvariance_bound,
)
from .splitting import (
    ChainReport,
    ComparisonReport,
    ConvergenceReport,
    IdentityChecks,
    SplitClass,
    Splitting,
    build_splitting,
    classify,
    compare_splittings,
    convergence_characterization,
    implication_chain,
    is_semimonotone,
    iteration_identities,
)
from .solver import (
    DEFAULT_STOP,
    IterationReport,
    SolutionCheck,
    StopRule,
    stationary_solve,
    verify_solution,
)
from .alternate import (
    AlternatingComparisonReport,
    AlternatingConvergenceReport,
    AlternatingScheme,
    InducedSplitting,
    alternating_solve,
    build_alternating,
    compare_alternating,
    convergence_check,
    induced_splitting,
    mp_iterate,
)
from .generator import GeneratedSplitting, generate_random_splitting, random_semimonotone, scaling_splitting
from .mmio import ParseError, read_matrix, write_matrix

__version__ = "0.1.0"

__all__ = [
    "AlternatingComparisonReport",
    "AlternatingConvergenceReport",
    "AlternatingScheme",
    "ChainReport",
    "ComparisonReport",
    "ConvergenceReport",
    "DEFAULT_STOP",
    "DEFAULT_TOLS",
    "GeneratedSplitting",
    "IdentityChecks",
    "InducedSplitting",
    "IterationReport",
    "MAX_EIG_SIZE",
    "NumericalError",
    "ParseError",
    "SolutionCheck",
    "SpectrumReport",
    "SplitClass",
    "Splitting",
    "StopRule",
    "Tolerances",
    "alternating_solve",
    "as_matrix",
    "as_vector",
    "build_alternating",
    "build_splitting",
    "classify",
    "compare_alternating",
    "compare_splittings",
    "convergence_characterization",
    "convergence_check",
    "dominates",
    "eigenvalues",
    "entrywise_cmp",
    "gelfand_radius",
    "generate_random_splitting",
    "implication_chain",
    "induced_splitting",
    "is_nonneg",
    "is_semimonotone",
    "iteration_identities",
    "min_norm_lsq",
    "mp_iterate",
    "neumann_sum",
    "numerical_rank",
    "orth_projectors",
    "perron_pair",
    "pinv",
    "positive_row_sums",
    "random_semimonotone",
    "read_matrix",
    "scaling_splitting",
    "spectral_radius",
    "stationary_solve",
    "subinvariance_bound",
    "subspace_equal",
    "verify_solution",
    "write_matrix",
    "__version__",
]

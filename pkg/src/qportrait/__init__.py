"""Portrait maps, relative entropy and entropic inequalities for single-qudit states."""
from . import config
from ._backend import BACKEND
from .entropy import (
    InequalityReport,
    bipartite_monotonicity_gap,
    chain_gaps,
    chain_report,
    max_permutation_bound,
    monotonicity_gap,
    portrait_nonneg_gap,
    relative_entropy,
    von_neumann,
)
from .errors import (
    ConvergenceError,
    DomainError,
    NegativeEigenvalue,
    NotHermitian,
    TraceNotOne,
    ValidationError,
)
from .hermitian import Spectrum, eigh, eigvalsh, matrix_fn
from .portraits import (
    BlockPartition,
    PortraitKind,
    apply_portrait,
    chain,
    fold_map,
    permute,
    qubit_portraits,
    trace_block_map,
)
from .scalar import entropy_exp_bound, gibbs_gap, gibbs_vector, pairwise_exp_sum, tomogram_uncertainty
from .search import FuzzReport, fuzz, minimize_gap
from .states import (
    DEFAULT_SEED,
    DensityMatrix,
    partial_trace,
    random_mixed_hs,
    random_pure,
    tensor,
    validate_density,
    validate_probability,
)

__version__ = "0.1.0"

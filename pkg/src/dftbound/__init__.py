"""Information bound on entropy production under the detailed fluctuation theorem."""

__version__ = "0.1.0"

from .core import (
    CONTINUOUS,
    DensitySpec,
    FtReport,
    Pmf,
    SymmetricSupport,
    check_dft,
    check_identity,
    check_ift,
    conditional_sign_prob,
    differential_entropy,
    entropy,
    ft_report,
    kl_divergence,
    mean,
    shannon_entropy,
)
from .errors import (
    DegenerateMean,
    DivergentPartition,
    DomainError,
    InsufficientData,
    QuadratureFailure,
    SupportAsymmetry,
    SupportMismatch,
    UnattainableMean,
)
from .maximal import (
    BoundValue,
    LambdaSolution,
    bound_continuous,
    bound_discrete,
    log_partition,
    maximal_distribution,
    mean_of_lambda,
    solve_lambda,
)
from .quadrature import QuadratureConfig

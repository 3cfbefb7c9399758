"""Iterative eigenvalue and eigenvector methods for dense real matrices."""

__version__ = "0.1.0"

from .companion import (  # noqa: E402
    MonicPolynomial,
    PolyRoots,
    char_poly_eval,
    companion_matrix,
    poly_roots,
)
from .config import SolverConfig  # noqa: E402
from .convergence import ConvergenceEstimate, estimate_convergence_order  # noqa: E402
from .dense import (  # noqa: E402
    QrFactors,
    SolveFactorization,
    as_matrix,
    as_vector,
    lu_factor,
    matmul,
    matvec,
    norm2,
    qr_decompose,
    solve,
)
from .eigen_iter import (  # noqa: E402
    EigenPair,
    IterationTrace,
    inverse_iteration,
    power_iteration,
    rayleigh_quotient,
    rayleigh_quotient_iteration,
    shifted_inverse_iteration,
)
from .eigen_multi import (  # noqa: E402
    EigenDecomposition,
    EquivalenceReport,
    QrIterationState,
    qr_iteration,
    simultaneous_iteration,
    verify_equivalence,
)
from .errors import (  # noqa: E402
    Breakdown,
    EigenError,
    InsufficientData,
    MatrixMarketError,
    NearSingular,
    NoRealConvergence,
    RankDeficient,
    UsageError,
)
from .mmio import read_matrix_market, write_matrix_market  # noqa: E402
from .report import RunReport, write_report  # noqa: E402

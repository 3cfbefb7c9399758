"""Exception types raised by the solvers and readers."""


class EigenError(Exception):
    """Base class for every error raised by this package."""


class UsageError(EigenError, ValueError):
    """Bad input: dimension mismatch, non-finite entries, failed symmetry gate."""


class RankDeficient(EigenError):
    def __init__(self, column, magnitude, threshold):
        self.column = column
        self.magnitude = magnitude
        self.threshold = threshold
        super().__init__(
            f"matrix is rank deficient at column {column}: "
            f"|r[{column}][{column}]| = {magnitude:.3e} < {threshold:.3e}"
        )


class NearSingular(EigenError):
    """Pivot below the singularity tolerance during LU factorization.

    ``factorization`` holds the (unusable for ordinary solves) factors so that
    callers which expect near-singularity, such as Rayleigh quotient
    iteration, can still inspect or use them. ``eigenvalue_estimate`` is set
    by the inverse-iteration family, where singularity of ``A - mu I`` means
    ``mu`` is numerically an eigenvalue.
    """

    def __init__(self, min_pivot, threshold, factorization=None,
                 eigenvalue_estimate=None, message=None):
        self.min_pivot = min_pivot
        self.threshold = threshold
        self.factorization = factorization
        self.eigenvalue_estimate = eigenvalue_estimate
        if message is None:
            message = (f"matrix is numerically singular: smallest pivot "
                       f"{min_pivot:.3e} < {threshold:.3e}")
        super().__init__(message)


class Breakdown(EigenError):
    """Iteration cannot continue (iterate fell into a null space)."""


class NoRealConvergence(EigenError):
    def __init__(self, message, trajectory):
        self.trajectory = list(trajectory)
        super().__init__(message)


class InsufficientData(EigenError):
    """Too few usable error samples to fit a convergence order."""


class MatrixMarketError(EigenError):
    def __init__(self, message, line=None, path=None):
        self.line = line
        self.path = path
        where = ""
        if path is not None:
            where += f"{path}:"
        if line is not None:
            where += f"line {line}: "
        elif where:
            where += " "
        super().__init__(where + message)

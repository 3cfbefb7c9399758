"""Dense real kernels: validated containers, Householder QR, pivoted LU.

Matrices and vectors are plain float64 numpy arrays (row-major, C order).
``as_matrix`` / ``as_vector`` are the gatekeepers that enforce shape and
finiteness; everything downstream assumes validated input.
"""

import warnings
from dataclasses import dataclass

import numpy as np
import scipy.linalg

from .errors import NearSingular, RankDeficient, UsageError

# |pivot| < DROP_FACTOR * n * max|A| counts as rank deficient / singular.
DROP_FACTOR = 1e-12


def as_matrix(a, square=False):
    arr = np.array(a, dtype=np.float64, order="C", copy=True)
    if arr.ndim != 2 or arr.shape[0] < 1 or arr.shape[1] < 1:
        raise UsageError(f"expected a non-empty 2-D matrix, got shape {arr.shape}")
    if square and arr.shape[0] != arr.shape[1]:
        raise UsageError(f"expected a square matrix, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise UsageError("matrix has non-finite entries")
    arr.setflags(write=False)
    return arr


def as_vector(x):
    arr = np.array(x, dtype=np.float64, copy=True)
    if arr.ndim != 1 or arr.shape[0] < 1:
        raise UsageError(f"expected a non-empty 1-D vector, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise UsageError("vector has non-finite entries")
    arr.setflags(write=False)
    return arr


def matvec(a, x):
    a = as_matrix(a)
    x = as_vector(x)
    if a.shape[1] != x.shape[0]:
        raise UsageError(f"matvec dimension mismatch: {a.shape} @ {x.shape}")
    return a @ x


def matmul(a, b):
    a = as_matrix(a)
    b = as_matrix(b)
    if a.shape[1] != b.shape[0]:
        raise UsageError(f"matmul dimension mismatch: {a.shape} @ {b.shape}")
    return a @ b


def norm2(x):
    return float(np.linalg.norm(np.asarray(x, dtype=np.float64)))


def max_abs(a):
    return float(np.max(np.abs(a))) if np.size(a) else 0.0


def drop_tolerance(a):
    return DROP_FACTOR * a.shape[0] * max_abs(a)


def is_symmetric(a):
    a = np.asarray(a)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        return False
    return max_abs(a - a.T) <= 1e-12 * max_abs(a)


def canonical_sign(x, rel=1e-8):
    """Flip ``x`` so its first significant component is positive.

    A component counts as significant when its magnitude exceeds
    ``rel * max|x|``; this keeps rounding-level entries from deciding the sign.
    """
    x = np.asarray(x, dtype=np.float64)
    big = max_abs(x)
    if big == 0.0:
        return x.copy()
    idx = np.flatnonzero(np.abs(x) > rel * big)[0]
    return -x if x[idx] < 0 else x.copy()


@dataclass(frozen=True)
class QrFactors:
    q: np.ndarray
    r: np.ndarray

    def __iter__(self):
        return iter((self.q, self.r))


def qr_decompose(a):
    """Householder QR with R's diagonal forced positive.

    With a positive diagonal the factorization of a full-rank matrix is
    unique, which is what lets the QR method and simultaneous iteration be
    compared state by state.
    """
    a = as_matrix(a, square=True)
    n = a.shape[0]
    r = np.array(a)
    q = np.eye(n)
    for j in range(n - 1):
        x = r[j:, j]
        big = np.max(np.abs(x))
        if big == 0.0:
            continue
        # reflector direction is scale free; prescaling avoids under/overflow
        v = x / big
        normx = np.linalg.norm(v)
        alpha = -normx if v[0] >= 0 else normx
        v[0] -= alpha
        vnorm = np.linalg.norm(v)
        if vnorm == 0.0:
            continue
        v /= vnorm
        r[j:, j:] -= 2.0 * np.outer(v, v @ r[j:, j:])
        q[:, j:] -= 2.0 * np.outer(q[:, j:] @ v, v)
        r[j + 1:, j] = 0.0
    r = np.triu(r)

    diag = np.diag(r)
    thr = drop_tolerance(a)
    bad = np.flatnonzero((np.abs(diag) < thr) | (diag == 0.0))
    if bad.size:
        j = int(bad[0])
        raise RankDeficient(j, float(abs(diag[j])), thr)

    signs = np.where(diag < 0, -1.0, 1.0)
    q = q * signs
    r = signs[:, None] * r
    q.setflags(write=False)
    r.setflags(write=False)
    return QrFactors(q, r)


@dataclass(frozen=True)
class SolveFactorization:
    """Packed LU factors with LAPACK-style row interchanges (PA = LU)."""

    factored: np.ndarray
    pivots: np.ndarray

    @property
    def n(self):
        return self.factored.shape[0]

    def lower(self):
        return np.tril(self.factored, -1) + np.eye(self.n)

    def upper(self):
        return np.triu(self.factored)

    def permutation(self):
        perm = np.arange(self.n)
        for i, p in enumerate(self.pivots):
            perm[[i, p]] = perm[[p, i]]
        return perm

    def reconstruct(self):
        lu = self.lower() @ self.upper()
        out = np.empty_like(lu)
        out[self.permutation()] = lu
        return out

    def min_pivot(self):
        return float(np.min(np.abs(np.diag(self.factored))))

    def determinant(self):
        swaps = int(np.count_nonzero(self.pivots != np.arange(self.n)))
        sign = -1.0 if swaps % 2 else 1.0
        return sign * float(np.prod(np.diag(self.factored)))


def _lu(a):
    with warnings.catch_warnings():
        # exact zero pivots are reported through NearSingular instead
        warnings.simplefilter("ignore", scipy.linalg.LinAlgWarning)
        lu, piv = scipy.linalg.lu_factor(a, check_finite=False)
    lu.setflags(write=False)
    piv.setflags(write=False)
    return SolveFactorization(lu, piv)


def lu_factor(a, check=True):
    """Partial-pivoting LU. Raises NearSingular when a pivot drops below
    ``1e-12 * n * max|A|`` unless ``check`` is false."""
    a = as_matrix(a, square=True)
    f = _lu(a)
    if check:
        thr = drop_tolerance(a)
        smallest = f.min_pivot()
        if smallest < thr or smallest == 0.0:
            raise NearSingular(smallest, thr, factorization=f)
    return f


def solve(f, b):
    b = as_vector(b)
    if b.shape[0] != f.n:
        raise UsageError(f"solve dimension mismatch: n={f.n}, len(b)={b.shape[0]}")
    return scipy.linalg.lu_solve((f.factored, f.pivots), b, check_finite=False)


def solve_regularized(f, b, floor):
    """Solve with pivots smaller than ``floor`` bumped up to ``floor``.

    Used where an almost singular shifted system is the point of the
    iteration: the solution then blows up along the wanted eigenvector.
    """
    lu = np.array(f.factored)
    d = np.diag(lu).copy()
    small = np.abs(d) < floor
    d[small] = np.where(d[small] < 0, -floor, floor)
    np.fill_diagonal(lu, d)
    return scipy.linalg.lu_solve((lu, f.pivots), as_vector(b), check_finite=False)

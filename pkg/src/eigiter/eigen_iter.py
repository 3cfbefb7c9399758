"""Single-vector eigensolvers: power, inverse, shifted inverse and Rayleigh
quotient iteration.

Every solver returns ``(EigenPair, IterationTrace)``. Iteration stops when
the residual ``||A v - r(v) v||_2`` drops to ``cfg.tol``; running out of
iterations is not an error, the best pair seen is returned with
``converged=False`` and the trace tells the story.
"""

from dataclasses import dataclass, field
from typing import List, NamedTuple

import numpy as np

from .config import SolverConfig
from .dense import (
    as_matrix,
    as_vector,
    canonical_sign,
    is_symmetric,
    lu_factor,
    max_abs,
    solve,
    solve_regularized,
)
from .errors import Breakdown, NearSingular, UsageError


class TraceStep(NamedTuple):
    k: int
    value: float
    residual: float
    step_change: float


@dataclass
class IterationTrace:
    steps: List[TraceStep] = field(default_factory=list)

    def append(self, k, value, residual, step_change):
        if self.steps and k <= self.steps[-1].k:
            raise ValueError("trace indices must be strictly increasing")
        self.steps.append(TraceStep(int(k), float(value), float(residual), float(step_change)))

    def residuals(self):
        return np.array([s.residual for s in self.steps])

    def values(self):
        return np.array([s.value for s in self.steps])

    def __len__(self):
        return len(self.steps)

    def __iter__(self):
        return iter(self.steps)


@dataclass(frozen=True)
class EigenPair:
    value: float
    vector: np.ndarray
    residual: float
    iterations: int
    converged: bool


def rayleigh_quotient(a, x):
    a = as_matrix(a, square=True)
    x = as_vector(x)
    if a.shape[0] != x.shape[0]:
        raise UsageError(f"dimension mismatch: A is {a.shape}, x has {x.shape[0]} entries")
    xx = float(x @ x)
    if xx == 0.0:
        raise UsageError("Rayleigh quotient of the zero vector is undefined")
    return float(x @ (a @ x)) / xx


def _rq_unit(a, v):
    # v is unit length; skips revalidation inside hot loops
    return float(v @ (a @ v))


def _residual(a, v, lam):
    return float(np.linalg.norm(a @ v - lam * v))


def _step_change(v, prev):
    return float(min(np.linalg.norm(v - prev), np.linalg.norm(v + prev)))


def starting_vector(n, cfg):
    if cfg.start is not None:
        v = np.array(cfg.start, dtype=np.float64)
        if v.shape != (n,):
            raise UsageError(f"start vector has {v.shape[0]} entries, matrix is {n}x{n}")
    else:
        # normalized Gaussian draws are uniform on the unit sphere
        v = np.random.default_rng(cfg.seed).standard_normal(n)
    return v / np.linalg.norm(v)


class _Runner:
    """Book-keeping shared by the fixed-operator methods."""

    def __init__(self, a, cfg):
        self.a = a
        self.cfg = cfg
        self.trace = IterationTrace()
        self.best = None

    def record(self, k, v, prev):
        lam = _rq_unit(self.a, v)
        res = _residual(self.a, v, lam)
        self.trace.append(k, lam, res, _step_change(v, prev))
        if self.best is None or res < self.best[2]:
            self.best = (lam, v, res)
        return lam, res

    def finish(self, k, lam, v, res, converged):
        if not converged:
            lam, v, res = self.best
        pair = EigenPair(float(lam), canonical_sign(v), float(res), k, converged)
        return pair, self.trace


def _normalized(w, what):
    nw = float(np.linalg.norm(w))
    if nw == 0.0 or not np.isfinite(nw):
        raise Breakdown(f"{what}: iterate has norm {nw}; "
                        "the previous vector lies in a null space")
    return w / nw


def _fixed_operator_iteration(a, cfg, apply_op, what):
    run = _Runner(a, cfg)
    v = canonical_sign(starting_vector(a.shape[0], cfg))
    lam = res = None
    for k in range(1, cfg.max_iters + 1):
        prev = v
        v = canonical_sign(_normalized(apply_op(v), what))
        lam, res = run.record(k, v, prev)
        if res <= cfg.tol:
            return run.finish(k, lam, v, res, True)
    return run.finish(cfg.max_iters, lam, v, res, False)


def power_iteration(a, cfg=None):
    cfg = cfg or SolverConfig()
    a = as_matrix(a, square=True)
    return _fixed_operator_iteration(a, cfg, lambda v: a @ v, "power iteration")


def inverse_iteration(a, cfg=None):
    cfg = cfg or SolverConfig()
    a = as_matrix(a, square=True)
    try:
        f = lu_factor(a)
    except NearSingular as exc:
        raise NearSingular(
            exc.min_pivot, exc.threshold, factorization=exc.factorization,
            eigenvalue_estimate=0.0,
            message=f"{exc}; A has an eigenvalue at or near 0",
        ) from None
    return _fixed_operator_iteration(a, cfg, lambda v: solve(f, v), "inverse iteration")


def shifted_inverse_iteration(a, mu, cfg=None):
    cfg = cfg or SolverConfig()
    a = as_matrix(a, square=True)
    mu = float(mu)
    if not np.isfinite(mu):
        raise UsageError(f"shift must be finite, got {mu}")
    try:
        f = lu_factor(a - mu * np.eye(a.shape[0]))
    except NearSingular as exc:
        raise NearSingular(
            exc.min_pivot, exc.threshold, factorization=exc.factorization,
            eigenvalue_estimate=mu,
            message=f"{exc}; the shift {mu!r} is numerically an eigenvalue of A",
        ) from None
    return _fixed_operator_iteration(a, cfg, lambda v: solve(f, v),
                                     "shifted inverse iteration")


def check_symmetric(a, cfg, what):
    if not cfg.allow_unsymmetric and not is_symmetric(a):
        raise UsageError(
            f"{what} requires a symmetric matrix "
            f"(max|A - A^T| = {max_abs(a - a.T):.3e})"
        )


def rayleigh_quotient_iteration(a, cfg=None):
    """RQI: shifted inverse iteration whose shift is the current Rayleigh
    quotient, so ``A - lambda I`` is refactored every step.

    The shifted matrix is meant to become singular. When the factorization
    flags it and the current residual already meets ``tol`` the current
    pair is accepted; otherwise the solve proceeds with tiny pivots clamped
    to ``eps * max|A|``, which still amplifies the wanted direction.
    """
    cfg = cfg or SolverConfig()
    a = as_matrix(a, square=True)
    check_symmetric(a, cfg, "Rayleigh quotient iteration")
    n = a.shape[0]
    eye = np.eye(n)
    floor = np.finfo(float).eps * max(max_abs(a), np.finfo(float).tiny)

    run = _Runner(a, cfg)
    v = canonical_sign(starting_vector(n, cfg))
    lam = _rq_unit(a, v)
    res = _residual(a, v, lam)
    for k in range(1, cfg.max_iters + 1):
        prev = v
        try:
            w = solve(lu_factor(a - lam * eye), v)
        except NearSingular as exc:
            if res <= cfg.tol:
                run.trace.append(k, lam, res, 0.0)
                return run.finish(k, lam, v, res, True)
            w = solve_regularized(exc.factorization, v, floor)
            if not np.all(np.isfinite(w)):
                raise Breakdown(
                    f"Rayleigh quotient iteration: singular shift {lam!r} "
                    f"with residual {res:.3e} > tol"
                ) from None
        v = canonical_sign(_normalized(w, "Rayleigh quotient iteration"))
        lam, res = run.record(k, v, prev)
        if res <= cfg.tol:
            return run.finish(k, lam, v, res, True)
    return run.finish(cfg.max_iters, lam, v, res, False)

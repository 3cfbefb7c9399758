"""Polynomials as eigenproblems: companion matrices, characteristic
polynomial evaluation and real root finding through the QR method."""

from dataclasses import dataclass
from typing import List

import numpy as np

from .config import SolverConfig
from .dense import as_matrix, lu_factor
from .eigen_multi import lower_mass, qr_steps
from .errors import NoRealConvergence, RankDeficient, UsageError


@dataclass(frozen=True)
class MonicPolynomial:
    """``z**n + coeffs[n-1] z**(n-1) + ... + coeffs[1] z + coeffs[0]``."""

    coeffs: tuple

    def __init__(self, coeffs):
        c = tuple(float(x) for x in coeffs)
        if not c:
            raise UsageError("a monic polynomial needs degree >= 1")
        if not all(np.isfinite(c)):
            raise UsageError("polynomial coefficients must be finite")
        object.__setattr__(self, "coeffs", c)

    @property
    def degree(self):
        return len(self.coeffs)

    def __call__(self, z):
        acc = 1.0
        for a in reversed(self.coeffs):
            acc = acc * z + a
        return acc

    @classmethod
    def from_roots(cls, roots):
        full = np.poly(np.asarray(roots, dtype=float))  # highest degree first
        return cls(full[1:][::-1])


def companion_matrix(p):
    n = p.degree
    c = np.zeros((n, n))
    c[np.arange(1, n), np.arange(n - 1)] = 1.0
    c[:, -1] = [-a for a in p.coeffs]
    return as_matrix(c)


def char_poly_eval(a, x):
    """``det(x I - A)`` from the pivots of an LU factorization."""
    a = as_matrix(a, square=True)
    f = lu_factor(float(x) * np.eye(a.shape[0]) - a, check=False)
    return f.determinant()


@dataclass(frozen=True)
class PolyRoots:
    roots: List[float]
    residuals: List[float]
    iterations: int
    trajectory: List[float]


def poly_roots(p, cfg=None):
    """Real roots of ``p`` as eigenvalues of its companion matrix.

    Companion matrices are not symmetric, so the unshifted QR method drives
    them toward upper-triangular (not diagonal) form; convergence is judged
    on the strictly lower triangle. Each root must then satisfy
    ``|p(root)| <= tol * (1 + max|a_i|) * n``. Complex or equal-magnitude
    roots never meet these conditions and raise ``NoRealConvergence``.
    """
    cfg = cfg or SolverConfig()
    n = p.degree
    cmat = companion_matrix(p)
    scale = float(np.linalg.norm(cmat))
    bound = cfg.tol * (1.0 + max(abs(a) for a in p.coeffs)) * n
    trajectory = []
    try:
        for state, _, _ in qr_steps(cmat):
            if state.k == 0:
                continue
            mass = lower_mass(state.a_k)
            trajectory.append(mass)
            if mass <= cfg.tol * scale:
                roots = sorted(float(r) for r in np.diag(state.a_k))
                residuals = [abs(p(r)) for r in roots]
                if max(residuals) <= bound:
                    return PolyRoots(roots, residuals, state.k, trajectory)
            if state.k >= cfg.max_iters:
                break
    except RankDeficient as exc:
        # a zero root makes the companion matrix singular
        raise NoRealConvergence(f"QR iteration broke down: {exc}", trajectory) from exc
    raise NoRealConvergence(
        f"no real convergence after {len(trajectory)} QR steps "
        f"(lower-triangle mass {trajectory[-1]:.3e}); roots may be complex "
        "or share a magnitude",
        trajectory,
    )

"""Benchmark matrix families and the bench runner.

The families are constructed for this tool (no external benchmark set):
diagonal matrices with a fixed ratio between consecutive eigenvalues, a
seeded random symmetric matrix, and a rotated spectrum whose two largest
eigenvalues differ by only 1%.
"""

import numpy as np

from .config import SolverConfig
from .convergence import estimate_convergence_order
from .eigen_iter import (
    inverse_iteration,
    power_iteration,
    rayleigh_quotient_iteration,
    shifted_inverse_iteration,
)
from .eigen_multi import qr_iteration, simultaneous_iteration
from .errors import EigenError, InsufficientData

GAP_RATIOS = (0.9, 0.5, 0.1)
METHODS = ("inverse", "power", "qr", "rqi", "shifted-inverse", "simultaneous")


def random_orthogonal(n, rng):
    q, r = np.linalg.qr(rng.standard_normal((n, n)))
    return q * np.sign(np.diag(r))


def families(n, seed):
    rng = np.random.default_rng(seed)
    out = {}
    for ratio in GAP_RATIOS:
        out[f"diagonal-gap-{ratio}"] = (
            f"diag(r**i), i = 0..n-1, r = {ratio}",
            np.diag(ratio ** np.arange(n)),
        )
    m = rng.standard_normal((n, n))
    out["random-symmetric"] = (
        f"(G + G^T) / 2 with G standard Gaussian, seed {seed}",
        (m + m.T) / 2,
    )
    spectrum = np.concatenate([[1.01, 1.0], 0.5 ** np.arange(1, n - 1)])[:n]
    q = random_orthogonal(n, rng)
    out["near-degenerate"] = (
        "Q diag(1.01, 1, 0.5, 0.25, ...) Q^T, |l1/l2| = 1.01",
        (q * spectrum) @ q.T,
    )
    return out


def _run_one(method, a, cfg):
    scale = float(np.linalg.norm(a))
    if method in ("simultaneous", "qr"):
        if method == "qr":
            dec, _ = qr_iteration(a, cfg)
        else:
            dec, _ = simultaneous_iteration(a, None, cfg)
        errors = dec.off_diagonal
        rec = {
            "converged": dec.converged,
            "iterations": dec.iterations,
            "value": float(dec.values[0]),
            "residual": float(np.max(dec.residuals)),
        }
    else:
        if method == "power":
            pair, trace = power_iteration(a, cfg)
        elif method == "inverse":
            pair, trace = inverse_iteration(a, cfg)
        elif method == "shifted-inverse":
            pair, trace = shifted_inverse_iteration(a, np.trace(a) / a.shape[0], cfg)
        else:
            pair, trace = rayleigh_quotient_iteration(a, cfg)
        errors = trace
        rec = {
            "converged": pair.converged,
            "iterations": pair.iterations,
            "value": pair.value,
            "residual": pair.residual,
        }
    try:
        est = estimate_convergence_order(errors, scale=scale)
        rec["order"] = est.order
        rec["rate"] = est.rate
    except InsufficientData:
        rec["order"] = None
        rec["rate"] = None
    return rec


def run_bench(n=8, cfg=None):
    cfg = cfg or SolverConfig()
    fams = families(n, cfg.seed)
    runs = []
    for name in sorted(fams):
        _, a = fams[name]
        for method in METHODS:
            rec = {"family": name, "method": method, "n": n}
            try:
                rec.update(_run_one(method, a, cfg))
                rec["error"] = None
            except EigenError as exc:
                rec.update(converged=False, iterations=None, value=None, residual=None,
                           order=None, rate=None, error=f"{type(exc).__name__}: {exc}")
            runs.append(rec)
    return {
        "families": {name: desc for name, (desc, _) in sorted(fams.items())},
        "runs": runs,
    }

"""Empirical convergence order from an error sequence.

Fits ``log e[k+1] = p * log e[k] + c`` by least squares. For p near 1 the
geometric contraction ``e[k+1] / e[k]`` is reported as well.
"""

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .eigen_iter import IterationTrace
from .errors import InsufficientData

EPS = np.finfo(float).eps


@dataclass(frozen=True)
class ConvergenceEstimate:
    order: float
    rate: Optional[float]
    r_squared: float
    samples_used: int


def usable_errors(errors, scale=None):
    """Keep the strictly positive errors above the saturation floor
    ``100 * eps * scale``; ``scale=None`` disables the floor."""
    e = np.asarray(errors, dtype=np.float64)
    keep = np.isfinite(e) & (e > 0)
    if scale is not None:
        keep &= e >= 100 * EPS * scale
    # only the leading run is meaningful: once the sequence saturates,
    # later points are rounding noise even if they bounce above the floor
    if not keep.all():
        first_bad = int(np.argmin(keep))
        keep[first_bad:] = False
    return e[keep]


def estimate_convergence_order(trace, scale=None, tail=8, linear_band=0.25):
    """Estimate the convergence order of ``trace``.

    ``trace`` is an ``IterationTrace`` (its residuals are the error
    sequence) or any sequence of positive errors. For traces the default
    saturation scale is ``max(1, max|lambda_k|)``; raw sequences are taken
    at face value unless ``scale`` is given. ``tail`` limits the fit to the
    last ``tail`` usable errors (``None`` uses all of them). At least four
    usable errors (three fitted pairs) are required.
    """
    if isinstance(trace, IterationTrace):
        errors = trace.residuals()
        if scale is None and len(trace):
            scale = max(1.0, float(np.max(np.abs(trace.values()))))
    else:
        errors = trace
    e = usable_errors(errors, scale)
    if tail is not None:
        e = e[-int(tail):]
    if e.size < 4:
        raise InsufficientData(
            f"need at least 4 usable error samples, have {e.size}"
        )
    x = np.log(e[:-1])
    y = np.log(e[1:])
    if np.ptp(x) == 0.0:
        raise InsufficientData("errors are constant; the sequence is not converging")
    p, c = np.polyfit(x, y, 1)
    fitted = p * x + c
    ss_res = float(np.sum((y - fitted) ** 2))
    ss_tot = float(np.sum((y - y.mean()) ** 2))
    r2 = 1.0 if ss_tot == 0.0 else max(0.0, min(1.0, 1.0 - ss_res / ss_tot))
    rate = None
    if abs(p - 1.0) <= linear_band:
        rate = float(np.exp(np.mean(y - x)))
    return ConvergenceEstimate(float(p), rate, r2, int(x.size))

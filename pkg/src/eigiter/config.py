from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .errors import UsageError


@dataclass(frozen=True)
class SolverConfig:
    """Knobs shared by every solver.

    ``start`` is an explicit starting vector (single-vector methods) and is
    normalized before use. ``keep_every`` controls how many QR-iteration
    states are retained: ``None`` keeps all of them for n <= 32 and every
    10th otherwise. ``allow_unsymmetric`` bypasses the symmetry gate of the
    methods that are only guaranteed for symmetric input.
    """

    tol: float = 1e-10
    max_iters: int = 10000
    seed: int = 42
    start: Optional[np.ndarray] = field(default=None, compare=False)
    allow_unsymmetric: bool = False
    keep_every: Optional[int] = None

    def __post_init__(self):
        if not (self.tol > 0 and np.isfinite(self.tol)):
            raise UsageError(f"tol must be positive, got {self.tol}")
        if int(self.max_iters) != self.max_iters or self.max_iters < 1:
            raise UsageError(f"max_iters must be a positive integer, got {self.max_iters}")
        if self.keep_every is not None and self.keep_every < 1:
            raise UsageError(f"keep_every must be >= 1, got {self.keep_every}")
        if self.start is not None:
            start = np.array(self.start, dtype=np.float64)
            if start.ndim != 1 or not np.all(np.isfinite(start)):
                raise UsageError("start must be a finite 1-D vector")
            if np.linalg.norm(start) == 0.0:
                raise UsageError("start vector must be nonzero")
            start.setflags(write=False)
            object.__setattr__(self, "start", start)

    def stride(self, n):
        if self.keep_every is not None:
            return self.keep_every
        return 1 if n <= 32 else 10

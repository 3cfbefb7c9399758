"""Full-spectrum methods: simultaneous iteration and the QR method, plus a
harness that runs both side by side and checks they produce the same
matrix sequences.

Both methods track the same three sequences: the iterate ``A_k``, the
accumulated orthogonal factor ``Qacc_k`` and the accumulated triangular
factor ``Racc_k``. In exact arithmetic ``A^k = Qacc_k Racc_k`` and
``A_k = Qacc_k^T A Qacc_k`` for both.
"""

from dataclasses import dataclass, field
from typing import List

import numpy as np

from .config import SolverConfig
from .dense import as_matrix, canonical_sign, max_abs, qr_decompose
from .eigen_iter import check_symmetric
from .errors import UsageError


@dataclass(frozen=True)
class QrIterationState:
    """One step of either method.

    ``Racc_k`` grows like ``||A||**k``, so it is stored as
    ``exp(r_log_scale) * r_accum``; ``r_log_scale`` stays 0 until the entries
    leave [1e-100, 1e100].
    """

    a_k: np.ndarray
    q_accum: np.ndarray
    r_accum: np.ndarray
    k: int
    r_log_scale: float = 0.0

    def r_full(self):
        return np.exp(self.r_log_scale) * self.r_accum


def _rescale(racc, log_scale):
    big = max_abs(racc)
    if big > 1e100 or 0.0 < big < 1e-100:
        return racc / big, log_scale + float(np.log(big))
    return racc, log_scale


@dataclass(frozen=True)
class EigenDecomposition:
    values: np.ndarray
    vectors: np.ndarray
    residuals: np.ndarray
    iterations: int
    converged: bool
    off_diagonal: List[float] = field(default_factory=list)


def off_diagonal_mass(a):
    return float(np.linalg.norm(a - np.diag(np.diag(a))))


def lower_mass(a):
    return float(np.linalg.norm(np.tril(a, -1)))


def simultaneous_steps(a, v0=None):
    """Yield ``(state, Q_k, R_k)`` for k = 0, 1, 2, ...

    ``W = A Qacc_{k-1}``, ``Qacc_k R_k = W``, ``A_k = Qacc_k^T A Qacc_k``,
    ``Racc_k = R_k Racc_{k-1}``. With ``v0 = None`` the start is the identity.
    """
    n = a.shape[0]
    if v0 is None:
        q, r = np.eye(n), np.eye(n)
    else:
        q, r = qr_decompose(v0)
    racc, log_scale = _rescale(r, 0.0)
    yield QrIterationState(q.T @ a @ q, q, racc, 0, log_scale), q, r
    k = 0
    while True:
        k += 1
        q, r = qr_decompose(a @ q)
        racc, log_scale = _rescale(r @ racc, log_scale)
        yield QrIterationState(q.T @ a @ q, q, racc, k, log_scale), q, r


def qr_steps(a):
    """Yield ``(state, Q_k, R_k)`` for the QR method, k = 0, 1, 2, ...

    ``Q_k R_k = A_{k-1}``, ``A_k = R_k Q_k``, with the products of the
    factors accumulated alongside.
    """
    n = a.shape[0]
    ak, qacc, racc, log_scale = a, np.eye(n), np.eye(n), 0.0
    yield QrIterationState(ak, qacc, racc, 0), np.eye(n), np.eye(n)
    k = 0
    while True:
        k += 1
        q, r = qr_decompose(ak)
        ak = r @ q
        qacc = qacc @ q
        racc, log_scale = _rescale(r @ racc, log_scale)
        yield QrIterationState(ak, qacc, racc, k, log_scale), q, r


def _decompose(a, state, off_history, converged):
    values = np.diag(state.a_k).copy()
    order = np.argsort(-np.abs(values), kind="stable")
    values = values[order]
    vectors = np.column_stack([canonical_sign(state.q_accum[:, i]) for i in order])
    residuals = np.linalg.norm(a @ vectors - vectors * values, axis=0)
    return EigenDecomposition(values, vectors, residuals, state.k, converged,
                              list(off_history))


def _run(a, steps, cfg):
    scale = float(np.linalg.norm(a))
    stride = cfg.stride(a.shape[0])
    states = []
    off_history = []
    converged = False
    for state, _, _ in steps:
        if state.k % stride == 0:
            states.append(state)
        if state.k == 0:
            continue
        off = off_diagonal_mass(state.a_k)
        off_history.append(off)
        if off <= cfg.tol * scale:
            dec = _decompose(a, state, off_history, True)
            if np.max(dec.residuals) <= cfg.tol:
                converged = True
                break
        if state.k >= cfg.max_iters:
            break
    if states[-1].k != state.k:
        states.append(state)
    return _decompose(a, state, off_history, converged), states


def simultaneous_iteration(a, v0=None, cfg=None):
    cfg = cfg or SolverConfig()
    a = as_matrix(a, square=True)
    check_symmetric(a, cfg, "simultaneous iteration")
    if v0 is not None:
        v0 = as_matrix(v0, square=True)
        if v0.shape != a.shape:
            raise UsageError(f"v0 has shape {v0.shape}, A has shape {a.shape}")
    return _run(a, simultaneous_steps(a, v0), cfg)


def qr_iteration(a, cfg=None):
    cfg = cfg or SolverConfig()
    a = as_matrix(a, square=True)
    check_symmetric(a, cfg, "QR iteration")
    return _run(a, qr_steps(a), cfg)


@dataclass(frozen=True)
class EquivalenceStep:
    k: int
    dev_a: float
    dev_q: float
    dev_r: float
    power_defect_sim: float
    power_defect_qr: float
    similarity_defect_sim: float
    similarity_defect_qr: float
    bound: float
    power_bound: float

    @property
    def passed(self):
        return (max(self.dev_a, self.dev_q, self.similarity_defect_sim,
                    self.similarity_defect_qr) <= self.bound
                and max(self.dev_r, self.power_defect_sim,
                        self.power_defect_qr) <= self.power_bound)


@dataclass(frozen=True)
class EquivalenceReport:
    steps: List[EquivalenceStep]
    rel_tol: float

    @property
    def passed(self):
        return all(s.passed for s in self.steps)

    def worst(self):
        """Largest deviation-to-bound ratio over every check and step."""
        worst = 0.0
        for s in self.steps:
            for val in (s.dev_a, s.dev_q, s.similarity_defect_sim, s.similarity_defect_qr):
                worst = max(worst, val / s.bound)
            for val in (s.dev_r, s.power_defect_sim, s.power_defect_qr):
                worst = max(worst, val / s.power_bound)
        return worst


def verify_equivalence(a, k_max, cfg=None, rel_tol=1e-9):
    """Run both methods ``k_max`` steps from the identity and compare.

    Per step the report holds the max-entry deviation between the two
    methods' ``A_k``, ``Qacc_k`` and ``Racc_k``, and each method's defect in
    ``A^k = Qacc_k Racc_k`` and ``A_k = Qacc_k^T A Qacc_k``.

    Bounds: ``rel_tol * max(1, ||A||_F)`` for quantities of the size of A
    (``A_k``, and ``Qacc_k`` which has unit scale) and
    ``rel_tol * max(1, ||A||_F)**k`` for the ones that grow like ``A^k``.
    """
    cfg = cfg or SolverConfig()
    a = as_matrix(a, square=True)
    check_symmetric(a, cfg, "equivalence check")
    k_max = int(k_max)
    fro = max(1.0, float(np.linalg.norm(a)))
    sim = simultaneous_steps(a)
    qrm = qr_steps(a)
    apow = np.eye(a.shape[0])
    steps = []
    for k in range(k_max + 1):
        s_sim, _, _ = next(sim)
        s_qr, _, _ = next(qrm)
        if k > 0:
            apow = a @ apow
        steps.append(EquivalenceStep(
            k=k,
            dev_a=max_abs(s_sim.a_k - s_qr.a_k),
            dev_q=max_abs(s_sim.q_accum - s_qr.q_accum),
            dev_r=max_abs(s_sim.r_full() - s_qr.r_full()),
            power_defect_sim=max_abs(apow - s_sim.q_accum @ s_sim.r_full()),
            power_defect_qr=max_abs(apow - s_qr.q_accum @ s_qr.r_full()),
            similarity_defect_sim=max_abs(s_sim.a_k - s_sim.q_accum.T @ a @ s_sim.q_accum),
            similarity_defect_qr=max_abs(s_qr.a_k - s_qr.q_accum.T @ a @ s_qr.q_accum),
            bound=rel_tol * fro,
            power_bound=rel_tol * fro ** k,
        ))
    return EquivalenceReport(steps, rel_tol)

"""Command line front end.

Exit codes: 0 converged (or equivalence check passed), 2 not converged or
solver failure, 1 usage or I/O error. Diagnostics go to stderr; the JSON
report goes to stdout and, with ``--out``, to a file as well.
"""

import argparse
import sys
import time

import numpy as np

from . import __version__
from .bench import run_bench
from .companion import MonicPolynomial, poly_roots
from .config import SolverConfig
from .convergence import estimate_convergence_order
from .dense import is_symmetric, max_abs
from .eigen_iter import (
    inverse_iteration,
    power_iteration,
    rayleigh_quotient_iteration,
    shifted_inverse_iteration,
)
from .eigen_multi import qr_iteration, simultaneous_iteration, verify_equivalence
from .errors import EigenError, InsufficientData, MatrixMarketError, UsageError
from .mmio import read_matrix_market
from .report import ReportIOError, RunReport, write_report

SINGLE = ("power", "inverse", "shifted-inverse", "rqi")
MULTI = ("simultaneous", "qr")
MATRIX_COMMANDS = SINGLE + MULTI + ("equiv",)
UNSYMMETRIC_OK = ("rqi", "simultaneous", "qr")


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def _float_list(text):
    try:
        return [float(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}")


def _shared(p, matrix=True):
    if matrix:
        p.add_argument("--matrix", required=True, help="Matrix Market file")
    p.add_argument("--tol", type=float, default=1e-10)
    p.add_argument("--max-iters", type=int, default=10000)
    p.add_argument("--seed", type=int, default=42)
    p.add_argument("--trace", metavar="CSV", help="write the iteration trace here")
    p.add_argument("--out", metavar="JSON", help="also write the report here")
    p.add_argument("--timing", action="store_true",
                   help="add wall time under 'metadata' (output no longer reproducible)")


def build_parser():
    parser = _Parser(prog="eigiter", description="Iterative eigensolvers for dense real matrices.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    helps = {
        "power": "dominant eigenpair by power iteration",
        "inverse": "smallest-magnitude eigenpair by inverse iteration",
        "shifted-inverse": "eigenpair nearest a shift",
        "rqi": "Rayleigh quotient iteration (symmetric input)",
        "simultaneous": "all eigenpairs by simultaneous iteration",
        "qr": "all eigenpairs by the unshifted QR method",
    }
    for name, text in helps.items():
        p = sub.add_parser(name, help=text)
        _shared(p)
        if name in SINGLE:
            p.add_argument("--start", type=_float_list, help="starting vector, comma separated")
        if name == "shifted-inverse":
            p.add_argument("--shift", type=float, required=True)
        if name in UNSYMMETRIC_OK:
            p.add_argument("--allow-unsymmetric", action="store_true",
                           help="skip the symmetry gate (convergence not guaranteed)")

    p = sub.add_parser("equiv", help="check simultaneous iteration and QR produce the same sequences")
    _shared(p)
    p.add_argument("--k", type=int, required=True)

    p = sub.add_parser("roots", help="real roots of a monic polynomial")
    _shared(p, matrix=False)
    p.add_argument("--coeffs", type=_float_list, required=True,
                   help="a0,a1,...,a_{n-1} of z^n + a_{n-1} z^{n-1} + ... + a0")

    p = sub.add_parser("bench", help="run every method over the benchmark families")
    _shared(p, matrix=False)
    p.add_argument("--n", type=int, default=8)
    return parser


def config_echo(args):
    cfg = {"command": args.command}
    if args.command in MATRIX_COMMANDS:
        cfg["matrix"] = args.matrix
    cfg["tol"] = args.tol
    cfg["max_iters"] = args.max_iters
    cfg["seed"] = args.seed
    if args.command == "shifted-inverse":
        cfg["shift"] = args.shift
    if args.command == "equiv":
        cfg["k"] = args.k
    if args.command == "roots":
        cfg["coeffs"] = args.coeffs
    if args.command == "bench":
        cfg["n"] = args.n
    if args.command in SINGLE:
        cfg["start"] = args.start
    if args.command in UNSYMMETRIC_OK:
        cfg["allow_unsymmetric"] = args.allow_unsymmetric
    return cfg


def config_to_argv(cfg):
    """Rebuild an argument vector from a report's config echo."""
    argv = [cfg["command"]]
    if "matrix" in cfg:
        argv += ["--matrix", cfg["matrix"]]
    argv += ["--tol", repr(float(cfg["tol"])), "--max-iters", str(cfg["max_iters"]),
             "--seed", str(cfg["seed"])]
    if "shift" in cfg:
        argv += ["--shift", repr(float(cfg["shift"]))]
    if "k" in cfg:
        argv += ["--k", str(cfg["k"])]
    if "coeffs" in cfg:
        argv += ["--coeffs", ",".join(repr(float(c)) for c in cfg["coeffs"])]
    if "n" in cfg:
        argv += ["--n", str(cfg["n"])]
    if cfg.get("start") is not None:
        argv += ["--start", ",".join(repr(float(c)) for c in cfg["start"])]
    if cfg.get("allow_unsymmetric"):
        argv.append("--allow-unsymmetric")
    return argv


def _solver_config(args):
    return SolverConfig(
        tol=args.tol,
        max_iters=args.max_iters,
        seed=args.seed,
        start=getattr(args, "start", None),
        allow_unsymmetric=getattr(args, "allow_unsymmetric", False),
    )


def _estimate(errors, scale):
    try:
        est = estimate_convergence_order(errors, scale=scale)
    except InsufficientData:
        return None
    return {"order": est.order, "rate": est.rate, "r_squared": est.r_squared,
            "samples_used": est.samples_used}


def _single(args, a, cfg):
    if args.command == "power":
        pair, trace = power_iteration(a, cfg)
    elif args.command == "inverse":
        pair, trace = inverse_iteration(a, cfg)
    elif args.command == "shifted-inverse":
        pair, trace = shifted_inverse_iteration(a, args.shift, cfg)
    else:
        pair, trace = rayleigh_quotient_iteration(a, cfg)
    result = {
        "value": pair.value,
        "vector": pair.vector,
        "residual": pair.residual,
        "iterations": pair.iterations,
        "converged": pair.converged,
    }
    summary = {
        "steps": len(trace),
        "first_residual": trace.steps[0].residual if len(trace) else None,
        "final_residual": trace.steps[-1].residual if len(trace) else None,
    }
    return result, summary, _estimate(trace, float(np.linalg.norm(a))), list(trace.steps)


def _multi(args, a, cfg):
    if args.command == "qr":
        dec, states = qr_iteration(a, cfg)
    else:
        dec, states = simultaneous_iteration(a, None, cfg)
    result = {
        "values": dec.values,
        "vectors": dec.vectors.T,
        "residuals": dec.residuals,
        "iterations": dec.iterations,
        "converged": dec.converged,
        "off_diagonal": dec.off_diagonal[-1] if dec.off_diagonal else 0.0,
    }
    # trace rows: lambda = largest-magnitude diagonal entry of A_k,
    # residual = off-diagonal Frobenius mass, step_change = max|A_k - A_prev|
    rows = []
    for prev, st in zip(states, states[1:]):
        diag = np.diag(st.a_k)
        a_k = st.a_k
        off = float(np.linalg.norm(a_k - np.diag(diag)))
        rows.append((st.k, diag[np.argmax(np.abs(diag))], off, max_abs(a_k - prev.a_k)))
    summary = {"steps": dec.iterations, "retained_states": len(states),
               "final_off_diagonal": result["off_diagonal"]}
    return result, summary, _estimate(dec.off_diagonal, float(np.linalg.norm(a))), rows


def _equiv(args, a, cfg):
    rep = verify_equivalence(a, args.k, cfg)
    steps = [{
        "k": s.k,
        "dev_a": s.dev_a,
        "dev_q": s.dev_q,
        "dev_r": s.dev_r,
        "power_defect_sim": s.power_defect_sim,
        "power_defect_qr": s.power_defect_qr,
        "similarity_defect_sim": s.similarity_defect_sim,
        "similarity_defect_qr": s.similarity_defect_qr,
        "bound": s.bound,
        "power_bound": s.power_bound,
        "passed": s.passed,
    } for s in rep.steps]
    result = {"passed": rep.passed, "converged": rep.passed, "rel_tol": rep.rel_tol,
              "worst_ratio": rep.worst(), "steps": steps}
    return result, None, None, None


def _execute(args):
    cfg = _solver_config(args)
    if args.command == "roots":
        poly = MonicPolynomial(args.coeffs)
        inp = {"coeffs": list(poly.coeffs), "degree": poly.degree}
        res = poly_roots(poly, cfg)
        result = {"roots": res.roots, "residuals": res.residuals,
                  "iterations": res.iterations, "converged": True}
        return inp, result, {"steps": res.iterations}, None, None
    if args.command == "bench":
        if args.n < 2:
            raise UsageError("--n must be at least 2")
        inp = {"families": "constructed benchmark families", "n": args.n}
        result = run_bench(args.n, cfg)
        result["converged"] = True
        return inp, result, None, None, None

    a = read_matrix_market(args.matrix)
    inp = {"path": args.matrix, "rows": a.shape[0], "cols": a.shape[1],
           "symmetric": is_symmetric(a)}
    if a.shape[0] != a.shape[1]:
        raise UsageError(f"{args.matrix}: matrix is {a.shape[0]}x{a.shape[1]}, not square")
    if args.command in SINGLE:
        result, summary, est, rows = _single(args, a, cfg)
    elif args.command in MULTI:
        result, summary, est, rows = _multi(args, a, cfg)
    else:
        result, summary, est, rows = _equiv(args, a, cfg)
    return inp, result, summary, est, rows


def run_cli(argv=None, stdout=None, stderr=None):
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    try:
        args = build_parser().parse_args(argv)
        echo = config_echo(args)
    except UsageError as exc:
        print(f"error: {exc}", file=stderr)
        return 1
    except SystemExit as exc:  # --help / --version
        return int(exc.code or 0)

    t0 = time.perf_counter()
    rows = None
    try:
        inp, result, summary, est, rows = _execute(args)
    except (UsageError, MatrixMarketError, OSError) as exc:
        print(f"error: {exc}", file=stderr)
        return 1
    except EigenError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=stderr)
        if args.command == "roots":
            inp = {"coeffs": args.coeffs, "degree": len(args.coeffs)}
        elif args.command == "bench":
            inp = {"n": args.n}
        else:
            inp = {"path": args.matrix}
        result = {"converged": False,
                  "error": {"type": type(exc).__name__, "message": str(exc)}}
        if hasattr(exc, "trajectory"):
            result["error"]["trajectory"] = exc.trajectory
        summary = est = None

    report = RunReport(args.command, inp, echo, result, summary, est)
    if args.timing:
        report.metadata["wall_time_s"] = time.perf_counter() - t0
    if args.trace and rows is None:
        print(f"warning: no iteration trace for '{args.command}'; --trace ignored",
              file=stderr)
    try:
        text = write_report(report, args.out, args.trace if rows is not None else None,
                            rows or ())
    except ReportIOError as exc:
        print(f"error: {exc}", file=stderr)
        return 1
    stdout.write(text)
    if not report.converged:
        print(f"{args.command}: not converged", file=stderr)
        return 2
    return 0


def main():
    sys.exit(run_cli())


if __name__ == "__main__":
    main()

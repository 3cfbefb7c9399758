"""Run reports: JSON with a fixed field order and CSV iteration traces.

Floats are written with 17 significant digits, which round-trips every
IEEE double exactly.
"""

import csv
import json
import math
from dataclasses import dataclass, field
from typing import Any, Optional

import numpy as np

from .errors import EigenError

TRACE_HEADER = ("k", "lambda", "residual", "step_change")


def format_float(x):
    x = float(x)
    if not math.isfinite(x):
        return "null"
    s = f"{x:.17g}"
    if not any(ch in s for ch in ".en"):
        s += ".0"
    return s


def _plain(obj):
    if isinstance(obj, np.ndarray):
        return obj.tolist()
    if isinstance(obj, np.generic):
        return obj.item()
    return obj


def dumps(obj, indent=2, _level=0):
    """JSON text for ``obj`` (dicts keep insertion order)."""
    obj = _plain(obj)
    pad = " " * (indent * (_level + 1))
    end = " " * (indent * _level)
    if obj is None or isinstance(obj, (bool, str)):
        return json.dumps(obj)
    if isinstance(obj, int):
        return str(obj)
    if isinstance(obj, float):
        return format_float(obj)
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [f"{pad}{json.dumps(str(k))}: {dumps(v, indent, _level + 1)}"
                 for k, v in obj.items()]
        return "{\n" + ",\n".join(items) + "\n" + end + "}"
    if isinstance(obj, (list, tuple)):
        if not obj:
            return "[]"
        if all(isinstance(_plain(v), (int, float)) and not isinstance(v, bool) for v in obj):
            return "[" + ", ".join(dumps(v) for v in obj) + "]"
        items = [pad + dumps(v, indent, _level + 1) for v in obj]
        return "[\n" + ",\n".join(items) + "\n" + end + "]"
    raise TypeError(f"cannot serialize {type(obj).__name__}")


@dataclass
class RunReport:
    method: str
    input: dict
    config: dict
    result: dict
    trace: Optional[dict] = None
    convergence: Optional[dict] = None
    metadata: dict = field(default_factory=dict)

    @property
    def converged(self):
        return bool(self.result.get("converged", False))

    def to_dict(self):
        out: dict[str, Any] = {
            "method": self.method,
            "input": self.input,
            "config": self.config,
            "result": self.result,
            "trace": self.trace,
            "convergence": self.convergence,
        }
        # wall time and the like live here; absent unless asked for so that
        # identical runs produce identical bytes
        if self.metadata:
            out["metadata"] = self.metadata
        return out

    def to_json(self):
        return dumps(self.to_dict()) + "\n"


def write_trace_csv(path, rows):
    """Write ``(k, lambda, residual, step_change)`` rows under the fixed header."""
    try:
        with open(path, "w", newline="", encoding="utf-8") as fh:
            writer = csv.writer(fh, lineterminator="\n")
            writer.writerow(TRACE_HEADER)
            for k, lam, res, change in rows:
                writer.writerow([int(k), format_float(lam), format_float(res),
                                 format_float(change)])
    except OSError as exc:
        raise ReportIOError(f"cannot write trace to {path}: {exc.strerror or exc}") from exc


def read_trace_csv(path):
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.reader(fh)
        header = next(reader)
        if tuple(header) != TRACE_HEADER:
            raise ValueError(f"unexpected trace header {header}")
        return [(int(r[0]), float(r[1]), float(r[2]), float(r[3])) for r in reader]


class ReportIOError(EigenError, OSError):
    pass


def write_report(report, json_path=None, csv_trace_path=None, trace_rows=()):
    text = report.to_json()
    if json_path is not None:
        try:
            with open(json_path, "w", encoding="utf-8") as fh:
                fh.write(text)
        except OSError as exc:
            raise ReportIOError(f"cannot write report to {json_path}: "
                                f"{exc.strerror or exc}") from exc
    if csv_trace_path is not None:
        write_trace_csv(csv_trace_path, trace_rows)
    return text

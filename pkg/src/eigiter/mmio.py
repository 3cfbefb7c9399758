"""Matrix Market (.mtx) reader and writer for dense real matrices.

Supports ``array`` and ``coordinate`` formats with ``real``, ``double`` or
``integer`` fields and ``general``, ``symmetric`` or ``skew-symmetric``
storage. Symmetric storage is mirrored into a full matrix.
"""

import numpy as np

from .dense import as_matrix
from .errors import MatrixMarketError

MAX_DIM = 10000

_FORMATS = {"array", "coordinate"}
_FIELDS = {"real", "double", "integer"}
_SYMMETRIES = {"general", "symmetric", "skew-symmetric"}


def _parse_header(line, path):
    tokens = line.split()
    if len(tokens) != 5 or tokens[0].lower() != "%%matrixmarket":
        raise MatrixMarketError("expected '%%MatrixMarket matrix <format> <field> <symmetry>'",
                                line=1, path=path)
    obj, fmt, fld, sym = (t.lower() for t in tokens[1:])
    if obj != "matrix":
        raise MatrixMarketError(f"unsupported object {obj!r}", line=1, path=path)
    if fmt not in _FORMATS:
        raise MatrixMarketError(f"unsupported format {fmt!r}", line=1, path=path)
    if fld not in _FIELDS:
        raise MatrixMarketError(f"unsupported field {fld!r} (real matrices only)",
                                line=1, path=path)
    if sym not in _SYMMETRIES:
        raise MatrixMarketError(f"unsupported symmetry {sym!r}", line=1, path=path)
    return fmt, sym


def _data_lines(lines):
    for lineno, raw in enumerate(lines, start=2):
        text = raw.strip()
        if not text or text.startswith("%"):
            continue
        yield lineno, text.split()


def _number(tok, lineno, path):
    try:
        val = float(tok)
    except ValueError:
        raise MatrixMarketError(f"not a number: {tok!r}", line=lineno, path=path) from None
    if not np.isfinite(val):
        raise MatrixMarketError(f"non-finite value {tok!r}", line=lineno, path=path)
    return val


def _index(tok, bound, lineno, path):
    try:
        idx = int(tok)
    except ValueError:
        raise MatrixMarketError(f"not an index: {tok!r}", line=lineno, path=path) from None
    if not 1 <= idx <= bound:
        raise MatrixMarketError(f"index {idx} out of range 1..{bound}", line=lineno, path=path)
    return idx - 1


def parse_matrix_market(text, path=None, max_dim=MAX_DIM):
    lines = text.splitlines()
    if not lines:
        raise MatrixMarketError("empty file", line=1, path=path)
    fmt, sym = _parse_header(lines[0], path)
    body = _data_lines(lines[1:])

    try:
        lineno, size = next(body)
    except StopIteration:
        raise MatrixMarketError("missing size line", line=len(lines), path=path) from None
    want = 2 if fmt == "array" else 3
    if len(size) != want:
        raise MatrixMarketError(f"size line needs {want} integers", line=lineno, path=path)
    try:
        dims = [int(t) for t in size]
    except ValueError:
        raise MatrixMarketError("size line has non-integer entries", line=lineno,
                                path=path) from None
    rows, cols = dims[0], dims[1]
    if rows < 1 or cols < 1:
        raise MatrixMarketError(f"invalid dimensions {rows}x{cols}", line=lineno, path=path)
    if max(rows, cols) > max_dim:
        raise MatrixMarketError(
            f"dimensions {rows}x{cols} exceed the configured maximum {max_dim}",
            line=lineno, path=path)
    if sym != "general" and rows != cols:
        raise MatrixMarketError(f"{sym} storage requires a square matrix", line=lineno,
                                path=path)

    a = np.zeros((rows, cols))
    if fmt == "array":
        if sym == "general":
            slots = [(i, j) for j in range(cols) for i in range(rows)]
        elif sym == "symmetric":
            slots = [(i, j) for j in range(cols) for i in range(j, rows)]
        else:
            slots = [(i, j) for j in range(cols) for i in range(j + 1, rows)]
        count = 0
        for lineno, toks in body:
            if len(toks) != 1:
                raise MatrixMarketError("array entries must be one value per line",
                                        line=lineno, path=path)
            if count >= len(slots):
                raise MatrixMarketError(f"more than {len(slots)} entries", line=lineno,
                                        path=path)
            i, j = slots[count]
            a[i, j] = _number(toks[0], lineno, path)
            count += 1
        if count != len(slots):
            raise MatrixMarketError(f"expected {len(slots)} entries, found {count}",
                                    line=len(lines), path=path)
    else:
        nnz = dims[2]
        if nnz < 0:
            raise MatrixMarketError(f"invalid entry count {nnz}", line=lineno, path=path)
        count = 0
        for lineno, toks in body:
            if len(toks) != 3:
                raise MatrixMarketError("coordinate entries need 'row col value'",
                                        line=lineno, path=path)
            if count >= nnz:
                raise MatrixMarketError(f"more than the declared {nnz} entries",
                                        line=lineno, path=path)
            i = _index(toks[0], rows, lineno, path)
            j = _index(toks[1], cols, lineno, path)
            if sym != "general" and i < j:
                raise MatrixMarketError(f"{sym} storage lists lower-triangle entries only",
                                        line=lineno, path=path)
            if sym == "skew-symmetric" and i == j:
                raise MatrixMarketError("skew-symmetric storage has no diagonal entries",
                                        line=lineno, path=path)
            a[i, j] += _number(toks[2], lineno, path)
            count += 1
        if count != nnz:
            raise MatrixMarketError(f"expected {nnz} entries, found {count}",
                                    line=len(lines), path=path)

    if sym == "symmetric":
        a = np.tril(a) + np.tril(a, -1).T
    elif sym == "skew-symmetric":
        a = np.tril(a, -1) - np.tril(a, -1).T
    return as_matrix(a)


def read_matrix_market(path, max_dim=MAX_DIM):
    path = str(path)
    with open(path, encoding="utf-8") as fh:
        text = fh.read()
    return parse_matrix_market(text, path=path, max_dim=max_dim)


def format_matrix_market(a, symmetric=False, comment=None):
    a = as_matrix(a)
    rows, cols = a.shape
    sym = "symmetric" if symmetric else "general"
    out = [f"%%MatrixMarket matrix array real {sym}"]
    if comment:
        out.extend(f"% {line}" for line in comment.splitlines())
    out.append(f"{rows} {cols}")
    for j in range(cols):
        start = j if symmetric else 0
        out.extend(f"{a[i, j]:.17g}" for i in range(start, rows))
    return "\n".join(out) + "\n"


def write_matrix_market(path, a, symmetric=False, comment=None):
    text = format_matrix_market(a, symmetric=symmetric, comment=comment)
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(text)

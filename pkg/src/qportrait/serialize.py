"""JSON matrix format and report serialization.

Matrices are stored as ``{"dim": N, "entries": [[[re, im], ...], ...]}``,
row-major.  Floats go through ``repr`` so a written matrix re-reads bit for bit.
"""
import json
import math

import numpy as np

from .errors import ValidationError


class MatrixFormatError(ValidationError):
    """The JSON document is not a well-formed matrix."""


def matrix_to_obj(m):
    m = np.asarray(m, dtype=np.complex128)
    return {
        "dim": int(m.shape[0]),
        "entries": [[[float(z.real), float(z.imag)] for z in row] for row in m],
    }


def matrix_from_obj(obj):
    if not isinstance(obj, dict) or "entries" not in obj:
        raise MatrixFormatError('expected an object with "dim" and "entries"')
    entries = obj["entries"]
    dim = obj.get("dim", len(entries) if isinstance(entries, list) else None)
    if not isinstance(dim, int) or isinstance(dim, bool) or dim < 1:
        raise MatrixFormatError(f'"dim" must be a positive integer, got {dim!r}')
    if not isinstance(entries, list) or len(entries) != dim:
        raise MatrixFormatError(f'"entries" must have {dim} rows')
    out = np.empty((dim, dim), dtype=np.complex128)
    for j, row in enumerate(entries):
        if not isinstance(row, list) or len(row) != dim:
            raise MatrixFormatError(f"row {j} must have {dim} entries")
        for k, z in enumerate(row):
            if isinstance(z, (int, float)) and not isinstance(z, bool):
                re, im = z, 0.0
            elif isinstance(z, list) and len(z) == 2 and all(isinstance(x, (int, float)) and not isinstance(x, bool) for x in z):
                re, im = z
            else:
                raise MatrixFormatError(f"entry ({j}, {k}) must be [re, im], got {z!r}")
            out[j, k] = complex(float(re), float(im))
    return out


def dumps_matrix(m):
    return json.dumps(matrix_to_obj(m))


def loads_matrix(text):
    """Parse a matrix document.  Syntax errors keep ``json``'s line/column message."""
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise MatrixFormatError(f"malformed JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}") from exc
    return matrix_from_obj(obj)


def read_matrix(path):
    with open(path, encoding="utf-8") as fh:
        return loads_matrix(fh.read())


def write_matrix(path, m):
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dumps_matrix(m))
        fh.write("\n")


def read_vector(path):
    """A JSON array of reals (eigenvalue list or probability vector)."""
    with open(path, encoding="utf-8") as fh:
        text = fh.read()
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise MatrixFormatError(f"malformed JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}") from exc
    if not isinstance(obj, list) or not obj or not all(isinstance(x, (int, float)) and not isinstance(x, bool) for x in obj):
        raise MatrixFormatError("expected a nonempty JSON array of numbers")
    return np.array(obj, dtype=np.float64)


def jsonable(x):
    """Recursively convert to JSON-safe values; infinities become ``"inf"``/``"-inf"``, NaN ``null``."""
    if isinstance(x, dict):
        return {k: jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [jsonable(v) for v in x]
    if isinstance(x, np.ndarray):
        return jsonable(x.tolist())
    if isinstance(x, (np.floating, float)):
        x = float(x)
        if math.isnan(x):
            return None
        if math.isinf(x):
            return "inf" if x > 0 else "-inf"
        return x
    if isinstance(x, np.integer):
        return int(x)
    if isinstance(x, np.bool_):
        return bool(x)
    return x


class _Encoder(json.JSONEncoder):
    # 15 significant digits for every float in reports
    def iterencode(self, o, _one_shot=False):
        return super().iterencode(_round(o), _one_shot)


def _round(x):
    if isinstance(x, float):
        return float(f"{x:.15g}")
    if isinstance(x, dict):
        return {k: _round(v) for k, v in x.items()}
    if isinstance(x, list):
        return [_round(v) for v in x]
    return x


def dumps_report(obj, indent=2):
    return json.dumps(jsonable(obj), cls=_Encoder, indent=indent)

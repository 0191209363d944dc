"""Matrix and distribution payloads: the on-disk JSON format.

A matrix file is ``{"dim": n, "matrix": [[[re, im], ...], ...]}`` with an
optional ``"dims": [d_a, d_b]`` bipartite tag; a distribution file is
``{"p": [...]}``.  Numbers are serialized as shortest round-trip decimals,
so dump(parse(text)) reproduces a generated file byte for byte.
"""

from __future__ import annotations

import json

import numpy as np

from .exceptions import FileFormatError


def matrix_payload(matrix, dims=None) -> dict:
    a = np.asarray(matrix, dtype=np.complex128)
    obj: dict = {"dim": int(a.shape[0])}
    if dims is not None:
        obj["dims"] = [int(dims[0]), int(dims[1])]
    obj["matrix"] = [
        [[float(z.real), float(z.imag)] for z in row] for row in a
    ]
    return obj


def matrix_from_payload(obj) -> tuple[np.ndarray, tuple[int, int] | None]:
    """Parse and structurally validate a matrix payload."""
    if not isinstance(obj, dict):
        raise FileFormatError("matrix payload must be an object", "")
    dim = obj.get("dim")
    if not isinstance(dim, int) or dim < 1:
        raise FileFormatError(f"dim must be a positive integer, got {dim!r}", "dim")
    dims = None
    if "dims" in obj:
        raw = obj["dims"]
        if (
            not isinstance(raw, list)
            or len(raw) != 2
            or not all(isinstance(d, int) and d > 0 for d in raw)
        ):
            raise FileFormatError(f"dims must be two positive integers", "dims")
        if raw[0] * raw[1] != dim:
            raise FileFormatError(
                f"dims {raw} do not multiply to dim {dim}", "dims"
            )
        dims = (raw[0], raw[1])
    rows = obj.get("matrix")
    if not isinstance(rows, list) or len(rows) != dim:
        raise FileFormatError(f"matrix must be a list of {dim} rows", "matrix")
    out = np.empty((dim, dim), dtype=np.complex128)
    for i, row in enumerate(rows):
        if not isinstance(row, list) or len(row) != dim:
            raise FileFormatError(f"row {i} must have {dim} entries", "matrix")
        for j, pair in enumerate(row):
            if (
                not isinstance(pair, list)
                or len(pair) != 2
                or not all(isinstance(x, (int, float)) for x in pair)
            ):
                raise FileFormatError(
                    f"entry ({i},{j}) must be an [re, im] pair", "matrix"
                )
            out[i, j] = complex(pair[0], pair[1])
    return out, dims


def distribution_payload(p) -> dict:
    return {"p": [float(x) for x in np.asarray(p, dtype=np.float64)]}


def distribution_from_payload(obj) -> np.ndarray:
    if not isinstance(obj, dict):
        raise FileFormatError("distribution payload must be an object", "")
    p = obj.get("p")
    if (
        not isinstance(p, list)
        or not p
        or not all(isinstance(x, (int, float)) for x in p)
    ):
        raise FileFormatError("p must be a non-empty list of numbers", "p")
    return np.asarray(p, dtype=np.float64)


def dump_payload(obj) -> str:
    return json.dumps(obj, indent=2) + "\n"


def load_payload(text: str) -> dict:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FileFormatError(f"invalid JSON: {exc}", "") from exc
    if not isinstance(obj, dict):
        raise FileFormatError("top-level value must be an object", "")
    return obj

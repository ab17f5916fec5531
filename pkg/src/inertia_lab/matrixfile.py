"""JSON matrix files: ``{"dim_a": m, "dim_b": n, "re": [...], "im": [...]}``.

Entries are row-major. Python's float repr is the shortest string that
round-trips, so writing then reading is bit-exact.
"""
import json
from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatch, ParseError
from .ptrans import BipartiteDims


@dataclass(frozen=True)
class MatrixFile:
    dims: BipartiteDims
    matrix: np.ndarray

    def to_json(self) -> str:
        flat = np.asarray(self.matrix, dtype=np.complex128).ravel()
        payload = {
            "dim_a": self.dims.m,
            "dim_b": self.dims.n,
            "re": [float(x) for x in flat.real],
            "im": [float(x) for x in flat.imag],
        }
        return json.dumps(payload)

    @classmethod
    def from_json(cls, text: str) -> "MatrixFile":
        try:
            obj = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ParseError(f"malformed JSON: {exc}") from None
        if not isinstance(obj, dict):
            raise ParseError("matrix file must hold a JSON object")
        missing = [k for k in ("dim_a", "dim_b", "re", "im") if k not in obj]
        if missing:
            raise ParseError(f"missing fields: {', '.join(missing)}")
        try:
            dims = BipartiteDims(int(obj["dim_a"]), int(obj["dim_b"]))
            re = np.asarray(obj["re"], dtype=np.float64)
            im = np.asarray(obj["im"], dtype=np.float64)
        except (TypeError, ValueError) as exc:
            raise ParseError(f"bad field value: {exc}") from None
        if re.ndim != 1 or im.ndim != 1:
            raise ParseError("re and im must be flat arrays")
        d = dims.order
        if re.size != d * d or im.size != d * d:
            raise DimensionMismatch(f"expected {d * d} entries for dims {dims}, got {re.size} and {im.size}")
        return cls(dims, (re + 1j * im).reshape(d, d))


def read_matrix(path) -> MatrixFile:
    with open(path, "r", encoding="utf-8") as fh:
        return MatrixFile.from_json(fh.read())


def write_matrix(path, dims: BipartiteDims, matrix) -> None:
    m = np.asarray(matrix)
    if m.shape != (dims.order, dims.order):
        raise DimensionMismatch(f"matrix of shape {m.shape} does not match dims {dims}")
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(MatrixFile(dims, m).to_json())
        fh.write("\n")

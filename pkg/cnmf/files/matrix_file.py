"""
CNMF Toolkit - Matrix Files

Binary layout, all little-endian:

    b"CNMF1\\n" | uint64 ndim | ndim x uint64 size | row-major float64 payload

ndim is 2 or 3. Files that do not start with the magic are read as 2-D CSV
(comma-separated, no header, one matrix row per line).
"""

import logging
from pathlib import Path

import numpy as np

from ..core.types import as_array
from ..errors import InvalidInputError, MatrixFormatError
from .atomic import atomic_open

logger = logging.getLogger(__name__)

MAGIC = b"CNMF1\n"
_U64 = np.dtype("<u8")
_F64 = np.dtype("<f8")


def write_matrix(path, array, fmt: str = "binary") -> None:
    arr = as_array(array)
    if arr.ndim not in (2, 3):
        raise InvalidInputError(f"only 2-D and 3-D arrays can be stored, got shape {arr.shape}")
    if 0 in arr.shape:
        raise InvalidInputError(f"refusing to store zero-size array of shape {arr.shape}")

    if fmt == "binary":
        header = np.array([arr.ndim, *arr.shape], dtype=_U64)
        with atomic_open(path, "wb") as fh:
            fh.write(MAGIC)
            fh.write(header.tobytes())
            fh.write(np.ascontiguousarray(arr, dtype=_F64).tobytes(order="C"))
    elif fmt == "csv":
        if arr.ndim != 2:
            raise InvalidInputError("CSV matrix files are 2-D only")
        with atomic_open(path, "w") as fh:
            np.savetxt(fh, arr, delimiter=",", fmt="%.17g")
    else:
        raise InvalidInputError(f"unknown matrix format {fmt!r}")
    logger.debug("wrote %s matrix %s to %s", fmt, arr.shape, path)


def _read_binary(raw: bytes, path) -> np.ndarray:
    offset = len(MAGIC)
    if len(raw) < offset + _U64.itemsize:
        raise MatrixFormatError(f"{path}: truncated header")
    ndim = int(np.frombuffer(raw, dtype=_U64, count=1, offset=offset)[0])
    if ndim not in (2, 3):
        raise MatrixFormatError(f"{path}: ndim must be 2 or 3, got {ndim}")
    offset += _U64.itemsize
    if len(raw) < offset + ndim * _U64.itemsize:
        raise MatrixFormatError(f"{path}: truncated header")
    shape = tuple(int(s) for s in np.frombuffer(raw, dtype=_U64, count=ndim, offset=offset))
    offset += ndim * _U64.itemsize
    if 0 in shape:
        raise MatrixFormatError(f"{path}: zero-size dimension in {shape}")

    count = int(np.prod(shape, dtype=object))
    payload = len(raw) - offset
    if payload != count * _F64.itemsize:
        raise MatrixFormatError(
            f"{path}: shape {shape} needs {count * _F64.itemsize} payload bytes, found {payload}"
        )
    return np.frombuffer(raw, dtype=_F64, offset=offset).astype(np.float64).reshape(shape)


def _read_csv(raw: bytes, path) -> np.ndarray:
    try:
        lines = [ln for ln in raw.decode("utf-8").splitlines() if ln.strip()]
        arr = np.loadtxt(lines, delimiter=",", dtype=np.float64, ndmin=2)
    except (UnicodeDecodeError, ValueError) as e:
        raise MatrixFormatError(f"{path}: not a CNMF1 file and not parseable as CSV ({e})") from e
    if arr.size == 0:
        raise MatrixFormatError(f"{path}: empty CSV matrix")
    return arr


def read_matrix(path, ndim: int | None = None) -> np.ndarray:
    """Read a matrix file; raises FileNotFoundError or MatrixFormatError."""
    raw = Path(path).read_bytes()
    arr = _read_binary(raw, path) if raw.startswith(MAGIC) else _read_csv(raw, path)
    if ndim is not None and arr.ndim != ndim:
        raise MatrixFormatError(f"{path}: expected a {ndim}-D matrix, got shape {arr.shape}")
    return arr

"""Flat binary container for named arrays plus a JSON metadata block.

Both dataset records and training checkpoints use this format. The layout
is fully deterministic (no timestamps, fixed little-endian encoding), so
writing the same content twice produces identical bytes. That property is
load-bearing: dataset regenerability and checkpoint round-trips are
verified by hashing files.

Layout (all integers little-endian):

    magic    4 bytes  b"FDT1"
    meta_len u32      length of UTF-8 JSON metadata (sorted keys)
    meta     bytes
    count    u32      number of array entries
    per entry:
        name_len u16, name UTF-8
        dtype_code u8   (see _DTYPES)
        ndim u8, dims u32 * ndim
        payload raw little-endian array bytes (C order)
"""

from __future__ import annotations

import json
import struct
from typing import Any

import numpy as np

MAGIC = b"FDT1"

_DTYPES = {
    0: np.dtype("<f4"),
    1: np.dtype("<f8"),
    2: np.dtype("<u1"),
    3: np.dtype("<i8"),
    4: np.dtype("<u4"),
}
_DTYPE_CODES = {dt: code for code, dt in _DTYPES.items()}


class TensorFileError(ValueError):
    """Raised on malformed container bytes or unsupported dtypes."""


def dumps(arrays: dict[str, np.ndarray], meta: dict[str, Any] | None = None) -> bytes:
    """Serialize named arrays and metadata to deterministic bytes.

    Entries are written in the given dict order; callers that need
    bit-stable output across runs should pass a stable ordering
    (plain dicts preserve insertion order, which suffices).
    """
    parts = [MAGIC]
    meta_bytes = json.dumps(meta or {}, sort_keys=True, separators=(",", ":")).encode("utf-8")
    parts.append(struct.pack("<I", len(meta_bytes)))
    parts.append(meta_bytes)
    parts.append(struct.pack("<I", len(arrays)))
    for name, arr in arrays.items():
        arr = np.ascontiguousarray(arr)
        dt = arr.dtype.newbyteorder("<")
        if dt not in _DTYPE_CODES:
            raise TensorFileError(f"unsupported dtype {arr.dtype} for entry {name!r}")
        name_b = name.encode("utf-8")
        parts.append(struct.pack("<H", len(name_b)))
        parts.append(name_b)
        parts.append(struct.pack("<BB", _DTYPE_CODES[dt], arr.ndim))
        parts.append(struct.pack(f"<{arr.ndim}I", *arr.shape))
        parts.append(arr.astype(dt, copy=False).tobytes(order="C"))
    return b"".join(parts)


def loads(data: bytes) -> tuple[dict[str, np.ndarray], dict[str, Any]]:
    """Parse container bytes back into (arrays, metadata)."""
    if data[:4] != MAGIC:
        raise TensorFileError("bad magic; not a figdiff tensor file")
    off = 4
    (meta_len,) = struct.unpack_from("<I", data, off)
    off += 4
    meta = json.loads(data[off:off + meta_len].decode("utf-8"))
    off += meta_len
    (count,) = struct.unpack_from("<I", data, off)
    off += 4
    arrays: dict[str, np.ndarray] = {}
    for _ in range(count):
        (name_len,) = struct.unpack_from("<H", data, off)
        off += 2
        name = data[off:off + name_len].decode("utf-8")
        off += name_len
        code, ndim = struct.unpack_from("<BB", data, off)
        off += 2
        if code not in _DTYPES:
            raise TensorFileError(f"unknown dtype code {code} for entry {name!r}")
        shape = struct.unpack_from(f"<{ndim}I", data, off)
        off += 4 * ndim
        dt = _DTYPES[code]
        nbytes = int(np.prod(shape, dtype=np.int64)) * dt.itemsize if ndim else dt.itemsize
        arr = np.frombuffer(data[off:off + nbytes], dtype=dt).reshape(shape).copy()
        off += nbytes
        arrays[name] = arr
    if off != len(data):
        raise TensorFileError(f"trailing bytes: consumed {off} of {len(data)}")
    return arrays, meta


def write(path, arrays: dict[str, np.ndarray], meta: dict[str, Any] | None = None) -> None:
    data = dumps(arrays, meta)
    try:
        with open(path, "wb") as fh:
            fh.write(data)
    except OSError as exc:
        raise OSError(f"failed writing tensor file {path}: {exc}") from exc


def read(path) -> tuple[dict[str, np.ndarray], dict[str, Any]]:
    try:
        with open(path, "rb") as fh:
            data = fh.read()
    except OSError as exc:
        raise OSError(f"failed reading tensor file {path}: {exc}") from exc
    return loads(data)

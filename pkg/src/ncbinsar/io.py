"""NCBR raster files, PGM images, CSV tables and JSON manifests.

NCBR layout (all integers little-endian)::

    offset  size  field
    0       4     magic b"NCBR"
    4       4     version, u32 = 1
    8       4     rows, u32
    12      4     cols, u32
    16      1     dtype, u8 (0 = complex128 as re,im pairs; 1 = float64)
    17      3     zero padding
    20      ...   row-major payload
"""

from __future__ import annotations

import csv
import json
import struct
from pathlib import Path

import numpy as np

from .errors import FormatError, IoError

__all__ = [
    "MAGIC",
    "VERSION",
    "DTYPE_COMPLEX",
    "DTYPE_REAL",
    "encode_raster",
    "decode_raster",
    "write_raster",
    "read_raster",
    "write_pgm",
    "write_csv",
    "write_json",
    "read_json",
]

MAGIC = b"NCBR"
VERSION = 1
DTYPE_COMPLEX = 0
DTYPE_REAL = 1
_HEADER = struct.Struct("<4sIIIB3x")
_SAMPLE = {DTYPE_COMPLEX: np.dtype("<c16"), DTYPE_REAL: np.dtype("<f8")}


def encode_raster(x) -> bytes:
    x = np.asarray(x)
    if x.ndim != 2:
        raise FormatError(f"rasters must be 2-D, got shape {x.shape}")
    if np.iscomplexobj(x):
        code = DTYPE_COMPLEX
    elif np.issubdtype(x.dtype, np.floating) or np.issubdtype(x.dtype, np.integer):
        code = DTYPE_REAL
    else:
        raise FormatError(f"unsupported raster dtype {x.dtype}")
    rows, cols = x.shape
    payload = np.ascontiguousarray(x, dtype=_SAMPLE[code]).tobytes()
    return _HEADER.pack(MAGIC, VERSION, rows, cols, code) + payload


def decode_raster(buf: bytes) -> np.ndarray:
    if len(buf) < _HEADER.size:
        raise FormatError(f"NCBR header needs {_HEADER.size} bytes, got {len(buf)}")
    magic, version, rows, cols, code = _HEADER.unpack_from(buf)
    if magic != MAGIC:
        raise FormatError(f"bad magic {magic!r}, expected {MAGIC!r}")
    if version != VERSION:
        raise FormatError(f"unsupported NCBR version {version}, expected {VERSION}")
    if code not in _SAMPLE:
        raise FormatError(f"unknown dtype code {code}")
    if buf[17:20] != b"\x00\x00\x00":
        raise FormatError("non-zero header padding")
    dt = _SAMPLE[code]
    expected = rows * cols * dt.itemsize
    actual = len(buf) - _HEADER.size
    if actual != expected:
        raise FormatError(f"payload length mismatch: expected {expected} bytes, got {actual}")
    arr = np.frombuffer(buf, dtype=dt, offset=_HEADER.size).reshape(rows, cols)
    return arr.astype(dt.newbyteorder("="), copy=True)


def write_raster(path, x) -> None:
    data = encode_raster(x)
    try:
        Path(path).write_bytes(data)
    except OSError as exc:
        raise IoError(f"cannot write raster {path}: {exc}") from exc


def read_raster(path) -> np.ndarray:
    try:
        data = Path(path).read_bytes()
    except OSError as exc:
        raise IoError(f"cannot read raster {path}: {exc}") from exc
    try:
        return decode_raster(data)
    except FormatError as exc:
        raise FormatError(f"{path}: {exc}") from exc


def pgm_bytes(r, lo: float, hi: float) -> bytes:
    r = np.asarray(r, dtype=np.float64)
    if r.ndim != 2:
        raise FormatError(f"PGM images must be 2-D, got shape {r.shape}")
    if not lo < hi:
        raise ValueError(f"need lo < hi, got lo={lo}, hi={hi}")
    pix = np.clip(np.round(255.0 * (r - lo) / (hi - lo)), 0, 255).astype(np.uint8)
    rows, cols = r.shape
    return f"P5\n{cols} {rows}\n255\n".encode("ascii") + pix.tobytes()


def write_pgm(path, r, lo: float, hi: float) -> None:
    """Binary 8-bit greyscale image; ``lo`` maps to 0 and ``hi`` to 255."""
    data = pgm_bytes(r, lo, hi)
    try:
        Path(path).write_bytes(data)
    except OSError as exc:
        raise IoError(f"cannot write image {path}: {exc}") from exc


def write_csv(path, header, rows) -> None:
    """CSV with LF line endings; floats use ``repr`` so '.' is the separator."""
    def cell(v):
        return repr(float(v)) if isinstance(v, (float, np.floating)) else str(v)

    try:
        with open(path, "w", newline="", encoding="utf-8") as fh:
            w = csv.writer(fh, lineterminator="\n")
            w.writerow(header)
            for row in rows:
                w.writerow([cell(v) for v in row])
    except OSError as exc:
        raise IoError(f"cannot write CSV {path}: {exc}") from exc


def _jsonable(obj):
    if isinstance(obj, (np.floating, np.integer)):
        return obj.item()
    if isinstance(obj, np.ndarray):
        return obj.tolist()
    if isinstance(obj, Path):
        return str(obj)
    raise TypeError(f"not JSON serializable: {type(obj).__name__}")


def write_json(path, obj) -> None:
    try:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            json.dump(obj, fh, indent=2, sort_keys=True, default=_jsonable, allow_nan=True)
            fh.write("\n")
    except OSError as exc:
        raise IoError(f"cannot write JSON {path}: {exc}") from exc


def read_json(path) -> dict:
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise IoError(f"cannot read JSON {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise FormatError(f"{path}: invalid JSON: {exc}") from exc

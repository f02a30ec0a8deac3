"""Signal files: a CSV text format and a raw little-endian binary format.

CSV::

    # frlp-signal v1; dim;L;N
    1;16.0;256
    re,im
    ...

JSON: ``{"format": "frlp-signal", "version": 1, "dim", "L", "N", "re", "im"}``.

Binary: 16-byte magic ``FRLPSIG1`` padded with NUL, then ``<u32 dim, f64 L,
u32 N>``, then interleaved ``f64`` real and imaginary parts.
"""

from __future__ import annotations

import json
import struct
from pathlib import Path

import numpy as np

from .errors import FrlpError
from .grid import Signal, make_grid

CSV_HEADER = "# frlp-signal v1; dim;L;N"
MAGIC = b"FRLPSIG1".ljust(16, b"\0")
_HEAD = struct.Struct("<IdI")


class SignalFormatError(FrlpError, ValueError):
    pass


def guess_format(path) -> str:
    suffix = Path(path).suffix.lower()
    if suffix in (".bin", ".frlp", ".sig"):
        return "bin"
    if suffix == ".json":
        return "json"
    return "csv"


def write_csv(sig: Signal, path) -> None:
    g = sig.grid
    lines = [CSV_HEADER, f"{g.dim};{g.L!r};{g.N}", "re,im"]
    v = sig.values.ravel()
    lines.extend(f"{x.real!r},{x.imag!r}" for x in v.tolist())
    Path(path).write_text("\n".join(lines) + "\n")


def read_csv(path) -> Signal:
    text = Path(path).read_text().splitlines()
    if len(text) < 3 or text[0].strip() != CSV_HEADER:
        raise SignalFormatError(f"{path}: missing frlp-signal header")
    try:
        dim, L, N = text[1].split(";")
        grid = make_grid(int(dim), float(L), int(N))
    except ValueError as exc:
        raise SignalFormatError(f"{path}: bad grid line {text[1]!r}") from exc
    rows = [r for r in text[3:] if r.strip()]
    try:
        data = np.array([[float(t) for t in r.split(",")] for r in rows])
    except ValueError as exc:
        raise SignalFormatError(f"{path}: bad sample row") from exc
    if data.shape != (grid.size, 2):
        raise SignalFormatError(f"{path}: expected {grid.size} rows of re,im")
    return Signal(grid, data[:, 0] + 1j * data[:, 1])


def write_bin(sig: Signal, path) -> None:
    g = sig.grid
    body = np.ascontiguousarray(sig.values.ravel()).astype("<c16")
    with open(path, "wb") as fh:
        fh.write(MAGIC)
        fh.write(_HEAD.pack(g.dim, g.L, g.N))
        fh.write(body.tobytes())


def read_bin(path) -> Signal:
    raw = Path(path).read_bytes()
    if raw[:16] != MAGIC or len(raw) < 16 + _HEAD.size:
        raise SignalFormatError(f"{path}: bad magic or truncated header")
    dim, L, N = _HEAD.unpack_from(raw, 16)
    try:
        grid = make_grid(dim, L, N)
    except ValueError as exc:
        raise SignalFormatError(f"{path}: bad grid in header") from exc
    body = raw[16 + _HEAD.size:]
    if len(body) != 16 * grid.size:
        raise SignalFormatError(f"{path}: expected {grid.size} complex samples")
    return Signal(grid, np.frombuffer(body, dtype="<c16").copy())


def write_json(sig: Signal, path) -> None:
    g = sig.grid
    v = sig.values.ravel()
    doc = {"format": "frlp-signal", "version": 1, "dim": g.dim, "L": g.L, "N": g.N,
           "re": v.real.tolist(), "im": v.imag.tolist()}
    Path(path).write_text(json.dumps(doc) + "\n")


def read_json(path) -> Signal:
    try:
        doc = json.loads(Path(path).read_text())
        if doc.get("format") != "frlp-signal":
            raise SignalFormatError(f"{path}: not an frlp-signal document")
        grid = make_grid(int(doc["dim"]), float(doc["L"]), int(doc["N"]))
        v = np.asarray(doc["re"], dtype=float) + 1j * np.asarray(doc["im"], dtype=float)
    except (ValueError, KeyError, TypeError, AttributeError) as exc:
        if isinstance(exc, SignalFormatError):
            raise
        raise SignalFormatError(f"{path}: malformed signal document") from exc
    if v.size != grid.size:
        raise SignalFormatError(f"{path}: expected {grid.size} samples")
    return Signal(grid, v)


_READERS = {"csv": read_csv, "bin": read_bin, "json": read_json}
_WRITERS = {"csv": write_csv, "bin": write_bin, "json": write_json}


def read_signal(path, fmt: str | None = None) -> Signal:
    fmt = fmt or guess_format(path)
    if fmt not in _READERS:
        raise ValueError(f"unknown signal format {fmt!r}")
    return _READERS[fmt](path)


def write_signal(sig: Signal, path, fmt: str | None = None) -> None:
    fmt = fmt or guess_format(path)
    if fmt not in _WRITERS:
        raise ValueError(f"unknown signal format {fmt!r}")
    _WRITERS[fmt](sig, path)

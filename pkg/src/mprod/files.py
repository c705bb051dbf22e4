"""File formats: TCUBE1 binary cubes, P6 snapshots, and report CSVs.

TCUBE1 layout, byte-exact:

    b"TCUBE1\\n"                     magic line
    b"{m} {n} {p}\\n"                ASCII header, single spaces
    m*n*p little-endian float64     frontal-slice-major, row-major slices

A matrix is exchanged as a cube with p = 1 (one frontal slice). PPM output
is binary P6 with max value 255, one byte per channel, rows top to bottom.
"""

from __future__ import annotations

import csv

import numpy as np

from .errors import BadChannel, FormatError, IoError, ZeroNormCube
from .psvd import CompressionReport
from .tensor import Tensor3, frobenius_norm

__all__ = [
    "save_cube",
    "load_cube",
    "load_matrix",
    "snapshot_rgb",
    "write_ppm",
    "write_report_csv",
    "write_bench_csv",
]

MAGIC = b"TCUBE1\n"


def save_cube(path, t: Tensor3) -> None:
    """Write a tensor as a TCUBE1 file (bit-exact round-trip with load)."""
    header = f"{t.m} {t.n} {t.p}\n".encode("ascii")
    payload = np.ascontiguousarray(t.slices(), dtype="<f8").tobytes()
    try:
        with open(path, "wb") as fh:
            fh.write(MAGIC)
            fh.write(header)
            fh.write(payload)
    except OSError as exc:
        raise IoError(f"cannot write {path}: {exc}") from exc


def load_cube(path, normalize: bool = False) -> Tensor3:
    """Read a TCUBE1 file; optionally rescale to unit Frobenius norm."""
    try:
        with open(path, "rb") as fh:
            raw = fh.read()
    except OSError as exc:
        raise IoError(f"cannot read {path}: {exc}") from exc
    if not raw.startswith(MAGIC):
        raise FormatError(f"{path}: bad magic, not a TCUBE1 file")
    header_end = raw.find(b"\n", len(MAGIC))
    if header_end < 0:
        raise FormatError(f"{path}: truncated header")
    try:
        m, n, p = (int(x) for x in raw[len(MAGIC):header_end].split())
    except ValueError as exc:
        raise FormatError(f"{path}: malformed header: {exc}") from exc
    if min(m, n, p) < 1:
        raise FormatError(f"{path}: dimensions must be >= 1, got {m} {n} {p}")
    payload = raw[header_end + 1:]
    expected = m * n * p * 8
    if len(payload) != expected:
        raise FormatError(
            f"{path}: payload is {len(payload)} bytes, header implies {expected}"
        )
    data = np.frombuffer(payload, dtype="<f8").reshape(p, m, n)
    t = Tensor3._from_pmn(data.astype(np.float64))
    if normalize:
        norm = frobenius_norm(t)
        if norm == 0.0:
            raise ZeroNormCube(f"{path}: cannot normalize a zero cube")
        t = t / norm
    return t


def load_matrix(path) -> np.ndarray:
    """Read a matrix stored as a single-slice (p = 1) TCUBE1 file."""
    t = load_cube(path)
    if t.p != 1:
        raise FormatError(f"{path}: matrix files must have p = 1, got p = {t.p}")
    return t.frontal_slice(1)


def snapshot_rgb(t: Tensor3, channels=(26, 16, 8)) -> np.ndarray:
    """Render three channels of a cube as an (m, n, 3) uint8 image.

    Each channel is min-max scaled to 0..255 independently; a constant
    channel maps to 0.
    """
    channels = tuple(int(c) for c in channels)
    if len(channels) != 3:
        raise BadChannel(f"need exactly three channel indices, got {channels}")
    for c in channels:
        if not 1 <= c <= t.p:
            raise BadChannel(f"channel {c} outside [1, {t.p}]")
    img = np.zeros((t.m, t.n, 3), dtype=np.uint8)
    for axis, c in enumerate(channels):
        plane = t.frontal_slice(c)
        lo, hi = float(plane.min()), float(plane.max())
        if hi > lo:
            scaled = np.round((plane - lo) / (hi - lo) * 255.0)
            img[:, :, axis] = np.clip(scaled, 0, 255).astype(np.uint8)
    return img


def write_ppm(path, rgb: np.ndarray) -> None:
    """Write an (h, w, 3) uint8 array as a binary P6 PPM file."""
    rgb = np.asarray(rgb)
    if rgb.ndim != 3 or rgb.shape[2] != 3 or rgb.dtype != np.uint8:
        raise FormatError(f"expected an (h, w, 3) uint8 array, got {rgb.shape} {rgb.dtype}")
    h, w = rgb.shape[:2]
    try:
        with open(path, "wb") as fh:
            fh.write(f"P6\n{w} {h}\n255\n".encode("ascii"))
            fh.write(rgb.tobytes())
    except OSError as exc:
        raise IoError(f"cannot write {path}: {exc}") from exc


def write_report_csv(path, report: CompressionReport) -> None:
    """Compression sweep CSV with header k,s,re,cr,seconds,map,seed."""
    try:
        with open(path, "w", newline="", encoding="utf-8") as fh:
            writer = csv.writer(fh)
            writer.writerow(["k", "s", "re", "cr", "seconds", "map", "seed"])
            for row in report.rows:
                writer.writerow(
                    [
                        row.k,
                        row.s,
                        f"{row.relative_error:.12e}",
                        f"{row.compression_ratio:.6f}",
                        f"{row.seconds:.6f}",
                        report.map_label,
                        "" if report.seed is None else report.seed,
                    ]
                )
    except OSError as exc:
        raise IoError(f"cannot write {path}: {exc}") from exc


def write_bench_csv(path, rows) -> None:
    """Benchmark CSV with header algo,size,seconds (median per size)."""
    try:
        with open(path, "w", newline="", encoding="utf-8") as fh:
            writer = csv.writer(fh)
            writer.writerow(["algo", "size", "seconds"])
            for algo, size, seconds in rows:
                writer.writerow([algo, size, f"{seconds:.6e}"])
    except OSError as exc:
        raise IoError(f"cannot write {path}: {exc}") from exc

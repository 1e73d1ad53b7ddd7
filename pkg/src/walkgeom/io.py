"""File exports: CSV matrices, embeddings, spectrum dumps and PGM heatmaps."""

from __future__ import annotations

import csv
import io
from typing import Sequence

import numpy as np

from .spectral import Spectrum


def fmt(x: float) -> str:
    return f"{x:.12g}"


def heatmap_pixels(matrix) -> np.ndarray:
    """Linear min-max scaling to 0..255; a constant matrix maps to all zeros."""
    m = np.asarray(matrix, dtype=float)
    if not np.all(np.isfinite(m)):
        raise ValueError("heatmap matrix must be finite")
    lo, hi = float(m.min()), float(m.max())
    if hi == lo:
        return np.zeros(m.shape, dtype=np.uint8)
    return np.rint((m - lo) / (hi - lo) * 255.0).astype(np.uint8)


def pgm_bytes(matrix) -> bytes:
    px = heatmap_pixels(matrix)
    rows, cols = px.shape
    return b"P5\n%d %d\n255\n" % (cols, rows) + px.tobytes(order="C")


def export_heatmap(matrix, path: str) -> None:
    data = pgm_bytes(matrix)
    with open(path, "wb") as fh:
        fh.write(data)


def read_pgm(path: str) -> np.ndarray:
    with open(path, "rb") as fh:
        data = fh.read()
    magic, dims, maxval, body = data.split(b"\n", 3)
    if magic != b"P5" or maxval != b"255":
        raise ValueError(f"{path}: not an 8-bit binary PGM")
    cols, rows = (int(t) for t in dims.split())
    return np.frombuffer(body, dtype=np.uint8).reshape(rows, cols)


def matrix_csv(matrix, labels: Sequence[str]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["node", *labels])
    for label, row in zip(labels, np.asarray(matrix)):
        w.writerow([label, *(fmt(v) for v in row)])
    return buf.getvalue()


def embedding_csv(coords, labels: Sequence[str], degrees) -> str:
    """Header ``node,deg,c1..ck``; the degree column is meant for marker sizing."""
    coords = np.asarray(coords)
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["node", "deg", *(f"c{j + 1}" for j in range(coords.shape[1]))])
    for label, d, row in zip(labels, degrees, coords):
        w.writerow([label, fmt(d), *(fmt(v) for v in row)])
    return buf.getvalue()


def spectrum_csv(spec: Spectrum) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["s", "mu", *(f"psi_{x + 1}" for x in range(spec.n))])
    for s in range(spec.n):
        w.writerow([s + 1, fmt(spec.mu[s]), *(fmt(v) for v in spec.psi[:, s])])
    return buf.getvalue()


def export_embedding(coords, labels: Sequence[str], degrees, path: str) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(embedding_csv(coords, labels, degrees))


def read_matrix_csv(text: str) -> tuple[list[str], np.ndarray]:
    rows = list(csv.reader(io.StringIO(text)))
    labels = rows[0][1:]
    return labels, np.array([[float(v) for v in r[1:]] for r in rows[1:]])

"""Euclidean structure induced by the walk: norms, angles, commute distances."""

from __future__ import annotations

import math

import numpy as np

from .spectral import MetricSpace, Spectrum

MODES = ("commute", "sqrt")


def inner_product(ms: MetricSpace, x: int, y: int) -> float:
    return float(np.sum(ms.coords[x] * ms.coords[y] * ms.gaps))


def squared_norm(ms: MetricSpace, x: int) -> float:
    """Squared norm of node ``x``; equals its first-passage time."""
    return float(np.sum(ms.coords[x] ** 2 * ms.gaps))


def angle(ms: MetricSpace, x: int, y: int) -> float:
    """Angle in degrees between nodes ``x`` and ``y`` seen from the stationary origin."""
    nx, ny = squared_norm(ms, x), squared_norm(ms, y)
    if nx <= 0 or ny <= 0:
        raise RuntimeError(f"zero norm at node {x if nx <= 0 else y}")
    if x == y:
        return 0.0
    cos = inner_product(ms, x, y) / math.sqrt(nx * ny)
    return math.degrees(math.acos(min(1.0, max(-1.0, cos))))


def squared_distance(ms: MetricSpace, x: int, y: int) -> float:
    """Commute time between ``x`` and ``y``."""
    if x == y:
        return 0.0
    diff = ms.coords[x] - ms.coords[y]
    return float(np.sum(diff * diff * ms.gaps))


def distance(ms: MetricSpace, x: int, y: int) -> float:
    return math.sqrt(squared_distance(ms, x, y))


def hitting_spectral(ms: MetricSpace, x: int, y: int) -> float:
    """Expected steps for a walk from ``x`` to first reach ``y``."""
    if x == y:
        return 0.0
    cy = ms.coords[y]
    return float(np.sum((cy * cy - ms.coords[x] * cy) * ms.gaps))


def first_passage(ms: MetricSpace) -> np.ndarray:
    return np.sum(ms.coords**2 * ms.gaps, axis=1)


def hitting_matrix(ms: MetricSpace) -> np.ndarray:
    """``H[x, y]`` = hitting time from x to y, zero diagonal."""
    G = ms.gram()
    H = np.diag(G)[None, :] - G
    np.fill_diagonal(H, 0.0)
    return H


def distance_matrix(ms: MetricSpace, mode: str = "sqrt") -> np.ndarray:
    """Pairwise commute times (``"commute"``) or their square roots (``"sqrt"``)."""
    if mode not in MODES:
        raise ValueError(f"mode must be one of {MODES}, got {mode!r}")
    G = ms.gram()
    f = np.diag(G)
    D = f[:, None] + f[None, :] - 2.0 * G
    D = np.maximum(0.5 * (D + D.T), 0.0)
    np.fill_diagonal(D, 0.0)
    return np.sqrt(D) if mode == "sqrt" else D


def angle_matrix(ms: MetricSpace) -> np.ndarray:
    G = ms.gram()
    norms = np.sqrt(np.diag(G))
    cos = np.clip(G / np.outer(norms, norms), -1.0, 1.0)
    theta = np.degrees(np.arccos(cos))
    theta = 0.5 * (theta + theta.T)
    np.fill_diagonal(theta, 0.0)
    return theta


def metric_ball(ms: MetricSpace, x: int, r: float) -> frozenset[int]:
    """Nodes strictly within distance ``r`` (square root of commute time) of ``x``."""
    if r < 0:
        raise ValueError("radius must be non-negative")
    diff = ms.coords - ms.coords[x]
    d = np.sqrt(np.sum(diff * diff * ms.gaps, axis=1))
    d[x] = 0.0
    return frozenset(int(i) for i in np.flatnonzero(d < r))


def embedding_coords(spec: Spectrum, k: int) -> np.ndarray:
    """Rows are nodes, columns the eigenvectors 2..k+1 of the walk operator."""
    if not 1 <= k <= spec.n - 1:
        raise ValueError(f"embedding dimension must be in 1..{spec.n - 1}, got {k}")
    return np.array(spec.psi[:, 1 : k + 1])

"""Lazy random walks: transition kernel, stationary law, symmetrized operator."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .graph import Graph, require_connected, weighted_degrees


def laziness_vector(beta, n: int) -> np.ndarray:
    """Broadcast ``beta`` (scalar or length-n sequence) and check it lies in (0, 1]."""
    b = np.asarray(beta, dtype=float)
    if b.ndim == 0:
        b = np.full(n, float(b))
    if b.shape != (n,):
        raise ValueError(f"laziness vector has shape {b.shape}, expected ({n},)")
    bad = np.flatnonzero(~((b > 0) & (b <= 1)))
    if bad.size:
        raise ValueError(f"beta must lie in (0, 1]; node {bad[0]} has {b[bad[0]]!r}")
    return b


def transition_matrix(g: Graph, beta=1.0) -> np.ndarray:
    """T = (1 - beta_x) delta_xy + beta_x w_xy / deg(x)."""
    b = laziness_vector(beta, g.n)
    deg = weighted_degrees(g)
    T = (b / deg)[:, None] * g.weights
    T[np.diag_indices(g.n)] = 1.0 - b
    return T


def stationary_distribution(g: Graph, beta=1.0) -> np.ndarray:
    """Stationary law of the lazy walk.

    For uniform laziness this is ``deg / vol``. Otherwise the reversible
    measure is proportional to ``deg / beta``, and the result is checked
    against ``pi T = pi``.
    """
    b = laziness_vector(beta, g.n)
    deg = weighted_degrees(g)
    if np.all(b == b[0]):
        return deg / deg.sum()
    m = deg / b
    pi = m / m.sum()
    err = np.max(np.abs(pi @ transition_matrix(g, b) - pi))
    if err > 1e-10:
        raise RuntimeError(f"stationary check failed: |pi T - pi| = {err:.3e}")
    return pi


def symmetrize(T: np.ndarray, pi: np.ndarray) -> np.ndarray:
    """0.5 * (P^1/2 T P^-1/2 + P^-1/2 T' P^1/2) with P = diag(pi)."""
    pi = np.asarray(pi, dtype=float)
    if np.any(pi <= 0):
        raise ValueError("stationary distribution must be strictly positive")
    r = np.sqrt(pi)
    A = r[:, None] * T / r[None, :]
    return 0.5 * (A + A.T)


@dataclass(frozen=True)
class LazyWalk:
    graph: Graph
    beta: np.ndarray
    T: np.ndarray
    pi: np.ndarray
    T_hat: np.ndarray

    @classmethod
    def build(cls, g: Graph, beta=1.0) -> "LazyWalk":
        require_connected(g)
        b = laziness_vector(beta, g.n)
        T = transition_matrix(g, b)
        pi = stationary_distribution(g, b)
        T_hat = symmetrize(T, pi)
        for a in (b, T, pi, T_hat):
            a.setflags(write=False)
        return cls(g, b, T, pi, T_hat)

    @property
    def n(self) -> int:
        return self.graph.n

    @property
    def uniform(self) -> bool:
        return bool(np.all(self.beta == self.beta[0]))


def evolve(sigma, walk: LazyWalk, n: int) -> np.ndarray:
    """Distribution after ``n`` steps, ``sigma T^n``.

    Bipartite graphs with beta == 1 oscillate with period 2 and have no limit.
    """
    s = np.asarray(sigma, dtype=float)
    if s.shape != (walk.n,) or np.any(s < 0) or abs(s.sum() - 1.0) > 1e-12:
        raise ValueError("sigma must be a probability vector over the nodes")
    if n < 0:
        raise ValueError("step count must be non-negative")
    for _ in range(n):
        s = s @ walk.T
    return s


def detailed_balance_violation(walk: LazyWalk) -> float:
    flow = walk.pi[:, None] * walk.T
    return float(np.max(np.abs(flow - flow.T)))

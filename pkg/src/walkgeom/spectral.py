"""Symmetric eigendecomposition by Jacobi rotations, homogeneous coordinates
and the Green function of the normalized Laplacian."""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .graph import DisconnectedGraphError

SIMPLE_GAP = 1e-9
TIE_RTOL = 1e-8


class ConvergenceError(RuntimeError):
    pass


@dataclass(frozen=True)
class Spectrum:
    """Eigenvalues sorted descending; column ``s`` of ``psi`` pairs with ``mu[s]``."""

    mu: np.ndarray
    psi: np.ndarray
    sweeps: int = 0

    @property
    def n(self) -> int:
        return self.mu.shape[0]

    def residual(self, A: np.ndarray) -> float:
        return float(np.max(np.abs(A @ self.psi - self.psi * self.mu)))

    def orthonormality_error(self) -> float:
        return float(np.max(np.abs(self.psi.T @ self.psi - np.eye(self.n))))

    def reconstruct(self) -> np.ndarray:
        return (self.psi * self.mu) @ self.psi.T


def _tournament_rounds(n: int) -> list[tuple[np.ndarray, np.ndarray]]:
    # circle method: n-1 rounds of n/2 disjoint pairs covering every pair once
    m = n + (n % 2)
    players = list(range(m))
    rounds = []
    for _ in range(m - 1):
        p, q = [], []
        for i in range(m // 2):
            a, b = players[i], players[m - 1 - i]
            if a < n and b < n:
                p.append(min(a, b))
                q.append(max(a, b))
        rounds.append((np.array(p, dtype=int), np.array(q, dtype=int)))
        players = [players[0], players[-1]] + players[1:-1]
    return rounds


def _row_cyclic_rounds(n: int) -> list[tuple[np.ndarray, np.ndarray]]:
    return [(np.array([p]), np.array([q])) for p in range(n - 1) for q in range(p + 1, n)]


def _off(A: np.ndarray) -> float:
    off = A - np.diag(np.diag(A))
    return float(np.sqrt(np.sum(off * off)))


def _rotate(A: np.ndarray, V: np.ndarray, p: np.ndarray, q: np.ndarray) -> None:
    app, aqq, apq = A[p, p], A[q, q], A[p, q]
    nz = apq != 0
    if not nz.any():
        return
    p, q, app, aqq, apq = p[nz], q[nz], app[nz], aqq[nz], apq[nz]
    with np.errstate(over="ignore"):
        theta = (aqq - app) / (2.0 * apq)
    # |theta| = inf gives t = 0, i.e. no rotation
    t = np.where(theta >= 0, 1.0, -1.0) / (np.abs(theta) + np.hypot(theta, 1.0))
    c = 1.0 / np.sqrt(t * t + 1.0)
    s = t * c

    Ap, Aq = A[:, p].copy(), A[:, q].copy()
    A[:, p] = Ap * c - Aq * s
    A[:, q] = Ap * s + Aq * c
    Ap, Aq = A[p, :].copy(), A[q, :].copy()
    A[p, :] = c[:, None] * Ap - s[:, None] * Aq
    A[q, :] = s[:, None] * Ap + c[:, None] * Aq
    A[p, q] = 0.0
    A[q, p] = 0.0
    A[p, p] = app - t * apq
    A[q, q] = aqq + t * apq

    Vp, Vq = V[:, p].copy(), V[:, q].copy()
    V[:, p] = Vp * c - Vq * s
    V[:, q] = Vp * s + Vq * c


def eigh(
    A: np.ndarray,
    *,
    tol: float = 1e-13,
    max_sweeps: int = 30,
    ordering: str = "tournament",
) -> Spectrum:
    """Full eigendecomposition of a real symmetric matrix by cyclic Jacobi sweeps.

    Each sweep annihilates every off-diagonal pair once. ``ordering`` picks
    the pair schedule: ``"tournament"`` applies disjoint rotations in
    parallel rounds, ``"row-cyclic"`` is the classical one-at-a-time order.
    Iteration stops once the off-diagonal Frobenius norm drops to
    ``tol * ||A||_F``.

    Eigenvectors are sign-fixed so that the entry of largest magnitude is
    positive (entries within ``TIE_RTOL`` of the maximum count as tied and
    the lowest index wins), and the leading eigenvector is made entrywise
    non-negative when possible.
    """
    A = np.array(A, dtype=float)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {A.shape}")
    n = A.shape[0]
    asym = float(np.max(np.abs(A - A.T))) if n else 0.0
    if asym > 1e-10:
        raise ValueError(f"matrix is not symmetric (max asymmetry {asym:.3e})")
    A = 0.5 * (A + A.T)

    if ordering == "tournament":
        rounds = _tournament_rounds(n)
    elif ordering == "row-cyclic":
        rounds = _row_cyclic_rounds(n)
    else:
        raise ValueError(f"unknown ordering {ordering!r}")

    V = np.eye(n)
    threshold = tol * float(np.linalg.norm(A))
    sweeps = 0
    while _off(A) > threshold:
        if sweeps == max_sweeps:
            raise ConvergenceError(
                f"Jacobi did not converge in {max_sweeps} sweeps; off-diagonal norm {_off(A):.3e}"
            )
        for p, q in rounds:
            _rotate(A, V, p, q)
        A = 0.5 * (A + A.T)
        sweeps += 1

    return _canonical(np.diag(A).copy(), V, sweeps)


def _canonical(mu: np.ndarray, V: np.ndarray, sweeps: int) -> Spectrum:
    n = mu.shape[0]
    order = np.argsort(-mu, kind="stable")
    mu, V = mu[order], V[:, order]
    mag = np.abs(V)
    # first entry within rounding of the largest magnitude: mirror-symmetric
    # eigenvectors tie exactly in exact arithmetic
    big = np.argmax(mag >= mag.max(axis=0) * (1.0 - TIE_RTOL), axis=0)
    V = V * np.where(V[big, np.arange(n)] < 0, -1.0, 1.0)
    if n and np.all(V[:, 0] <= 0):
        V[:, 0] = -V[:, 0]
    for a in (mu, V):
        a.setflags(write=False)
    return Spectrum(mu, V, sweeps)


def eigh_lapack(A: np.ndarray) -> Spectrum:
    """LAPACK ``syevd`` with the same ordering and sign convention as :func:`eigh`."""
    A = np.array(A, dtype=float)
    asym = float(np.max(np.abs(A - A.T)))
    if asym > 1e-10:
        raise ValueError(f"matrix is not symmetric (max asymmetry {asym:.3e})")
    mu, V = np.linalg.eigh(0.5 * (A + A.T))
    return _canonical(mu, V, 0)


# beyond this size the pure-numpy Jacobi sweeps take minutes
JACOBI_MAX_AUTO = 512


def walk_spectrum(T_hat: np.ndarray, pi: np.ndarray, solver: str = "auto", **kwargs) -> Spectrum:
    """Spectrum of a symmetrized walk operator with the leading vector pinned to sqrt(pi).

    ``solver`` is ``"jacobi"``, ``"lapack"`` or ``"auto"`` (Jacobi up to
    ``JACOBI_MAX_AUTO`` nodes).
    """
    if solver == "auto":
        solver = "jacobi" if T_hat.shape[0] <= JACOBI_MAX_AUTO else "lapack"
    if solver == "jacobi":
        spec = eigh(T_hat, **kwargs)
    elif solver == "lapack":
        spec = eigh_lapack(T_hat)
    else:
        raise ValueError(f"unknown solver {solver!r}")
    psi = spec.psi.copy()
    if psi[:, 0].sum() < 0:
        psi[:, 0] = -psi[:, 0]
    psi.setflags(write=False)
    return Spectrum(spec.mu, psi, spec.sweeps)


@dataclass(frozen=True)
class MetricSpace:
    """Homogeneous coordinates and reciprocal spectral gaps.

    ``coords[x, j]`` is ``psi_{j+2, x} / sqrt(pi_x)``; ``gaps[j]`` is
    ``1 / (1 - mu_{j+2})`` in units of steps.
    """

    coords: np.ndarray
    gaps: np.ndarray
    pi: np.ndarray
    mu: np.ndarray

    @property
    def n(self) -> int:
        return self.pi.shape[0]

    def gram(self) -> np.ndarray:
        """Green-function inner products between all node pairs."""
        return (self.coords * self.gaps) @ self.coords.T


def homogeneous_coordinates(spec: Spectrum, pi) -> MetricSpace:
    pi = np.asarray(pi, dtype=float)
    if np.any(pi <= 0):
        raise ValueError("stationary distribution must be strictly positive")
    root = np.sqrt(pi)
    dev = float(np.max(np.abs(spec.psi[:, 0] - root)))
    if dev > 1e-8:
        raise ValueError(f"leading eigenvector differs from sqrt(pi) by {dev:.3e}")
    if spec.n < 2:
        raise ValueError("need at least 2 nodes")
    if spec.mu[1] >= 1.0 - SIMPLE_GAP:
        raise DisconnectedGraphError(f"second eigenvalue {spec.mu[1]!r} is not below 1")
    coords = spec.psi[:, 1:] / root[:, None]
    gaps = 1.0 / (1.0 - spec.mu[1:])
    for a in (coords, gaps):
        a.setflags(write=False)
    return MetricSpace(coords, gaps, pi, spec.mu)


class GreenSolution(NamedTuple):
    value: np.ndarray
    # pi-weighted mean of the input, removed before inversion
    stationary_component: float


def green_apply(ms: MetricSpace, v) -> GreenSolution:
    """Apply the inverse of I - T on the complement of the constants.

    ``v`` is a function on the nodes; its pi-mean is projected out and
    reported. The result ``u`` satisfies ``(I - T) u = v - mean_pi(v)`` and
    has zero pi-mean.
    """
    v = np.asarray(v, dtype=float)
    mean = float(ms.pi @ v)
    amplitudes = ms.coords.T @ (ms.pi * v)
    return GreenSolution(ms.coords @ (ms.gaps * amplitudes), mean)

"""Ground truth that does not go through the eigendecomposition.

Hitting times come from a dense linear solve of the first-step recurrence,
resistances from the grounded weighted Laplacian, and Monte Carlo estimates
from simulating the lazy walk directly on the edge weights.
"""

from __future__ import annotations

import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .graph import Graph, require_connected
from .metric import hitting_spectral

log = logging.getLogger(__name__)

MAX_STEPS = 10**9
BLOCK_SIZE = 4096


def _kernel(g: Graph, beta) -> np.ndarray:
    b = np.broadcast_to(np.asarray(beta, dtype=float), (g.n,))
    if np.any(b <= 0) or np.any(b > 1):
        raise ValueError("beta must lie in (0, 1]")
    deg = g.weights.sum(axis=1)
    T = g.weights * (b / deg)[:, None]
    T[np.diag_indices(g.n)] += 1.0 - b
    return T


def hitting_solve(g: Graph, beta, target: int) -> np.ndarray:
    """Expected steps to reach ``target`` from every node.

    Solves ``h_x = 1 + sum_v T_xv h_v`` for ``x != target`` with ``h_target = 0``
    by LU with partial pivoting.
    """
    require_connected(g)
    T = _kernel(g, beta)
    keep = np.arange(g.n) != target
    M = np.eye(g.n - 1) - T[np.ix_(keep, keep)]
    h = np.zeros(g.n)
    try:
        h[keep] = np.linalg.solve(M, np.ones(g.n - 1))
    except np.linalg.LinAlgError as exc:
        raise RuntimeError(f"singular hitting system for target {target}") from exc
    return h


def hitting_matrix_solve(g: Graph, beta=1.0) -> np.ndarray:
    """``H[x, y]`` from one solve per target column."""
    H = np.empty((g.n, g.n))
    for y in range(g.n):
        H[:, y] = hitting_solve(g, beta, y)
    return H


def effective_resistance(g: Graph, x: int, y: int) -> float:
    """Resistance between ``x`` and ``y`` with edge weights as conductances."""
    require_connected(g)
    if x == y:
        return 0.0
    L = np.diag(g.weights.sum(axis=1)) - g.weights
    keep = np.arange(g.n) != y
    rhs = np.zeros(g.n)
    rhs[x] = 1.0
    potential = np.linalg.solve(L[np.ix_(keep, keep)], rhs[keep])
    return float(potential[x if x < y else x - 1])


def resistance_matrix(g: Graph) -> np.ndarray:
    """All pairwise resistances; column ``y`` is the diagonal of the Laplacian grounded at ``y``."""
    require_connected(g)
    L = np.diag(g.weights.sum(axis=1)) - g.weights
    R = np.zeros((g.n, g.n))
    for y in range(g.n):
        keep = np.arange(g.n) != y
        R[keep, y] = np.diag(np.linalg.solve(L[np.ix_(keep, keep)], np.eye(g.n - 1)))
    return 0.5 * (R + R.T)


@dataclass(frozen=True)
class HittingEstimate:
    mean: float
    stderr: float
    trials: int
    # trials that hit the step cap, excluded from the mean
    censored: int = 0

    @property
    def is_censored(self) -> bool:
        return self.censored > 0


class _Sampler:
    """Next-node sampling by inversion of cumulative edge weights (CSR layout)."""

    def __init__(self, g: Graph, beta):
        self.beta = np.broadcast_to(np.asarray(beta, dtype=float), (g.n,)).copy()
        rows, cols = np.nonzero(g.weights)
        vals = g.weights[rows, cols]
        self.indptr = np.searchsorted(rows, np.arange(g.n + 1))
        self.cols = cols
        self.cum = np.cumsum(vals)
        self.start = self.cum[self.indptr[:-1]] - vals[self.indptr[:-1]]
        self.deg = g.weights.sum(axis=1)

    def run_block(self, x: int, y: int, count: int, rng: np.random.Generator, max_steps: int):
        pos = np.full(count, x)
        steps = np.zeros(count, dtype=np.int64)
        active = np.arange(count)
        t = 0
        while active.size and t < max_steps:
            here = pos[active]
            u_stay = rng.random(active.size)
            u_next = rng.random(active.size)
            move = u_stay < self.beta[here]
            mover = here[move]
            k = np.searchsorted(self.cum, self.start[mover] + u_next[move] * self.deg[mover], side="right")
            k = np.clip(k, self.indptr[mover], self.indptr[mover + 1] - 1)
            here = here.copy()
            here[move] = self.cols[k]
            pos[active] = here
            t += 1
            steps[active] = t
            active = active[here != y]
        done = np.ones(count, dtype=bool)
        done[active] = False
        return steps[done], int(active.size)


def simulate_hitting(
    g: Graph,
    beta,
    x: int,
    y: int,
    trials: int,
    seed: int | tuple[int, ...],
    *,
    max_steps: int = MAX_STEPS,
    workers: int = 1,
) -> HittingEstimate:
    """Monte Carlo estimate of the hitting time from ``x`` to ``y``.

    Each step draws one uniform for the stay/move decision and one for the
    neighbour. Trials are split into fixed blocks of ``BLOCK_SIZE`` with one
    generator per block derived from ``(seed, block index)``, so the result
    does not depend on ``workers``.
    """
    if trials < 1:
        raise ValueError("need at least one trial")
    require_connected(g)
    if x == y:
        return HittingEstimate(0.0, 0.0, trials)
    sampler = _Sampler(g, beta)
    root = np.random.SeedSequence(seed)
    sizes = [min(BLOCK_SIZE, trials - i) for i in range(0, trials, BLOCK_SIZE)]
    streams = [np.random.default_rng(s) for s in root.spawn(len(sizes))]

    def job(i):
        return sampler.run_block(x, y, sizes[i], streams[i], max_steps)

    if workers > 1:
        with ThreadPoolExecutor(workers) as pool:
            results = list(pool.map(job, range(len(sizes))))
    else:
        results = [job(i) for i in range(len(sizes))]

    samples = np.concatenate([r[0] for r in results]).astype(float)
    censored = sum(r[1] for r in results)
    if censored:
        log.warning("%d of %d trials hit the %d-step cap and were excluded", censored, trials, max_steps)
    n = samples.size
    if n == 0:
        return HittingEstimate(float("nan"), float("nan"), 0, censored)
    stderr = float(samples.std(ddof=1) / np.sqrt(n)) if n > 1 else float("nan")
    return HittingEstimate(float(samples.mean()), stderr, n, censored)


@dataclass(frozen=True)
class OracleRow:
    x: int
    y: int
    spectral: float
    solve: float
    mc_mean: float = float("nan")
    mc_stderr: float = float("nan")

    @property
    def rel_discrepancy(self) -> float:
        return abs(self.spectral - self.solve) / abs(self.solve)

    @property
    def z_score(self) -> float:
        if not self.mc_stderr > 0:
            return 0.0 if self.mc_mean == self.solve else float("nan")
        return (self.mc_mean - self.solve) / self.mc_stderr


def sample_pairs(n: int, count: int, seed: int) -> list[tuple[int, int]]:
    """Distinct ordered pairs ``x != y``; all of them when there are at most ``count``."""
    pairs = [(x, y) for x in range(n) for y in range(n) if x != y]
    if len(pairs) <= count:
        return pairs
    rng = np.random.default_rng(seed)
    idx = np.sort(rng.choice(len(pairs), size=count, replace=False))
    return [pairs[i] for i in idx]


def oracle_report(
    analysis,
    pairs: list[tuple[int, int]],
    trials: int = 0,
    seed: int = 0,
) -> list[OracleRow]:
    """Spectral, solved and (when ``trials > 0``) simulated hitting times per pair."""
    g, beta = analysis.graph, analysis.walk.beta
    solved: dict[int, np.ndarray] = {}
    rows = []
    for i, (x, y) in enumerate(pairs):
        if y not in solved:
            solved[y] = hitting_solve(g, beta, y)
        mc = (float("nan"), float("nan"))
        if trials > 0:
            est = simulate_hitting(g, beta, x, y, trials, (seed, i))
            mc = (est.mean, est.stderr)
        rows.append(OracleRow(x, y, hitting_spectral(analysis.space, x, y), float(solved[y][x]), *mc))
    return rows

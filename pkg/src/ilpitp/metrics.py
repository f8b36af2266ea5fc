"""Baseline centrality metrics: degree, eccentricity, closeness, betweenness,
eigenvector, PageRank and HITS.

Distances are hop counts along arc directions. On graphs that are not
strongly connected, eccentricity and closeness only look at the nodes a
source can reach; a node that reaches nobody gets 0 for both.
"""
from __future__ import annotations

from dataclasses import dataclass, fields

import numpy as np

from . import kernels
from .graph import UNDIRECTED, Graph


class ConvergenceError(RuntimeError):
    """A power iteration did not settle within its iteration budget."""

    def __init__(self, what: str, iterations: int, residual: float):
        super().__init__(f"{what} did not converge after {iterations} iterations "
                         f"(last change {residual:.3g})")
        self.iterations = iterations
        self.residual = residual


@dataclass(frozen=True, eq=False)
class MetricTable:
    """Per-node values of the seven baseline metrics (HITS gives two columns)."""

    degree: np.ndarray
    eccentricity: np.ndarray
    closeness: np.ndarray
    betweenness: np.ndarray
    eigenvector: np.ndarray
    pagerank: np.ndarray
    authority: np.ndarray
    hub: np.ndarray

    @classmethod
    def columns(cls) -> tuple[str, ...]:
        return tuple(f.name for f in fields(cls))

    def column(self, name: str) -> np.ndarray:
        if name not in self.columns():
            raise KeyError(f"unknown metric {name!r}")
        return getattr(self, name)


def _pred_sum(g: Graph, x: np.ndarray) -> np.ndarray:
    """``y[i] = sum of x[j] over predecessors j of i``."""
    src = np.repeat(np.arange(g.n), g.out_degree)
    return np.bincount(g.succ_idx, weights=x[src], minlength=g.n)


def _succ_sum(g: Graph, x: np.ndarray) -> np.ndarray:
    src = np.repeat(np.arange(g.n), g.out_degree)
    return np.bincount(src, weights=x[g.succ_idx], minlength=g.n)


def shortest_path_lengths(g: Graph, source: int, *, backend: str | None = None) -> np.ndarray:
    """BFS hop counts from ``source``, ``inf`` where unreachable."""
    if not 0 <= source < g.n:
        raise IndexError(f"source {source} out of range")
    d = kernels.get(backend).bfs_distances(g.succ_ptr, g.succ_idx, int(source))
    out = d.astype(np.float64)
    out[d < 0] = np.inf
    return out


def _bfs_stats(g: Graph, backend):
    return kernels.get(backend).bfs_stats(g.succ_ptr, g.succ_idx)


def eccentricity(g: Graph, *, backend: str | None = None, _stats=None) -> np.ndarray:
    """Largest finite hop distance from each node."""
    ecc, _, _ = _stats or _bfs_stats(g, backend)
    return ecc.copy()


def closeness(g: Graph, *, backend: str | None = None, _stats=None) -> np.ndarray:
    """``(r - 1) / sum of distances`` over the ``r`` nodes each node reaches
    (itself included)."""
    _, reach, dsum = _stats or _bfs_stats(g, backend)
    cc = np.zeros(g.n, dtype=np.float64)
    ok = dsum > 0
    cc[ok] = (reach[ok] - 1) / dsum[ok]
    return cc


def betweenness(g: Graph, *, backend: str | None = None) -> np.ndarray:
    """Brandes betweenness, unnormalized.

    Directed graphs sum over ordered (s, t) pairs; undirected graphs count
    each unordered pair once.
    """
    bc = kernels.get(backend).brandes(g.succ_ptr, g.succ_idx, g.pred_ptr, g.pred_idx)
    if g.kind == UNDIRECTED:
        bc = bc / 2.0
    return bc


def eigenvector_centrality(g: Graph, max_iters: int | None = None, tol: float = 1e-9,
                           method: str = "power") -> np.ndarray:
    """Eigenvector centrality from the predecessor sum, scaled so max is 1.

    Parameters
    ----------
    method : {"power", "accumulate"}
        ``"power"`` iterates ``x <- A^T x / max`` from all ones until the
        largest change is below ``tol`` (default budget 500 iterations).
        ``"accumulate"`` keeps a running total ``t <- t + A^T x`` and sets
        ``x = t / max(t)`` for a fixed number of iterations (default 100),
        without a convergence check. This is the variant Gephi ships.

    Raises
    ------
    ConvergenceError
        ``"power"`` only, when the budget runs out. Bipartite graphs
        oscillate under plain power iteration and raise here.
    """
    n = g.n
    if n == 0:
        return np.zeros(0)
    x = np.ones(n)
    if method == "accumulate":
        total = np.zeros(n)
        for _ in range(max_iters or 100):
            total += _pred_sum(g, x)
            top = total.max()
            if top <= 0:
                return np.zeros(n)
            x = total / top
        return x
    if method != "power":
        raise ValueError(f"unknown eigenvector method {method!r}")
    budget = max_iters or 500
    change = np.inf
    for _ in range(budget):
        y = _pred_sum(g, x)
        top = y.max()
        if top <= 0:
            return np.zeros(n)
        y /= top
        change = float(np.abs(y - x).max())
        x = y
        if change < tol:
            return x
    raise ConvergenceError("eigenvector centrality", budget, change)


def pagerank(g: Graph, beta: float = 0.85, max_iters: int = 500, tol: float = 1e-9,
             start: np.ndarray | None = None) -> np.ndarray:
    """PageRank with uniform teleportation.

    Rank held by nodes without out-arcs is spread uniformly over all nodes
    each iteration, so the vector keeps summing to 1.
    """
    if not 0.0 < beta < 1.0:
        raise ValueError(f"beta must lie in (0, 1), got {beta}")
    n = g.n
    if n == 0:
        return np.zeros(0)
    deg = g.out_degree.astype(np.float64)
    dangling = deg == 0
    inv = np.zeros(n)
    inv[~dangling] = 1.0 / deg[~dangling]
    pr = np.full(n, 1.0 / n) if start is None else np.asarray(start, float) / np.sum(start)
    change = np.inf
    for _ in range(max_iters):
        nxt = beta * _pred_sum(g, pr * inv)
        nxt += (beta * pr[dangling].sum() + 1.0 - beta) / n
        change = float(np.abs(nxt - pr).max())
        pr = nxt
        if change < tol:
            return pr
    raise ConvergenceError("pagerank", max_iters, change)


def _unit(v: np.ndarray) -> np.ndarray:
    norm = np.sqrt(np.dot(v, v))
    return v / norm if norm > 0 else v


def hits(g: Graph, epsilon: float = 1e-4, max_iters: int = 1000) -> tuple[np.ndarray, np.ndarray]:
    """HITS authority and hub scores, each L2-normalized.

    Both vectors start at all ones and are updated together from the
    previous round's normalized scores: authority from the hubs pointing in,
    hub from the authorities pointed to. Stops when no score moves by
    ``epsilon`` or more.
    """
    n = g.n
    au = _unit(np.ones(n))
    hu = _unit(np.ones(n))
    change = np.inf
    for _ in range(max_iters):
        au_next = _unit(_pred_sum(g, hu))
        hu_next = _unit(_succ_sum(g, au))
        change = float(max(np.abs(au_next - au).max(initial=0.0),
                           np.abs(hu_next - hu).max(initial=0.0)))
        au, hu = au_next, hu_next
        if change < epsilon:
            return au, hu
    raise ConvergenceError("hits", max_iters, change)


def compute_metrics(g: Graph, *, eigenvector_method: str = "accumulate",
                    backend: str | None = None) -> MetricTable:
    """All baseline metrics for ``g``.

    ``eigenvector_method`` defaults to the Gephi-compatible accumulating
    iteration so the table lines up with Gephi output; pass ``"power"`` for
    the converged principal eigenvector.
    """
    stats = _bfs_stats(g, backend)
    au, hu = hits(g)
    return MetricTable(
        degree=g.out_degree.copy(),
        eccentricity=eccentricity(g, _stats=stats),
        closeness=closeness(g, _stats=stats),
        betweenness=betweenness(g, backend=backend),
        eigenvector=eigenvector_centrality(g, method=eigenvector_method),
        pagerank=pagerank(g),
        authority=au,
        hub=hu,
    )

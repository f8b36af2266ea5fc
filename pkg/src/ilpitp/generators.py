"""Watts-Strogatz small-world graphs and their partial orientation.

Randomness comes from :class:`random.Random` (Mersenne Twister) seeded with
the caller's integer seed, so a ``(parameters, seed)`` pair always yields
the same graph.
"""
from __future__ import annotations

import math
import random
from dataclasses import dataclass

import numpy as np

from .graph import UNDIRECTED, Graph, GraphError, build


@dataclass(frozen=True)
class WSParams:
    n: int
    k: int
    p: float = 0.3
    o: float = 1.0
    rng_seed: int = 0

    def __post_init__(self):
        if self.k % 2 or self.k < 0:
            raise ValueError(f"k must be a non-negative even number, got {self.k}")
        if self.k >= self.n:
            raise ValueError(f"k must be smaller than n, got k={self.k}, n={self.n}")
        for name in ("p", "o"):
            value = getattr(self, name)
            if not 0.0 <= value <= 1.0:
                raise ValueError(f"{name} must lie in [0, 1], got {value}")

    @property
    def name(self) -> str:
        return f"WS-{self.k}-{round(self.o * 100)}"


def watts_strogatz(n: int, k: int, p: float, rng_seed: int = 0) -> Graph:
    """Ring lattice of degree ``k`` with each edge rewired with probability ``p``.

    Edges ``(u, u + j mod n)`` are visited once each, ``j = 1..k/2`` in the
    outer loop. A rewired edge keeps ``u`` and moves its far end to a node
    drawn uniformly at random, redrawing while the draw would make a loop
    or a duplicate. The edge count stays exactly ``n * k / 2``.

    Raises
    ------
    ValueError
        If ``k`` is odd or not smaller than ``n``, or ``p`` is outside [0, 1].
    """
    WSParams(n, k, p, 1.0, rng_seed)
    rng = random.Random(rng_seed)
    adj = [set() for _ in range(n)]
    for u in range(n):
        for j in range(1, k // 2 + 1):
            v = (u + j) % n
            adj[u].add(v)
            adj[v].add(u)
    for j in range(1, k // 2 + 1):
        for u in range(n):
            v = (u + j) % n
            if rng.random() >= p:
                continue
            if len(adj[u]) >= n - 1:
                continue
            w = rng.randrange(n)
            while w == u or w in adj[u]:
                w = rng.randrange(n)
            adj[u].discard(v)
            adj[v].discard(u)
            adj[u].add(w)
            adj[w].add(u)
    edges = [(u, v) for u in range(n) for v in adj[u] if u < v]
    return build(n, np.asarray(edges, dtype=np.int64).reshape(-1, 2), symmetrize=True)


def bidirected_count(m: int, o: float) -> int:
    """Edges kept as arc pairs: ``o * m`` rounded half up."""
    return int(math.floor(o * m + 0.5))


def orient(g: Graph, o: float, rng_seed: int = 0) -> Graph:
    """Replace a random ``1 - o`` share of the edges by single arcs.

    ``bidirected_count(m, o)`` edges keep both arcs; the others, chosen
    uniformly without replacement, keep one arc whose direction is a fair
    coin flip. The result has ``2 * b + (m - b)`` arcs.

    Raises
    ------
    GraphError
        If ``g`` is not undirected.
    """
    if g.kind != UNDIRECTED:
        raise GraphError("orient() needs an undirected graph")
    if not 0.0 <= o <= 1.0:
        raise ValueError(f"o must lie in [0, 1], got {o}")
    edges = g.edges()
    m = len(edges)
    single = m - bidirected_count(m, o)
    if single == 0:
        return g
    rng = random.Random(rng_seed)
    chosen = set(rng.sample(range(m), single))
    arcs = []
    for e, (u, v) in enumerate(edges):
        if e in chosen:
            arcs.append((u, v) if rng.random() < 0.5 else (v, u))
        else:
            arcs.append((u, v))
            arcs.append((v, u))
    return build(g.n, np.asarray(arcs, dtype=np.int64), labels=g.labels)


def small_world(params: WSParams) -> Graph:
    """``watts_strogatz`` followed by ``orient``, both driven by one seed."""
    g = watts_strogatz(params.n, params.k, params.p, params.rng_seed)
    if params.o >= 1.0:
        return g
    return orient(g, params.o, params.rng_seed + 1)

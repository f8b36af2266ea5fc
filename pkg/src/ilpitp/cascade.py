"""Deterministic degree-weighted linear-threshold cascades.

A node ``v`` outside the active set ``S`` activates when

    sum of out_degree(i) over active predecessors i  >=  alpha * out_degree(v)

A cascade starts from a single seed and grows by a worklist that always
examines the pending candidate of smallest out-degree (ties: lowest node id).
:func:`compute_indices` runs one cascade per node and derives the launching
power (ILP) and target potential (ITP) of every node.
"""
from __future__ import annotations

import math
import os
import random
from collections import deque
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from . import kernels
from .graph import Graph


@dataclass(frozen=True)
class HurdleCoefficient:
    """Positive finite hurdle coefficient, remembering how it was written."""

    value: float
    text: str = ""

    def __post_init__(self):
        if not (isinstance(self.value, (int, float)) and math.isfinite(self.value)
                and self.value > 0):
            raise ValueError(f"alpha must be a positive finite number, got {self.value!r}")
        if not self.text:
            object.__setattr__(self, "text", repr(float(self.value)))

    @classmethod
    def parse(cls, raw) -> HurdleCoefficient:
        if isinstance(raw, cls):
            return raw
        if isinstance(raw, str):
            try:
                value = float(raw)
            except ValueError:
                raise ValueError(f"alpha must be a number, got {raw!r}") from None
            return cls(value, raw.strip())
        return cls(float(raw))

    def __float__(self) -> float:
        return float(self.value)

    def __str__(self) -> str:
        return self.text


@dataclass(frozen=True)
class CascadeResult:
    seed: int
    active: frozenset
    activation_order: tuple = ()

    @property
    def size(self) -> int:
        """Number of nodes activated besides the seed."""
        return len(self.active) - 1


@dataclass(frozen=True, eq=False)
class IndexTable:
    """Per-node launching power and target potential for one hurdle value.

    ``ilp_raw[i]`` counts the nodes activated by a cascade seeded at ``i``;
    ``itp_raw[v]`` counts the seeds other than ``v`` whose cascade activates
    ``v``. Normalized columns divide by ``n - 1``.
    """

    alpha: HurdleCoefficient
    ilp_raw: np.ndarray
    itp_raw: np.ndarray
    ilp: np.ndarray = field(init=False)
    itp: np.ndarray = field(init=False)

    def __post_init__(self):
        denom = self.n - 1
        for name in ("ilp_raw", "itp_raw"):
            getattr(self, name).flags.writeable = False
        ilp = self.ilp_raw / denom
        itp = self.itp_raw / denom
        ilp.flags.writeable = False
        itp.flags.writeable = False
        object.__setattr__(self, "ilp", ilp)
        object.__setattr__(self, "itp", itp)

    @property
    def n(self) -> int:
        return int(self.ilp_raw.shape[0])

    def __eq__(self, other):
        if not isinstance(other, IndexTable):
            return NotImplemented
        return (self.alpha == other.alpha
                and np.array_equal(self.ilp_raw, other.ilp_raw)
                and np.array_equal(self.itp_raw, other.itp_raw))


def _alpha(alpha) -> HurdleCoefficient:
    return HurdleCoefficient.parse(alpha)


def _seed(g: Graph, seed: int) -> int:
    if not 0 <= seed < g.n:
        raise IndexError(f"seed {seed} out of range for graph with {g.n} nodes")
    return int(seed)


def activation_test(g: Graph, active, v: int, alpha) -> bool:
    """True if ``v`` meets the activating condition against ``active``."""
    a = float(_alpha(alpha))
    deg = g.out_degree
    lhs = sum(int(deg[i]) for i in g.predecessors(v) if i in active)
    return lhs >= a * int(deg[v])


def cascade(g: Graph, seed: int, alpha, *, extraction: str = "min_degree",
            rng: random.Random | None = None, backend: str | None = None) -> CascadeResult:
    """Grow the cascade launched by ``seed``.

    Parameters
    ----------
    extraction : {"min_degree", "fifo", "random"}
        Worklist discipline. ``"min_degree"`` is the reference order and runs
        on the selected kernel backend; the others exist to check that the
        final active set does not depend on the order.
    rng : random.Random, optional
        Source for ``extraction="random"``.
    """
    seed = _seed(g, seed)
    a = float(_alpha(alpha))
    if extraction == "min_degree":
        nodes, steps = kernels.get(backend).cascade_trace(
            g.succ_ptr, g.succ_idx, g.out_degree, a, seed)
        order = tuple(zip(nodes.tolist(), steps.tolist()))
    elif extraction in ("fifo", "random"):
        order = _cascade_unordered(g, seed, a, extraction, rng or random.Random(0))
    else:
        raise ValueError(f"unknown extraction order {extraction!r}")
    return CascadeResult(seed, frozenset([seed, *(v for v, _ in order)]), order)


def _cascade_unordered(g, seed, a, extraction, rng):
    deg = g.out_degree.tolist()
    active = {seed}
    pending = deque(v for v in g.successors(seed))
    queued = set(pending)
    order = []
    step = 0
    while pending:
        step += 1
        if extraction == "random":
            k = rng.randrange(len(pending))
            pending.rotate(-k)
        v = pending.popleft()
        queued.discard(v)
        lhs = sum(deg[i] for i in g.predecessors(v) if i in active)
        if lhs >= a * deg[v]:
            active.add(v)
            order.append((v, step))
            for j in g.successors(v):
                if j not in active and j not in queued:
                    queued.add(j)
                    pending.append(j)
    return tuple(order)


def fixpoint_oracle(g: Graph, seed: int, alpha) -> frozenset:
    """Least active set containing ``seed``, by repeated full sweeps.

    Slow on purpose: every sweep re-tests every inactive node from scratch.
    """
    seed = _seed(g, seed)
    a = float(_alpha(alpha))
    deg = g.out_degree.tolist()
    preds = [g.predecessors(v) for v in range(g.n)]
    active = {seed}
    while True:
        passers = [v for v in range(g.n)
                   if v not in active and any(i in active for i in preds[v])
                   and sum(deg[i] for i in preds[v] if i in active) >= a * deg[v]]
        if not passers:
            return frozenset(active)
        active.update(passers)


def fixpoint_oracle_all(g: Graph, alpha) -> np.ndarray:
    """Membership matrix of every seed's least active set, by dense sweeps.

    Row ``s`` is the active set of seed ``s``. Each sweep adds every node
    whose active-predecessor degree sum meets its hurdle, for all seeds at
    once, until no row changes.
    """
    a = float(_alpha(alpha))
    n = g.n
    adj = np.zeros((n, n), dtype=np.int64)
    arcs = g.arc_array()
    adj[arcs[:, 0], arcs[:, 1]] = 1
    deg = g.out_degree.astype(np.int64)
    hurdle = a * deg
    state = np.eye(n, dtype=bool)
    while True:
        weighted = state * deg
        lhs = weighted @ adj
        has_pred = (state.astype(np.int64) @ adj) > 0
        passers = ~state & has_pred & (lhs >= hurdle)
        if not passers.any():
            return state
        state |= passers


def _chunks(n: int, workers: int) -> list[np.ndarray]:
    seeds = np.arange(n, dtype=np.int64)
    return [c for c in np.array_split(seeds, workers) if c.size]


def compute_indices(g: Graph, alpha, *, workers: int | None = None,
                    backend: str | None = None) -> IndexTable:
    """Run every single-seed cascade and collect ILP/ITP counts.

    Seeds are split into contiguous blocks, one per worker thread; each
    block accumulates a private ITP vector and the vectors are summed in
    block order, so the result does not depend on ``workers``.

    Raises
    ------
    ValueError
        If the graph has fewer than two nodes.
    """
    if g.n < 2:
        raise ValueError("degenerate graph: need at least 2 nodes to normalize by n - 1")
    h = _alpha(alpha)
    a = float(h)
    k = kernels.get(backend)
    workers = workers or os.cpu_count() or 1
    if workers < 1:
        raise ValueError(f"workers must be >= 1, got {workers}")

    def run(block):
        ilp = np.zeros(block.size, dtype=np.int64)
        itp = np.zeros(g.n, dtype=np.int64)
        k.cascade_counts(g.succ_ptr, g.succ_idx, g.out_degree, a, block, ilp, itp)
        return ilp, itp

    blocks = _chunks(g.n, workers)
    if len(blocks) == 1:
        parts = [run(blocks[0])]
    else:
        with ThreadPoolExecutor(max_workers=len(blocks)) as pool:
            parts = list(pool.map(run, blocks))
    ilp_raw = np.concatenate([p[0] for p in parts])
    itp_raw = np.zeros(g.n, dtype=np.int64)
    for _, itp in parts:
        itp_raw += itp
    return IndexTable(h, ilp_raw, itp_raw)

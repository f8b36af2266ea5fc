"""Immutable directed graph stored as two CSR adjacency structures.

Nodes are dense integers ``0..n-1``. An arc ``(i, j)`` means that ``i``
influences ``j``. Undirected inputs are stored with both arcs per edge and
flagged ``kind == "undirected"``. Each node also keeps an external label,
which is what reports print.
"""
from __future__ import annotations

from collections.abc import Hashable, Iterable, Sequence

import numpy as np

DIRECTED = "directed"
UNDIRECTED = "undirected"


class GraphError(ValueError):
    """Raised when a graph cannot be built from the supplied arcs."""


def _readonly(a: np.ndarray) -> np.ndarray:
    a.flags.writeable = False
    return a


def _csr(n: int, src: np.ndarray, dst: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    # arcs must already be sorted by (src, dst)
    counts = np.bincount(src, minlength=n)
    ptr = np.zeros(n + 1, dtype=np.int64)
    np.cumsum(counts, out=ptr[1:])
    return ptr, np.ascontiguousarray(dst, dtype=np.int64)


class Graph:
    """Simple directed graph with successor and predecessor adjacency.

    Do not call the constructor directly; use :func:`build`.

    Attributes
    ----------
    n : int
        Number of nodes.
    kind : str
        ``"directed"`` or ``"undirected"`` (symmetric arc relation).
    succ_ptr, succ_idx : numpy.ndarray
        CSR successor lists, each strictly increasing.
    pred_ptr, pred_idx : numpy.ndarray
        CSR predecessor lists, the exact transpose of the successors.
    out_degree : numpy.ndarray
        Cached ``|successors(i)|``.
    labels : tuple
        External label of every node.
    loops_dropped, duplicates_collapsed : int
        Bookkeeping from construction. For undirected graphs duplicates are
        counted per edge, so ``{i, j}`` given twice in any orientation counts
        once.
    """

    __slots__ = (
        "n",
        "kind",
        "succ_ptr",
        "succ_idx",
        "pred_ptr",
        "pred_idx",
        "out_degree",
        "labels",
        "loops_dropped",
        "duplicates_collapsed",
        "_index",
    )

    def __init__(self, n, kind, succ_ptr, succ_idx, pred_ptr, pred_idx, labels,
                 loops_dropped=0, duplicates_collapsed=0):
        self.n = n
        self.kind = kind
        self.succ_ptr = _readonly(succ_ptr)
        self.succ_idx = _readonly(succ_idx)
        self.pred_ptr = _readonly(pred_ptr)
        self.pred_idx = _readonly(pred_idx)
        self.out_degree = _readonly(np.diff(succ_ptr))
        self.labels = tuple(labels)
        self.loops_dropped = loops_dropped
        self.duplicates_collapsed = duplicates_collapsed
        self._index = None

    def __setattr__(self, name, value):
        if name != "_index" and hasattr(self, "_index"):
            raise AttributeError("Graph is immutable")
        object.__setattr__(self, name, value)

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, arcs={self.n_arcs}, kind={self.kind!r})"

    @property
    def n_arcs(self) -> int:
        return int(self.succ_idx.shape[0])

    @property
    def n_edges(self) -> int:
        """Edges for undirected graphs, arcs otherwise."""
        return self.n_arcs // 2 if self.kind == UNDIRECTED else self.n_arcs

    @property
    def in_degree(self) -> np.ndarray:
        return np.diff(self.pred_ptr)

    def _check(self, i: int) -> int:
        if not 0 <= i < self.n:
            raise IndexError(f"node {i} out of range for graph with {self.n} nodes")
        return i

    def successors(self, i: int) -> list[int]:
        self._check(i)
        return self.succ_idx[self.succ_ptr[i]:self.succ_ptr[i + 1]].tolist()

    def predecessors(self, i: int) -> list[int]:
        self._check(i)
        return self.pred_idx[self.pred_ptr[i]:self.pred_ptr[i + 1]].tolist()

    def degree(self, i: int) -> int:
        """Out-degree of ``i`` (the undirected degree for undirected graphs)."""
        return int(self.out_degree[self._check(i)])

    def arc_array(self) -> np.ndarray:
        """All arcs as an ``(m, 2)`` array sorted by (source, target)."""
        src = np.repeat(np.arange(self.n, dtype=np.int64), self.out_degree)
        return np.column_stack([src, self.succ_idx])

    def arcs(self) -> list[tuple[int, int]]:
        return [tuple(a) for a in self.arc_array().tolist()]

    def edges(self) -> list[tuple[int, int]]:
        """Unordered edges ``i < j`` of an undirected graph."""
        if self.kind != UNDIRECTED:
            raise GraphError("edges() requires an undirected graph")
        a = self.arc_array()
        return [tuple(e) for e in a[a[:, 0] < a[:, 1]].tolist()]

    def label(self, i: int):
        return self.labels[self._check(i)]

    def index(self, label: Hashable) -> int:
        """Internal id of an external label."""
        if self._index is None:
            self._index = {lab: i for i, lab in enumerate(self.labels)}
        try:
            return self._index[label]
        except KeyError:
            raise KeyError(f"unknown node label {label!r}") from None

    def labelled_arcs(self) -> set:
        lab = self.labels
        return {(lab[i], lab[j]) for i, j in self.arc_array().tolist()}

    def is_symmetric(self) -> bool:
        key = self.arc_array()
        fwd = key[:, 0] * self.n + key[:, 1]
        rev = np.sort(key[:, 1] * self.n + key[:, 0])
        return bool(np.array_equal(fwd, rev))

    def reversed(self) -> Graph:
        """Graph with every arc reversed."""
        a = self.arc_array()
        return build(self.n, a[:, ::-1], labels=self.labels,
                     symmetrize=self.kind == UNDIRECTED)

    def symmetrized(self) -> Graph:
        return build(self.n, self.arc_array(), symmetrize=True, labels=self.labels)


def build(
    n: int,
    arcs: Iterable[Sequence[int]] | np.ndarray,
    symmetrize: bool = False,
    labels: Sequence[Hashable] | None = None,
    lines: Sequence[int] | None = None,
) -> Graph:
    """Build a :class:`Graph` from a list of ``(i, j)`` pairs.

    Self-loops are dropped and duplicate arcs collapsed. With ``symmetrize``
    every arc's reverse is added and the graph is flagged undirected.

    Parameters
    ----------
    n : int
        Node count.
    arcs : iterable of pairs or (m, 2) array
        Arc endpoints, each in ``[0, n)``.
    symmetrize : bool
        Treat each pair as an undirected edge.
    labels : sequence, optional
        External labels, defaults to ``range(n)``.
    lines : sequence of int, optional
        Source line of each pair, used in error messages.

    Raises
    ------
    GraphError
        If ``n`` is negative or a pair references a node outside ``[0, n)``.
    """
    if n < 0:
        raise GraphError(f"node count must be non-negative, got {n}")
    if not isinstance(arcs, np.ndarray):
        arcs = list(arcs)
    a = np.asarray(arcs, dtype=np.int64)
    if a.size == 0:
        a = a.reshape(0, 2)
    if a.ndim != 2 or a.shape[1] != 2:
        raise GraphError("arcs must be pairs (i, j)")
    bad = np.flatnonzero(((a < 0) | (a >= n)).any(axis=1))
    if bad.size:
        k = int(bad[0])
        where = f" (line {lines[k]})" if lines is not None else ""
        raise GraphError(f"arc {tuple(a[k].tolist())}{where} references a node outside [0, {n})")
    if labels is None:
        labels = range(n)
    elif len(labels) != n:
        raise GraphError(f"{len(labels)} labels given for {n} nodes")

    loop = a[:, 0] == a[:, 1]
    loops = int(loop.sum())
    a = a[~loop]
    if symmetrize:
        lo = np.minimum(a[:, 0], a[:, 1])
        hi = np.maximum(a[:, 0], a[:, 1])
        edge_keys = np.unique(lo * n + hi)
        dups = a.shape[0] - edge_keys.shape[0]
        lo, hi = np.divmod(edge_keys, n) if n else (edge_keys, edge_keys)
        keys = np.unique(np.concatenate([lo * n + hi, hi * n + lo]))
    else:
        keys = np.unique(a[:, 0] * n + a[:, 1])
        dups = a.shape[0] - keys.shape[0]

    if n:
        src, dst = np.divmod(keys, n)
    else:
        src = dst = keys
    succ_ptr, succ_idx = _csr(n, src, dst)
    order = np.lexsort((src, dst))
    pred_ptr, pred_idx = _csr(n, dst[order], src[order])
    return Graph(
        n,
        UNDIRECTED if symmetrize else DIRECTED,
        succ_ptr,
        succ_idx,
        pred_ptr,
        pred_idx,
        labels,
        loops_dropped=loops,
        duplicates_collapsed=int(dups),
    )

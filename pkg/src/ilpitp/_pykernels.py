"""Pure-Python kernels. Same signatures and results as ``_ckernels``.

All graph arguments are the CSR arrays of :class:`ilpitp.graph.Graph`.
"""
from __future__ import annotations

import heapq
from collections import deque

import numpy as np

NAME = "python"


def _cascade(ptr, idx, deg, alpha, n, seed, acc, active, in_heap, itp, trace):
    touched = [seed]
    active[seed] = True
    heap = []
    count = 0
    step = 0

    def activate(v):
        dv = deg[v]
        for e in range(ptr[v], ptr[v + 1]):
            j = idx[e]
            if acc[j] == 0:
                touched.append(j)
            acc[j] += dv
            if not active[j] and not in_heap[j]:
                in_heap[j] = True
                heapq.heappush(heap, deg[j] * n + j)

    activate(seed)
    while heap:
        step += 1
        v = heapq.heappop(heap) % n
        in_heap[v] = False
        if acc[v] >= alpha * deg[v]:
            active[v] = True
            count += 1
            if itp is not None:
                itp[v] += 1
            if trace is not None:
                trace.append((v, step))
            activate(v)

    for j in touched:
        acc[j] = 0
        active[j] = False
    return count


def cascade_counts(succ_ptr, succ_idx, out_degree, alpha, seeds, ilp_out, itp_out):
    """Run one cascade per entry of ``seeds``.

    ``ilp_out[k]`` receives the activation count of ``seeds[k]`` and
    ``itp_out[v]`` is incremented once per cascade that activates ``v``.
    """
    ptr = succ_ptr.tolist()
    idx = succ_idx.tolist()
    deg = out_degree.tolist()
    n = len(deg)
    alpha = float(alpha)
    acc = [0] * n
    active = [False] * n
    in_heap = [False] * n
    itp = [0] * n
    for k, s in enumerate(seeds.tolist()):
        ilp_out[k] = _cascade(ptr, idx, deg, alpha, n, s, acc, active, in_heap, itp, None)
    itp_out += np.asarray(itp, dtype=np.int64)


def cascade_trace(succ_ptr, succ_idx, out_degree, alpha, seed):
    """Activation order of one cascade as ``(nodes, steps)`` arrays.

    ``steps[k]`` is the 1-based worklist extraction at which ``nodes[k]``
    activated.
    """
    ptr = succ_ptr.tolist()
    idx = succ_idx.tolist()
    deg = out_degree.tolist()
    n = len(deg)
    trace = []
    _cascade(ptr, idx, deg, float(alpha), n, int(seed), [0] * n, [False] * n,
             [False] * n, None, trace)
    nodes = np.array([v for v, _ in trace], dtype=np.int64)
    steps = np.array([s for _, s in trace], dtype=np.int64)
    return nodes, steps


def bfs_distances(ptr, idx, source):
    """Hop distances from ``source``; ``-1`` marks unreachable nodes."""
    p = ptr.tolist()
    ix = idx.tolist()
    n = len(p) - 1
    dist = [-1] * n
    dist[source] = 0
    q = deque([source])
    while q:
        u = q.popleft()
        du = dist[u] + 1
        for e in range(p[u], p[u + 1]):
            w = ix[e]
            if dist[w] < 0:
                dist[w] = du
                q.append(w)
    return np.asarray(dist, dtype=np.int64)


def bfs_stats(ptr, idx):
    """Per-source eccentricity, reachable-set size and distance sum."""
    p = ptr.tolist()
    ix = idx.tolist()
    n = len(p) - 1
    ecc = np.zeros(n, dtype=np.int64)
    reach = np.zeros(n, dtype=np.int64)
    dsum = np.zeros(n, dtype=np.int64)
    dist = [-1] * n
    for s in range(n):
        dist[s] = 0
        order = [s]
        head = 0
        total = 0
        while head < len(order):
            u = order[head]
            head += 1
            du = dist[u] + 1
            for e in range(p[u], p[u + 1]):
                w = ix[e]
                if dist[w] < 0:
                    dist[w] = du
                    total += du
                    order.append(w)
        ecc[s] = dist[order[-1]]
        reach[s] = len(order)
        dsum[s] = total
        for u in order:
            dist[u] = -1
    return ecc, reach, dsum


def brandes(succ_ptr, succ_idx, pred_ptr, pred_idx):
    """Betweenness summed over ordered (source, target) pairs."""
    sp = succ_ptr.tolist()
    si = succ_idx.tolist()
    pp = pred_ptr.tolist()
    pi = pred_idx.tolist()
    n = len(sp) - 1
    bc = [0.0] * n
    dist = [-1] * n
    sigma = [0.0] * n
    delta = [0.0] * n
    for s in range(n):
        dist[s] = 0
        sigma[s] = 1.0
        order = [s]
        head = 0
        while head < len(order):
            u = order[head]
            head += 1
            du = dist[u] + 1
            for e in range(sp[u], sp[u + 1]):
                w = si[e]
                if dist[w] < 0:
                    dist[w] = du
                    order.append(w)
                if dist[w] == du:
                    sigma[w] += sigma[u]
        for k in range(len(order) - 1, 0, -1):
            w = order[k]
            dw = dist[w] - 1
            coeff = (1.0 + delta[w]) / sigma[w]
            for e in range(pp[w], pp[w + 1]):
                v = pi[e]
                if dist[v] == dw:
                    delta[v] += sigma[v] * coeff
            bc[w] += delta[w]
        for u in order:
            dist[u] = -1
            sigma[u] = 0.0
            delta[u] = 0.0
    return np.asarray(bc, dtype=np.float64)

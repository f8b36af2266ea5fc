# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels. Mirrors ``ilpitp._pykernels`` result-for-result.

The cascade batch runs without the GIL so callers can fan seeds out to
threads.
"""
import numpy as np

from libc.stdint cimport int64_t
from libc.stdlib cimport calloc, free, malloc

ctypedef int64_t i64

NAME = "compiled"

cdef enum:
    IDLE = 0
    QUEUED = 1
    ACTIVE = 2


cdef inline void _push(i64* heap, i64* size, i64 key) noexcept nogil:
    cdef i64 i = size[0]
    cdef i64 parent
    size[0] += 1
    while i > 0:
        parent = (i - 1) >> 1
        if heap[parent] <= key:
            break
        heap[i] = heap[parent]
        i = parent
    heap[i] = key


cdef inline i64 _pop(i64* heap, i64* size) noexcept nogil:
    cdef i64 top = heap[0]
    cdef i64 m = size[0] - 1
    cdef i64 last = heap[m]
    cdef i64 i = 0
    cdef i64 child
    size[0] = m
    if m == 0:
        return top
    while True:
        child = 2 * i + 1
        if child >= m:
            break
        if child + 1 < m and heap[child + 1] < heap[child]:
            child += 1
        if heap[child] >= last:
            break
        heap[i] = heap[child]
        i = child
    heap[i] = last
    return top


cdef struct Scratch:
    i64* acc
    unsigned char* state
    i64* heap
    i64* touched


cdef inline void _activate(const i64* ptr, const i64* idx, const i64* deg, i64 n, i64 v,
                           Scratch* w, i64* hsize, i64* ntouched) noexcept nogil:
    cdef i64 e, j
    cdef i64 dv = deg[v]
    for e in range(ptr[v], ptr[v + 1]):
        j = idx[e]
        if w.acc[j] == 0:
            w.touched[ntouched[0]] = j
            ntouched[0] += 1
        w.acc[j] += dv
        if w.state[j] == IDLE:
            w.state[j] = QUEUED
            _push(w.heap, hsize, deg[j] * n + j)


cdef i64 _cascade(const i64* ptr, const i64* idx, const i64* deg, double alpha, i64 n,
                  i64 seed, Scratch* w, i64* itp, i64* tr_nodes, i64* tr_steps) noexcept nogil:
    cdef i64 hsize = 0
    cdef i64 ntouched = 1
    cdef i64 count = 0
    cdef i64 step = 0
    cdef i64 v, k
    w.touched[0] = seed
    w.state[seed] = ACTIVE
    _activate(ptr, idx, deg, n, seed, w, &hsize, &ntouched)
    while hsize > 0:
        step += 1
        v = _pop(w.heap, &hsize) % n
        w.state[v] = IDLE
        if <double>w.acc[v] >= alpha * <double>deg[v]:
            w.state[v] = ACTIVE
            if itp != NULL:
                itp[v] += 1
            if tr_nodes != NULL:
                tr_nodes[count] = v
                tr_steps[count] = step
            count += 1
            _activate(ptr, idx, deg, n, v, w, &hsize, &ntouched)
    for k in range(ntouched):
        v = w.touched[k]
        w.acc[v] = 0
        w.state[v] = IDLE
    return count


cdef int _alloc(Scratch* w, i64 n) noexcept nogil:
    w.acc = <i64*>calloc(n + 1, sizeof(i64))
    w.state = <unsigned char*>calloc(n + 1, sizeof(unsigned char))
    w.heap = <i64*>malloc((n + 1) * sizeof(i64))
    w.touched = <i64*>malloc((n + 2) * sizeof(i64))
    if w.acc == NULL or w.state == NULL or w.heap == NULL or w.touched == NULL:
        return -1
    return 0


cdef void _release(Scratch* w) noexcept nogil:
    free(w.acc)
    free(w.state)
    free(w.heap)
    free(w.touched)


def cascade_counts(const i64[::1] succ_ptr, const i64[::1] succ_idx, const i64[::1] out_degree,
                   double alpha, const i64[::1] seeds, i64[::1] ilp_out, i64[::1] itp_out):
    """Run one cascade per entry of ``seeds`` (see the Python twin)."""
    cdef i64 n = out_degree.shape[0]
    cdef i64 ns = seeds.shape[0]
    cdef i64 k
    cdef Scratch w
    cdef int rc
    if n == 0 or ns == 0:
        return
    with nogil:
        rc = _alloc(&w, n)
        if rc == 0:
            for k in range(ns):
                ilp_out[k] = _cascade(&succ_ptr[0], &succ_idx[0] if succ_idx.shape[0] else NULL,
                                      &out_degree[0], alpha, n, seeds[k], &w, &itp_out[0],
                                      NULL, NULL)
        _release(&w)
    if rc != 0:
        raise MemoryError()


def cascade_trace(const i64[::1] succ_ptr, const i64[::1] succ_idx, const i64[::1] out_degree,
                  double alpha, i64 seed):
    """Activation order of one cascade as ``(nodes, steps)`` arrays."""
    cdef i64 n = out_degree.shape[0]
    cdef Scratch w
    cdef i64 count
    nodes = np.empty(n, dtype=np.int64)
    steps = np.empty(n, dtype=np.int64)
    cdef i64[::1] nv = nodes
    cdef i64[::1] sv = steps
    if _alloc(&w, n) != 0:
        _release(&w)
        raise MemoryError()
    count = _cascade(&succ_ptr[0], &succ_idx[0] if succ_idx.shape[0] else NULL,
                     &out_degree[0], alpha, n, seed, &w, NULL, &nv[0], &sv[0])
    _release(&w)
    return nodes[:count].copy(), steps[:count].copy()


def bfs_distances(const i64[::1] ptr, const i64[::1] idx, i64 source):
    """Hop distances from ``source``; ``-1`` marks unreachable nodes."""
    cdef i64 n = ptr.shape[0] - 1
    dist = np.full(n, -1, dtype=np.int64)
    queue = np.empty(n, dtype=np.int64)
    cdef i64[::1] d = dist
    cdef i64[::1] q = queue
    cdef i64 head = 0, tail = 1, u, e, w
    d[source] = 0
    q[0] = source
    with nogil:
        while head < tail:
            u = q[head]
            head += 1
            for e in range(ptr[u], ptr[u + 1]):
                w = idx[e]
                if d[w] < 0:
                    d[w] = d[u] + 1
                    q[tail] = w
                    tail += 1
    return dist


def bfs_stats(const i64[::1] ptr, const i64[::1] idx):
    """Per-source eccentricity, reachable-set size and distance sum."""
    cdef i64 n = ptr.shape[0] - 1
    ecc_a = np.zeros(n, dtype=np.int64)
    reach_a = np.zeros(n, dtype=np.int64)
    dsum_a = np.zeros(n, dtype=np.int64)
    dist_a = np.full(n, -1, dtype=np.int64)
    queue_a = np.empty(max(n, 1), dtype=np.int64)
    cdef i64[::1] ecc = ecc_a
    cdef i64[::1] reach = reach_a
    cdef i64[::1] dsum = dsum_a
    cdef i64[::1] d = dist_a
    cdef i64[::1] q = queue_a
    cdef i64 s, head, tail, u, e, w, total, k
    with nogil:
        for s in range(n):
            d[s] = 0
            q[0] = s
            head = 0
            tail = 1
            total = 0
            while head < tail:
                u = q[head]
                head += 1
                for e in range(ptr[u], ptr[u + 1]):
                    w = idx[e]
                    if d[w] < 0:
                        d[w] = d[u] + 1
                        total += d[w]
                        q[tail] = w
                        tail += 1
            ecc[s] = d[q[tail - 1]]
            reach[s] = tail
            dsum[s] = total
            for k in range(tail):
                d[q[k]] = -1
    return ecc_a, reach_a, dsum_a


def brandes(const i64[::1] succ_ptr, const i64[::1] succ_idx,
            const i64[::1] pred_ptr, const i64[::1] pred_idx):
    """Betweenness summed over ordered (source, target) pairs."""
    cdef i64 n = succ_ptr.shape[0] - 1
    bc_a = np.zeros(n, dtype=np.float64)
    dist_a = np.full(n, -1, dtype=np.int64)
    sigma_a = np.zeros(n, dtype=np.float64)
    delta_a = np.zeros(n, dtype=np.float64)
    order_a = np.empty(max(n, 1), dtype=np.int64)
    cdef double[::1] bc = bc_a
    cdef i64[::1] d = dist_a
    cdef double[::1] sigma = sigma_a
    cdef double[::1] delta = delta_a
    cdef i64[::1] order = order_a
    cdef i64 s, head, tail, u, e, w, v, k, du, dw
    cdef double coeff
    with nogil:
        for s in range(n):
            d[s] = 0
            sigma[s] = 1.0
            order[0] = s
            head = 0
            tail = 1
            while head < tail:
                u = order[head]
                head += 1
                du = d[u] + 1
                for e in range(succ_ptr[u], succ_ptr[u + 1]):
                    w = succ_idx[e]
                    if d[w] < 0:
                        d[w] = du
                        order[tail] = w
                        tail += 1
                    if d[w] == du:
                        sigma[w] += sigma[u]
            k = tail - 1
            while k > 0:
                w = order[k]
                dw = d[w] - 1
                coeff = (1.0 + delta[w]) / sigma[w]
                for e in range(pred_ptr[w], pred_ptr[w + 1]):
                    v = pred_idx[e]
                    if d[v] == dw:
                        delta[v] += sigma[v] * coeff
                bc[w] += delta[w]
                k -= 1
            for k in range(tail):
                u = order[k]
                d[u] = -1
                sigma[u] = 0.0
                delta[u] = 0.0
    return bc_a

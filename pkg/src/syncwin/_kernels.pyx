# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels; signatures and results match ``syncwin._pure``."""
from libc.stdint cimport uint8_t, uint32_t, uint64_t, int32_t, int64_t
from libc.stdlib cimport malloc, free

import numpy as np

DEF GOLDEN = 0x9E3779B97F4A7C15


cdef inline uint64_t _mix64(uint64_t z) nogil:
    z = (z ^ (z >> 30)) * <uint64_t>0xBF58476D1CE4E5B9
    z = (z ^ (z >> 27)) * <uint64_t>0x94D049BB133111EB
    return z ^ (z >> 31)


def mix64(z):
    return _mix64(<uint64_t>(z & 0xFFFFFFFFFFFFFFFF))


def splitmix_next(state):
    cdef uint64_t s = <uint64_t>(state & 0xFFFFFFFFFFFFFFFF)
    s += <uint64_t>GOLDEN
    return _mix64(s), s


def draw_uniform(state, uint64_t r):
    cdef uint64_t s = <uint64_t>(state & 0xFFFFFFFFFFFFFFFF)
    cdef uint64_t limit = (<uint64_t>1 << 32) - ((<uint64_t>1 << 32) % r)
    cdef uint64_t hi
    while True:
        s += <uint64_t>GOLDEN
        hi = _mix64(s) >> 32
        if hi < limit:
            return hi % r, s


def reverse_bfs(const int32_t[:, ::1] delta, Py_ssize_t win):
    """Distances to ``win`` (-1 if unreachable) and the smallest shortest-step letter."""
    cdef Py_ssize_t n = delta.shape[0], b = delta.shape[1]
    cdef Py_ssize_t i, v, t, k, head = 0, tail = 0, u
    cdef int64_t du
    counts_arr = np.zeros(n + 1, dtype=np.int64)
    fill_arr = np.empty(n, dtype=np.int64)
    preds_arr = np.empty(n * b, dtype=np.int64)
    queue_arr = np.empty(n, dtype=np.int64)
    dist_arr = np.full(n, -1, dtype=np.int64)
    step_arr = np.full(n, -1, dtype=np.int64)
    cdef int64_t[::1] counts = counts_arr, fill = fill_arr, preds = preds_arr
    cdef int64_t[::1] queue = queue_arr, dist = dist_arr, step = step_arr
    with nogil:
        for v in range(n):
            for k in range(b):
                counts[delta[v, k] + 1] += 1
        for i in range(n):
            counts[i + 1] += counts[i]
            fill[i] = counts[i]
        for v in range(n):
            for k in range(b):
                t = delta[v, k]
                preds[fill[t]] = v
                fill[t] += 1
        dist[win] = 0
        queue[tail] = win
        tail += 1
        while head < tail:
            u = queue[head]
            head += 1
            du = dist[u] + 1
            for k in range(counts[u], counts[u + 1]):
                v = preds[k]
                if dist[v] < 0:
                    dist[v] = du
                    queue[tail] = v
                    tail += 1
        for v in range(n):
            if dist[v] > 0:
                for k in range(b):
                    if dist[delta[v, k]] == dist[v] - 1:
                        step[v] = k
                        break
    return dist_arr, step_arr


cdef inline bint _is_target(uint32_t s, uint32_t target, bint any_singleton) nogil:
    if any_singleton:
        return s != 0 and (s & (s - 1)) == 0
    return s == target


def powerset_bfs(const int32_t[:, ::1] delta, uint32_t start_mask,
                 uint32_t target_mask, bint any_singleton):
    cdef Py_ssize_t n = delta.shape[0], b = delta.shape[1]
    cdef Py_ssize_t nchunks = (n + 7) // 8
    cdef Py_ssize_t letter, c, x, j, v
    cdef uint32_t low, s, img
    cdef size_t size = (<size_t>1) << n
    cdef uint32_t *tables
    cdef int32_t *parent
    cdef uint8_t *via
    cdef uint32_t *queue
    cdef size_t head = 0, tail = 0, idx
    cdef int64_t found = -1

    if _is_target(start_mask, target_mask, any_singleton):
        return []
    tables = <uint32_t *>malloc(b * nchunks * 256 * sizeof(uint32_t))
    parent = <int32_t *>malloc(size * sizeof(int32_t))
    via = <uint8_t *>malloc(size * sizeof(uint8_t))
    queue = <uint32_t *>malloc(size * sizeof(uint32_t))
    if tables == NULL or parent == NULL or via == NULL or queue == NULL:
        free(tables); free(parent); free(via); free(queue)
        raise MemoryError()
    try:
        with nogil:
            for letter in range(b):
                for c in range(nchunks):
                    idx = (letter * nchunks + c) * 256
                    tables[idx] = 0
                    for x in range(1, 256):
                        low = <uint32_t>(x & -x)
                        j = 0
                        while (low >> j) != 1:
                            j += 1
                        v = 8 * c + j
                        tables[idx + x] = tables[idx + (x ^ low)]
                        if v < n:
                            tables[idx + x] |= (<uint32_t>1) << delta[v, letter]
            for idx in range(size):
                parent[idx] = -1
            parent[start_mask] = <int32_t>start_mask
            queue[tail] = start_mask
            tail += 1
            while head < tail and found < 0:
                s = queue[head]
                head += 1
                for letter in range(b):
                    img = 0
                    for c in range(nchunks):
                        img |= tables[(letter * nchunks + c) * 256 + ((s >> (8 * c)) & 255)]
                    if parent[img] >= 0:
                        continue
                    parent[img] = <int32_t>s
                    via[img] = <uint8_t>letter
                    if _is_target(img, target_mask, any_singleton):
                        found = img
                        break
                    queue[tail] = img
                    tail += 1
        if found < 0:
            return None
        word = []
        s = <uint32_t>found
        while s != start_mask:
            word.append(via[s])
            s = <uint32_t>parent[s]
        word.reverse()
        return word
    finally:
        free(tables)
        free(parent)
        free(via)
        free(queue)


def walk(const int32_t[:, ::1] delta, Py_ssize_t win, Py_ssize_t state,
         const int32_t[::1] letters):
    cdef Py_ssize_t i, k = letters.shape[0]
    cdef Py_ssize_t end = -1
    with nogil:
        for i in range(k):
            state = delta[state, letters[i]]
            if state == win:
                end = i + 1
                break
    return end, state


def kmp_scan(const int32_t[::1] letters, const int32_t[::1] pattern,
             const int64_t[::1] failure, Py_ssize_t matched):
    cdef Py_ssize_t i, k = letters.shape[0], m = pattern.shape[0]
    cdef int32_t x
    cdef Py_ssize_t end = -1
    with nogil:
        for i in range(k):
            x = letters[i]
            while matched > 0 and pattern[matched] != x:
                matched = failure[matched - 1]
            if pattern[matched] == x:
                matched += 1
            if matched == m:
                end = i + 1
                matched = failure[m - 1]
                break
    return end, matched


def rng_walk(const int32_t[:, :, ::1] delta3, Py_ssize_t win, Py_ssize_t state,
             rng_state, const int32_t[::1] letters):
    cdef Py_ssize_t i, k = letters.shape[0]
    cdef uint64_t r = delta3.shape[2]
    cdef uint64_t s = <uint64_t>(rng_state & 0xFFFFFFFFFFFFFFFF)
    cdef uint64_t limit = (<uint64_t>1 << 32) - ((<uint64_t>1 << 32) % r)
    cdef uint64_t hi
    cdef Py_ssize_t end = -1
    with nogil:
        for i in range(k):
            while True:
                s += <uint64_t>GOLDEN
                hi = _mix64(s) >> 32
                if hi < limit:
                    break
            state = delta3[state, letters[i], hi % r]
            if state == win:
                end = i + 1
                break
    return end, state, s

"""Compiled round-robin test counter for label-backed instances.

Same schedule and skip rule as :func:`ecsort.round_robin.round_robin_sort`,
with the knowledge graph held as an ``n x n`` adjacency bitset between
union-find roots. Used by the experiment runner; the pure-Python version
remains the reference and works with any oracle.
"""
from __future__ import annotations

import numpy as np
from numba import njit

MAX_N = 1 << 15  # bitset is n^2 / 8 bytes


@njit(cache=True)
def _find(parent, x):
    while parent[x] != x:
        parent[x] = parent[parent[x]]
        x = parent[x]
    return x


@njit(cache=True)
def _popcount(v):
    c = 0
    while v:
        v &= v - np.uint64(1)
        c += 1
    return c


@njit(cache=True)
def _count(labels, prune_every):
    n = labels.shape[0]
    words = (n + 63) // 64
    bits = np.zeros((n, words), dtype=np.uint64)
    parent = np.arange(n)
    size = np.ones(n, dtype=np.int64)
    deg = np.zeros(n, dtype=np.int64)
    active = np.arange(n)
    n_active = n
    groups = n
    edges = 0
    comparisons = 0
    r = 0
    one = np.uint64(1)
    while edges != groups * (groups - 1) // 2:
        r += 1
        for i in range(n_active):
            x = active[i]
            y = x + r
            if y >= n:
                y -= n
            rx = _find(parent, x)
            ry = _find(parent, y)
            if rx == ry:
                continue
            if (bits[rx, ry >> 6] >> np.uint64(ry & 63)) & one:
                continue
            comparisons += 1
            if labels[x] != labels[y]:
                bits[rx, ry >> 6] |= one << np.uint64(ry & 63)
                bits[ry, rx >> 6] |= one << np.uint64(rx & 63)
                deg[rx] += 1
                deg[ry] += 1
                edges += 1
                continue
            keep, drop = rx, ry
            if size[keep] < size[drop]:
                keep, drop = drop, keep
            parent[drop] = keep
            size[keep] += size[drop]
            groups -= 1
            for w in range(words):
                word = bits[drop, w]
                if word == 0:
                    continue
                bits[drop, w] = np.uint64(0)
                while word:
                    low = word & (~word + one)
                    v = w * 64 + _popcount(low - one)
                    word ^= low
                    bits[v, drop >> 6] &= ~(one << np.uint64(drop & 63))
                    if (bits[keep, v >> 6] >> np.uint64(v & 63)) & one:
                        deg[v] -= 1
                        edges -= 1
                    else:
                        bits[keep, v >> 6] |= one << np.uint64(v & 63)
                        bits[v, keep >> 6] |= one << np.uint64(keep & 63)
                        deg[keep] += 1
            deg[drop] = 0
        if r % prune_every == 0:
            kept = 0
            for i in range(n_active):
                x = active[i]
                if deg[_find(parent, x)] < groups - 1:
                    active[kept] = x
                    kept += 1
            n_active = kept
    return comparisons, r


def round_robin_count(labels, prune_every=4):
    """Return ``(comparisons, rounds)`` of the round-robin sort on ``labels``."""
    labels = np.ascontiguousarray(labels, dtype=np.int64)
    if len(labels) > MAX_N:
        raise ValueError(f"compiled counter supports n <= {MAX_N}")
    if len(labels) == 0:
        raise ValueError("n must be at least 1")
    comparisons, rounds = _count(labels, prune_every)
    return int(comparisons), int(rounds)

"""Strongly connected components (iterative Tarjan)."""
from __future__ import annotations

import numpy as np


def csr_from_arcs(n, tails, heads):
    """Adjacency in CSR form: ``heads[order]`` sliced by ``indptr``."""
    tails = np.asarray(tails, dtype=np.int64)
    heads = np.asarray(heads, dtype=np.int64)
    order = np.argsort(tails, kind="stable")
    indptr = np.zeros(n + 1, dtype=np.int64)
    np.cumsum(np.bincount(tails, minlength=n), out=indptr[1:])
    return indptr, heads[order]


def strongly_connected_components(n, tails, heads):
    """Return a component id per vertex, in Tarjan's completion order.

    Single pass, explicit stack, so graphs with 10^5+ vertices do not hit
    the recursion limit.
    """
    indptr, nbrs = csr_from_arcs(n, tails, heads)
    indptr = indptr.tolist()
    nbrs = nbrs.tolist()

    index = [-1] * n
    low = [0] * n
    on_stack = [False] * n
    comp = [-1] * n
    stack = []
    counter = 0
    n_comp = 0

    for root in range(n):
        if index[root] != -1:
            continue
        index[root] = low[root] = counter
        counter += 1
        stack.append(root)
        on_stack[root] = True
        work = [(root, indptr[root])]
        while work:
            v, pos = work[-1]
            end = indptr[v + 1]
            descended = False
            while pos < end:
                w = nbrs[pos]
                pos += 1
                if index[w] == -1:
                    work[-1] = (v, pos)
                    index[w] = low[w] = counter
                    counter += 1
                    stack.append(w)
                    on_stack[w] = True
                    work.append((w, indptr[w]))
                    descended = True
                    break
                if on_stack[w] and index[w] < low[v]:
                    low[v] = index[w]
            if descended:
                continue
            work.pop()
            if low[v] == index[v]:
                while True:
                    w = stack.pop()
                    on_stack[w] = False
                    comp[w] = n_comp
                    if w == v:
                        break
                n_comp += 1
            if work:
                u = work[-1][0]
                if low[v] < low[u]:
                    low[u] = low[v]
    return np.asarray(comp, dtype=np.int64)


def components_as_lists(comp):
    """Group vertices by component id; members ascending, components by first member."""
    order = np.argsort(comp, kind="stable")
    sizes = np.bincount(comp)
    splits = np.split(order, np.cumsum(sizes)[:-1])
    out = [s.tolist() for s in splits if len(s)]
    out.sort(key=lambda c: c[0])
    return out

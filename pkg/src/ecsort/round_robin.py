"""Sequential round-robin equivalence class sorting.

In round ``r = 1, 2, ...`` every element ``x`` whose group still has an
unknown relation tests ``(x + r) mod n``, unless the knowledge graph already
entails the answer. Knowledge is shared through contraction, which bounds the
tests between any two classes of sizes ``a`` and ``b`` by ``2 min(a, b)``.
"""
from __future__ import annotations

from typing import NamedTuple

from .knowledge import PartitionState
from .model import Result


PRUNE_EVERY = 4


class RoundRobinResult(NamedTuple):
    state: PartitionState
    comparisons: int
    rounds: int


def round_robin_sort(oracle, n=None, on_compare=None):
    """Sort by round robin and return the final state and the test count ``R``.

    ``on_compare(x, y, same)`` is called after every test, in order.
    """
    n = oracle.n if n is None else n
    if n < 1:
        raise ValueError("n must be at least 1")
    state = PartitionState(n)
    find = state.find
    parent = state.parent
    label = state.label
    adj = state.adj
    compare = oracle.compare
    apply_result = state.apply_result

    comparisons = 0
    active = list(range(n))
    r = 0
    while not state.is_complete():
        r += 1
        for x in active:
            y = x + r
            if y >= n:
                y -= n
            rx = parent[x]
            if parent[rx] != rx:
                rx = find(rx)
            ry = parent[y]
            if parent[ry] != ry:
                ry = find(ry)
            if rx == ry or label[ry] in adj[label[rx]]:
                continue
            same = compare(x, y) is Result.SAME
            comparisons += 1
            apply_result(x, y, same)
            if on_compare is not None:
                on_compare(x, y, same)
        if r % PRUNE_EVERY == 0:
            # elements of groups that know every other group can never test again
            full = state.num_groups - 1
            done = {}
            keep = []
            for x in active:
                rx = find(x)
                d = done.get(rx)
                if d is None:
                    d = done[rx] = len(adj[label[rx]]) >= full
                if not d:
                    keep.append(x)
            active = keep
    return RoundRobinResult(state, comparisons, r)

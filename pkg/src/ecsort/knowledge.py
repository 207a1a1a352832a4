"""Knowledge graph of an equivalence-class sorting run.

Vertices are groups of elements already known to be equivalent, edges are
known non-equivalences. A Same answer contracts two vertices, a Different
answer adds an edge. Sorting is finished once the graph is a clique.
"""
from __future__ import annotations

import enum

from .model import Result


class Relation(enum.Enum):
    SAME = "same"
    DIFFERENT = "different"
    UNKNOWN = "unknown"


class ContradictionError(RuntimeError):
    """An answer contradicts what is already known (inconsistent oracle)."""


class PartitionState:
    """Union-find forest plus a distinct-edge set keyed by group.

    Groups are linked by size. Edges are stored under a per-group *label*
    that is independent of the forest root, so a merge only rewrites the
    neighbours of whichever side has the smaller edge list.
    """

    def __init__(self, n):
        if n < 1:
            raise ValueError("n must be at least 1")
        self.n = n
        self.parent = list(range(n))
        self.size = [1] * n
        self.label = list(range(n))  # root -> edge-set label
        self.owner = list(range(n))  # label -> root
        self.adj = [set() for _ in range(n)]  # label -> labels
        self.num_groups = n
        self.num_edges = 0

    def find(self, x):
        parent = self.parent
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def group_size(self, x):
        return self.size[self.find(x)]

    def relation_known(self, x, y):
        rx, ry = self.find(x), self.find(y)
        if rx == ry:
            return Relation.SAME
        if self.label[ry] in self.adj[self.label[rx]]:
            return Relation.DIFFERENT
        return Relation.UNKNOWN

    def is_known(self, x, y):
        rx, ry = self.find(x), self.find(y)
        return rx == ry or self.label[ry] in self.adj[self.label[rx]]

    def neighbours(self, x):
        """Roots of the groups known to differ from the group of ``x``."""
        owner = self.owner
        return [owner[lab] for lab in self.adj[self.label[self.find(x)]]]

    def degree(self, x):
        return len(self.adj[self.label[self.find(x)]])

    def apply_result(self, x, y, result):
        if x == y:
            raise ValueError("cannot compare an element with itself")
        same = result is Result.SAME if isinstance(result, Result) else bool(result)
        rx, ry = self.find(x), self.find(y)
        lx, ly = self.label[rx], self.label[ry]
        if same:
            if rx == ry:
                return
            if ly in self.adj[lx]:
                raise ContradictionError(f"{x} and {y} answered Same across a known distinct edge")
            self._union(rx, ry)
        else:
            if rx == ry:
                raise ContradictionError(f"{x} and {y} answered Different inside one group")
            if ly not in self.adj[lx]:
                self.adj[lx].add(ly)
                self.adj[ly].add(lx)
                self.num_edges += 1

    def _union(self, rx, ry):
        if self.size[rx] < self.size[ry]:
            rx, ry = ry, rx
        self.parent[ry] = rx
        self.size[rx] += self.size[ry]
        self.num_groups -= 1

        keep, drop = self.label[rx], self.label[ry]
        adj = self.adj
        if len(adj[keep]) < len(adj[drop]):
            keep, drop = drop, keep
        big = adj[keep]
        for other in adj[drop]:
            nbr = adj[other]
            nbr.discard(drop)
            if other in big:
                self.num_edges -= 1
            else:
                big.add(other)
                nbr.add(keep)
        adj[drop] = set()
        self.label[rx] = keep
        self.owner[keep] = rx

    def is_complete(self):
        g = self.num_groups
        return self.num_edges == g * (g - 1) // 2

    def groups(self):
        """Partition of ``[0, n)`` sorted by smallest member."""
        by_root = {}
        for i in range(self.n):
            by_root.setdefault(self.find(i), []).append(i)
        return sorted(by_root.values(), key=lambda g: g[0])

    def roots(self):
        return [i for i in range(self.n) if self.parent[i] == i]

    def edges(self):
        """Distinct edges as sorted pairs of roots."""
        out = set()
        for r in self.roots():
            for o in self.neighbours(r):
                out.add((min(r, o), max(r, o)))
        return sorted(out)


def new_partition(n):
    return PartitionState(n)

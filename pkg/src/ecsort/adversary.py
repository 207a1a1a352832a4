"""Adaptive adversary forcing many equivalence tests.

The adversary keeps a proper colouring of the algorithm's knowledge graph in
which every colour carries a fixed total weight (elements per colour). It only
answers Same for two marked elements of one colour, so unmarked elements stay
in weight-one vertices and may still trade colours. An element is marked once
its degree passes ``n / 4f`` (``n / 4l`` in smallest-class mode), or when its
whole colour is marked because no colour swap could separate a same-coloured
pair.
"""
from __future__ import annotations

import enum
import json
from collections import Counter

from .knowledge import PartitionState
from .model import Oracle, Result


class AdversaryMode(str, enum.Enum):
    UNIFORM = "uniform"
    SMALLEST_CLASS = "smallest-class"


class Verdict(enum.Enum):
    ACCEPT = "accept"
    MISTAKE = "mistake"


class AdversaryAnswer:
    __slots__ = ("result", "actions")

    def __init__(self, result, actions):
        self.result = result
        self.actions = actions

    def __repr__(self):
        return f"AdversaryAnswer({self.result.name}, {self.actions!r})"


class AdversaryState:
    def __init__(self, n, param, mode, colors, scc_color=None):
        self.n = n
        self.param = param
        self.mode = AdversaryMode(mode)
        self.threshold = n / (4 * param)
        self.knowledge = PartitionState(n)
        self.color = list(colors)
        self.scc_color = scc_color
        self.initial_weights = dict(Counter(self.color))
        self.degree = [0] * n
        self.high_elem = [False] * n
        self.high_color = [False] * n
        self.color_marked = set()
        self.comparisons = 0
        self.log = []
        self.last_touched = ()

    @property
    def num_colors(self):
        return len(self.initial_weights)

    def is_marked(self, e):
        return self.high_elem[e] or self.high_color[e]

    def marked_count(self):
        return sum(1 for e in range(self.n) if self.is_marked(e))

    def elem_marks(self, e):
        marks = set()
        if self.high_elem[e]:
            marks.add("high-element-degree")
        if self.high_color[e]:
            marks.add("high-color-degree")
        return marks

    def color_weights(self):
        return dict(Counter(self.color))

    def color_partition(self):
        by_color = {}
        for e, c in enumerate(self.color):
            by_color.setdefault(c, []).append(e)
        return sorted(by_color.values(), key=lambda g: g[0])

    # -- swaps ----------------------------------------------------------

    def _can_swap(self, u, w):
        know = self.knowledge
        cu, cw = self.color[u], self.color[w]
        ru, rw = know.find(u), know.find(w)
        for v in know.neighbours(u):
            if v != rw and self.color[v] == cw:
                return False
        for v in know.neighbours(w):
            if v != ru and self.color[v] == cu:
                return False
        return True

    def _find_swap(self, u, exclude, avoid_color=None):
        cu = self.color[u]
        for w in range(self.n):
            if w in exclude or self.is_marked(w):
                continue
            cw = self.color[w]
            if cw == cu or cw == avoid_color:
                continue
            if self._can_swap(u, w):
                return w
        return None

    def _swap(self, u, w):
        self.color[u], self.color[w] = self.color[w], self.color[u]

    def _mark_color(self, c):
        for e in range(self.n):
            if self.color[e] == c:
                self.high_color[e] = True
        self.color_marked.add(c)

    # -- the four cases ---------------------------------------------------

    def answer(self, x, y):
        if x == y:
            raise ValueError("cannot compare an element with itself")
        actions = []

        for e in (x, y):
            if not self.is_marked(e) and self.degree[e] + 1 > self.threshold:
                if self.mode is AdversaryMode.SMALLEST_CLASS and self.color[e] == self.scc_color:
                    w = self._find_swap(e, (x, y), avoid_color=self.scc_color)
                    if w is not None:
                        self._swap(e, w)
                        actions.append({"action": "protect-swap", "element": e, "with": w})
                self.high_elem[e] = True
                actions.append({"action": "mark-element", "element": e})

        if (not self.is_marked(x) or not self.is_marked(y)) and self.color[x] == self.color[y]:
            swapped = False
            for u in sorted(e for e in (x, y) if not self.is_marked(e)):
                w = self._find_swap(u, (x, y))
                if w is not None:
                    self._swap(u, w)
                    actions.append({"action": "swap", "element": u, "with": w})
                    swapped = True
                    break
            if not swapped:
                c = self.color[x]
                self._mark_color(c)
                actions.append({"action": "mark-color", "color": c})

        if self.is_marked(x) and self.is_marked(y):
            same = self.color[x] == self.color[y]
        else:
            same = False
        if not same:
            self.degree[x] += 1
            self.degree[y] += 1
        self.knowledge.apply_result(x, y, same)
        self.comparisons += 1
        result = Result.from_bool(same)
        self.log.append({"query": [x, y], "answer": result.value, "actions": actions})
        self.last_touched = (x, y) + tuple(a["with"] for a in actions if "with" in a)
        return AdversaryAnswer(result, actions)

    # -- checks -----------------------------------------------------------

    def violations(self, elements=None):
        """List invariant violations; ``elements`` limits the check to their vertices."""
        know = self.knowledge
        problems = []
        if elements is None:
            roots = know.roots()
            members = {}
            for e in range(self.n):
                members.setdefault(know.find(e), []).append(e)
            if self.color_weights() != self.initial_weights:
                problems.append("colour weights changed")
            for c in self.color_marked:
                if any(self.color[e] == c and not self.is_marked(e) for e in range(self.n)):
                    problems.append(f"marked colour {c} has an unmarked element")
        else:
            roots = sorted({know.find(e) for e in elements})
            members = None
        for r in roots:
            c = self.color[r]
            if members is not None:
                group = members[r]
                if any(self.color[e] != c for e in group):
                    problems.append(f"vertex {r} is not monochromatic")
                if len(group) > 1 and not all(self.is_marked(e) for e in group):
                    problems.append(f"vertex {r} has weight {len(group)} but an unmarked element")
            for v in know.neighbours(r):
                if self.color[v] == c:
                    problems.append(f"edge {r}-{v} joins two vertices of colour {c}")
        return problems

    def mark_tally(self):
        """Test participations forced by the marks: ``n i / 2 + n j / 4f``."""
        i = len(self.color_marked)
        j = sum(1 for e in range(self.n) if self.high_elem[e] and not self.high_color[e])
        return self.n * i / 2 + self.n * j / (4 * self.param)

    def export_log(self, fh):
        """Write the action log as JSON lines."""
        for entry in self.log:
            fh.write(json.dumps(entry, sort_keys=True) + "\n")


def new_uniform_adversary(n, f):
    if f < 1 or n < 1 or n % f:
        raise ValueError(f"class size f={f} must divide n={n}")
    c = n // f
    return AdversaryState(n, f, AdversaryMode.UNIFORM, [i % c for i in range(n)])


def new_scc_adversary(n, ell):
    if not 1 <= ell <= n / 2:
        raise ValueError(f"smallest class size must satisfy 1 <= ell <= n/2, got ell={ell}, n={n}")
    m = max(1, (n - ell) // (ell + 1))
    colors = [0] * ell + [1 + j % m for j in range(n - ell)]
    return AdversaryState(n, ell, AdversaryMode.SMALLEST_CLASS, colors, scc_color=0)


def adversary_answer(state, x, y):
    return state.answer(x, y)


def certify_floor(state, claim):
    """Judge an algorithm's declared answer.

    Uniform mode takes a partition; smallest-class mode takes the element
    claimed to lie in the smallest class.
    """
    if state.mode is AdversaryMode.UNIFORM:
        if not all(state.is_marked(e) for e in range(state.n)) and state.param > 1:
            return Verdict.MISTAKE
        claimed = sorted((sorted(g) for g in claim), key=lambda g: g[0])
        return Verdict.ACCEPT if claimed == state.color_partition() else Verdict.MISTAKE
    scc_marked = any(state.is_marked(e) for e in range(state.n) if state.color[e] == state.scc_color)
    if not scc_marked and state.marked_count() < state.n / 8:
        return Verdict.MISTAKE
    if state.color[claim] == state.scc_color and state.is_marked(claim):
        return Verdict.ACCEPT
    return Verdict.MISTAKE


class AdversaryOracle(Oracle):
    """Oracle interface over an :class:`AdversaryState`.

    ``after_answer(state, x, y)``, if given, runs after every answer.
    """

    def __init__(self, state, after_answer=None):
        self.state = state
        self.n = state.n
        self.after_answer = after_answer

    def compare(self, x, y):
        res = self.state.answer(x, y).result
        if self.after_answer is not None:
            self.after_answer(self.state, x, y)
        return res

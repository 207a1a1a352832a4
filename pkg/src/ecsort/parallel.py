"""Answer-merging algorithms parameterised by the number of classes.

Both sorts start from ``n`` singleton answers and repeatedly merge answers by
testing one representative of every class of one answer against one of every
class of the other.

* :func:`cr_sort` uses the two-phase compounding scheme: pairs of answers are
  merged until every answer owns at least ``4 k^2`` processors, after which
  groups of ``c`` answers are merged at once.
* :func:`er_sort` merges pairs of answers level by level, each merge scheduled
  as a Latin-square tournament so no representative is used twice in a round.
"""
from __future__ import annotations

from dataclasses import dataclass

from .machine import Machine
from .model import Mode


@dataclass
class Answer:
    """A set of elements already sorted into classes.

    ``classes`` holds member lists; the first member of each is the class
    representative used for all of that class's comparisons.
    """

    classes: list

    @property
    def k(self):
        return len(self.classes)

    @property
    def reps(self):
        return [c[0] for c in self.classes]

    def elements(self):
        return [x for c in self.classes for x in c]


def singleton_answers(n):
    return [Answer([[i]]) for i in range(n)]


def _combine(state, answers):
    by_root = {}
    for ans in answers:
        for cls in ans.classes:
            by_root.setdefault(state.find(cls[0]), []).extend(cls)
    merged = [sorted(c) for c in by_root.values()]
    merged.sort(key=lambda c: c[0])
    return Answer(merged)


def _check_disjoint(answers):
    seen = set()
    for ans in answers:
        for x in ans.elements():
            if x in seen:
                raise ValueError(f"element {x} appears in more than one answer")
            seen.add(x)


def _latin_plans(pairs):
    plans = []
    for a, b in pairs:
        if a.k > b.k:
            a, b = b, a
        plans.append((a.reps, b.reps))
    return plans


def merge_level_er(machine, pairs, prune=True):
    """Merge disjoint answer pairs simultaneously under exclusive read.

    Round ``r`` compares class ``i`` of the smaller answer with class
    ``(i + r) mod k_b`` of the larger, so at most ``max(k_a, k_b)`` rounds.
    """
    plans = _latin_plans(pairs)
    n_rounds = max((len(rb) for _, rb in plans), default=0)
    known = machine.state.is_known
    for r in range(n_rounds):
        batch = []
        for ra, rb in plans:
            kb = len(rb)
            if r >= kb:
                continue
            for i, x in enumerate(ra):
                y = rb[(i + r) % kb]
                if prune and known(x, y):
                    continue
                batch.append((x, y))
        machine.run(batch)
    return [_combine(machine.state, pair) for pair in pairs]


def merge_level_cr(machine, groups, total_answers=None, prune=True):
    """Merge groups of answers simultaneously under concurrent read.

    Every group gets the processors of its answers, ``n * |group| / total``,
    and issues its cross-answer representative tests in that many per round.
    """
    if total_answers is None:
        total_answers = sum(len(g) for g in groups)
    known = machine.state.is_known
    queues = []
    for group in groups:
        reps = [ans.reps for ans in group]
        tests = [
            (x, y)
            for i in range(len(reps))
            for j in range(i + 1, len(reps))
            for x in reps[i]
            for y in reps[j]
        ]
        budget = max(1, machine.n * len(group) // total_answers)
        queues.append([tests, 0, budget])
    while True:
        batch = []
        for q in queues:
            tests, pos, budget = q
            taken = 0
            while pos < len(tests) and taken < budget:
                x, y = tests[pos]
                pos += 1
                if prune and known(x, y):
                    continue
                batch.append((x, y))
                taken += 1
            q[1] = pos
        if not batch:
            break
        machine.run(batch)
    return [_combine(machine.state, group) for group in groups]


def merge_answers_pair(machine, a, b, mode=Mode.ER, prune=True):
    """Merge two disjoint answers using at most ``k_a * k_b`` tests."""
    _check_disjoint([a, b])
    if Mode(mode) is Mode.ER:
        return merge_level_er(machine, [(a, b)], prune)[0]
    return merge_level_cr(machine, [[a, b]], 2, prune)[0]


def _pair_up(answers):
    pairs = [(answers[i], answers[i + 1]) for i in range(0, len(answers) - 1, 2)]
    leftover = [answers[-1]] if len(answers) % 2 else []
    return pairs, leftover


def _current_k(answers, k_hint):
    if k_hint is not None:
        return k_hint
    return max(a.k for a in answers)


def cr_sort(oracle, n=None, k_hint=None, prune=True, record=False, metrics=None, trace=None):
    """Two-phase CR sort in ``O(k + log log n)`` rounds with ``n`` processors.

    Without ``k_hint`` the largest class count among the current answers is
    used wherever the algorithm needs ``k``.
    """
    machine = Machine(oracle, n, Mode.CR, metrics=metrics, record=record, trace=trace)
    n = machine.n
    answers = singleton_answers(n)
    info = {"phase1_levels": 0, "phase2_levels": 0, "phase2_start": None, "phase2_group_sizes": []}

    while len(answers) > 1 and n / len(answers) < 4 * _current_k(answers, k_hint) ** 2:
        pairs, leftover = _pair_up(answers)
        groups = [list(p) for p in pairs]
        answers = merge_level_cr(machine, groups, len(answers), prune) + leftover
        info["phase1_levels"] += 1

    if len(answers) > 1:
        info["phase2_start"] = {
            "processors_per_answer": n / len(answers),
            "k": _current_k(answers, k_hint),
        }
    while len(answers) > 1:
        k = _current_k(answers, k_hint)
        c = max(2, int(n / len(answers)) // (k * k))
        groups = [answers[i:i + c] for i in range(0, len(answers), c)]
        answers = merge_level_cr(machine, groups, len(answers), prune)
        info["phase2_levels"] += 1
        info["phase2_group_sizes"].append(c)

    return machine.result(**info, trace=machine.trace)


def er_sort(oracle, n=None, k_hint=None, prune=True, record=False, metrics=None, trace=None):
    """Pairwise ER merging: ``ceil(log2 n)`` levels of at most ``k`` rounds.

    ``k_hint`` is accepted for interface symmetry; the Latin-square schedule
    already adapts to the actual class counts of the answers being merged.
    """
    machine = Machine(oracle, n, Mode.ER, metrics=metrics, record=record, trace=trace)
    answers = singleton_answers(machine.n)
    levels = 0
    while len(answers) > 1:
        pairs, leftover = _pair_up(answers)
        answers = merge_level_er(machine, pairs, prune) + leftover
        levels += 1
    return machine.result(levels=levels, k_hint=k_hint, trace=machine.trace)

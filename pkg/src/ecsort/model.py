"""Valiant-style parallel comparison model: oracles, round legality, accounting.

Only rounds that actually contain comparisons are counted. Bookkeeping done
between rounds (merging answers, computing components, ...) is free.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass, field

import numpy as np


class Result(enum.Enum):
    SAME = "same"
    DIFFERENT = "different"

    @classmethod
    def from_bool(cls, same):
        return cls.SAME if same else cls.DIFFERENT


class Mode(str, enum.Enum):
    ER = "er"
    CR = "cr"


class IllegalRoundError(ValueError):
    """A schedule violates the legality rule of the active read mode."""


@dataclass(frozen=True)
class GroundTruth:
    """Hidden class labels, one per element id in ``[0, n)``."""

    labels: tuple

    def __post_init__(self):
        if len(self.labels) == 0:
            raise ValueError("ground truth must contain at least one element")
        object.__setattr__(self, "labels", tuple(int(v) for v in self.labels))

    @property
    def n(self):
        return len(self.labels)

    @property
    def k(self):
        return len(set(self.labels))

    @property
    def smallest_class(self):
        return min(np.unique(np.asarray(self.labels), return_counts=True)[1])

    def classes(self):
        """Ground-truth partition in canonical order (sorted by smallest member)."""
        by_label = {}
        for i, lab in enumerate(self.labels):
            by_label.setdefault(lab, []).append(i)
        return sorted(by_label.values(), key=lambda c: c[0])


class Oracle:
    """Answers equivalence tests. Subclasses implement :meth:`compare`."""

    n = 0

    def compare(self, x, y):
        raise NotImplementedError

    def compare_many(self, xs, ys):
        """Vector form of :meth:`compare`; returns a boolean array, True = Same."""
        return np.fromiter(
            (self.compare(int(x), int(y)) is Result.SAME for x, y in zip(xs, ys)),
            dtype=bool,
            count=len(xs),
        )


class TruthOracle(Oracle):
    """Stateless oracle backed by a :class:`GroundTruth`."""

    def __init__(self, truth):
        if not isinstance(truth, GroundTruth):
            truth = GroundTruth(truth)
        self.truth = truth
        self.n = truth.n
        self._labels = np.asarray(truth.labels, dtype=np.int64)
        self._labels.setflags(write=False)

    def compare(self, x, y):
        return Result.from_bool(self._labels[x] == self._labels[y])

    def compare_many(self, xs, ys):
        return self._labels[np.asarray(xs, dtype=np.int64)] == self._labels[np.asarray(ys, dtype=np.int64)]


def make_truth_oracle(truth):
    return TruthOracle(truth)


@dataclass
class RunMetrics:
    rounds: int = 0
    total_comparisons: int = 0
    per_round_sizes: list = field(default_factory=list)

    def record(self, size):
        self.rounds += 1
        self.total_comparisons += size
        self.per_round_sizes.append(size)


def as_pairs(pairs):
    """Canonicalize a round to an ``(m, 2)`` int array with the smaller id first."""
    arr = np.asarray(pairs, dtype=np.int64)
    if arr.size == 0:
        return np.empty((0, 2), dtype=np.int64)
    arr = arr.reshape(-1, 2)
    if np.any(arr[:, 0] == arr[:, 1]):
        raise IllegalRoundError("a pair compares an element with itself")
    return np.sort(arr, axis=1)


def validate_er_round(pairs):
    """True iff no element id appears in more than one pair."""
    arr = as_pairs(pairs)
    flat = arr.ravel()
    return len(np.unique(flat)) == len(flat)


def validate_cr_round(pairs, n):
    """True iff the round fits the budget of ``n`` processors."""
    return len(as_pairs(pairs)) <= n


def execute_round(oracle, pairs, metrics, mode=Mode.ER, n=None):
    """Run one synchronous round and return a Same-mask aligned with ``pairs``.

    Duplicate pairs are asked once; a round with no pairs is not a step of the
    model and leaves ``metrics`` untouched.
    """
    arr = as_pairs(pairs)
    if len(arr) == 0:
        return np.zeros(0, dtype=bool)
    keys = arr[:, 0] * (int(arr.max()) + 1) + arr[:, 1]
    uniq, first, inverse = np.unique(keys, return_index=True, return_inverse=True)
    distinct = arr[first]
    mode = Mode(mode)
    if mode is Mode.ER:
        if not validate_er_round(distinct):
            raise IllegalRoundError("ER round uses an element in more than one comparison")
    else:
        budget = oracle.n if n is None else n
        if len(distinct) > budget:
            raise IllegalRoundError(
                f"CR round has {len(distinct)} comparisons but only {budget} processors"
            )
    same = np.asarray(oracle.compare_many(distinct[:, 0], distinct[:, 1]), dtype=bool)
    metrics.record(len(distinct))
    return same[inverse.ravel()]

"""Per-run execution context shared by the parallel algorithms."""
from __future__ import annotations

from typing import NamedTuple

from .knowledge import PartitionState
from .model import Mode, RunMetrics, as_pairs, execute_round


class SortResult(NamedTuple):
    state: PartitionState
    metrics: RunMetrics
    info: dict


class Machine:
    """Couples an oracle with the run's knowledge graph and metrics.

    With ``record=True`` (or an explicit ``trace`` list, shared between
    attempts) every executed schedule is kept as ``(mode, pairs)`` so tests
    can re-check legality independently.
    """

    def __init__(self, oracle, n=None, mode=Mode.ER, metrics=None, record=False, trace=None):
        self.oracle = oracle
        self.n = oracle.n if n is None else n
        self.mode = Mode(mode)
        self.metrics = RunMetrics() if metrics is None else metrics
        self.state = PartitionState(self.n)
        if trace is None and record:
            trace = []
        self.trace = trace

    def run(self, pairs, apply=True):
        arr = as_pairs(pairs)
        same = execute_round(self.oracle, arr, self.metrics, self.mode, self.n)
        if len(arr) and self.trace is not None:
            self.trace.append((self.mode, arr))
        if apply:
            apply_result = self.state.apply_result
            for (x, y), s in zip(arr.tolist(), same.tolist()):
                apply_result(x, y, s)
        return same

    def result(self, **info):
        return SortResult(self.state, self.metrics, info)

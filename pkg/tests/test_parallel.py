import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from ecsort.machine import Machine
from ecsort.model import Mode, TruthOracle, validate_cr_round, validate_er_round
from ecsort.parallel import Answer, cr_sort, er_sort, merge_answers_pair

from conftest import partition_of


def test_merge_two_singletons():
    m = Machine(TruthOracle([0, 0]))
    out = merge_answers_pair(m, Answer([[0]]), Answer([[1]]))
    assert out.classes == [[0, 1]]
    assert (m.metrics.rounds, m.metrics.total_comparisons) == (1, 1)


@pytest.mark.parametrize("mode", [Mode.ER, Mode.CR])
def test_all_different_costs_k_squared(mode):
    k = 4
    labels = list(range(2 * k))
    m = Machine(TruthOracle(labels), mode=mode)
    a = Answer([[i] for i in range(k)])
    b = Answer([[k + i] for i in range(k)])
    out = merge_answers_pair(m, a, b, mode=mode, prune=False)
    assert out.k == 2 * k
    assert m.metrics.total_comparisons == k * k


def test_partial_overlap_merge():
    # a = {A, B}, b = {A, C}
    labels = ["A", "B", "A", "C"]
    m = Machine(TruthOracle([ord(c) for c in labels]))
    out = merge_answers_pair(m, Answer([[0], [1]]), Answer([[2], [3]]))
    assert out.classes == [[0, 2], [1], [3]]
    assert m.metrics.total_comparisons <= 4


def test_overlapping_answers_rejected():
    m = Machine(TruthOracle([0, 0, 1]))
    with pytest.raises(ValueError):
        merge_answers_pair(m, Answer([[0]]), Answer([[0], [1]]))


@pytest.mark.parametrize("sort", [cr_sort, er_sort])
def test_single_element(sort):
    res = sort(TruthOracle([3]))
    assert res.state.groups() == [[0]]
    assert (res.metrics.rounds, res.metrics.total_comparisons) == (0, 0)


def test_cr_four_equal():
    res = cr_sort(TruthOracle([0] * 4))
    assert res.state.groups() == [[0, 1, 2, 3]]
    assert res.metrics.rounds <= 3


def test_er_alternating_eight():
    res = er_sort(TruthOracle([0, 1] * 4))
    assert res.state.groups() == [[0, 2, 4, 6], [1, 3, 5, 7]]
    assert res.metrics.rounds <= 6


def test_er_one_class_sixteen():
    res = er_sort(TruthOracle([0] * 16))
    assert res.info["levels"] == 4
    assert res.metrics.rounds == 4
    assert res.metrics.per_round_sizes == [8, 4, 2, 1]


def _check_trace(trace, n):
    for mode, pairs in trace:
        if mode is Mode.ER:
            assert validate_er_round(pairs)
        else:
            assert validate_cr_round(pairs, n)


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 120), st.integers(1, 8), st.integers(0, 2**32 - 1), st.booleans())
def test_sorts_exactly_and_legally(n, k, seed, prune):
    labels = np.random.default_rng(seed).integers(0, k, n)
    for sort in (cr_sort, er_sort):
        res = sort(TruthOracle(labels), prune=prune, record=True)
        assert res.state.groups() == partition_of(labels)
        assert res.state.is_complete()
        _check_trace(res.info["trace"], n)


@settings(max_examples=30, deadline=None)
@given(st.integers(2, 200), st.integers(1, 6), st.integers(0, 2**32 - 1))
def test_er_round_bound(n, k, seed):
    labels = np.random.default_rng(seed).integers(0, k, n)
    res = er_sort(TruthOracle(labels))
    kk = len(set(labels.tolist()))
    assert res.metrics.rounds <= kk * math.ceil(math.log2(n))


def test_pruning_never_costs_more(rng):
    for _ in range(20):
        labels = rng.integers(0, 5, 150)
        for sort in (cr_sort, er_sort):
            a = sort(TruthOracle(labels)).metrics.total_comparisons
            b = sort(TruthOracle(labels), prune=False).metrics.total_comparisons
            assert a <= b

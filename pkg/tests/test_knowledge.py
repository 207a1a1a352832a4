import itertools

import pytest
from hypothesis import given, settings, strategies as st

from ecsort.knowledge import ContradictionError, PartitionState, Relation
from ecsort.model import Result


def test_fresh_state():
    s = PartitionState(3)
    assert (s.num_groups, s.num_edges) == (3, 0)
    assert PartitionState(1).is_complete()
    assert not PartitionState(5).is_complete()
    assert s.groups() == [[0], [1], [2]]
    with pytest.raises(ValueError):
        PartitionState(0)


def test_same_merges():
    s = PartitionState(3)
    s.apply_result(0, 1, Result.SAME)
    assert s.groups() == [[0, 1], [2]]
    assert s.relation_known(0, 1) is Relation.SAME
    assert s.relation_known(0, 2) is Relation.UNKNOWN


def test_different_adds_group_edge():
    s = PartitionState(3)
    s.apply_result(0, 1, Result.SAME)
    s.apply_result(1, 2, Result.DIFFERENT)
    assert s.num_edges == 1
    assert s.relation_known(0, 2) is Relation.DIFFERENT


def test_merge_dedups_edges():
    s = PartitionState(5)
    for a, b in [(0, 1), (2, 3)]:
        s.apply_result(a, b, True)
    s.apply_result(0, 4, False)
    s.apply_result(2, 4, False)
    assert s.num_edges == 2
    s.apply_result(1, 3, True)
    assert s.num_edges == 1
    assert s.degree(4) == 1


def test_completion_cases():
    s = PartitionState(2)
    assert not s.is_complete()
    s = PartitionState(3)
    for a, b in [(0, 1), (0, 2), (1, 2)]:
        s.apply_result(a, b, False)
    assert s.is_complete()


def test_full_sort_groups():
    labels = [0, 0, 1]
    s = PartitionState(3)
    for a, b in itertools.combinations(range(3), 2):
        s.apply_result(a, b, labels[a] == labels[b])
    assert s.is_complete()
    assert s.groups() == [[0, 1], [2]]


def test_contradictions():
    s = PartitionState(3)
    s.apply_result(0, 1, True)
    with pytest.raises(ContradictionError):
        s.apply_result(1, 0, False)
    s.apply_result(1, 2, False)
    with pytest.raises(ContradictionError):
        s.apply_result(0, 2, True)


@settings(max_examples=60)
@given(st.lists(st.integers(0, 4), min_size=1, max_size=25), st.randoms(use_true_random=False))
def test_matches_naive_closure(labels, rnd):
    """Entailed relations equal the closure computed from scratch."""
    n = len(labels)
    pairs = [(a, b) for a in range(n) for b in range(a + 1, n)]
    rnd.shuffle(pairs)
    s = PartitionState(n)
    asked = []
    for a, b in pairs[: rnd.randint(0, len(pairs))]:
        s.apply_result(a, b, labels[a] == labels[b])
        asked.append((a, b))
    # naive: components under Same answers, then Different lifted to components
    comp = list(range(n))
    for a, b in asked:
        if labels[a] == labels[b]:
            old, new = comp[b], comp[a]
            comp = [new if c == old else c for c in comp]
    diff = {frozenset((comp[a], comp[b])) for a, b in asked if labels[a] != labels[b]}
    for a in range(n):
        for b in range(n):
            if a == b:
                continue
            want = (Relation.SAME if comp[a] == comp[b]
                    else Relation.DIFFERENT if frozenset((comp[a], comp[b])) in diff
                    else Relation.UNKNOWN)
            assert s.relation_known(a, b) is want
    assert s.num_edges == len(diff)
    groups = len(set(comp))
    assert s.is_complete() == (len(diff) == groups * (groups - 1) // 2)

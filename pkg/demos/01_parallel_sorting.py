"""
Sorting into equivalence classes, one round at a time
=====================================================

A hidden labelling splits the elements into classes. The only operation is a
pairwise test (same class or not), and a round is a batch of tests run at once.
"""

# %%
# A small instance: 12 elements, 3 classes.
import numpy as np

from ecsort import PartitionState, TruthOracle, cr_sort, er_sort

labels = np.array([0, 1, 2, 0, 1, 2, 0, 0, 1, 2, 2, 0])
oracle = TruthOracle(labels)
print("hidden classes:", oracle.truth.classes())

# %%
# The knowledge graph: Same answers contract vertices, Different answers add
# edges between groups. Sorting is finished once the groups form a clique.
state = PartitionState(4)
state.apply_result(0, 1, True)
state.apply_result(1, 2, False)
print(state.groups(), "edges:", state.edges())
print("0 vs 2 is now known:", state.relation_known(0, 2).name)

# %%
# ER rounds let each element take part in one test; CR rounds allow up to n
# tests with repeats. Both sorts return the same partition.
for sort in (er_sort, cr_sort):
    res = sort(oracle, record=True)
    m = res.metrics
    print(f"{sort.__name__}: {m.rounds} rounds, {m.total_comparisons} tests, "
          f"round sizes {m.per_round_sizes}")
    assert res.state.groups() == oracle.truth.classes()

# %%
# Skipping pairs whose answer is already entailed saves tests.
big = TruthOracle(np.random.default_rng(0).integers(0, 5, 500))
for prune in (True, False):
    print("prune" if prune else "no prune", er_sort(big, prune=prune).metrics.total_comparisons)

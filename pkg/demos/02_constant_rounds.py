"""
Constant rounds when every class is large
=========================================

If each class holds at least a fraction lambda of the elements, testing along a
few random Hamiltonian cycles already links each class into one big strongly
connected piece. The number of rounds then does not depend on n.
"""

# %%
import numpy as np

from ecsort import ConstantRoundParams, TruthOracle, compute_d, er_constant_retry, er_constant_sort

for lam in (0.4, 1 / 3, 0.2):
    print(f"lambda={lam:.3f}: d={compute_d(lam)} cycles")

# %%
# Three equal classes, lambda = 1/3: the round count stays put as n grows.
params = ConstantRoundParams(1 / 3)
for n in (1_000, 10_000, 100_000):
    res = er_constant_sort(TruthOracle(np.arange(n) % 3), params, rng_seed=7)
    print(n, "rounds:", res.metrics.rounds, "step 3 rounds:", res.info["step3_rounds"])

# %%
# Unknown lambda: start at 0.4 and halve after each failure. A lone element
# forces several retries before it is kept as its own component.
labels = np.array([1] * 99 + [0])
res = er_constant_retry(TruthOracle(labels), rng_seed=0, override_d=3)
print("failed:", res.info["failed_lambdas"], "succeeded at", res.info["lambda"])

"""
An adversary that makes every algorithm work hard
=================================================

The adversary answers tests on the fly. It keeps a proper colouring of the
algorithm's knowledge in which every colour has f elements, and it only admits
Same for elements it has committed to. Any correct algorithm ends up paying at
least n^2 / 64f tests.
"""

# %%
from ecsort import AdversaryOracle, certify_floor, cr_sort, er_sort, new_uniform_adversary, round_robin_sort

n, f = 128, 4
for sort in (cr_sort, er_sort, round_robin_sort):
    state = new_uniform_adversary(n, f)
    res = sort(AdversaryOracle(state))
    verdict = certify_floor(state, res.state.groups())
    print(f"{sort.__name__:16s} tests={state.comparisons:5d} floor={n * n / (64 * f):.0f} "
          f"verdict={verdict.name} colour problems={len(state.violations())}")

# %%
# The log explains each answer: swaps, element marks and colour marks.
state = new_uniform_adversary(24, 2)
state.answer(1, 12)
print(state.answer(0, 12))

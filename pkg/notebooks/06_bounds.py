# %% [markdown]
# # How much tag do you need?

# %%
from fractions import Fraction

from leakyamd import AmdParams, LvStrongInstance
from leakyamd import bounds

bounds.amd_weak_bound(7, 13), bounds.amd_strong_bound(7, 7**3)

# %%
rep = bounds.strong_rho_bound_check(4, 1, Fraction(1, 4), Fraction(2, 5), 5)
rep.lhs, rep.rhs, rep.satisfied

# %%
bounds.weak_rho_bound_check(3, 2, Fraction(1, 3), Fraction(3, 10), 11).to_dict()

# %%
bounds.llr_table_bounds(49, 0.25, 0.5)

# %%
# rate of the strong family against 1 - rho
for n in range(4, 9):
    c = LvStrongInstance.build(11, 1, n)
    print(n, Fraction(c.k, c.n), bounds.wt2_rate_bound(c.rho), round(bounds.tag_overhead(c), 2))

# %%
bounds.tag_overhead(AmdParams(7, 1))

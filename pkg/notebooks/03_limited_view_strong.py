# %% [markdown]
# # Tag first, then hide it in a coset
#
# Encoding the AMD codeword with the wiretap code means an adversary reading
# a quarter of the positions learns nothing about the tag randomness.

# %%
from fractions import Fraction

from leakyamd import LvStrongInstance, lv_strong_decode, lv_strong_encode
from leakyamd.adversary import empirical_delta_strong, optimal_lv_attack

code = LvStrongInstance.build(5, 1, 4)
code.rho, code.read_budget, code.delta

# %%
x = lv_strong_encode([2], 1, [1], code)
x, lv_strong_decode(x, code)

# %%
rep = empirical_delta_strong(code)
rep.passed, rep.worst
# %%
{s: str(p) for s, p in rep.by_read_set().items()}

# %% [markdown]
# Past the budget the guarantee is gone.  Two positions:

# %%
[str(optimal_lv_attack(code, [2], s)[0]) for s in [(0, 1), (1, 3)]]

# %% [markdown]
# # A polynomial manipulation-detection tag
#
# Message m in F_q^d, random r, tag r^(d+2) + sum m_i r^i.  Adding any fixed
# nonzero offset to (m, r, tag) only survives decoding for a few values of r.

# %%
import numpy as np

from leakyamd import AmdParams, amd_decode, amd_encode
from leakyamd.adversary import empirical_delta, exhaustive_offset_attack

p = AmdParams(7, 1)
x = amd_encode([2], 3, p)
x, amd_decode(x, p), amd_decode(x + [0, 0, 1], p)

# %%
# nominal security, and what the best blind offset actually gets
p.delta, exhaustive_offset_attack(p, [2])

# %%
rep = empirical_delta(p, 0, p.delta, name="amd")
{r.message: str(r.success) for r in rep.rows}

# %% [markdown]
# Every message hits the bound exactly.  Which offset does it?

# %%
w = rep.worst_row()
w.strategy.offset(())

# %%
# at q = 5 the degree d = 3 is illegal: 5 divides d + 2
try:
    AmdParams(5, 3)
except ValueError as e:
    print(e)

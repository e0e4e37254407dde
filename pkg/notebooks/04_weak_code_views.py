# %% [markdown]
# # The deterministic exponent tag under a component view
#
# m in (F_q^*)^k, tag sum_j prod_i m_i^G[i,j].  Without leakage it is a decent
# weak AMD code; read a single message coordinate and things change.

# %%
import itertools
from fractions import Fraction

from leakyamd import REJECT, LvWeakInstance, lv_weak_decode
from leakyamd.adversary import empirical_delta_weak, optimal_lv_attack

code = LvWeakInstance.build(11, 2)
code.G, code.delta

# %%
code.encode([2, 3]), code.tag_by_logs([2, 3])

# %%
rep = empirical_delta_weak(code)
{s: str(p) for s, p in rep.by_read_set().items()}, str(rep.bound)

# %% [markdown]
# Reading m1 lets the adversary pick an offset per value of m1.  For m1 = 1
# the chosen shift is:

# %%
p, strat = optimal_lv_attack(code, None, (0,))
strat.offset((1,))

# %%
# it works because f(-1, x - 3) = f(1, x) + 8 for every x
f = lambda a, b: (a * b**2 + a**2 * b**3) % 11
all(f(-1, x - 3) == (f(1, x) + 8) % 11 for x in range(11))

# %%
# replay the strategy message by message
wins = 0
for m in itertools.product(range(1, 11), repeat=2):
    out = lv_weak_decode(strat.apply(code.encode(m), 11), code)
    wins += out is not REJECT and tuple(out) != m
Fraction(wins, 100)

# %% [markdown]
# # Coset coding on a Reed-Solomon code
#
# The message picks a coset, the randomness picks a point in it.  Any
# n - k_msg coordinates look uniform whatever the message.

# %%
import numpy as np

from leakyamd import Wt2Instance, wt2_decode, wt2_encode
from leakyamd.adversary import view_secrecy, wt2_secrecy_check

inst = Wt2Instance.build(5, 4, 2)
inst.G, inst.G_tilde, inst.H

# %%
x = wt2_encode([1, 4], [2, 2], inst)
x, wt2_decode(x, inst)

# %%
wt2_secrecy_check(inst)

# %% [markdown]
# Seeing three coordinates is one too many.

# %%
words = [inst.codeword_array(m) for m in ([0, 0], [1, 0])]
view_secrecy(words, (0, 1), 5), view_secrecy(words, (0, 1, 2), 5)

# %%
# histogram of one coordinate for two messages -- identical
[np.bincount(w[:, 3], minlength=5) for w in words]

# %% [markdown]
# # Sharing a tagged secret
#
# (t, r, N) = (1, 5, 6) packed sharing over F_11, applied to a limited-view
# codeword of length r - t = 4.  Up to t + floor(rho (r - t)) = 2 shares may
# be corrupted.

# %%
from leakyamd import RobustRampScheme, rr_recover, rr_share
from leakyamd import linalg
from leakyamd.adversary import rr_privacy_check, rr_robustness_attack

scheme = RobustRampScheme.build(11, 1, 5, 6, 1)
scheme.corruption_budget, scheme.delta, scheme.ramp.secret_points, scheme.ramp.random_points

# %%
shares = rr_share([4], 2, [7], [3], scheme)
print(shares.to_lines())
rr_recover(shares, range(1, 6), scheme), rr_recover(shares.with_absent(3), range(1, 6), scheme)

# %%
rr_privacy_check(scheme)

# %%
rep = rr_robustness_attack(scheme, 2)
rep.worst

# %% [markdown]
# Where the dealer randomness sits matters.  Pin it to share point 1 instead
# and two corrupt pairs see a combination of the codeword that the wiretap
# randomness does not hide.

# %%
plain = RobustRampScheme.build(11, 1, 5, 6, 1, placement="default")
bad = rr_robustness_attack(plain, 2)
worst = {}
for row in bad.rows:
    worst[row.read_set] = max(worst.get(row.read_set, 0), row.success)
{k: str(v) for k, v in worst.items() if v > plain.delta}

# %%
# the functional those two shares leak: coefficients sum to zero mod 11
a = plain.ramp.leaked_functionals((1, 5))
a, a.sum() % 11, linalg.rank(linalg.matmul(a, plain.code.wt2.G.T, 11), 11)

# %%
scheme.views_masked, plain.views_masked

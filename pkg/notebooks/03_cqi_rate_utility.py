# %% [markdown]
# # CQI mapping, link rates and the log-sum utility

# %%
import math

import numpy as np

from crd2d import default_cqi_table, efficiency_of_sinr, ergodic_rate, link_rate, utility

table = default_cqi_table()
for sinr in (-10, -6.7, 0, 8.1, 15, 22.7, 30):
    print(f"{sinr:>6} dB -> {efficiency_of_sinr(sinr, table):.4f} bit/s/Hz, {link_rate(sinr, 10e6, table) / 1e6:6.2f} Mbit/s")

# %% [markdown]
# Utility is the sum of natural-log rates.  A link with zero rate adds a large
# negative penalty, so admitting a dead link always lowers the utility.

# %%
print(utility([1e6, 4e6]), math.log(1e6) + math.log(4e6))
print(utility([1e6, 0.0]))

# %% [markdown]
# The expectation form E[ln(1 + SINR)] is available too.  With exponential
# SINR samples of unit mean it converges to about 0.5963.

# %%
print(ergodic_rate(np.random.default_rng(0).exponential(1.0, 200_000)))

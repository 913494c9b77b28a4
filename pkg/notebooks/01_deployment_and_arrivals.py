# %% [markdown]
# # Deployment, regions and D2D demand
#
# Two cells of 500 m radius sit side by side.  Each cell is split into a near
# band (A), a middle band (B) and a far band (C).  D2D pairs that want the
# serving cell's carrier are dropped in band B.

# %%
import numpy as np

from crd2d import ScenarioConfig, classify_region, deploy_nodes, draw_arrivals
from crd2d.topology import Region

cfg = ScenarioConfig()
g = cfg.serving_geometry
print(f"serving BS at {g.bs_position}, bands A<{g.region_a_outer} m <= B < {g.region_b_outer} m <= C <= {g.coverage_radius} m")
print(f"neighbor BS at {cfg.neighbor_geometry.bs_position}")

# %% [markdown]
# A single drop with 20 D2D pairs.  `cr_d2d_pairs` lists pairs outside band B,
# which may only borrow the neighbor's carrier.

# %%
nodes = deploy_nodes(cfg, seed=5, d2d_demand=20)
print(len(nodes.serving_ues), "serving UEs,", len(nodes.neighbor_ues), "neighbor UEs")
print({r.value: sum(p.region is r for p in nodes.d2d_pairs) for r in Region})
print("pair separations (m):", np.round([p.separation for p in nodes.d2d_pairs], 1))

cell = deploy_nodes(cfg.replace(d2d_placement="cell"), seed=5, d2d_demand=20)
print("whole-cell placement, CR-only pairs:", cell.cr_d2d_pairs)

# %%
for d in (100, 150, 349.9, 350, 500, 501):
    print(f"{d:>6} m -> {classify_region((d, 0.0), g).value}")

# %% [markdown]
# Poisson demand per TTI; the same (seed, TTI) always gives the same count.

# %%
counts = np.array([draw_arrivals(cfg.arrivals, t) for t in range(10_000)])
print(f"mean {counts.mean():.3f}, variance {counts.var():.3f} (both should be near {cfg.d2d_arrival_rate})")

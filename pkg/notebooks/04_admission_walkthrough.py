# %% [markdown]
# # One TTI of admission
#
# The serving phase walks the candidates in order on the serving carrier.  It
# stops at the first one that pushes the UE below SNR - SINR_th or lowers the
# utility.  The leftover candidates then try the neighbor carrier under the
# same two rules, this time protecting the neighbor cell's UE.

# %%
import numpy as np

from crd2d import ScenarioConfig, build_scene, default_cqi_table
from crd2d.engine import admit_scene, policy_for, record_from

cfg = ScenarioConfig(seed=11)
table = default_cqi_table()
scene = build_scene(cfg, tti_index=4)
print("arrivals:", scene.arrivals)

for th in cfg.thresholds_db:
    res = admit_scene(scene, policy_for(cfg, th), table, cfg.bandwidth_hz)
    print(f"SINR_th {th:g} dB: serving {res.d2d_served:2d} ({res.stop_serving.value}), "
          f"CR {res.crd2d_served:2d} ({res.stop_cr.value}), blocked {res.blocked:2d}")

# %% [markdown]
# The record for 8 dB shows what the UEs and D2D links actually get.

# %%
res = admit_scene(scene, policy_for(cfg, 8.0), table, cfg.bandwidth_hz)
rec = record_from(scene, res, 8.0, table, cfg.bandwidth_hz)
print(f"serving UE  SNR {rec.ue_snr_db:.1f} dB -> SINR {rec.ue_sinr_db:.1f} dB, {rec.ue_rate_bps / 1e6:.2f} Mbit/s")
print(f"neighbor UE SNR {rec.nbr_snr_db:.1f} dB -> SINR {rec.nbr_sinr_db:.1f} dB, {rec.nbr_rate_bps / 1e6:.2f} Mbit/s")
print("CR-D2D rates (Mbit/s):", np.round(np.array(rec.crd2d_rates_bps) / 1e6, 2))
print("utility trace:", np.round(res.trace_cr, 2))

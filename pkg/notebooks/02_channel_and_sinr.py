# %% [markdown]
# # Path loss, fading and SINR
#
# Cellular links use 128.1 + 37.6 log10(d[km]) dB and D2D links
# 148 + 40 log10(d[km]) dB.  Each link also gets log-normal shadowing and a
# gamma-distributed small-scale power gain.

# %%
import numpy as np

from crd2d import FadingParams, draw_channel, path_loss_cellular, path_loss_d2d
from crd2d.channel import CELLULAR, D2D

for d in (0.025, 0.05, 0.1, 0.5, 1.0):
    print(f"d = {d:5.3f} km  cellular {path_loss_cellular(d):7.2f} dB   d2d {path_loss_d2d(d):7.2f} dB")

# %%
rng = np.random.default_rng(0)
draw = draw_channel(D2D, np.full(100_000, 0.03), FadingParams(4.0, 1.0, 1.0), rng)
print("shadowing median", np.median(draw.large_scale_gain).round(3), "gamma mean", draw.small_scale_gain.mean().round(3))

# %% [markdown]
# A single TTI scene holds each carrier's gains.  The serving UE's SINR drops
# as more D2D transmitters share its carrier.

# %%
from crd2d import ScenarioConfig, build_scene

cfg = ScenarioConfig(seed=3)
scene = build_scene(cfg, tti_index=0)
s = scene.serving
print(f"{scene.arrivals} arrivals; serving UE {scene.serving_ue} SNR {10 * np.log10(s.ue_snr):.1f} dB")
for k in (1, 3, 6, scene.arrivals):
    print(f"  {k:2d} D2D active -> UE SINR {10 * np.log10(s.ue_sinr(range(k))):.2f} dB")

# %% [markdown]
# On the serving carrier the D2D receivers also hear the serving BS downlink.
# On the neighbor carrier that interferer is about 1 km away, so the same
# pairs see much higher SINR.

# %%
first = list(range(min(5, scene.arrivals)))
print("serving-carrier D2D SINR (dB):", np.round(10 * np.log10(s.d2d_sinr(first)), 1))
print("neighbor-carrier D2D SINR (dB):", np.round(10 * np.log10(scene.neighbor.d2d_sinr(first)), 1))

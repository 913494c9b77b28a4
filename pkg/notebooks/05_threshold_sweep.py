# %% [markdown]
# # Threshold sweep and throughput CDFs
#
# Every threshold sees the same drops, arrivals and fading, so differences
# between rows come from the threshold alone.  The same sweep is available
# from the command line as `simulate --config cfg.txt --out results/`.

# %%
from crd2d import ScenarioConfig, sweep

cfg = ScenarioConfig(tti_count=2000, seed=2024)
bundles = sweep(cfg)
print("th_dB  eta  eta_serving  blocked  UE_p50_Mbps  gain")
for th, b in bundles.items():
    print(f"{th:5g}  {b.eta_mean:5.2f}  {b.eta_serving_mean:5.2f}  {b.blocking_mean:6.2f}  "
          f"{b.median('ue') / 1e6:8.2f}  {b.gain_vs_no_d2d:5.2f}")

# %% [markdown]
# The four CDFs: UEs, serving-carrier D2D, neighbor UEs and CR-D2D.

# %%
try:
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt
except ImportError:
    plt = None

if plt is not None:
    fig, axes = plt.subplots(2, 2, figsize=(9, 7))
    for ax, (pop, title) in zip(axes.flat, [("ue", "UEs"), ("d2d", "D2Ds"), ("nbr_ue", "Neighboring UEs"),
                                            ("crd2d", "CR-D2Ds")]):
        for th, b in bundles.items():
            cdf = b.cdfs[pop]
            if len(cdf):
                ax.step(cdf.values / 1e6, cdf.probabilities, where="post", label=f"{th:g} dB")
        ax.set_title(f"CDF of {title} throughput")
        ax.set_xlabel("Mbit/s")
    axes[0, 0].legend()
    fig.tight_layout()
    fig.savefig("throughput_cdfs.png", dpi=120)
    print("saved throughput_cdfs.png")

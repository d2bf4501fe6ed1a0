"""Element-spacing study on a 5x8 array in the shopping mall.

Widening the spacing from half a wavelength to 4 wavelengths visibly
improves user separability: the larger aperture resolves the few scattered
clusters each blocked user presents, and even decorrelates rays inside one
cluster (5 degree spread across a 4-wavelength lattice is many phase
turns). Pushing on to 6 wavelengths buys almost nothing; once the aperture
has decorrelated the per-user responses, inter-user geometry is the
remaining bottleneck.

Usage: python 04_antenna_spacing.py [snapshots]
"""

import sys
from pathlib import Path

from mmwsim import emit_outputs, override_config, preset, run_experiment

OUT = Path(__file__).parent / "out" / "antenna_spacing"
SNAPSHOTS = int(sys.argv[1]) if len(sys.argv) > 1 else 1500

results = []
for config in preset("fig4_ied"):
    config = override_config(config, snapshots=SNAPSHOTS)
    result = run_experiment(config)
    results.append(result)
    print(f"{config.label:24s} median={result.summary.median:.4f} ({result.wall_time_s:.1f}s)")

emit_outputs(results, OUT, emit_svg=True)
print(f"\noutputs in {OUT}")

for n in (2, 5, 10):
    meds = {da: next(r for r in results if r.config.label == f"fig4_da{da:g}_nu{n}").summary.median
            for da in (0.5, 4.0, 6.0)}
    print(f"n_users={n:2d}: 0.5wl {meds[0.5]:.4f} -> 4wl {meds[4.0]:.4f} "
          f"(gain {meds[4.0] - meds[0.5]:+.4f}) -> 6wl {meds[6.0]:.4f} "
          f"(further {meds[6.0] - meds[4.0]:+.4f}, bottlenecked)")

try:
    import matplotlib
    matplotlib.use("Agg")
    import matplotlib.pyplot as plt
except ImportError:
    pass
else:
    fig, ax = plt.subplots(figsize=(7, 5))
    colors = {0.5: "#1f77b4", 4.0: "#d62728", 6.0: "#2ca02c"}
    styles = {2: ":", 5: "--", 10: "-"}
    for result in results:
        cfg = result.config
        ax.plot(result.cdf.grid_x, result.cdf.grid_f,
                styles[cfg.n_users], color=colors[cfg.antenna_spacing_wavelengths],
                label=f"{cfg.antenna_spacing_wavelengths:g} wl, {cfg.n_users} users")
    ax.set_xlabel(r"$\sigma_{min}/\sigma_{max}$")
    ax.set_ylabel("CDF")
    ax.set_title("Effect of element spacing (5x8 array, shopping mall)")
    ax.legend(fontsize=8)
    ax.grid(alpha=0.3)
    fig.tight_layout()
    fig.savefig(OUT / "antenna_spacing.png", dpi=120)
    print(f"figure saved to {OUT / 'antenna_spacing.png'}")

"""Array-size study: can more base-station antennas substitute for fewer users?

Grows the array from 5x8 to 20x8 elements at half-wave spacing in the
shopping mall. The spread improves with every doubling, but the improvement
is modest next to simply serving fewer users: with so few scattering
clusters per link (one dominates) and a 5 degree intra-cluster spread,
closely ringed users remain correlated no matter how many elements observe
them. Quadrupling the array at 10 users buys less than dropping from 10
users to 2 at the largest array.

Usage: python 05_array_size_vs_users.py [snapshots]
"""

import sys
from pathlib import Path

from mmwsim import emit_outputs, override_config, preset, run_experiment

OUT = Path(__file__).parent / "out" / "array_size"
SNAPSHOTS = int(sys.argv[1]) if len(sys.argv) > 1 else 1500

results = {}
for config in preset("fig5_array"):
    config = override_config(config, snapshots=SNAPSHOTS)
    result = run_experiment(config)
    results[config.label] = result
    print(f"{config.label:20s} median={result.summary.median:.4f} ({result.wall_time_s:.1f}s)")

emit_outputs(list(results.values()), OUT, emit_svg=True)
print(f"\noutputs in {OUT}")

print("\nmedian spread by array size (10 users):")
for rows in (5, 10, 15, 20):
    med = results[f"fig5_{rows}x8_nu10"].summary.median
    print(f"  {rows}x8 = {rows * 8:3d} antennas: {med:.4f}")

array_gain = results["fig5_20x8_nu10"].summary.median - results["fig5_5x8_nu10"].summary.median
user_gain = results["fig5_20x8_nu2"].summary.median - results["fig5_20x8_nu10"].summary.median
print(f"\n40->160 antennas at 10 users: {array_gain:+.4f}")
print(f"10->2 users at 160 antennas:  {user_gain:+.4f}")
print("serving fewer users beats growing the array" if user_gain > array_gain else "unexpected!")

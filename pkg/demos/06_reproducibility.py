"""Determinism guarantees: seeded streams, hashed sub-streams, exact reruns.

Everything downstream of a (config, seed) pair is reproducible bit for bit:
the random source advances one position per scalar draw, vector draws match
repeated scalar draws exactly, and each (snapshot, user) pair derives its
own stream by hashing, so a user's realization does not depend on how many
other users the run contains. The channel-dump format round-trips matrices
exactly for cross-checking runs elsewhere.
"""

import tempfile
from pathlib import Path

import numpy as np

from mmwsim import (
    RandomStream,
    ScenarioConfig,
    assemble_multiuser_matrix,
    dump_channel_matrix,
    load_channel_dump,
    run_experiment,
    singular_spread,
)

# one position tick per scalar draw, vector draws are the same sequence
a, b = RandomStream(7), RandomStream(7)
vec = a.uniform(0.0, 1.0, size=4)
scalars = [b.uniform(0.0, 1.0) for _ in range(4)]
print(f"vector draw {np.round(vec, 6)} == scalar draws {np.round(scalars, 6)}: "
      f"{list(vec) == scalars}; positions {a.position}/{b.position}")

# hashed sub-streams: user 3 sees the same draws no matter the roster size
base = RandomStream(123)
u3_a = base.derive("snapshot", 0, "user", 3).uniform(0.0, 1.0, size=3)
u3_b = RandomStream(123).derive("snapshot", 0, "user", 3).uniform(0.0, 1.0, size=3)
print(f"derived stream stable across processes: {np.array_equal(u3_a, u3_b)}")

# end-to-end: identical configs, identical results
cfg = ScenarioConfig(scenario="open_square", upa_rows=10, upa_cols=8,
                     antenna_spacing_wavelengths=0.5, n_users=4,
                     snapshots=200, seed=31337)
r1, r2 = run_experiment(cfg), run_experiment(cfg)
print(f"two runs, {len(r1.samples)} snapshots each, identical ratios: "
      f"{r1.ratios == r2.ratios}")
print(f"median spread: {r1.summary.median:.6f}")

# channel dump round-trip
from mmwsim import (UserLink, Position3D, LosState)  # noqa: E402
links = []
stream = RandomStream(5)
for j in range(3):
    h = stream.normal(0.0, 1.0, size=16) + 1j * stream.normal(0.0, 1.0, size=16)
    links.append(UserLink(position=Position3D(20.0, 0.0, 1.68),
                          los=LosState(1.0, False, 0.0, 20.0), clusters=[], channel=h))
matrix = assemble_multiuser_matrix(links)
with tempfile.TemporaryDirectory() as tmp:
    path = Path(tmp) / "channel.txt"
    dump_channel_matrix(path, matrix, seed=5)
    loaded, seed = load_channel_dump(path)
print(f"channel dump round-trip exact: {np.array_equal(loaded, matrix.entries)} (seed {seed})")
print(f"spread of dumped matrix: {singular_spread(loaded).ratio:.6f} == "
      f"{singular_spread(matrix).ratio:.6f}")

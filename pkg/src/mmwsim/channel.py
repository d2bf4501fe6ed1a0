"""Per-user channel assembly and the multiuser channel matrix.

A user's channel vector is the coherent narrowband sum over all scattered
subpaths plus, when the link is not blocked, a boosted direct component:

    h = sum_rays gain * amp(loss) * conj(a(aod_ray))
        + [not blocked] * sqrt(K * n_bs) * exp(j*phase) * amp(loss(d)) * conj(a(aod_los))

with a(.) the transmit-side steering vector and amp(.) the linear field
amplitude of the dB attenuation. Subpath delays are kept on the rays but do
not enter this narrowband aggregation; every ray contributes with weight 1.
Users carry a single antenna (K = 1), so the receive-side response is the
scalar 1 and the per-user channel is a column of length n_bs.
"""

import math
from dataclasses import dataclass

import numpy as np

from .errors import ParameterError
from .geometry import AngularPair, Position3D, UpaGeometry, _axis_phasors
from .propagation import Cluster, LosState, PathLossParams, db_to_amplitude, path_loss_db

USER_ANTENNAS = 1


@dataclass
class UserLink:
    """One base-station-to-user link and its assembled channel vector."""

    position: Position3D
    los: LosState
    clusters: list[Cluster]
    channel: np.ndarray


@dataclass
class ChannelMatrix:
    """Stacked multiuser channel, one column per user antenna."""

    entries: np.ndarray
    n_bs: int
    n_users: int
    per_user_antennas: int = USER_ANTENNAS

    def column(self, j: int) -> np.ndarray:
        return self.entries[:, j]


def assemble_user_channel(
    geom: UpaGeometry,
    clusters: list[Cluster],
    los: LosState,
    params: PathLossParams,
    los_aod: AngularPair,
) -> np.ndarray:
    """Build one user's channel vector from its scattering state.

    The direct component uses the geometric departure direction of the
    straight base-station-to-user path and the attenuation at the link
    distance with no shadow term. Each element of the result is the dot
    product, over rays in cluster order, of the ray weights with the
    conjugated per-axis steering phasors; the direct component is added
    last.
    """
    n = geom.n_elements
    h = np.zeros(n, dtype=np.complex128)

    rays = [ray for cluster in clusters for ray in cluster.rays]
    if rays:
        weights = np.array([ray.complex_gain for ray in rays]) * db_to_amplitude(
            np.array([ray.loss_db for ray in rays])
        )
        vpow, hpow = _axis_phasors(
            geom,
            np.array([ray.aod.azimuth for ray in rays]),
            np.array([ray.aod.elevation for ray in rays]),
        )
        h += ((np.conj(vpow) * weights[:, None]).T @ np.conj(hpow)).ravel()

    if not los.blocked:
        los_amp = db_to_amplitude(path_loss_db(params, los.distance, shadow_draw=0.0))
        scale = math.sqrt(USER_ANTENNAS * n) * np.exp(1j * los.phase) * los_amp
        vpow, hpow = _axis_phasors(geom, los_aod.azimuth, los_aod.elevation)
        h += scale * (np.conj(vpow[0])[:, None] * np.conj(hpow[0])[None, :]).ravel()

    if not np.all(np.isfinite(h.view(np.float64))):
        raise ParameterError("assembled channel contains non-finite entries")
    return h


def assemble_multiuser_matrix(links: list[UserLink]) -> ChannelMatrix:
    """Concatenate per-user channel vectors, in user order, into a matrix."""
    if not links:
        raise ParameterError("need at least one user link")
    n_bs = links[0].channel.shape[0]
    for link in links:
        if link.channel.shape != (n_bs,):
            raise ParameterError(
                f"inconsistent channel vector length {link.channel.shape} vs ({n_bs},)"
            )
    entries = np.column_stack([link.channel for link in links])
    return ChannelMatrix(entries=entries, n_bs=n_bs, n_users=len(links))


DUMP_MAGIC = "mmwsim-channel-dump 1"


def dump_channel_matrix(path, matrix: ChannelMatrix, seed: int) -> None:
    """Write a channel matrix as text: header with shape and seed, then one
    row per line with interleaved real/imag parts (17 significant digits)."""
    with open(path, "w") as fh:
        fh.write(f"{DUMP_MAGIC}\n")
        fh.write(f"shape {matrix.entries.shape[0]} {matrix.entries.shape[1]}\n")
        fh.write(f"seed {seed}\n")
        for row in matrix.entries:
            fh.write(" ".join(f"{v.real:.17g} {v.imag:.17g}" for v in row) + "\n")


def load_channel_dump(path) -> tuple[np.ndarray, int]:
    """Read a matrix written by :func:`dump_channel_matrix`."""
    with open(path) as fh:
        magic = fh.readline().strip()
        if magic != DUMP_MAGIC:
            raise ParameterError(f"not a channel dump: {path}")
        shape_line = fh.readline().split()
        seed_line = fh.readline().split()
        if shape_line[:1] != ["shape"] or seed_line[:1] != ["seed"]:
            raise ParameterError(f"malformed channel dump header in {path}")
        rows, cols = int(shape_line[1]), int(shape_line[2])
        seed = int(seed_line[1])
        data = np.loadtxt(fh, ndmin=2)
    if data.shape != (rows, 2 * cols):
        raise ParameterError(f"channel dump payload shape {data.shape} does not match header")
    return data[:, 0::2] + 1j * data[:, 1::2], seed

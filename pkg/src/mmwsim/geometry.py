"""Scene geometry: user placement, planar-array steering, propagation distances.

Coordinate frame: the base station sits at the origin with the user ring on
the +x axis; heights run along z. The planar array lies in the local yz
plane with element (row 0, col 0) as the phase reference; element index
order is fixed as ``index = row * cols + col``.
"""

import math
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .errors import DegenerateInputError, ParameterError
from .rng import RandomStream

_TWO_PI = 2.0 * math.pi


@dataclass(frozen=True, slots=True)
class Position3D:
    x: float
    y: float
    z: float

    def __post_init__(self):
        if not all(math.isfinite(v) for v in (self.x, self.y, self.z)):
            raise ParameterError(f"position coordinates must be finite, got {self}")


@dataclass(slots=True)
class AngularPair:
    """Azimuth/elevation pair; azimuth wraps to [0, 2pi), elevation clamps to [-pi/2, pi/2]."""

    azimuth: float
    elevation: float

    def __post_init__(self):
        if not (math.isfinite(self.azimuth) and math.isfinite(self.elevation)):
            raise ParameterError(f"angles must be finite, got {self}")
        self.azimuth = self.azimuth % _TWO_PI
        self.elevation = min(max(self.elevation, -0.5 * math.pi), 0.5 * math.pi)

    @classmethod
    def _prenormalized(cls, azimuth: float, elevation: float) -> "AngularPair":
        # fast path for values already wrapped/clamped by vectorized code
        pair = object.__new__(cls)
        pair.azimuth = azimuth
        pair.elevation = elevation
        return pair


@dataclass
class UpaGeometry:
    """Uniform planar array: ``rows`` vertical by ``cols`` horizontal elements."""

    rows: int
    cols: int
    spacing: float
    carrier_wavelength: float

    def __post_init__(self):
        if self.rows < 1 or self.cols < 1:
            raise ParameterError(f"array needs at least one element per axis, got {self.rows}x{self.cols}")
        if self.spacing <= 0.0 or self.carrier_wavelength <= 0.0:
            raise ParameterError("spacing and carrier_wavelength must be > 0")

    @property
    def n_elements(self) -> int:
        return self.rows * self.cols

    @cached_property
    def _row_index(self) -> np.ndarray:
        return np.repeat(np.arange(self.rows), self.cols)

    @cached_property
    def _col_index(self) -> np.ndarray:
        return np.tile(np.arange(self.cols), self.rows)


def bs_position(h_bs: float) -> Position3D:
    """Base-station reference position at the origin, elevated to h_bs."""
    return Position3D(0.0, 0.0, h_bs)


def place_users(
    stream: RandomStream,
    n_users: int,
    ring_center_distance: float,
    ring_radius: float,
    h_user: float,
) -> list[Position3D]:
    """Drop users uniformly over the disk of ``ring_radius`` centered at
    (ring_center_distance, 0, h_user).

    Radius is sampled as R*sqrt(u) so area density is uniform. The ring must
    not surround the base station at the origin.
    """
    if n_users < 1:
        raise ParameterError(f"n_users must be >= 1, got {n_users}")
    if ring_radius < 0.0:
        raise ParameterError(f"ring_radius must be >= 0, got {ring_radius}")
    if ring_radius >= ring_center_distance:
        raise ParameterError(
            f"ring_radius {ring_radius} must be smaller than ring_center_distance "
            f"{ring_center_distance}; users would surround the base station"
        )
    users = []
    for _ in range(n_users):
        r = ring_radius * math.sqrt(stream.uniform(0.0, 1.0))
        phi = stream.uniform(0.0, _TWO_PI)
        users.append(
            Position3D(
                ring_center_distance + r * math.cos(phi),
                r * math.sin(phi),
                h_user,
            )
        )
    return users


def _axis_phasors(geom: UpaGeometry, azimuth, elevation) -> tuple[np.ndarray, np.ndarray]:
    """Per-axis element phasors of the array response.

    The element phase (2pi/lambda)*d_a*(col*sin(az)*cos(el) + row*sin(el))
    factorizes over the two array axes, so the response of element
    (row, col) is vpow[:, row] * hpow[:, col]. Powers are built by repeated
    multiplication of the single-step phasor, which costs two complex exps
    per direction instead of one per element.
    """
    az = np.atleast_1d(np.asarray(azimuth, dtype=float))
    el = np.atleast_1d(np.asarray(elevation, dtype=float))
    k = _TWO_PI / geom.carrier_wavelength * geom.spacing
    step_v = np.exp(1j * (k * np.sin(el)))
    step_h = np.exp(1j * (k * np.sin(az) * np.cos(el)))
    vpow = np.empty((az.size, geom.rows), dtype=np.complex128)
    hpow = np.empty((az.size, geom.cols), dtype=np.complex128)
    vpow[:, 0] = 1.0
    hpow[:, 0] = 1.0
    for m in range(1, geom.rows):
        np.multiply(vpow[:, m - 1], step_v, out=vpow[:, m])
    for m in range(1, geom.cols):
        np.multiply(hpow[:, m - 1], step_h, out=hpow[:, m])
    return vpow, hpow


def steering_matrix(geom: UpaGeometry, azimuths, elevations) -> np.ndarray:
    """Stacked steering vectors for many directions, shape (n_angles, n_elements)."""
    vpow, hpow = _axis_phasors(geom, azimuths, elevations)
    return vpow[:, geom._row_index] * hpow[:, geom._col_index]


def steering_vector(geom: UpaGeometry, angles: AngularPair) -> np.ndarray:
    """Array response toward one direction; unit-modulus entries, no 1/sqrt(N)
    normalization, so ||a||^2 equals the element count."""
    return steering_matrix(geom, angles.azimuth, angles.elevation)[0]


def _subpath_distance_arrays(r_i, azimuth_dep, elevation_dep, h_bs, h_user, d):
    height_term = h_bs - h_user + r_i * np.sin(azimuth_dep)
    ground_term = d - r_i * np.cos(azimuth_dep) * np.cos(elevation_dep)
    return r_i + np.sqrt(height_term ** 2 + ground_term ** 2)


def subpath_distance(
    r_i: float,
    angles_dep: AngularPair,
    h_bs: float,
    h_user: float,
    d: float,
) -> float:
    """Propagation distance of a subpath scattered at central distance r_i.

    r = r_i + sqrt((h_bs - h_user + r_i*sin(az_dep))^2
                   + (d - r_i*cos(az_dep)*cos(el_dep))^2)

    The azimuth term inside the height component is kept exactly as the
    model defines it, even though it mixes axes unusually; see README notes.
    """
    if r_i <= 0.0:
        raise ParameterError(f"central distance r_i must be > 0, got {r_i}")
    if d <= 0.0:
        raise ParameterError(f"link distance d must be > 0, got {d}")
    return float(
        _subpath_distance_arrays(
            r_i, angles_dep.azimuth, angles_dep.elevation, h_bs, h_user, d
        )
    )


def los_distance(a: Position3D, b: Position3D) -> float:
    """Euclidean 3D separation; rejects coincident endpoints."""
    dist = math.dist((a.x, a.y, a.z), (b.x, b.y, b.z))
    if dist == 0.0:
        raise DegenerateInputError(f"positions coincide at {a}")
    return dist


def direct_path_angles(frm: Position3D, to: Position3D) -> AngularPair:
    """Departure direction of the straight path from ``frm`` toward ``to``."""
    dist = los_distance(frm, to)
    azimuth = math.atan2(to.y - frm.y, to.x - frm.x)
    elevation = math.asin((to.z - frm.z) / dist)
    return AngularPair(azimuth, elevation)

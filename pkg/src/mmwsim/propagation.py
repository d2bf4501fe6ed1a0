"""Closed-form propagation models and stochastic cluster synthesis.

Path loss follows the close-in model with a frequency-dependent exponent,

    L(r) = -20*log10(4*pi/lambda) - 10*n*[1 - b + b*fc/f0]*log10(r) - X_sigma   [dB]

where lambda is the carrier wavelength, n the path-loss exponent, b a system
parameter, f0 the reference frequency of the exponent fit and X_sigma a
shadow-fading draw in dB. Scenario-dependent line-of-sight probabilities:

    open square:    min(20/d, 1) * (1 - exp(-d/39)) + exp(-d/39)
    shopping mall:  1                        for d <= 1.2
                    exp(-(d-1.2)/4.7)        for 1.2 < d <= 6.5
                    0.32*exp(-(d-1.2)/4.7)   for d > 6.5

The shopping-mall tail keeps the same 4.7 m decay constant on both sides of
6.5 m, so the 0.32 factor is a genuine step; it is reproduced as defined.
"""

import csv
import math
from dataclasses import dataclass, field

import numpy as np

from .errors import ParameterError
from .geometry import AngularPair, _subpath_distance_arrays
from .rng import LaplacianSpec, RandomStream

SPEED_OF_LIGHT = 2.998e8

OPEN_SQUARE = "open_square"
SHOPPING_MALL = "shopping_mall"
SCENARIOS = (OPEN_SQUARE, SHOPPING_MALL)

# Azimuth/elevation spread of rays around their cluster center.
RAY_ANGLE_STD = math.radians(5.0)

MIN_RAYS_PER_CLUSTER = 1
MAX_RAYS_PER_CLUSTER = 30

# Scatterer detour: cluster central distance is the direct distance scaled
# by a factor uniform on this interval. The model leaves this distribution
# open, so it stays an explicit knob.
DEFAULT_DETOUR_RANGE = (1.0, 1.5)

_TWO_PI = 2.0 * math.pi


@dataclass
class PathLossParams:
    """Inputs of the close-in path-loss model.

    The exponent, system parameter and shadow deviation are deployment
    calibration values, not constants of this package; shipped defaults are
    representative only (see data/pathloss_defaults.json).
    """

    path_loss_exponent: float
    system_param_b: float
    reference_frequency: float
    shadow_std: float
    carrier_frequency: float
    speed_of_light: float = SPEED_OF_LIGHT

    def __post_init__(self):
        if self.path_loss_exponent <= 0.0:
            raise ParameterError(f"path_loss_exponent must be > 0, got {self.path_loss_exponent}")
        if self.shadow_std < 0.0:
            raise ParameterError(f"shadow_std must be >= 0, got {self.shadow_std}")
        if self.reference_frequency <= 0.0 or self.carrier_frequency <= 0.0:
            raise ParameterError("frequencies must be > 0")
        if self.speed_of_light <= 0.0:
            raise ParameterError("speed_of_light must be > 0")

    @property
    def wavelength(self) -> float:
        return self.speed_of_light / self.carrier_frequency

    @property
    def frequency_bracket(self) -> float:
        # 1 - b + b*c/(lambda*f0); written via c/lambda = fc so that the
        # bracket is exactly 1.0 whenever f0 equals the carrier.
        ratio = self.carrier_frequency / self.reference_frequency
        return 1.0 + self.system_param_b * (ratio - 1.0)


@dataclass(slots=True)
class Ray:
    """One subpath of a cluster."""

    aoa: AngularPair
    aod: AngularPair
    delay: float
    complex_gain: complex
    distance: float
    loss_db: float

    def __post_init__(self):
        if self.distance <= 0.0 or self.delay < 0.0 or not math.isfinite(self.loss_db):
            raise ParameterError(f"invalid ray: distance={self.distance}, delay={self.delay}, loss_db={self.loss_db}")


@dataclass(slots=True)
class Cluster:
    """A single-bounce scattering cluster and its subpaths."""

    central_aoa: AngularPair
    central_aod: AngularPair
    central_distance: float
    shadow_draw: float
    rays: list[Ray] = field(default_factory=list)

    def __post_init__(self):
        if not (MIN_RAYS_PER_CLUSTER <= len(self.rays) <= MAX_RAYS_PER_CLUSTER):
            raise ParameterError(
                f"cluster must hold {MIN_RAYS_PER_CLUSTER}..{MAX_RAYS_PER_CLUSTER} rays, got {len(self.rays)}"
            )


@dataclass
class LosState:
    """Line-of-sight condition of one link."""

    probability: float
    blocked: bool
    phase: float
    distance: float


def path_loss_db(params: PathLossParams, distance, shadow_draw=0.0):
    """Link attenuation in dB (a negative gain). The shadow draw is supplied
    by the caller so this stays a pure function. Accepts scalars or arrays."""
    if np.any(np.asarray(distance) <= 0.0):
        raise ParameterError(f"distance must be > 0, got {distance}")
    free_space_ref = -20.0 * math.log10(4.0 * math.pi / params.wavelength)
    slope = 10.0 * params.path_loss_exponent * params.frequency_bracket
    loss = free_space_ref - slope * np.log10(distance) - shadow_draw
    return float(loss) if np.ndim(loss) == 0 else loss


def db_to_amplitude(loss_db):
    """Linear field amplitude of a dB power gain: 10^(dB/20)."""
    return 10.0 ** (np.asarray(loss_db) / 20.0) if np.ndim(loss_db) else 10.0 ** (loss_db / 20.0)


def los_probability(scenario: str, distance: float) -> float:
    """Probability that a link of the given length is in line of sight."""
    if distance <= 0.0:
        raise ParameterError(f"distance must be > 0, got {distance}")
    if scenario == OPEN_SQUARE:
        if distance <= 20.0:
            return 1.0
        decay = math.exp(-distance / 39.0)
        p = (20.0 / distance) * (1.0 - decay) + decay
    elif scenario == SHOPPING_MALL:
        if distance <= 1.2:
            return 1.0
        p = math.exp(-(distance - 1.2) / 4.7)
        if distance > 6.5:
            p *= 0.32
    else:
        raise ParameterError(f"unknown scenario {scenario!r}; expected one of {SCENARIOS}")
    return min(max(p, 0.0), 1.0)


def sample_los_state(stream: RandomStream, scenario: str, distance: float) -> LosState:
    """Draw the blockage indicator and LOS phase for one link.

    The phase is drawn even for blocked links so a link consumes a fixed
    number of stream draws regardless of outcome.
    """
    p = los_probability(scenario, distance)
    blocked = stream.bernoulli(1.0 - p)
    phase = stream.uniform(0.0, _TWO_PI)
    return LosState(probability=p, blocked=blocked, phase=phase, distance=distance)


def sample_cluster_count(stream: RandomStream, rate: float) -> int:
    """Number of scattering clusters: a Poisson draw clamped below at 1."""
    return max(1, stream.poisson(rate))


def synthesize_clusters(
    stream: RandomStream,
    params: PathLossParams,
    cluster_rate: float,
    h_bs: float,
    h_user: float,
    d: float,
    detour_range: tuple[float, float] = DEFAULT_DETOUR_RANGE,
) -> list[Cluster]:
    """Draw the full scattering geometry of one link.

    Per cluster: central arrival azimuth uniform over the full circle,
    central departure azimuth and both central elevations uniform over
    [-pi/2, pi/2], central distance d scaled by a detour factor, one shared
    shadow-fading draw, and a uniform ray count on {1..30}. Per ray: angles
    Laplacian around the cluster center with 5 degree deviation, distance
    from the subpath geometry, delay distance/c, attenuation from the path
    loss model and a unit-power complex gain with uniform phase. Ray
    amplitudes are equalized at 1/sqrt(total rays of the link) so aggregate
    scattered power before attenuation is one.

    Draw order is fixed: the cluster count, then one vector draw per
    cluster-level field (arrival azimuth means, departure azimuth means,
    arrival elevation means, departure elevation means, detour factors,
    shadow draws, ray counts), then one vector draw per ray-level field
    over all rays in cluster order (the four angle fields as zero-mean
    Laplacian offsets, then gain phases).
    """
    if d <= 0.0:
        raise ParameterError(f"link distance d must be > 0, got {d}")
    lo, hi = detour_range
    if not (1.0 <= lo < hi):
        raise ParameterError(f"detour_range must satisfy 1 <= lo < hi, got {detour_range}")

    n_clusters = sample_cluster_count(stream, cluster_rate)
    half_pi = 0.5 * math.pi

    aoa_az_mean = stream.uniform(0.0, _TWO_PI, size=n_clusters)
    aod_az_mean = stream.uniform(-half_pi, half_pi, size=n_clusters)
    aoa_el_mean = stream.uniform(-half_pi, half_pi, size=n_clusters)
    aod_el_mean = stream.uniform(-half_pi, half_pi, size=n_clusters)
    central_dist = d * stream.uniform(lo, hi, size=n_clusters)
    shadow = stream.normal(0.0, params.shadow_std, size=n_clusters)
    n_rays = stream.uniform_int(MIN_RAYS_PER_CLUSTER, MAX_RAYS_PER_CLUSTER, size=n_clusters)

    total_rays = int(n_rays.sum())
    spread = LaplacianSpec(0.0, RAY_ANGLE_STD)
    rep = np.repeat(np.arange(n_clusters), n_rays)
    aoa_az = aoa_az_mean[rep] + stream.laplacian(spread, size=total_rays)
    aod_az = aod_az_mean[rep] + stream.laplacian(spread, size=total_rays)
    aoa_el = aoa_el_mean[rep] + stream.laplacian(spread, size=total_rays)
    aod_el = aod_el_mean[rep] + stream.laplacian(spread, size=total_rays)
    phases = stream.uniform(0.0, _TWO_PI, size=total_rays)

    # wrap/clamp once, matching the AngularPair normalization
    aoa_az %= _TWO_PI
    aod_az %= _TWO_PI
    np.clip(aoa_el, -half_pi, half_pi, out=aoa_el)
    np.clip(aod_el, -half_pi, half_pi, out=aod_el)

    dist = _subpath_distance_arrays(central_dist[rep], aod_az, aod_el, h_bs, h_user, d)
    delay = dist / params.speed_of_light
    loss_db = path_loss_db(params, dist, shadow[rep])
    gains = (1.0 / math.sqrt(total_rays)) * np.exp(1j * phases)

    pair = AngularPair._prenormalized
    cols = [arr.tolist() for arr in (aoa_az, aoa_el, aod_az, aod_el, delay, gains, dist, loss_db)]
    clusters = []
    stop = 0
    for i in range(n_clusters):
        start, stop = stop, stop + int(n_rays[i])
        rays = [
            Ray(
                aoa=pair(cols[0][l], cols[1][l]),
                aod=pair(cols[2][l], cols[3][l]),
                delay=cols[4][l],
                complex_gain=cols[5][l],
                distance=cols[6][l],
                loss_db=cols[7][l],
            )
            for l in range(start, stop)
        ]
        clusters.append(
            Cluster(
                central_aoa=AngularPair(aoa_az_mean[i], aoa_el_mean[i]),
                central_aod=AngularPair(aod_az_mean[i], aod_el_mean[i]),
                central_distance=float(central_dist[i]),
                shadow_draw=float(shadow[i]),
                rays=rays,
            )
        )
    return clusters


def export_curve_csv(path, distances, values) -> None:
    """Write a distance-indexed curve as CSV with header ``distance_m,value``."""
    distances = np.asarray(distances, dtype=float)
    values = np.asarray(values, dtype=float)
    if distances.shape != values.shape:
        raise ParameterError("distances and values must have matching shapes")
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["distance_m", "value"])
        for dm, v in zip(distances, values):
            writer.writerow([f"{dm:.17g}", f"{v:.17g}"])

"""Seeded random streams and the statistical distributions used by the channel model.

Every draw method maps exactly one underlying uniform variate to one output
sample (inversion sampling), so a stream's ``position`` counter equals the
number of scalar samples it has produced and vectorized draws are
sequence-identical to repeated scalar draws.
"""

import hashlib
import math
from dataclasses import dataclass

import numpy as np
from scipy.special import ndtri

from .errors import ParameterError

_TWO64 = 2 ** 64

# Smallest uniform admitted into the inverse-CDF transforms; keeps
# log/ndtri away from their singularities at 0 and 1.
_U_FLOOR = 1e-300
_U_CEIL = 1.0 - 1e-16


@dataclass
class LaplacianSpec:
    """Mean/standard-deviation parameterization of a Laplace distribution.

    The scale parameter follows from Var = 2 b^2, i.e. b = std_dev / sqrt(2).
    Angles drawn from this distribution are not wrapped here; wrapping to
    valid ranges is the geometry layer's job.
    """

    mean: float
    std_dev: float

    def __post_init__(self):
        if not (math.isfinite(self.mean) and math.isfinite(self.std_dev)):
            raise ParameterError("LaplacianSpec requires finite mean and std_dev")
        if self.std_dev <= 0.0:
            raise ParameterError(f"LaplacianSpec std_dev must be > 0, got {self.std_dev}")

    @property
    def scale(self) -> float:
        return self.std_dev / math.sqrt(2.0)


def _poisson_cdf_table(rate: float) -> np.ndarray:
    """Cumulative Poisson probabilities, long enough that the tail mass
    beyond the table is below ~1e-16."""
    k_max = int(math.ceil(rate + 12.0 * math.sqrt(rate) + 30.0))
    pmf = np.empty(k_max + 1)
    pmf[0] = math.exp(-rate)
    for k in range(1, k_max + 1):
        pmf[k] = pmf[k - 1] * rate / k
    return np.cumsum(pmf)


_POISSON_TABLES: dict[float, np.ndarray] = {}


class RandomStream:
    """Deterministic, single-owner random source.

    Two streams built with the same seed produce identical draw sequences.
    ``derive`` hashes (seed, keys) into an independent child stream without
    consuming any draws, so per-snapshot / per-user / per-cluster streams do
    not depend on the order in which sibling entities are processed.
    """

    def __init__(self, seed: int):
        seed = int(seed)
        if not (0 <= seed < _TWO64):
            raise ParameterError(f"seed must be an unsigned 64-bit integer, got {seed}")
        self.seed = seed
        self.position = 0
        self._gen = np.random.Generator(np.random.PCG64(seed))

    def __repr__(self):
        return f"RandomStream(seed={self.seed}, position={self.position})"

    def derive(self, *keys: int | str) -> "RandomStream":
        """Child stream keyed by (seed, keys); ignores the parent's position."""
        h = hashlib.blake2b(digest_size=8)
        h.update(self.seed.to_bytes(8, "little"))
        for key in keys:
            if isinstance(key, str):
                h.update(b"s" + key.encode("utf-8") + b"\x00")
            elif isinstance(key, (int, np.integer)):
                h.update(b"i" + int(key).to_bytes(8, "little", signed=True))
            else:
                raise ParameterError(f"derive keys must be int or str, got {type(key)!r}")
        return RandomStream(int.from_bytes(h.digest(), "little"))

    def _uniforms(self, size: int | None) -> np.ndarray:
        n = 1 if size is None else int(size)
        if n < 1:
            raise ParameterError(f"size must be a positive integer, got {size}")
        u = self._gen.random(n)
        self.position += n
        return u

    @staticmethod
    def _finish(values: np.ndarray, size: int | None):
        return values[0] if size is None else values

    def uniform(self, low: float, high: float, size: int | None = None):
        """Uniform draw on [low, high)."""
        if not (math.isfinite(low) and math.isfinite(high)) or low >= high:
            raise ParameterError(f"uniform requires low < high, got [{low}, {high})")
        u = self._uniforms(size)
        vals = low + (high - low) * u
        # guard the half-open upper end against rounding in (high-low)*u
        np.minimum(vals, np.nextafter(high, low), out=vals)
        return self._finish(vals, size)

    def uniform_int(self, low: int, high: int, size: int | None = None):
        """Uniform integer on {low, ..., high}, both ends inclusive."""
        if low > high:
            raise ParameterError(f"uniform_int requires low <= high, got [{low}, {high}]")
        u = self._uniforms(size)
        vals = (low + np.floor(u * (high - low + 1))).astype(np.int64)
        np.minimum(vals, high, out=vals)
        return int(vals[0]) if size is None else vals

    def normal(self, mean: float, std_dev: float, size: int | None = None):
        """Gaussian draw; std_dev = 0 returns the mean exactly (still consumes one draw)."""
        if not math.isfinite(std_dev) or std_dev < 0.0:
            raise ParameterError(f"normal requires std_dev >= 0, got {std_dev}")
        u = self._uniforms(size)
        if std_dev == 0.0:
            vals = np.full_like(u, mean)
        else:
            vals = mean + std_dev * ndtri(np.clip(u, _U_FLOOR, _U_CEIL))
        return self._finish(vals, size)

    def laplacian(self, spec: LaplacianSpec, size: int | None = None):
        """Laplace draw with the given mean and standard deviation."""
        u = self._uniforms(size)
        q = np.clip(u, _U_FLOOR, _U_CEIL) - 0.5
        vals = spec.mean - spec.scale * np.sign(q) * np.log1p(-2.0 * np.abs(q))
        return self._finish(vals, size)

    def poisson(self, rate: float, size: int | None = None):
        """Poisson draw by CDF inversion (exact for the small rates used here)."""
        if not (isinstance(rate, (int, float)) and math.isfinite(rate)) or rate <= 0.0:
            raise ParameterError(f"poisson requires a finite rate > 0, got {rate}")
        rate = float(rate)
        table = _POISSON_TABLES.get(rate)
        if table is None:
            table = _poisson_cdf_table(rate)
            _POISSON_TABLES[rate] = table
        u = self._uniforms(size)
        vals = np.searchsorted(table, u, side="right").astype(np.int64)
        return int(vals[0]) if size is None else vals

    def bernoulli(self, p: float, size: int | None = None):
        """True with probability p."""
        if not math.isfinite(p) or not (0.0 <= p <= 1.0):
            raise ParameterError(f"bernoulli requires p in [0, 1], got {p}")
        u = self._uniforms(size)
        vals = u < p
        return bool(vals[0]) if size is None else vals

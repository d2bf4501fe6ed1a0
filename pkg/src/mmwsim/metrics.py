"""Singular-value spread of the multiuser channel and empirical CDF utilities."""

import csv
import math
from dataclasses import dataclass

import numpy as np

from .channel import ChannelMatrix
from .errors import DegenerateInputError, ParameterError


@dataclass
class SpreadSample:
    """One sigma_min/sigma_max draw; the ratio is the inverse condition number."""

    ratio: float
    snapshot_index: int
    condition_number: float


@dataclass
class EmpiricalCdf:
    """Right-continuous empirical distribution with a fixed evaluation grid."""

    sorted_samples: np.ndarray
    grid_x: np.ndarray
    grid_f: np.ndarray

    def evaluate(self, x) -> np.ndarray:
        """F(x) = fraction of samples <= x."""
        idx = np.searchsorted(self.sorted_samples, np.asarray(x, dtype=float), side="right")
        return idx / self.sorted_samples.size


@dataclass
class SummaryStats:
    mean: float
    median: float
    p10: float
    p50: float
    p90: float


def singular_spread(matrix, snapshot_index: int = 0) -> SpreadSample:
    """sigma_min/sigma_max of the channel matrix.

    Singular values come from the eigenvalues of the small Gram matrix
    H^H H (user count squared) rather than a full decomposition of the tall
    matrix; the test suite cross-checks this route against a dense SVD.
    Eigenvalues below the numerical-rank cutoff max(shape)*eps*lambda_max
    count as zero, so rank-deficient inputs report a ratio of exactly 0.
    """
    h = matrix.entries if isinstance(matrix, ChannelMatrix) else np.asarray(matrix)
    if h.ndim != 2 or h.size == 0:
        raise ParameterError(f"expected a non-empty 2-D matrix, got shape {h.shape}")
    if h.shape[0] < h.shape[1]:
        raise ParameterError(f"matrix must have at least as many rows as columns, got {h.shape}")
    if not np.all(np.isfinite(h.real)) or not np.all(np.isfinite(h.imag)):
        raise ParameterError("matrix contains non-finite entries")
    gram = h.conj().T @ h
    eigvals = np.linalg.eigvalsh(gram)
    largest = float(eigvals[-1])
    if largest <= 0.0:
        raise DegenerateInputError("zero channel matrix has no singular-value spread")
    smallest = float(eigvals[0])
    if smallest < max(h.shape) * np.finfo(np.float64).eps * largest:
        smallest = 0.0
    ratio = math.sqrt(smallest / largest)
    kappa = math.inf if ratio == 0.0 else 1.0 / ratio
    return SpreadSample(ratio=ratio, snapshot_index=snapshot_index, condition_number=kappa)


def empirical_cdf(samples, grid_points: int = 512) -> EmpiricalCdf:
    """Empirical CDF of the samples on a uniform grid over [min, max]."""
    samples = np.asarray(samples, dtype=float)
    if samples.size == 0:
        raise ParameterError("empirical_cdf needs at least one sample")
    if not np.all(np.isfinite(samples)):
        raise ParameterError("samples must be finite")
    if grid_points < 1:
        raise ParameterError(f"grid_points must be >= 1, got {grid_points}")
    sorted_samples = np.sort(samples)
    if grid_points == 1 or sorted_samples[0] == sorted_samples[-1]:
        grid_x = np.array([sorted_samples[-1]])
    else:
        grid_x = np.linspace(sorted_samples[0], sorted_samples[-1], grid_points)
    grid_f = np.searchsorted(sorted_samples, grid_x, side="right") / sorted_samples.size
    return EmpiricalCdf(sorted_samples=sorted_samples, grid_x=grid_x, grid_f=grid_f)


def _nearest_rank(sorted_samples: np.ndarray, percentile: float) -> float:
    rank = max(1, math.ceil(percentile / 100.0 * sorted_samples.size))
    return float(sorted_samples[rank - 1])


def summarize(samples) -> SummaryStats:
    """Mean and nearest-rank order statistics of a sample set."""
    samples = np.asarray(samples, dtype=float)
    if samples.size == 0:
        raise ParameterError("summarize needs at least one sample")
    sorted_samples = np.sort(samples)
    p50 = _nearest_rank(sorted_samples, 50.0)
    return SummaryStats(
        mean=float(samples.mean()),
        median=p50,
        p10=_nearest_rank(sorted_samples, 10.0),
        p50=p50,
        p90=_nearest_rank(sorted_samples, 90.0),
    )


def write_cdf_csv(path, cdf: EmpiricalCdf) -> None:
    """Write the CDF grid as CSV with header ``x,F``."""
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["x", "F"])
        for x, f in zip(cdf.grid_x, cdf.grid_f):
            writer.writerow([f"{x:.17g}", f"{f:.17g}"])


def read_cdf_csv(path) -> tuple[np.ndarray, np.ndarray]:
    """Read back a CDF written by :func:`write_cdf_csv`."""
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader)
        if header != ["x", "F"]:
            raise ParameterError(f"unexpected CDF header {header} in {path}")
        rows = [(float(x), float(f)) for x, f in reader]
    xs = np.array([r[0] for r in rows])
    fs = np.array([r[1] for r in rows])
    return xs, fs

import math

import numpy as np
import pytest

from mmwsim import (
    ChannelMatrix,
    DegenerateInputError,
    ParameterError,
    RandomStream,
    empirical_cdf,
    read_cdf_csv,
    singular_spread,
    summarize,
    write_cdf_csv,
)


def _random_complex(seed, rows, cols):
    stream = RandomStream(seed)
    re = stream.normal(0.0, 1.0, size=rows * cols).reshape(rows, cols)
    im = stream.normal(0.0, 1.0, size=rows * cols).reshape(rows, cols)
    return re + 1j * im


class TestSingularSpread:
    def test_identity_has_unit_ratio(self):
        sample = singular_spread(np.eye(2, dtype=complex))
        assert sample.ratio == 1.0
        assert sample.condition_number == 1.0

    def test_duplicate_columns_collapse_ratio(self):
        col = _random_complex(1, 12, 1)
        sample = singular_spread(np.hstack([col, col]))
        assert sample.ratio <= 1e-12

    def test_embedded_diagonal(self):
        h = np.zeros((4, 2), dtype=complex)
        h[0, 0] = 2.0
        h[1, 1] = 1.0
        assert singular_spread(h).ratio == pytest.approx(0.5, abs=1e-12)

    def test_matches_svd_oracle_small(self):
        h = _random_complex(3, 8, 2)
        s = np.linalg.svd(h, compute_uv=False)
        assert singular_spread(h).ratio == pytest.approx(s[-1] / s[0], rel=1e-10)

    def test_accepts_channel_matrix(self):
        h = _random_complex(5, 8, 3)
        wrapped = ChannelMatrix(entries=h, n_bs=8, n_users=3)
        assert singular_spread(wrapped).ratio == singular_spread(h).ratio

    def test_snapshot_index_recorded(self):
        assert singular_spread(np.eye(3), snapshot_index=17).snapshot_index == 17

    def test_ratio_condition_number_consistency(self):
        for seed in range(5):
            sample = singular_spread(_random_complex(seed, 10, 4))
            assert sample.ratio * sample.condition_number == pytest.approx(1.0, rel=1e-12)
        degenerate = singular_spread(np.hstack([_random_complex(9, 6, 1)] * 2))
        if degenerate.ratio == 0.0:
            assert math.isinf(degenerate.condition_number)

    def test_input_validation(self):
        with pytest.raises(DegenerateInputError):
            singular_spread(np.zeros((4, 2), dtype=complex))
        with pytest.raises(ParameterError):
            singular_spread(np.ones((2, 4), dtype=complex))
        with pytest.raises(ParameterError):
            singular_spread(np.array([[np.nan, 1.0], [0.0, 1.0]]))
        with pytest.raises(ParameterError):
            singular_spread(np.zeros((0, 0)))

    @pytest.mark.invariant
    def test_scale_invariance(self):
        h = _random_complex(11, 20, 5)
        base = singular_spread(h).ratio
        for c in (2.0, -3.5, 1e-6, 0.3 - 4.0j):
            assert abs(singular_spread(c * h).ratio - base) <= 1e-12

    @pytest.mark.invariant
    def test_unitary_invariance(self):
        h = _random_complex(13, 20, 5)
        base = singular_spread(h).ratio
        q, _ = np.linalg.qr(_random_complex(17, 20, 20))
        assert abs(singular_spread(q @ h).ratio - base) <= 1e-10

    @pytest.mark.invariant
    def test_ratio_bounds_on_random_batch(self):
        for seed in range(200):
            sample = singular_spread(_random_complex(seed, 12, 6))
            assert 0.0 <= sample.ratio <= 1.0

    @pytest.mark.invariant
    def test_appending_duplicate_column_zeroes_ratio(self):
        h = _random_complex(19, 10, 3)
        extended = np.hstack([h, h[:, :1]])
        assert singular_spread(extended).ratio <= 1e-12


class TestEmpiricalCdf:
    def test_single_sample_step(self):
        cdf = empirical_cdf([0.5])
        assert cdf.evaluate(0.49) == 0.0
        assert cdf.evaluate(0.5) == 1.0
        assert cdf.evaluate(0.51) == 1.0

    def test_counting_definition(self):
        cdf = empirical_cdf([0.1, 0.2, 0.3])
        assert cdf.evaluate(0.2) == pytest.approx(2.0 / 3.0)
        assert cdf.evaluate(0.05) == 0.0
        assert cdf.evaluate(0.3) == 1.0

    def test_grid_properties(self):
        samples = RandomStream(23).uniform(0.0, 1.0, size=1000)
        cdf = empirical_cdf(samples, grid_points=512)
        assert cdf.grid_x.size == 512
        assert cdf.grid_x[0] == samples.min()
        assert cdf.grid_x[-1] == samples.max()
        assert np.all(np.diff(cdf.grid_f) >= 0.0)
        assert cdf.grid_f[-1] == 1.0

    def test_validation(self):
        with pytest.raises(ParameterError):
            empirical_cdf([])
        with pytest.raises(ParameterError):
            empirical_cdf([np.inf])
        with pytest.raises(ParameterError):
            empirical_cdf([1.0], grid_points=0)

    @pytest.mark.invariant
    def test_dkw_bound_against_uniform(self):
        n = 100_000
        samples = RandomStream(29).uniform(0.0, 1.0, size=n)
        cdf = empirical_cdf(samples)
        sorted_s = cdf.sorted_samples
        ranks = np.arange(1, n + 1) / n
        sup = max(np.max(np.abs(ranks - sorted_s)), np.max(np.abs(ranks - 1.0 / n - sorted_s)))
        assert sup < 0.006


class TestSummarize:
    def test_small_examples(self):
        s = summarize([1.0, 2.0, 3.0])
        assert s.median == 2.0
        assert s.mean == pytest.approx(2.0)
        # nearest rank keeps an actual sample for even counts
        assert summarize([1.0, 2.0, 3.0, 4.0]).p50 == 2.0

    def test_constant_samples(self):
        s = summarize([7.5] * 10)
        assert s.mean == s.median == s.p10 == s.p50 == s.p90 == 7.5

    def test_percentile_ranks(self):
        s = summarize(list(range(1, 101)))
        assert s.p10 == 10.0
        assert s.p50 == 50.0
        assert s.p90 == 90.0

    def test_gaussian_median(self):
        s = summarize(RandomStream(31).normal(0.0, 1.0, size=100_000))
        assert abs(s.median) < 0.01

    def test_empty_rejected(self):
        with pytest.raises(ParameterError):
            summarize([])


class TestCdfCsv:
    def test_roundtrip_exact(self, tmp_path):
        samples = RandomStream(37).uniform(0.0, 1.0, size=200)
        cdf = empirical_cdf(samples, grid_points=64)
        path = tmp_path / "cdf.csv"
        write_cdf_csv(path, cdf)
        xs, fs = read_cdf_csv(path)
        assert np.array_equal(xs, cdf.grid_x)
        assert np.array_equal(fs, cdf.grid_f)
        assert path.read_text().split("\n")[0] == "x,F"

    def test_read_rejects_wrong_header(self, tmp_path):
        path = tmp_path / "bad.csv"
        path.write_text("a,b\n1,2\n")
        with pytest.raises(ParameterError):
            read_cdf_csv(path)

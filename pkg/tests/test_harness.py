import json
import math
from dataclasses import replace

import numpy as np
import pytest

from mmwsim import (
    ConfigError,
    DegenerateInputError,
    PathLossParams,
    RandomStream,
    RunResult,
    ScenarioConfig,
    default_path_loss,
    emit_outputs,
    override_config,
    preset,
    read_cdf_csv,
    run_experiment,
)

CARRIER = 73e9


def _config(**overrides):
    base = dict(scenario="shopping_mall", upa_rows=5, upa_cols=8,
                antenna_spacing_wavelengths=0.5, n_users=3, snapshots=50, seed=11)
    base.update(overrides)
    return ScenarioConfig(**base)


class TestScenarioConfig:
    def test_defaults_match_stock_scene(self):
        cfg = _config()
        assert cfg.carrier_frequency == 73e9
        assert cfg.h_bs == 7.0
        assert cfg.h_user == 1.68
        assert cfg.ring_center_distance == 20.0
        assert cfg.ring_radius == 5.0
        assert cfg.cluster_rate == 1.9
        assert cfg.n_bs == 40

    def test_validation(self):
        with pytest.raises(ConfigError):
            _config(scenario="office")
        with pytest.raises(ConfigError):
            _config(upa_rows=0)
        with pytest.raises(ConfigError):
            _config(n_users=0)
        with pytest.raises(ConfigError):
            _config(snapshots=0)
        with pytest.raises(ConfigError):
            _config(ring_radius=25.0)
        with pytest.raises(ConfigError):
            _config(cluster_rate=0.0)
        with pytest.raises(ConfigError):
            _config(antenna_spacing_wavelengths=0.0)

    def test_path_loss_defaults_per_scenario(self):
        mall = default_path_loss("shopping_mall")
        square = default_path_loss("open_square")
        assert mall.carrier_frequency == 73e9
        assert mall.path_loss_exponent > 0
        assert square.shadow_std >= 0
        with pytest.raises(ConfigError):
            default_path_loss("office")

    def test_path_loss_carrier_mismatch_rejected(self):
        pl = PathLossParams(2.0, 0.0, 60e9, 3.0, carrier_frequency=60e9)
        with pytest.raises(ConfigError):
            _config(path_loss=pl)

    def test_dict_roundtrip(self):
        cfg = _config(label="roundtrip")
        again = ScenarioConfig.from_dict(cfg.to_dict())
        assert again == cfg
        assert again.config_hash() == cfg.config_hash()

    def test_from_dict_rejects_unknown_and_missing_keys(self):
        good = _config().to_dict()
        bad = dict(good)
        bad["antena_rows"] = 3
        with pytest.raises(ConfigError):
            ScenarioConfig.from_dict(bad)
        incomplete = {k: v for k, v in good.items() if k != "seed"}
        with pytest.raises(ConfigError):
            ScenarioConfig.from_dict(incomplete)
        bad_pl = dict(good)
        bad_pl["path_loss"] = {"path_loss_exponent": 2.0}
        with pytest.raises(ConfigError):
            ScenarioConfig.from_dict(bad_pl)

    def test_from_file(self, tmp_path):
        cfg = _config()
        path = tmp_path / "cfg.json"
        path.write_text(json.dumps(cfg.to_dict()))
        assert ScenarioConfig.from_file(path) == cfg
        with pytest.raises(ConfigError):
            ScenarioConfig.from_file(tmp_path / "missing.json")
        broken = tmp_path / "broken.json"
        broken.write_text("{not json")
        with pytest.raises(ConfigError):
            ScenarioConfig.from_file(broken)

    def test_hash_tracks_content(self):
        assert _config().config_hash() == _config().config_hash()
        assert _config(seed=12).config_hash() != _config(seed=11).config_hash()

    def test_override_config(self):
        cfg = _config()
        out = override_config(cfg, seed=99, snapshots=7, cluster_rate=0.9)
        assert (out.seed, out.snapshots, out.cluster_rate) == (99, 7, 0.9)
        assert override_config(cfg) is cfg


class TestPresets:
    def test_fig3_grid(self):
        configs = preset("fig3_scenarios")
        assert len(configs) == 6
        assert {c.scenario for c in configs} == {"open_square", "shopping_mall"}
        assert all(c.upa_rows == 20 and c.upa_cols == 8 for c in configs)
        assert all(c.antenna_spacing_wavelengths == 0.5 for c in configs)
        assert sorted({c.n_users for c in configs}) == [2, 5, 10]

    def test_fig4_grid(self):
        configs = preset("fig4_ied")
        assert len(configs) == 9
        assert {c.antenna_spacing_wavelengths for c in configs} == {0.5, 4.0, 6.0}
        assert all(c.scenario == "shopping_mall" for c in configs)
        assert all(c.upa_rows == 5 and c.upa_cols == 8 for c in configs)

    def test_fig5_grid(self):
        configs = preset("fig5_array")
        assert len(configs) == 12
        assert sorted({c.upa_rows for c in configs}) == [5, 10, 15, 20]
        assert all(c.upa_cols == 8 for c in configs)
        assert all(c.antenna_spacing_wavelengths == 0.5 for c in configs)
        assert all(c.scenario == "shopping_mall" for c in configs)

    def test_labels_unique(self):
        for name in ("fig3_scenarios", "fig4_ied", "fig5_array"):
            labels = [c.label for c in preset(name)]
            assert len(labels) == len(set(labels))

    def test_unknown_preset(self):
        with pytest.raises(ConfigError):
            preset("fig6_unknown")


class TestRunExperiment:
    def test_deterministic_and_complete(self):
        cfg = _config(snapshots=120)
        a = run_experiment(cfg)
        b = run_experiment(cfg)
        assert a.ratios == b.ratios
        assert len(a.samples) + a.degenerate_count == cfg.snapshots
        assert [s.snapshot_index for s in a.samples] == sorted(s.snapshot_index for s in a.samples)
        assert all(0.0 <= r <= 1.0 for r in a.ratios)
        assert a.summary is not None and a.cdf is not None

    def test_seed_changes_results(self):
        a = run_experiment(_config(seed=1))
        b = run_experiment(_config(seed=2))
        assert a.ratios != b.ratios

    def test_matches_straight_line_reimplementation(self):
        # independent pipeline: same derived streams and documented draw order,
        # everything else evaluated from the closed-form definitions, spread
        # via a dense SVD
        cfg = _config(n_users=2, snapshots=1, seed=20260809)
        got = run_experiment(cfg).ratios[0]

        pl = cfg.path_loss
        lam = 2.998e8 / cfg.carrier_frequency
        spacing = 0.5 * lam
        k = 2.0 * math.pi / lam * spacing
        bracket = 1.0 + pl.system_param_b * (cfg.carrier_frequency / pl.reference_frequency - 1.0)
        first_term = -20.0 * math.log10(4.0 * math.pi / lam)

        def loss_db(r, shadow):
            return first_term - 10.0 * pl.path_loss_exponent * bracket * np.log10(r) - shadow

        def steer_conj(az, el):
            out = np.empty(cfg.n_bs, dtype=complex)
            for row in range(cfg.upa_rows):
                for col in range(cfg.upa_cols):
                    phase = k * (col * np.sin(az) * np.cos(el) + row * np.sin(el))
                    out[row * cfg.upa_cols + col] = np.exp(-1j * phase)
            return out

        columns = []
        master = RandomStream(cfg.seed)
        for user in range(cfg.n_users):
            st = master.derive("snapshot", 0, "user", user)
            r = cfg.ring_radius * math.sqrt(st.uniform(0.0, 1.0))
            phi = st.uniform(0.0, 2.0 * math.pi)
            x = cfg.ring_center_distance + r * math.cos(phi)
            y = r * math.sin(phi)
            d = math.sqrt(x * x + y * y + (cfg.h_user - cfg.h_bs) ** 2)

            p = math.exp(-(d - 1.2) / 4.7)
            if d > 6.5:
                p *= 0.32
            blocked = st.bernoulli(1.0 - p)
            eta = st.uniform(0.0, 2.0 * math.pi)

            n_cl = max(1, st.poisson(cfg.cluster_rate))
            half_pi = math.pi / 2.0
            aoa_az_c = st.uniform(0.0, 2.0 * math.pi, size=n_cl)
            aod_az_c = st.uniform(-half_pi, half_pi, size=n_cl)
            aoa_el_c = st.uniform(-half_pi, half_pi, size=n_cl)
            aod_el_c = st.uniform(-half_pi, half_pi, size=n_cl)
            detour = st.uniform(1.0, 1.5, size=n_cl)
            shadow = st.normal(0.0, pl.shadow_std, size=n_cl)
            n_rays = st.uniform_int(1, 30, size=n_cl)
            total = int(n_rays.sum())
            rep = np.repeat(np.arange(n_cl), n_rays)
            from mmwsim import LaplacianSpec, RAY_ANGLE_STD
            spread = LaplacianSpec(0.0, RAY_ANGLE_STD)
            aoa_az = aoa_az_c[rep] + st.laplacian(spread, size=total)
            aod_az = (aod_az_c[rep] + st.laplacian(spread, size=total)) % (2 * math.pi)
            aoa_el = aoa_el_c[rep] + st.laplacian(spread, size=total)
            aod_el = np.clip(aod_el_c[rep] + st.laplacian(spread, size=total), -half_pi, half_pi)
            phases = st.uniform(0.0, 2.0 * math.pi, size=total)

            central = d * detour
            r_il = central[rep] + np.sqrt(
                (cfg.h_bs - cfg.h_user + central[rep] * np.sin(aod_az)) ** 2
                + (d - central[rep] * np.cos(aod_az) * np.cos(aod_el)) ** 2
            )
            amps = 10.0 ** (loss_db(r_il, shadow[rep]) / 20.0)
            weights = (1.0 / math.sqrt(total)) * np.exp(1j * phases) * amps

            h = np.zeros(cfg.n_bs, dtype=complex)
            for idx in range(total):
                h += weights[idx] * steer_conj(aod_az[idx], aod_el[idx])
            if not blocked:
                az_los = math.atan2(y, x) % (2.0 * math.pi)
                el_los = math.asin((cfg.h_user - cfg.h_bs) / d)
                h += (math.sqrt(cfg.n_bs) * np.exp(1j * eta)
                      * 10.0 ** (loss_db(d, 0.0) / 20.0) * steer_conj(az_los, el_los))
            columns.append(h)

        matrix = np.column_stack(columns)
        svals = np.linalg.svd(matrix, compute_uv=False)
        assert got == pytest.approx(svals[-1] / svals[0], rel=1e-10)

    @pytest.mark.heavy
    @pytest.mark.invariant
    def test_median_converges_with_snapshots(self):
        cfg = _config(n_users=5, snapshots=10_000, seed=404)
        half = run_experiment(cfg)
        full = run_experiment(replace(cfg, snapshots=20_000))
        ratios = np.sort(half.ratios)
        q45, q55 = np.quantile(ratios, [0.45, 0.55])
        density = 0.1 / max(q55 - q45, 1e-12)
        se = 1.0 / (2.0 * density * math.sqrt(len(ratios)))
        assert abs(full.summary.median - half.summary.median) < 2.0 * se


class TestEmitOutputs:
    def test_files_and_roundtrip(self, tmp_path):
        result = run_experiment(_config(snapshots=80, label="unit"))
        manifest = emit_outputs(result, tmp_path)
        assert (tmp_path / "cdf_unit.csv").exists()
        assert (tmp_path / "summary.json").exists()
        assert (tmp_path / "manifest.json").exists()
        names = [f["name"] for f in manifest["files"]]
        assert names == sorted(names)
        xs, fs = read_cdf_csv(tmp_path / "cdf_unit.csv")
        assert np.array_equal(xs, result.cdf.grid_x)
        assert np.array_equal(fs, result.cdf.grid_f)

    def test_summary_metadata(self, tmp_path):
        cfg = _config(snapshots=30, label="meta")
        emit_outputs(run_experiment(cfg), tmp_path)
        summary = json.loads((tmp_path / "summary.json").read_text())
        run = summary["runs"][0]
        assert run["seed"] == cfg.seed
        assert run["scenario"] == cfg.scenario
        assert run["config_hash"] == cfg.config_hash()
        assert run["samples_used"] + run["degenerate_snapshots"] == cfg.snapshots

    def test_svg_option(self, tmp_path):
        result = run_experiment(_config(snapshots=30))
        emit_outputs(result, tmp_path, emit_svg=True)
        svg = (tmp_path / "figure.svg").read_text()
        assert svg.startswith("<svg")
        assert result.config.label in svg

    def test_identical_runs_identical_manifests(self, tmp_path):
        cfg = _config(snapshots=60, label="twice")
        m1 = emit_outputs(run_experiment(cfg), tmp_path / "a")
        m2 = emit_outputs(run_experiment(cfg), tmp_path / "b")
        assert m1 == m2
        for name in ("cdf_twice.csv", "summary.json", "manifest.json"):
            assert (tmp_path / "a" / name).read_bytes() == (tmp_path / "b" / name).read_bytes()

    def test_refuses_degenerate_run(self, tmp_path):
        cfg = _config(snapshots=5)
        empty = RunResult(config=cfg, samples=[], cdf=None, summary=None,
                          wall_time_s=0.0, degenerate_count=5)
        with pytest.raises(DegenerateInputError):
            emit_outputs(empty, tmp_path)

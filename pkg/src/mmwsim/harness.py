"""Experiment configuration, presets, the Monte Carlo loop and result emission.

A run draws independent channel snapshots. Each snapshot re-places every
user inside the ring, samples its blockage state and scattering clusters
(clusters are never shared between users), assembles the multiuser matrix
and records the singular-value spread. Snapshots whose matrix is all zero
cannot yield a spread; they are counted and excluded, never silently
dropped.

Randomness is organized so results are reproducible bit for bit from
(config, seed): every (snapshot, user) pair gets its own hashed sub-stream,
which also means user draws do not depend on processing order and all
configs of a preset share draws where their parameters coincide (common
random numbers, which stabilizes curve comparisons).
"""

import hashlib
import json
import time
from dataclasses import dataclass, replace
from importlib import resources
from pathlib import Path

from .channel import UserLink, assemble_multiuser_matrix, assemble_user_channel
from .errors import ConfigError, DegenerateInputError
from .geometry import UpaGeometry, bs_position, direct_path_angles, los_distance, place_users
from .metrics import EmpiricalCdf, SpreadSample, SummaryStats, empirical_cdf, singular_spread, summarize, write_cdf_csv
from .propagation import (
    SCENARIOS,
    SPEED_OF_LIGHT,
    PathLossParams,
    sample_los_state,
    synthesize_clusters,
)
from .rng import RandomStream
from .svgfig import render_cdf_svg

DEFAULT_CARRIER_HZ = 73.0e9
DEFAULT_H_BS = 7.0
DEFAULT_H_USER = 1.68
DEFAULT_RING_CENTER = 20.0
DEFAULT_RING_RADIUS = 5.0

# Table-driven default for the cluster-count Poisson rate; the alternative
# 0.9 parameterization of the same clamped-Poisson model is selectable via
# the cluster_rate field / --cluster-rate flag.
DEFAULT_CLUSTER_RATE = 1.9
ALT_CLUSTER_RATE = 0.9

DEFAULT_SNAPSHOTS = 10_000
DEFAULT_SEED = 7301

PRESET_NAMES = ("fig3_scenarios", "fig4_ied", "fig5_array")

_PATH_LOSS_KEYS = ("path_loss_exponent", "system_param_b", "reference_frequency", "shadow_std")


def default_path_loss(scenario: str, carrier_frequency: float = DEFAULT_CARRIER_HZ) -> PathLossParams:
    """Shipped per-scenario path-loss calibration (non-normative defaults)."""
    raw = json.loads(
        resources.files("mmwsim").joinpath("data/pathloss_defaults.json").read_text()
    )
    if scenario not in raw:
        raise ConfigError(f"no path-loss defaults for scenario {scenario!r}")
    entry = raw[scenario]
    return PathLossParams(
        path_loss_exponent=entry["path_loss_exponent"],
        system_param_b=entry["system_param_b"],
        reference_frequency=entry["reference_frequency"],
        shadow_std=entry["shadow_std"],
        carrier_frequency=carrier_frequency,
    )


@dataclass
class ScenarioConfig:
    """Complete description of one Monte Carlo experiment."""

    scenario: str
    upa_rows: int
    upa_cols: int
    antenna_spacing_wavelengths: float
    n_users: int
    snapshots: int
    seed: int
    carrier_frequency: float = DEFAULT_CARRIER_HZ
    h_bs: float = DEFAULT_H_BS
    h_user: float = DEFAULT_H_USER
    ring_center_distance: float = DEFAULT_RING_CENTER
    ring_radius: float = DEFAULT_RING_RADIUS
    cluster_rate: float = DEFAULT_CLUSTER_RATE
    path_loss: PathLossParams | None = None
    label: str = ""

    def __post_init__(self):
        if self.scenario not in SCENARIOS:
            raise ConfigError(f"unknown scenario {self.scenario!r}; expected one of {SCENARIOS}")
        if self.upa_rows < 1 or self.upa_cols < 1:
            raise ConfigError(f"array dimensions must be >= 1, got {self.upa_rows}x{self.upa_cols}")
        if self.antenna_spacing_wavelengths <= 0.0:
            raise ConfigError("antenna_spacing_wavelengths must be > 0")
        if self.n_users < 1:
            raise ConfigError(f"n_users must be >= 1, got {self.n_users}")
        if self.snapshots < 1:
            raise ConfigError(f"snapshots must be >= 1, got {self.snapshots}")
        if self.carrier_frequency <= 0.0:
            raise ConfigError("carrier_frequency must be > 0")
        if self.h_bs <= 0.0 or self.h_user <= 0.0:
            raise ConfigError("antenna heights must be > 0")
        if self.ring_radius < 0.0 or self.ring_radius >= self.ring_center_distance:
            raise ConfigError(
                f"ring_radius {self.ring_radius} must be in [0, ring_center_distance "
                f"{self.ring_center_distance})"
            )
        if self.cluster_rate <= 0.0:
            raise ConfigError(f"cluster_rate must be > 0, got {self.cluster_rate}")
        if self.path_loss is None:
            self.path_loss = default_path_loss(self.scenario, self.carrier_frequency)
        elif self.path_loss.carrier_frequency != self.carrier_frequency:
            raise ConfigError(
                "path_loss.carrier_frequency must match the scenario carrier frequency"
            )
        if not self.label:
            self.label = (
                f"{self.scenario}_{self.upa_rows}x{self.upa_cols}"
                f"_da{self.antenna_spacing_wavelengths:g}_nu{self.n_users}"
            )

    @property
    def wavelength(self) -> float:
        return SPEED_OF_LIGHT / self.carrier_frequency

    @property
    def n_bs(self) -> int:
        return self.upa_rows * self.upa_cols

    def to_dict(self) -> dict:
        return {
            "scenario": self.scenario,
            "upa_rows": self.upa_rows,
            "upa_cols": self.upa_cols,
            "antenna_spacing_wavelengths": self.antenna_spacing_wavelengths,
            "n_users": self.n_users,
            "snapshots": self.snapshots,
            "seed": self.seed,
            "carrier_frequency": self.carrier_frequency,
            "h_bs": self.h_bs,
            "h_user": self.h_user,
            "ring_center_distance": self.ring_center_distance,
            "ring_radius": self.ring_radius,
            "cluster_rate": self.cluster_rate,
            "path_loss": {
                "path_loss_exponent": self.path_loss.path_loss_exponent,
                "system_param_b": self.path_loss.system_param_b,
                "reference_frequency": self.path_loss.reference_frequency,
                "shadow_std": self.path_loss.shadow_std,
            },
            "label": self.label,
        }

    @classmethod
    def from_dict(cls, raw: dict) -> "ScenarioConfig":
        if not isinstance(raw, dict):
            raise ConfigError(f"config must be a mapping, got {type(raw).__name__}")
        known = {
            "scenario", "upa_rows", "upa_cols", "antenna_spacing_wavelengths",
            "n_users", "snapshots", "seed", "carrier_frequency", "h_bs", "h_user",
            "ring_center_distance", "ring_radius", "cluster_rate", "path_loss", "label",
        }
        unknown = set(raw) - known
        if unknown:
            raise ConfigError(f"unknown config keys: {sorted(unknown)}")
        missing = {"scenario", "upa_rows", "upa_cols", "antenna_spacing_wavelengths",
                   "n_users", "snapshots", "seed"} - set(raw)
        if missing:
            raise ConfigError(f"missing required config keys: {sorted(missing)}")
        kwargs = dict(raw)
        pl = kwargs.pop("path_loss", None)
        if pl is not None:
            if not isinstance(pl, dict):
                raise ConfigError("path_loss must be a mapping")
            unknown_pl = set(pl) - set(_PATH_LOSS_KEYS)
            if unknown_pl:
                raise ConfigError(f"unknown path_loss keys: {sorted(unknown_pl)}")
            missing_pl = set(_PATH_LOSS_KEYS) - set(pl)
            if missing_pl:
                raise ConfigError(f"missing path_loss keys: {sorted(missing_pl)}")
            kwargs["path_loss"] = PathLossParams(
                carrier_frequency=raw.get("carrier_frequency", DEFAULT_CARRIER_HZ), **pl
            )
        try:
            return cls(**kwargs)
        except TypeError as exc:
            raise ConfigError(str(exc)) from exc

    @classmethod
    def from_file(cls, path) -> "ScenarioConfig":
        path = Path(path)
        try:
            raw = json.loads(path.read_text())
        except OSError as exc:
            raise ConfigError(f"cannot read config {path}: {exc}") from exc
        except json.JSONDecodeError as exc:
            raise ConfigError(f"config {path} is not valid JSON: {exc}") from exc
        return cls.from_dict(raw)

    def config_hash(self) -> str:
        canon = json.dumps(self.to_dict(), sort_keys=True, separators=(",", ":"))
        return hashlib.sha256(canon.encode("utf-8")).hexdigest()


@dataclass
class RunResult:
    """Everything produced by one experiment run."""

    config: ScenarioConfig
    samples: list[SpreadSample]
    cdf: EmpiricalCdf | None
    summary: SummaryStats | None
    wall_time_s: float
    degenerate_count: int = 0

    @property
    def ratios(self) -> list[float]:
        return [s.ratio for s in self.samples]


def run_experiment(config: ScenarioConfig) -> RunResult:
    """Run the full Monte Carlo loop for one configuration."""
    t0 = time.perf_counter()
    wavelength = config.wavelength
    geom = UpaGeometry(
        rows=config.upa_rows,
        cols=config.upa_cols,
        spacing=config.antenna_spacing_wavelengths * wavelength,
        carrier_wavelength=wavelength,
    )
    bs = bs_position(config.h_bs)
    master = RandomStream(config.seed)

    samples: list[SpreadSample] = []
    degenerate = 0
    for snap in range(config.snapshots):
        links = []
        for user in range(config.n_users):
            ustream = master.derive("snapshot", snap, "user", user)
            pos = place_users(
                ustream, 1, config.ring_center_distance, config.ring_radius, config.h_user
            )[0]
            distance = los_distance(bs, pos)
            los = sample_los_state(ustream, config.scenario, distance)
            clusters = synthesize_clusters(
                ustream, config.path_loss, config.cluster_rate,
                config.h_bs, config.h_user, distance,
            )
            h = assemble_user_channel(
                geom, clusters, los, config.path_loss, direct_path_angles(bs, pos)
            )
            links.append(UserLink(position=pos, los=los, clusters=clusters, channel=h))
        matrix = assemble_multiuser_matrix(links)
        try:
            samples.append(singular_spread(matrix, snapshot_index=snap))
        except DegenerateInputError:
            degenerate += 1

    ratios = [s.ratio for s in samples]
    return RunResult(
        config=config,
        samples=samples,
        cdf=empirical_cdf(ratios) if ratios else None,
        summary=summarize(ratios) if ratios else None,
        wall_time_s=time.perf_counter() - t0,
        degenerate_count=degenerate,
    )


def preset(
    name: str,
    seed: int = DEFAULT_SEED,
    snapshots: int = DEFAULT_SNAPSHOTS,
    cluster_rate: float = DEFAULT_CLUSTER_RATE,
) -> list[ScenarioConfig]:
    """Parameter grid of one of the three stock experiments.

    fig3_scenarios: open square vs shopping mall, 20x8 array at half-wave
    spacing. fig4_ied: element spacings 0.5/4/6 wavelengths on a 5x8 array
    in the shopping mall. fig5_array: 5x8 up to 20x8 arrays at half-wave
    spacing in the shopping mall. Every grid sweeps 2/5/10 users and all
    configs share the same seed, so parameter comparisons use common random
    numbers.
    """
    user_grid = (2, 5, 10)
    common = dict(seed=seed, snapshots=snapshots, cluster_rate=cluster_rate)
    if name == "fig3_scenarios":
        return [
            ScenarioConfig(
                scenario=scenario, upa_rows=20, upa_cols=8,
                antenna_spacing_wavelengths=0.5, n_users=n,
                label=f"fig3_{scenario}_nu{n}", **common,
            )
            for scenario in ("open_square", "shopping_mall")
            for n in user_grid
        ]
    if name == "fig4_ied":
        return [
            ScenarioConfig(
                scenario="shopping_mall", upa_rows=5, upa_cols=8,
                antenna_spacing_wavelengths=spacing, n_users=n,
                label=f"fig4_da{spacing:g}_nu{n}", **common,
            )
            for spacing in (0.5, 4.0, 6.0)
            for n in user_grid
        ]
    if name == "fig5_array":
        return [
            ScenarioConfig(
                scenario="shopping_mall", upa_rows=rows, upa_cols=8,
                antenna_spacing_wavelengths=0.5, n_users=n,
                label=f"fig5_{rows}x8_nu{n}", **common,
            )
            for rows in (5, 10, 15, 20)
            for n in user_grid
        ]
    raise ConfigError(f"unknown preset {name!r}; expected one of {PRESET_NAMES}")


def override_config(
    config: ScenarioConfig,
    seed: int | None = None,
    snapshots: int | None = None,
    cluster_rate: float | None = None,
) -> ScenarioConfig:
    """Copy a config with CLI-level overrides applied."""
    changes = {}
    if seed is not None:
        changes["seed"] = seed
    if snapshots is not None:
        changes["snapshots"] = snapshots
    if cluster_rate is not None:
        changes["cluster_rate"] = cluster_rate
    return replace(config, **changes) if changes else config


def _sha256_file(path: Path) -> str:
    return hashlib.sha256(path.read_bytes()).hexdigest()


def emit_outputs(results, out_dir, emit_svg: bool = False) -> dict:
    """Write CDF CSVs, summary.json, optional figure.svg and a hash manifest.

    Refuses to emit when any run produced no usable samples; a fully
    degenerate run has no distribution to report.
    """
    if isinstance(results, RunResult):
        results = [results]
    if not results:
        raise DegenerateInputError("no results to emit")
    for res in results:
        if not res.samples or res.cdf is None:
            raise DegenerateInputError(
                f"run {res.config.label!r} is degenerate: "
                f"{res.degenerate_count} of {res.config.snapshots} snapshots excluded, "
                "no samples left to report"
            )

    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    written: list[Path] = []

    for res in results:
        cdf_path = out / f"cdf_{res.config.label}.csv"
        write_cdf_csv(cdf_path, res.cdf)
        written.append(cdf_path)

    summary = {
        "generator": "mmwsim",
        "runs": [
            {
                "label": res.config.label,
                "scenario": res.config.scenario,
                "seed": res.config.seed,
                "config_hash": res.config.config_hash(),
                "snapshots": res.config.snapshots,
                "degenerate_snapshots": res.degenerate_count,
                "samples_used": len(res.samples),
                "summary": {
                    "mean": res.summary.mean,
                    "median": res.summary.median,
                    "p10": res.summary.p10,
                    "p50": res.summary.p50,
                    "p90": res.summary.p90,
                },
                "config": res.config.to_dict(),
            }
            for res in results
        ],
    }
    summary_path = out / "summary.json"
    summary_path.write_text(json.dumps(summary, indent=2, sort_keys=True) + "\n")
    written.append(summary_path)

    if emit_svg:
        curves = [
            (res.config.label, res.cdf.grid_x.tolist(), res.cdf.grid_f.tolist())
            for res in results
        ]
        svg_path = out / "figure.svg"
        svg_path.write_text(render_cdf_svg(curves, title="CDF of singular-value spread"))
        written.append(svg_path)

    manifest = {
        "files": sorted(
            (
                {"name": p.name, "sha256": _sha256_file(p), "bytes": p.stat().st_size}
                for p in written
            ),
            key=lambda item: item["name"],
        )
    }
    (out / "manifest.json").write_text(json.dumps(manifest, indent=2, sort_keys=True) + "\n")
    return manifest

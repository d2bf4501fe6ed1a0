"""Statistical 73 GHz multiuser MIMO channel simulator.

Generates Monte Carlo channel realizations under scenario-dependent
line-of-sight blockage (open square vs shopping mall) and quantifies how
spatially orthogonal the users are via the singular-value spread
sigma_min/sigma_max of the stacked channel matrix.
"""

from .channel import (
    ChannelMatrix,
    UserLink,
    assemble_multiuser_matrix,
    assemble_user_channel,
    dump_channel_matrix,
    load_channel_dump,
)
from .errors import ConfigError, DegenerateInputError, MmwsimError, ParameterError
from .geometry import (
    AngularPair,
    Position3D,
    UpaGeometry,
    bs_position,
    direct_path_angles,
    los_distance,
    place_users,
    steering_matrix,
    steering_vector,
    subpath_distance,
)
from .harness import (
    DEFAULT_CLUSTER_RATE,
    DEFAULT_SEED,
    DEFAULT_SNAPSHOTS,
    PRESET_NAMES,
    RunResult,
    ScenarioConfig,
    default_path_loss,
    emit_outputs,
    override_config,
    preset,
    run_experiment,
)
from .metrics import (
    EmpiricalCdf,
    SpreadSample,
    SummaryStats,
    empirical_cdf,
    read_cdf_csv,
    singular_spread,
    summarize,
    write_cdf_csv,
)
from .propagation import (
    OPEN_SQUARE,
    RAY_ANGLE_STD,
    SCENARIOS,
    SHOPPING_MALL,
    SPEED_OF_LIGHT,
    Cluster,
    LosState,
    PathLossParams,
    Ray,
    db_to_amplitude,
    export_curve_csv,
    los_probability,
    path_loss_db,
    sample_cluster_count,
    sample_los_state,
    synthesize_clusters,
)
from .rng import LaplacianSpec, RandomStream

__version__ = "0.1.0"

__all__ = [
    "AngularPair",
    "ChannelMatrix",
    "Cluster",
    "ConfigError",
    "DEFAULT_CLUSTER_RATE",
    "DEFAULT_SEED",
    "DEFAULT_SNAPSHOTS",
    "DegenerateInputError",
    "EmpiricalCdf",
    "LaplacianSpec",
    "LosState",
    "MmwsimError",
    "OPEN_SQUARE",
    "ParameterError",
    "PathLossParams",
    "PRESET_NAMES",
    "Position3D",
    "RAY_ANGLE_STD",
    "RandomStream",
    "Ray",
    "RunResult",
    "SCENARIOS",
    "SHOPPING_MALL",
    "SPEED_OF_LIGHT",
    "ScenarioConfig",
    "SpreadSample",
    "SummaryStats",
    "UpaGeometry",
    "UserLink",
    "assemble_multiuser_matrix",
    "assemble_user_channel",
    "bs_position",
    "db_to_amplitude",
    "default_path_loss",
    "direct_path_angles",
    "dump_channel_matrix",
    "empirical_cdf",
    "emit_outputs",
    "export_curve_csv",
    "load_channel_dump",
    "los_distance",
    "los_probability",
    "override_config",
    "path_loss_db",
    "place_users",
    "preset",
    "read_cdf_csv",
    "run_experiment",
    "sample_cluster_count",
    "sample_los_state",
    "singular_spread",
    "steering_matrix",
    "steering_vector",
    "subpath_distance",
    "summarize",
    "synthesize_clusters",
    "write_cdf_csv",
]

"""Preferential-attachment multigraphs with exact rational weights, ordered
pattern censuses, split-exponent predictions, local structure checks, and a
bounded-variable pebble game."""

from .census import (
    ExponentReport,
    GrowthDescriptor,
    OrderedPattern,
    all_rare_patterns,
    classify_pattern,
    count_ordered_copies,
    exponent_B,
    predicted_growth,
    relabelings,
)
from .core import (
    ArrivalGraph,
    PrefixSet,
    SimpleView,
    cycles_up_to,
    is_cycle,
    is_path_witness,
    offending_path_exists,
    set_distance,
)
from .experiments import (
    ExperimentConfig,
    FitReport,
    QCheckResult,
    TailReport,
    collect_degree_sample,
    cycle_divergence,
    equal_prefix,
    estimate_maxdeg_exponent,
    estimate_tail_exponent,
    fit_log_growth,
    fit_power_law,
    graph_io_roundtrip,
    mean_series,
    pair_game_record,
    qcheck_frequency,
    run_census_experiment,
    structural_game_harness,
)
from .game import (
    GameConfig,
    GameVerdict,
    ResourceLimitError,
    duplicator_wins,
    duplicator_wins_naive,
    is_partial_iso,
    replay_witness,
)
from .generator import (
    ModelParams,
    WeightTable,
    attachment_weights,
    grow,
    iter_snapshots,
    last_multi_edge_vertex,
    new_initial,
    snapshots,
)
from .io import (
    config_hash,
    load_config_file,
    read_graph,
    read_pattern,
    write_csv,
    write_graph,
    write_json,
    write_pattern,
)
from .structure import (
    StructureParams,
    StructureReport,
    check_all,
    check_q1,
    check_q2,
    check_q3,
    shortest_connecting_path,
)

__version__ = "0.1.0"

__all__ = [
    "ArrivalGraph",
    "ExperimentConfig",
    "ExponentReport",
    "FitReport",
    "GameConfig",
    "GameVerdict",
    "GrowthDescriptor",
    "ModelParams",
    "OrderedPattern",
    "PrefixSet",
    "QCheckResult",
    "ResourceLimitError",
    "SimpleView",
    "StructureParams",
    "StructureReport",
    "TailReport",
    "WeightTable",
    "all_rare_patterns",
    "attachment_weights",
    "check_all",
    "check_q1",
    "check_q2",
    "check_q3",
    "classify_pattern",
    "collect_degree_sample",
    "config_hash",
    "count_ordered_copies",
    "cycle_divergence",
    "cycles_up_to",
    "duplicator_wins",
    "duplicator_wins_naive",
    "equal_prefix",
    "estimate_maxdeg_exponent",
    "estimate_tail_exponent",
    "exponent_B",
    "fit_log_growth",
    "fit_power_law",
    "graph_io_roundtrip",
    "grow",
    "is_cycle",
    "is_partial_iso",
    "is_path_witness",
    "iter_snapshots",
    "last_multi_edge_vertex",
    "load_config_file",
    "mean_series",
    "new_initial",
    "offending_path_exists",
    "pair_game_record",
    "predicted_growth",
    "qcheck_frequency",
    "read_graph",
    "read_pattern",
    "relabelings",
    "replay_witness",
    "run_census_experiment",
    "set_distance",
    "shortest_connecting_path",
    "snapshots",
    "structural_game_harness",
    "write_csv",
    "write_graph",
    "write_json",
    "write_pattern",
]

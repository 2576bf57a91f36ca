"""Adaptive behavior-tree selectors: runtime, reordering policies, scenarios."""

from .core import (
    ActionLeaf,
    BTNode,
    ConfigurationError,
    NodeStats,
    RepeatUntilSuccess,
    Selector,
    Sequence,
    Status,
    UNTRAINED_P,
    iter_leaves,
    reset_stats,
    selector_success_prob,
    sequence_success_prob,
    tick,
)
from .policies import (
    ALL_TABLE_POLICIES,
    S0,
    S1,
    S2,
    S2G,
    S3,
    S4,
    S5,
    SelectorPolicy,
    UtilityMode,
    parse_policy,
    rank_children,
    utility,
)
from .scenarios import (
    DEFAULT_COSTS,
    FireScenario,
    FireScenarioConfig,
    PhysicsMatrix,
    TerrainScenarioConfig,
    Track,
    TrialResult,
    asymmetric_walking_physics,
    build_default_track,
    build_fire_walk_track,
    build_walking_selector,
    default_fire_physics,
    default_walking_physics,
    expected_ticks_per_step,
    run_fire_trial,
    run_terrain_trial,
    single_terrain_track,
    step_attempt,
)
from .harness import (
    ExperimentReport,
    ExperimentSpec,
    SummaryMetrics,
    aggregate_metrics,
    compare_policies,
    run_experiment,
    run_policy_trials,
    trial_generator,
)
from .config import RunConfig, default_config, dump_config, load_config, parse_config
from .report import emit_csv, emit_plot, format_table, render_curve_svg

__version__ = "0.1.0"

__all__ = [
    "ActionLeaf",
    "ALL_TABLE_POLICIES",
    "BTNode",
    "ConfigurationError",
    "DEFAULT_COSTS",
    "ExperimentReport",
    "ExperimentSpec",
    "FireScenario",
    "FireScenarioConfig",
    "NodeStats",
    "PhysicsMatrix",
    "RepeatUntilSuccess",
    "RunConfig",
    "S0",
    "S1",
    "S2",
    "S2G",
    "S3",
    "S4",
    "S5",
    "Selector",
    "SelectorPolicy",
    "Sequence",
    "Status",
    "SummaryMetrics",
    "TerrainScenarioConfig",
    "Track",
    "TrialResult",
    "UNTRAINED_P",
    "UtilityMode",
    "aggregate_metrics",
    "asymmetric_walking_physics",
    "build_default_track",
    "build_fire_walk_track",
    "build_walking_selector",
    "compare_policies",
    "default_config",
    "default_fire_physics",
    "default_walking_physics",
    "dump_config",
    "emit_csv",
    "emit_plot",
    "expected_ticks_per_step",
    "format_table",
    "iter_leaves",
    "load_config",
    "parse_config",
    "parse_policy",
    "rank_children",
    "render_curve_svg",
    "reset_stats",
    "run_experiment",
    "run_fire_trial",
    "run_policy_trials",
    "run_terrain_trial",
    "selector_success_prob",
    "sequence_success_prob",
    "single_terrain_track",
    "step_attempt",
    "tick",
    "trial_generator",
    "utility",
]

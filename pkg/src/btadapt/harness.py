"""Experiment harness: seeded trial loops and cross-policy comparisons.

Every trial draws from its own generator derived from (base seed, trial
index, policy key), so runs are reproducible, trials are independent, and
adding or reordering policies in an experiment never perturbs another
policy's random stream. The stream deliberately ignores the utility mode
and the cost vector: reruns that change only those see identical events.
"""
from __future__ import annotations

import zlib
from dataclasses import dataclass, field, replace

import numpy as np

from .core import ConfigurationError
from .policies import SelectorPolicy
from .scenarios import (
    FireScenario,
    FireScenarioConfig,
    TerrainScenarioConfig,
    TrialResult,
    build_walking_selector,
    run_terrain_trial,
)

__all__ = [
    "trial_generator",
    "ExperimentSpec",
    "SummaryMetrics",
    "ExperimentReport",
    "aggregate_metrics",
    "run_policy_trials",
    "run_experiment",
    "compare_policies",
]

ScenarioConfig = "TerrainScenarioConfig | FireScenarioConfig"


def trial_generator(seed: int, trial_index: int, policy: SelectorPolicy) -> np.random.Generator:
    """Independent generator for one (seed, trial, policy) cell."""
    code = zlib.crc32(policy.key.encode("ascii"))
    return np.random.default_rng(np.random.SeedSequence((seed, trial_index, code)))


@dataclass(frozen=True)
class ExperimentSpec:
    """One scenario swept over a non-empty list of policies."""

    scenario: TerrainScenarioConfig | FireScenarioConfig
    policies: tuple[SelectorPolicy, ...]
    label: str = ""

    def __post_init__(self) -> None:
        if not self.policies:
            raise ConfigurationError("experiment needs at least one policy")


@dataclass
class SummaryMetrics:
    """Aggregates over one policy's trials.

    ``avg_utility_per_tick`` is a ratio of sums (total utility over total
    leaf ticks), not a mean of per-trial ratios; the curve is the mean leaf
    ticks at each track step and is empty for fire missions.
    """

    avg_ticks: float
    avg_cost: float
    avg_utility_per_tick: float
    ticks_per_step_curve: np.ndarray
    n_trials: int
    walk_trials: int = 0
    fly_trials: int = 0
    fail_trials: int = 0


def aggregate_metrics(results: list[TrialResult]) -> SummaryMetrics:
    if not results:
        raise ConfigurationError("cannot aggregate zero trials")
    total_ticks = sum(t.total_leaf_ticks for t in results)
    total_utility = sum(t.total_utility for t in results)
    if results[0].ticks_per_step:
        curve = np.mean([t.ticks_per_step for t in results], axis=0)
    else:
        curve = np.empty(0)
    return SummaryMetrics(
        avg_ticks=total_ticks / len(results),
        avg_cost=float(np.mean([t.total_cost for t in results])),
        avg_utility_per_tick=total_utility / total_ticks,
        ticks_per_step_curve=curve,
        n_trials=len(results),
        walk_trials=sum(t.walked for t in results),
        fly_trials=sum(t.flew for t in results),
        fail_trials=sum(t.mission_failed for t in results),
    )


def run_policy_trials(
    scenario: TerrainScenarioConfig | FireScenarioConfig,
    policy: SelectorPolicy,
) -> list[TrialResult]:
    """All trials of one (scenario, policy) cell.

    Walking trials are independent (learning resets per trial unless the
    config says otherwise); fire missions share one tree so that what the
    selectors learned on mission k is still there on mission k + 1.
    """
    config = replace(scenario, policy=policy)
    results: list[TrialResult] = []
    if isinstance(config, TerrainScenarioConfig):
        tree = build_walking_selector(config)
        for trial in range(config.trials):
            rng = trial_generator(config.seed, trial, policy)
            results.append(run_terrain_trial(config, trial, rng, tree=tree))
    elif isinstance(config, FireScenarioConfig):
        shared = FireScenario(config)
        for trial in range(config.trials):
            rng = trial_generator(config.seed, trial, policy)
            results.append(shared.run_trial(trial, rng))
    else:
        raise TypeError(f"unsupported scenario type: {type(config).__name__}")
    return results


def run_experiment(spec: ExperimentSpec) -> list[tuple[SelectorPolicy, SummaryMetrics]]:
    """Run every policy of the spec and aggregate each one's trials."""
    return [
        (policy, aggregate_metrics(run_policy_trials(spec.scenario, policy)))
        for policy in spec.policies
    ]


@dataclass
class ExperimentReport:
    """Per-policy metrics plus rank orders, ready for emission."""

    label: str
    scenario: TerrainScenarioConfig | FireScenarioConfig
    entries: list[tuple[SelectorPolicy, SummaryMetrics]] = field(default_factory=list)
    rankings: dict[str, list[str]] = field(default_factory=dict)

    def metrics_for(self, policy_key: str) -> SummaryMetrics:
        for policy, metrics in self.entries:
            if policy.key == policy_key:
                return metrics
        raise KeyError(policy_key)


def compare_policies(spec: ExperimentSpec) -> ExperimentReport:
    """Run the experiment and rank policies on each headline metric.

    Tick and cost ranks run best (lowest) first; utility rank runs highest
    first.
    """
    entries = run_experiment(spec)
    by_key = {policy.key: metrics for policy, metrics in entries}
    rankings = {
        "avg_ticks": sorted(by_key, key=lambda k: by_key[k].avg_ticks),
        "avg_cost": sorted(by_key, key=lambda k: by_key[k].avg_cost),
        "avg_utility_per_tick": sorted(
            by_key, key=lambda k: by_key[k].avg_utility_per_tick, reverse=True
        ),
    }
    return ExperimentReport(
        label=spec.label, scenario=spec.scenario, entries=entries, rankings=rankings
    )

"""Simulation scenarios: terrain walking and fire rescue.

A *physics matrix* gives P(action leaf i succeeds | world state j). World
states are terrain types for walking and fire types for extinguishing. A
*track* is a fixed sequence of terrain segments; one *trial* walks the whole
track (or runs one fire mission), ticking the tree until each step succeeds.

The "ticks" metric counts action-leaf ticks only; composite nodes are free.
Each leaf tick also accrues the leaf's cost and its decision-time utility
(computed from the estimates the selector had before the outcome landed).
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence as SequenceT

import numpy as np

from .core import (
    ActionLeaf,
    ConfigurationError,
    RepeatUntilSuccess,
    Selector,
    Status,
    reset_stats,
    tick,
)
from .policies import S0, SelectorPolicy, UtilityMode, utility

__all__ = [
    "PhysicsMatrix",
    "default_walking_physics",
    "asymmetric_walking_physics",
    "default_fire_physics",
    "Track",
    "build_default_track",
    "build_fire_walk_track",
    "single_terrain_track",
    "step_attempt",
    "DEFAULT_COSTS",
    "TerrainScenarioConfig",
    "FireScenarioConfig",
    "TrialResult",
    "build_walking_selector",
    "run_terrain_trial",
    "FireScenario",
    "run_fire_trial",
    "expected_ticks_per_step",
]


# --------------------------------------------------------------------------
# Physics
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class PhysicsMatrix:
    """Success probabilities, rows = action leaves, columns = world states."""

    probs: tuple[tuple[float, ...], ...]

    def __post_init__(self) -> None:
        if not self.probs or not self.probs[0]:
            raise ConfigurationError("physics matrix must be non-empty")
        width = len(self.probs[0])
        for r, row in enumerate(self.probs):
            if len(row) != width:
                raise ConfigurationError(
                    f"physics row {r} has {len(row)} entries, expected {width}"
                )
            for c, p in enumerate(row):
                if not 0.0 <= p <= 1.0:
                    raise ConfigurationError(
                        f"physics entry at row {r}, column {c} out of [0, 1]: {p}"
                    )

    @property
    def n_leaves(self) -> int:
        return len(self.probs)

    @property
    def n_states(self) -> int:
        return len(self.probs[0])

    def prob(self, leaf: int, state: int) -> float:
        if not 0 <= leaf < self.n_leaves:
            raise ConfigurationError(f"leaf index {leaf} out of range")
        if not 0 <= state < self.n_states:
            raise ConfigurationError(f"state index {state} out of range")
        return self.probs[leaf][state]

    def column(self, state: int) -> tuple[float, ...]:
        return tuple(row[state] for row in self.probs)


def default_walking_physics() -> PhysicsMatrix:
    """Symmetric walking matrix: each behavior is strong on its own terrain."""
    return PhysicsMatrix((
        (0.8, 0.1, 0.1),
        (0.1, 0.8, 0.1),
        (0.1, 0.1, 0.8),
    ))


def asymmetric_walking_physics() -> PhysicsMatrix:
    """Variant with an all-rounder second behavior and no strong terrain-0 expert."""
    return PhysicsMatrix((
        (0.6, 0.1, 0.1),
        (0.4, 0.7, 0.4),
        (0.1, 0.1, 0.8),
    ))


def default_fire_physics() -> PhysicsMatrix:
    """Extinguisher matrix: the matching agent always works, others rarely."""
    return PhysicsMatrix((
        (1.00, 0.05, 0.05),
        (0.05, 1.00, 0.05),
        (0.05, 0.05, 1.00),
    ))


def step_attempt(physics: PhysicsMatrix, leaf: int, state: int, rng: np.random.Generator) -> Status:
    """One Bernoulli attempt of ``leaf`` under ``state``."""
    if rng.random() < physics.prob(leaf, state):
        return Status.SUCCESS
    return Status.FAILURE


# --------------------------------------------------------------------------
# Tracks
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class Track:
    """Terrain course as (terrain, length) segments."""

    segments: tuple[tuple[int, int], ...]

    def __post_init__(self) -> None:
        if not self.segments:
            raise ConfigurationError("track needs at least one segment")
        for terrain, length in self.segments:
            if terrain < 0:
                raise ConfigurationError(f"negative terrain index: {terrain}")
            if length < 1:
                raise ConfigurationError(f"segment length must be >= 1, got {length}")

    @property
    def total_steps(self) -> int:
        return sum(length for _, length in self.segments)

    @property
    def n_terrains(self) -> int:
        return max(terrain for terrain, _ in self.segments) + 1

    def sequence(self) -> np.ndarray:
        """Terrain index per step, length ``total_steps``."""
        return np.concatenate(
            [np.full(length, terrain, dtype=np.int64) for terrain, length in self.segments]
        )

    def terrain_at(self, step: int) -> int:
        if step < 0:
            raise ConfigurationError(f"negative step index: {step}")
        for terrain, length in self.segments:
            if step < length:
                return terrain
            step -= length
        raise ConfigurationError("step index beyond end of track")


def build_default_track() -> Track:
    """Default 216-step walking course.

    Three short opening segments expose every terrain within the first 25
    steps, then three long stretches dominate the distance; terrain 2 recurs
    in two blocks on either side of the terrain-0 stretch. Total exposure per
    terrain is (60, 76, 80) steps, tilted away from terrain 0.
    """
    return Track(((0, 8), (1, 9), (2, 34), (0, 52), (2, 46), (1, 67)))


def build_fire_walk_track() -> Track:
    """102-step approach course for the fire mission, one stretch per terrain."""
    return Track(((0, 34), (1, 34), (2, 34)))


def single_terrain_track(terrain: int, steps: int) -> Track:
    return Track(((terrain, steps),))


# --------------------------------------------------------------------------
# Walking scenario
# --------------------------------------------------------------------------

DEFAULT_COSTS = (4.0, 2.0, 1.0)


@dataclass
class TerrainScenarioConfig:
    """Walking experiment: one selector over walking behaviors on a track."""

    physics: PhysicsMatrix = field(default_factory=default_walking_physics)
    costs: tuple[float, ...] = DEFAULT_COSTS
    track: Track = field(default_factory=build_default_track)
    trials: int = 250
    policy: SelectorPolicy = S0
    utility_mode: UtilityMode = UtilityMode.RATIO
    seed: int = 0
    persist_learning: bool = False

    def __post_init__(self) -> None:
        if len(self.costs) != self.physics.n_leaves:
            raise ConfigurationError(
                f"{len(self.costs)} costs for {self.physics.n_leaves} walking behaviors"
            )
        if self.track.n_terrains > self.physics.n_states:
            raise ConfigurationError(
                f"track uses terrain {self.track.n_terrains - 1} but physics has "
                f"{self.physics.n_states} states"
            )
        if self.trials < 1:
            raise ConfigurationError("trials must be >= 1")


@dataclass
class TrialResult:
    """Per-trial totals; ``ticks_per_step`` is empty for fire missions."""

    total_leaf_ticks: int
    total_cost: float
    total_utility: float
    ticks_per_step: list[int]
    walked: bool = False
    flew: bool = False
    mission_failed: bool = False


class _TickAccounting:
    """Accumulates leaf ticks, cost, and decision-time utility."""

    def __init__(self, mode: UtilityMode, conditioned: bool) -> None:
        self.mode = mode
        self.conditioned = conditioned
        self.ticks = 0
        self.cost = 0.0
        self.utility_sum = 0.0

    def on_leaf_tick(self, leaf: ActionLeaf, feature: int) -> None:
        self.ticks += 1
        self.cost += leaf.stats.cost
        self.utility_sum += utility(
            leaf.stats, self.mode, feature if self.conditioned else None
        )


def build_walking_selector(config: TerrainScenarioConfig) -> Selector:
    """Selector over one leaf per walking behavior, wired to the physics."""
    n_states = config.physics.n_states
    leaves = []
    for i in range(config.physics.n_leaves):
        leaves.append(
            ActionLeaf(
                action=lambda feature, rng, leaf=i: step_attempt(
                    config.physics, leaf, feature, rng
                ),
                n_features=n_states,
                cost=config.costs[i],
                name=f"walk{i}",
            )
        )
    return Selector(
        leaves,
        policy=config.policy,
        n_features=n_states,
        utility_mode=config.utility_mode,
        name="walking",
    )


def run_terrain_trial(
    config: TerrainScenarioConfig,
    trial_index: int,
    rng: np.random.Generator,
    tree: Selector | None = None,
) -> TrialResult:
    """Walk the whole track once; failed steps are retried with no progress."""
    if tree is None:
        tree = build_walking_selector(config)
    if not config.persist_learning:
        reset_stats(tree)
    acct = _TickAccounting(config.utility_mode, config.policy.conditioned)
    for leaf in tree.children:
        leaf.on_tick = acct.on_leaf_tick

    ticks_per_step: list[int] = []
    for step, terrain in enumerate(config.track.sequence()):
        before = acct.ticks
        while tick(tree, int(terrain), rng, step) is Status.FAILURE:
            pass
        ticks_per_step.append(acct.ticks - before)
    return TrialResult(
        total_leaf_ticks=acct.ticks,
        total_cost=acct.cost,
        total_utility=acct.utility_sum,
        ticks_per_step=ticks_per_step,
    )


# --------------------------------------------------------------------------
# Fire-rescue scenario
# --------------------------------------------------------------------------

@dataclass
class FireScenarioConfig:
    """Fire mission: walk-or-fly transport, then extinguish.

    ``walk_limit`` is the step-attempt budget: the walk leaf fails (and the
    transport selector falls through to flight) when completing the course
    would need more stepping-selector invocations than the budget allows.
    """

    walk_physics: PhysicsMatrix = field(default_factory=default_walking_physics)
    walk_track: Track = field(default_factory=build_fire_walk_track)
    walk_limit: int = 120
    step_cost: float = 1.0
    flight_cost: float = 350.0
    flight_success_prob: float = 0.9
    fire_physics: PhysicsMatrix = field(default_factory=default_fire_physics)
    extinguisher_cost: float = 1.0
    fire_type_distribution: tuple[float, ...] = (1 / 3, 1 / 3, 1 / 3)
    trials: int = 1000
    policy: SelectorPolicy = S0
    utility_mode: UtilityMode = UtilityMode.RATIO
    seed: int = 0

    def __post_init__(self) -> None:
        if self.walk_limit < 1:
            raise ConfigurationError("walk_limit must be >= 1")
        if self.walk_track.n_terrains > self.walk_physics.n_states:
            raise ConfigurationError("walk track terrain outside walking physics")
        if len(self.fire_type_distribution) != self.fire_physics.n_states:
            raise ConfigurationError(
                f"{len(self.fire_type_distribution)} fire-type probabilities for "
                f"{self.fire_physics.n_states} fire states"
            )
        total = sum(self.fire_type_distribution)
        if abs(total - 1.0) > 1e-9:
            raise ConfigurationError(f"fire type distribution sums to {total}, not 1")
        if not 0.0 <= self.flight_success_prob <= 1.0:
            raise ConfigurationError("flight_success_prob outside [0, 1]")
        if self.trials < 1:
            raise ConfigurationError("trials must be >= 1")


# Retry bound for the extinguish phase; with a sure-fire agent per fire type a
# sweep cannot fail, the bound only guards greedy lock-in on a 0.05 agent.
_EXTINGUISH_MAX_TRIES = 1000


class FireScenario:
    """One fire-mission tree; learning persists across the trials it runs.

    The transport selector chooses between a walk leaf (which internally runs
    the terrain walk with its own stepping selector) and a flight leaf. Both
    carry static planning costs for ranking purposes: flight its fixed fare,
    walking the expected stepping effort of the whole course assuming no
    adaptation. Realized cost is still accounted tick by tick, so an adaptive
    stepping selector walks cheaper than the planning figure.
    """

    def __init__(self, config: FireScenarioConfig) -> None:
        self.config = config
        self._acct: _TickAccounting | None = None

        walk_cfg = TerrainScenarioConfig(
            physics=config.walk_physics,
            costs=(config.step_cost,) * config.walk_physics.n_leaves,
            track=config.walk_track,
            trials=1,
            policy=config.policy,
            utility_mode=config.utility_mode,
            seed=config.seed,
        )
        self.stepping = build_walking_selector(walk_cfg)

        # Planning cost of the approach march: expected stepping ticks over
        # the course for the authored (non-adapting) behavior order.
        walk_plan_cost = config.step_cost * sum(
            expected_ticks_per_step(config.walk_physics.column(int(t)))
            for t in config.walk_track.sequence()
        )
        self.walk_leaf = ActionLeaf(
            action=self._walk_to_fire,
            n_features=1,
            cost=walk_plan_cost,
            name="walk_to_fire",
        )
        self.fly_leaf = ActionLeaf(
            action=self._fly_to_fire,
            n_features=1,
            cost=config.flight_cost,
            name="fly_to_fire",
        )
        self.transport = Selector(
            (self.walk_leaf, self.fly_leaf),
            policy=config.policy,
            n_features=1,
            utility_mode=config.utility_mode,
            name="transport",
        )

        n_types = config.fire_physics.n_states
        ext_leaves = [
            ActionLeaf(
                action=lambda feature, rng, leaf=i: step_attempt(
                    config.fire_physics, leaf, feature, rng
                ),
                n_features=n_types,
                cost=config.extinguisher_cost,
                name=f"extinguisher{i}",
            )
            for i in range(config.fire_physics.n_leaves)
        ]
        self.extinguishers = Selector(
            ext_leaves,
            policy=config.policy,
            n_features=n_types,
            utility_mode=config.utility_mode,
            name="extinguish",
        )
        self.extinguish = RepeatUntilSuccess(
            self.extinguishers, max_tries=_EXTINGUISH_MAX_TRIES, n_features=n_types
        )

    # -- leaf action models -------------------------------------------------

    def _walk_to_fire(self, feature: int, rng: np.random.Generator) -> Status:
        cfg = self.config
        seq = cfg.walk_track.sequence()
        total = len(seq)
        step = 0
        attempts = 0
        while step < total:
            if attempts == cfg.walk_limit:
                return Status.FAILURE
            attempts += 1
            if tick(self.stepping, int(seq[step]), rng, step) is Status.SUCCESS:
                step += 1
        return Status.SUCCESS

    def _fly_to_fire(self, feature: int, rng: np.random.Generator) -> Status:
        if rng.random() < self.config.flight_success_prob:
            return Status.SUCCESS
        return Status.FAILURE

    # -- one mission --------------------------------------------------------

    def run_trial(self, trial_index: int, rng: np.random.Generator) -> TrialResult:
        cfg = self.config
        acct = _TickAccounting(cfg.utility_mode, cfg.policy.conditioned)
        self._acct = acct
        for leaf in self.stepping.children:
            leaf.on_tick = acct.on_leaf_tick
        for leaf in self.extinguishers.children:
            leaf.on_tick = acct.on_leaf_tick
        self.fly_leaf.on_tick = acct.on_leaf_tick
        # The walk leaf is a composite stand-in: its cost/utility are already
        # accounted through the stepping leaves, so it carries no hook.

        walk_ticks_before = self.walk_leaf.stats.n_ticks
        fly_ticks_before = self.fly_leaf.stats.n_ticks
        transport_status = tick(self.transport, 0, rng, trial_index)
        mission_failed = transport_status is Status.FAILURE
        if not mission_failed:
            fire_type = int(rng.choice(len(cfg.fire_type_distribution),
                                       p=np.asarray(cfg.fire_type_distribution)))
            tick(self.extinguish, fire_type, rng, trial_index)
        return TrialResult(
            total_leaf_ticks=acct.ticks,
            total_cost=acct.cost,
            total_utility=acct.utility_sum,
            ticks_per_step=[],
            walked=self.walk_leaf.stats.n_ticks > walk_ticks_before,
            flew=self.fly_leaf.stats.n_ticks > fly_ticks_before,
            mission_failed=mission_failed,
        )


def run_fire_trial(
    config: FireScenarioConfig,
    trial_index: int,
    rng: np.random.Generator,
    scenario: FireScenario | None = None,
) -> TrialResult:
    """Run one fire mission. Pass a shared :class:`FireScenario` to let
    transport/stepping/extinguisher learning persist across trials."""
    if scenario is None:
        scenario = FireScenario(config)
    return scenario.run_trial(trial_index, rng)


# --------------------------------------------------------------------------
# Analytic oracle
# --------------------------------------------------------------------------

def expected_ticks_per_step(ordered_probs: SequenceT[float]) -> float:
    """Expected leaf ticks per completed step for a fixed-order selector.

    A selector invocation ticks children in the given order until one
    succeeds; failed invocations are retried until the step completes.
    E[ticks per invocation] = sum over children of P(reached), and the number
    of invocations per step is geometric in the invocation success
    probability, so E[ticks per step] is their ratio.
    """
    if not ordered_probs:
        raise ConfigurationError("need at least one child probability")
    e_invocation = 0.0
    reach = 1.0
    for p in ordered_probs:
        if not 0.0 <= p <= 1.0:
            raise ConfigurationError(f"probability out of [0, 1]: {p}")
        e_invocation += reach
        reach *= 1.0 - p
    q = 1.0 - reach
    if q == 0.0:
        raise ConfigurationError("all children fail with certainty; step never completes")
    return e_invocation / q

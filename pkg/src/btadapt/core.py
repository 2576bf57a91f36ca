"""Behavior-tree runtime: two-valued status, statistics-carrying nodes, tick().

Every node owns a :class:`NodeStats` that counts ticks and successes, overall
and broken down by an integer feature (world-state) index. Success-probability
estimates default to 0.5 until a node has been ticked, so untrained trees rank
as indifferent rather than pessimistic.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Callable, Iterable, Sequence as SequenceT

import numpy as np

__all__ = [
    "ConfigurationError",
    "Status",
    "NodeStats",
    "BTNode",
    "ActionLeaf",
    "Sequence",
    "Selector",
    "RepeatUntilSuccess",
    "tick",
    "reset_stats",
    "sequence_success_prob",
    "selector_success_prob",
    "iter_leaves",
]

# Estimate reported before any evidence has been recorded.
UNTRAINED_P = 0.5


class ConfigurationError(ValueError):
    """A tree, stats record, or scenario is wired inconsistently."""


class Status(Enum):
    SUCCESS = "success"
    FAILURE = "failure"


@dataclass
class NodeStats:
    """Tick/success counters with a per-feature breakdown and a tick cost.

    ``n_features`` is the size of the feature domain this node can observe.
    ``cost`` is the cost charged for one tick of the node.
    """

    n_features: int
    cost: float = 0.0
    n_ticks: int = 0
    n_success: int = 0
    n_ticks_by_feature: np.ndarray = field(init=False)
    n_success_by_feature: np.ndarray = field(init=False)

    def __post_init__(self) -> None:
        if self.n_features < 1:
            raise ConfigurationError(f"feature domain must be >= 1, got {self.n_features}")
        if self.cost < 0:
            raise ConfigurationError(f"cost must be >= 0, got {self.cost}")
        self.n_ticks_by_feature = np.zeros(self.n_features, dtype=np.int64)
        self.n_success_by_feature = np.zeros(self.n_features, dtype=np.int64)

    def _check_feature(self, feature: int) -> None:
        if not 0 <= feature < self.n_features:
            raise ConfigurationError(
                f"feature index {feature} out of range [0, {self.n_features})"
            )

    def record(self, feature: int, status: Status) -> None:
        """Record one tick outcome observed under ``feature``."""
        self._check_feature(feature)
        self.n_ticks += 1
        self.n_ticks_by_feature[feature] += 1
        if status is Status.SUCCESS:
            self.n_success += 1
            self.n_success_by_feature[feature] += 1

    def p_success(self) -> float:
        """Overall success-rate estimate; 0.5 when nothing recorded yet."""
        if self.n_ticks == 0:
            return UNTRAINED_P
        return self.n_success / self.n_ticks

    def p_success_given(self, feature: int) -> float:
        """Success-rate estimate conditioned on ``feature``; 0.5 when unseen."""
        self._check_feature(feature)
        ticks = int(self.n_ticks_by_feature[feature])
        if ticks == 0:
            return UNTRAINED_P
        return int(self.n_success_by_feature[feature]) / ticks

    def reset(self) -> None:
        """Zero all counters; cost and domain size are configuration, not state."""
        self.n_ticks = 0
        self.n_success = 0
        self.n_ticks_by_feature[:] = 0
        self.n_success_by_feature[:] = 0


# --------------------------------------------------------------------------
# Nodes
# --------------------------------------------------------------------------

class BTNode:
    """Base node; subclasses define tick behavior via :func:`tick`."""

    def __init__(self, n_features: int, cost: float = 0.0, name: str = "") -> None:
        self.stats = NodeStats(n_features=n_features, cost=cost)
        self.name = name or type(self).__name__

    @property
    def children(self) -> tuple["BTNode", ...]:
        return ()


class ActionLeaf(BTNode):
    """Leaf executing an action model: ``action(feature, rng) -> Status``.

    ``on_tick`` is an optional hook called with ``(leaf, feature)`` before the
    action runs and before the outcome is recorded; scenarios use it to account
    cost and decision-time utility per leaf tick.
    """

    def __init__(
        self,
        action: Callable[[int, np.random.Generator], Status],
        n_features: int,
        cost: float = 0.0,
        name: str = "",
        on_tick: Callable[["ActionLeaf", int], None] | None = None,
    ) -> None:
        super().__init__(n_features=n_features, cost=cost, name=name)
        self.action = action
        self.on_tick = on_tick


class Sequence(BTNode):
    """Ticks children in order; fails on the first child failure."""

    def __init__(self, children: SequenceT[BTNode], n_features: int, name: str = "") -> None:
        super().__init__(n_features=n_features, name=name)
        self._children = tuple(children)

    @property
    def children(self) -> tuple[BTNode, ...]:
        return self._children


class Selector(BTNode):
    """Ticks children until one succeeds; child order is policy-controlled.

    ``order`` holds child indices in current execution order. Adaptive
    policies rewrite it on every tick (see :mod:`btadapt.policies`); ties
    preserve the current relative order, so an untouched selector keeps its
    authored ordering.
    """

    def __init__(
        self,
        children: SequenceT[BTNode],
        policy,  # SelectorPolicy; typed loosely to avoid a circular import
        n_features: int,
        utility_mode=None,  # UtilityMode | None
        name: str = "",
    ) -> None:
        super().__init__(n_features=n_features, name=name)
        if not children:
            raise ConfigurationError("selector needs at least one child")
        self._children = tuple(children)
        self.policy = policy
        self.utility_mode = utility_mode
        self.order: list[int] = list(range(len(self._children)))

    @property
    def children(self) -> tuple[BTNode, ...]:
        return self._children


class RepeatUntilSuccess(BTNode):
    """Decorator: retries its child until SUCCESS, at most ``max_tries`` times."""

    def __init__(self, child: BTNode, max_tries: int, n_features: int, name: str = "") -> None:
        super().__init__(n_features=n_features, name=name)
        if max_tries < 1:
            raise ConfigurationError(f"max_tries must be >= 1, got {max_tries}")
        self.child = child
        self.max_tries = max_tries

    @property
    def children(self) -> tuple[BTNode, ...]:
        return (self.child,)


def tick(node: BTNode, feature: int, rng: np.random.Generator, step_index: int = 0) -> Status:
    """Tick ``node`` under world-state ``feature`` and record the outcome.

    ``step_index`` is the scenario's step clock; greedy selector policies
    compare it against their training window. Selector dispatch lives in
    :mod:`btadapt.policies`.
    """
    if isinstance(node, ActionLeaf):
        if node.on_tick is not None:
            node.on_tick(node, feature)
        status = node.action(feature, rng)
        node.stats.record(feature, status)
        return status

    if isinstance(node, Sequence):
        status = Status.SUCCESS
        for child in node.children:
            if tick(child, feature, rng, step_index) is Status.FAILURE:
                status = Status.FAILURE
                break
        node.stats.record(feature, status)
        return status

    if isinstance(node, Selector):
        from . import policies  # deferred: policies imports this module

        return policies.selector_tick(node, feature, rng, step_index)

    if isinstance(node, RepeatUntilSuccess):
        status = Status.FAILURE
        for _ in range(node.max_tries):
            if tick(node.child, feature, rng, step_index) is Status.SUCCESS:
                status = Status.SUCCESS
                break
        node.stats.record(feature, status)
        return status

    raise ConfigurationError(f"unknown node type: {type(node).__name__}")


def reset_stats(node: BTNode) -> None:
    """Recursively zero learning state and restore authored selector order."""
    node.stats.reset()
    if isinstance(node, Selector):
        node.order = list(range(len(node.children)))
    for child in node.children:
        reset_stats(child)


def iter_leaves(node: BTNode) -> Iterable[ActionLeaf]:
    """Yield action leaves in pre-order."""
    if isinstance(node, ActionLeaf):
        yield node
    for child in node.children:
        yield from iter_leaves(child)


# --------------------------------------------------------------------------
# Composition probabilities
# --------------------------------------------------------------------------

def _check_probs(probs: SequenceT[float]) -> None:
    for i, p in enumerate(probs):
        if not 0.0 <= p <= 1.0:
            raise ConfigurationError(f"probability at index {i} out of [0, 1]: {p}")


def sequence_success_prob(probs: SequenceT[float]) -> float:
    """P(all children succeed) for independent children; 1.0 when empty."""
    _check_probs(probs)
    out = 1.0
    for p in probs:
        out *= p
    return out


def selector_success_prob(probs: SequenceT[float]) -> float:
    """P(at least one child succeeds) for independent children; 0.0 when empty."""
    _check_probs(probs)
    fail = 1.0
    for p in probs:
        fail *= 1.0 - p
    return 1.0 - fail

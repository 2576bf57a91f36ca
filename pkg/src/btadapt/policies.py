"""Selector reordering policies and utility functions.

Policies (labels follow the simulation shorthand):

====== ======================================================================
S0     fixed authored order (baseline)
S1     descending overall success estimate P(S)
S2     descending feature-conditioned estimate P(S|F)
S3     ascending child cost
S4     descending utility from the overall estimate
S5     descending utility from the feature-conditioned estimate
S2G(t) S2 for the first ``t`` scenario steps, then greedy: tick only the
       child with the best P(S|F)
====== ======================================================================

Ranking is a stable sort: children whose ranking metric ties keep their
current relative order, so an untrained selector (all estimates 0.5) sweeps
in its current order.

Utility-based policies always *rank* by success-per-cost (P/C); the
configured :class:`UtilityMode` selects which utility value is accumulated
into metrics. Ranking by raw NegativeCost values would invert the order on
any state where the capable child is also the expensive one, which
contradicts the observed mode-insensitivity of tick counts.
"""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np

from .core import ConfigurationError, NodeStats, Selector, Status, tick

__all__ = [
    "SelectorPolicy",
    "UtilityMode",
    "S0",
    "S1",
    "S2",
    "S3",
    "S4",
    "S5",
    "S2G",
    "ALL_TABLE_POLICIES",
    "parse_policy",
    "utility",
    "rank_children",
    "adaptive_selector_tick",
    "greedy_selector_tick",
    "selector_tick",
]


class UtilityMode(Enum):
    RATIO = "ratio"
    NEGATIVE_COST = "negative_cost"


@dataclass(frozen=True)
class SelectorPolicy:
    """A selector reordering rule; ``training_steps`` only applies to S2G."""

    kind: str
    training_steps: int = 0

    def __post_init__(self) -> None:
        if self.kind not in {"S0", "S1", "S2", "S3", "S4", "S5", "S2G"}:
            raise ConfigurationError(f"unknown policy kind: {self.kind!r}")
        if self.kind != "S2G" and self.training_steps:
            raise ConfigurationError("training_steps is only meaningful for S2G")
        if self.training_steps < 0:
            raise ConfigurationError("training_steps must be >= 0")

    @property
    def greedy(self) -> bool:
        return self.kind == "S2G"

    @property
    def conditioned(self) -> bool:
        """True when the policy learns per-feature (S2 family and S5)."""
        return self.kind in {"S2", "S2G", "S5"}

    @property
    def key(self) -> str:
        """Stable short label, e.g. ``S2g25`` for S2G with a 25-step window."""
        if self.kind == "S2G":
            return f"S2g{self.training_steps:02d}"
        return self.kind

    def __str__(self) -> str:  # pragma: no cover - cosmetic
        return self.key


S0 = SelectorPolicy("S0")
S1 = SelectorPolicy("S1")
S2 = SelectorPolicy("S2")
S3 = SelectorPolicy("S3")
S4 = SelectorPolicy("S4")
S5 = SelectorPolicy("S5")


def S2G(training_steps: int) -> SelectorPolicy:
    return SelectorPolicy("S2G", training_steps)


#: The eight policies reported by the walking-scenario comparison table.
ALL_TABLE_POLICIES = (S0, S1, S2, S3, S4, S5, S2G(0), S2G(25))


def parse_policy(text: str) -> SelectorPolicy:
    """Parse labels like ``s0``, ``S5``, ``S2g25`` (case-insensitive)."""
    label = text.strip()
    low = label.lower()
    if low.startswith("s2g"):
        tail = low[3:]
        if not tail.isdigit():
            raise ConfigurationError(f"bad greedy policy label: {label!r}")
        return S2G(int(tail))
    if low in {"s0", "s1", "s2", "s3", "s4", "s5"}:
        return SelectorPolicy(low.upper())
    raise ConfigurationError(f"unknown policy label: {label!r}")


def utility(stats: NodeStats, mode: UtilityMode, feature: int | None = None) -> float:
    """Utility of ticking a node: Ratio = P/C, NegativeCost = -P*C.

    ``feature`` selects the conditioned estimate P(S|F); ``None`` uses the
    overall estimate. Ratio mode requires a positive cost.
    """
    p = stats.p_success() if feature is None else stats.p_success_given(feature)
    if mode is UtilityMode.RATIO:
        if stats.cost == 0:
            raise ConfigurationError("Ratio utility undefined for zero-cost node")
        return p / stats.cost
    if mode is UtilityMode.NEGATIVE_COST:
        return -p * stats.cost
    raise ConfigurationError(f"unknown utility mode: {mode!r}")


def _ratio_utility(stats: NodeStats, feature: int | None) -> float:
    # Ranking metric for S4/S5 under either mode; see module docstring.
    p = stats.p_success() if feature is None else stats.p_success_given(feature)
    if stats.cost == 0:
        raise ConfigurationError("utility ranking undefined for zero-cost child")
    return p / stats.cost


def rank_children(
    policy: SelectorPolicy,
    children: list[NodeStats],
    feature: int,
    mode: UtilityMode = UtilityMode.RATIO,
) -> list[int]:
    """Return a permutation of ``range(len(children))`` in execution order.

    The permutation is relative to the order of the given list; stable
    sorting keeps tied children in place.
    """
    idx = list(range(len(children)))
    kind = policy.kind
    if kind == "S0":
        return idx
    if kind == "S1":
        return sorted(idx, key=lambda i: children[i].p_success(), reverse=True)
    if kind in ("S2", "S2G"):
        return sorted(idx, key=lambda i: children[i].p_success_given(feature), reverse=True)
    if kind == "S3":
        return sorted(idx, key=lambda i: children[i].cost)
    if kind == "S4":
        return sorted(idx, key=lambda i: _ratio_utility(children[i], None), reverse=True)
    if kind == "S5":
        return sorted(idx, key=lambda i: _ratio_utility(children[i], feature), reverse=True)
    raise ConfigurationError(f"unknown policy kind: {kind!r}")


def _reorder(node: Selector, feature: int, as_policy: SelectorPolicy | None = None) -> None:
    policy = as_policy or node.policy
    mode = node.utility_mode or UtilityMode.RATIO
    stats_in_order = [node.children[i].stats for i in node.order]
    perm = rank_children(policy, stats_in_order, feature, mode)
    node.order = [node.order[j] for j in perm]


def adaptive_selector_tick(
    node: Selector, feature: int, rng: np.random.Generator, step_index: int = 0
) -> Status:
    """Reorder by the node's policy, then sweep children until one succeeds."""
    _reorder(node, feature)
    status = Status.FAILURE
    for i in node.order:
        if tick(node.children[i], feature, rng, step_index) is Status.SUCCESS:
            status = Status.SUCCESS
            break
    node.stats.record(feature, status)
    return status


def greedy_selector_tick(
    node: Selector, feature: int, step_index: int, rng: np.random.Generator
) -> Status:
    """S2G tick: full S2 sweep during the training window, then a single
    tick of the child with the best P(S|F). Counters keep updating either
    way, so a greedy child that starts failing can still lose its rank."""
    if step_index < node.policy.training_steps:
        return adaptive_selector_tick(node, feature, rng, step_index)
    best = max(
        node.order,
        key=lambda i: node.children[i].stats.p_success_given(feature),
    )
    status = tick(node.children[best], feature, rng, step_index)
    node.stats.record(feature, status)
    return status


def selector_tick(
    node: Selector, feature: int, rng: np.random.Generator, step_index: int = 0
) -> Status:
    """Dispatch for :func:`btadapt.core.tick` on selector nodes."""
    if node.policy.greedy:
        return greedy_selector_tick(node, feature, step_index, rng)
    return adaptive_selector_tick(node, feature, rng, step_index)

import numpy as np
import pytest

from btadapt import (
    S0,
    UNTRAINED_P,
    ActionLeaf,
    ConfigurationError,
    NodeStats,
    RepeatUntilSuccess,
    Selector,
    Sequence,
    Status,
    iter_leaves,
    reset_stats,
    selector_success_prob,
    sequence_success_prob,
    tick,
)


def fixed(status):
    return lambda feature, rng: status


def traced_leaf(status, trace, tag, n_features=1):
    return ActionLeaf(
        action=fixed(status),
        n_features=n_features,
        name=tag,
        on_tick=lambda leaf, feature: trace.append(tag),
    )


# -- NodeStats --------------------------------------------------------------

def test_recording_a_success_updates_overall_and_feature_counters():
    stats = NodeStats(n_features=3)
    stats.record(0, Status.SUCCESS)
    assert stats.n_ticks == 1
    assert stats.n_success == 1
    assert stats.n_ticks_by_feature.tolist() == [1, 0, 0]
    assert stats.n_success_by_feature.tolist() == [1, 0, 0]


def test_recording_a_failure_counts_the_tick_but_no_success():
    stats = NodeStats(n_features=3)
    stats.record(1, Status.FAILURE)
    assert stats.n_ticks == 1
    assert stats.n_success == 0
    assert stats.n_ticks_by_feature.tolist() == [0, 1, 0]
    assert stats.n_success_by_feature.tolist() == [0, 0, 0]


def test_untrained_estimates_default_to_one_half():
    stats = NodeStats(n_features=2)
    assert stats.p_success() == UNTRAINED_P
    assert stats.p_success_given(0) == UNTRAINED_P
    assert stats.p_success_given(1) == UNTRAINED_P


def test_zero_successes_over_five_ticks_estimates_zero():
    stats = NodeStats(n_features=1)
    for _ in range(5):
        stats.record(0, Status.FAILURE)
    assert stats.p_success() == 0.0


def test_conditioned_estimate_with_no_evidence_for_that_feature_is_one_half():
    # 3/4 successes, all under feature 0: feature 1 has an empty denominator
    # and must report the untrained default, not zero.
    stats = NodeStats(n_features=2)
    for status in (Status.SUCCESS, Status.SUCCESS, Status.SUCCESS, Status.FAILURE):
        stats.record(0, status)
    assert stats.p_success_given(0) == 0.75
    assert stats.p_success_given(1) == 0.5


def test_feature_index_out_of_range_is_rejected():
    stats = NodeStats(n_features=2)
    with pytest.raises(ConfigurationError):
        stats.record(2, Status.SUCCESS)
    with pytest.raises(ConfigurationError):
        stats.p_success_given(-1)


def test_invalid_stats_configuration_is_rejected():
    with pytest.raises(ConfigurationError):
        NodeStats(n_features=0)
    with pytest.raises(ConfigurationError):
        NodeStats(n_features=1, cost=-1.0)


def test_reset_zeroes_counters_and_is_idempotent():
    stats = NodeStats(n_features=2, cost=3.0)
    for feature, status in ((0, Status.SUCCESS), (1, Status.FAILURE), (1, Status.SUCCESS)):
        stats.record(feature, status)
    stats.reset()
    once = (stats.n_ticks, stats.n_success,
            stats.n_ticks_by_feature.tolist(), stats.n_success_by_feature.tolist())
    stats.reset()
    twice = (stats.n_ticks, stats.n_success,
             stats.n_ticks_by_feature.tolist(), stats.n_success_by_feature.tolist())
    assert once == (0, 0, [0, 0], [0, 0])
    assert twice == once
    assert stats.cost == 3.0  # configuration, not learning state


# -- leaves -----------------------------------------------------------------

def test_leaf_tick_runs_the_action_and_records_under_the_feature():
    leaf = ActionLeaf(action=fixed(Status.SUCCESS), n_features=2)
    assert tick(leaf, 1, np.random.default_rng(0)) is Status.SUCCESS
    assert leaf.stats.n_ticks_by_feature.tolist() == [0, 1]
    assert leaf.stats.n_success_by_feature.tolist() == [0, 1]


def test_leaf_hook_fires_before_the_outcome_is_recorded():
    seen = []
    leaf = ActionLeaf(
        action=fixed(Status.SUCCESS),
        n_features=1,
        on_tick=lambda l, f: seen.append(l.stats.n_ticks),
    )
    rng = np.random.default_rng(0)
    for _ in range(3):
        tick(leaf, 0, rng)
    assert seen == [0, 1, 2]


# -- composites -------------------------------------------------------------

def test_sequence_stops_at_the_first_failing_child():
    trace = []
    seq = Sequence(
        (
            traced_leaf(Status.SUCCESS, trace, "a"),
            traced_leaf(Status.FAILURE, trace, "b"),
            traced_leaf(Status.SUCCESS, trace, "c"),
        ),
        n_features=1,
    )
    assert tick(seq, 0, np.random.default_rng(0)) is Status.FAILURE
    assert trace == ["a", "b"]
    assert seq.stats.n_success == 0


def test_sequence_succeeds_when_every_child_does():
    trace = []
    seq = Sequence(
        (traced_leaf(Status.SUCCESS, trace, "a"), traced_leaf(Status.SUCCESS, trace, "b")),
        n_features=1,
    )
    assert tick(seq, 0, np.random.default_rng(0)) is Status.SUCCESS
    assert trace == ["a", "b"]
    assert seq.stats.n_success == 1


def test_selector_returns_success_at_the_first_succeeding_child():
    trace = []
    sel = Selector(
        (
            traced_leaf(Status.FAILURE, trace, "a"),
            traced_leaf(Status.SUCCESS, trace, "b"),
            traced_leaf(Status.SUCCESS, trace, "c"),
        ),
        policy=S0,
        n_features=1,
    )
    assert tick(sel, 0, np.random.default_rng(0)) is Status.SUCCESS
    assert trace == ["a", "b"]


def test_selector_with_no_children_is_rejected():
    with pytest.raises(ConfigurationError):
        Selector((), policy=S0, n_features=1)


def test_repeat_until_success_retries_and_reports_success():
    outcomes = iter([Status.FAILURE, Status.FAILURE, Status.SUCCESS])
    child = ActionLeaf(action=lambda f, rng: next(outcomes), n_features=1)
    node = RepeatUntilSuccess(child, max_tries=5, n_features=1)
    assert tick(node, 0, np.random.default_rng(0)) is Status.SUCCESS
    assert child.stats.n_ticks == 3


def test_repeat_until_success_gives_up_after_max_tries():
    child = ActionLeaf(action=fixed(Status.FAILURE), n_features=1)
    node = RepeatUntilSuccess(child, max_tries=4, n_features=1)
    assert tick(node, 0, np.random.default_rng(0)) is Status.FAILURE
    assert child.stats.n_ticks == 4
    with pytest.raises(ConfigurationError):
        RepeatUntilSuccess(child, max_tries=0, n_features=1)


def test_reset_stats_restores_the_authored_selector_order():
    sel = Selector(
        (ActionLeaf(fixed(Status.FAILURE), 1), ActionLeaf(fixed(Status.SUCCESS), 1)),
        policy=S0,
        n_features=1,
    )
    sel.order = [1, 0]
    tick(sel, 0, np.random.default_rng(0))
    reset_stats(sel)
    assert sel.order == [0, 1]
    assert sel.stats.n_ticks == 0
    assert all(child.stats.n_ticks == 0 for child in sel.children)


def test_iter_leaves_walks_the_tree_in_preorder():
    a = ActionLeaf(fixed(Status.SUCCESS), 1, name="a")
    b = ActionLeaf(fixed(Status.SUCCESS), 1, name="b")
    c = ActionLeaf(fixed(Status.SUCCESS), 1, name="c")
    tree = Sequence((Selector((a, b), policy=S0, n_features=1), c), n_features=1)
    assert [leaf.name for leaf in iter_leaves(tree)] == ["a", "b", "c"]


# -- composition probabilities ---------------------------------------------

def test_sequence_success_probability_multiplies_children():
    assert sequence_success_prob([0.5, 0.5]) == 0.25
    assert sequence_success_prob([]) == 1.0


def test_selector_success_probability_is_one_minus_all_fail():
    assert selector_success_prob([0.5, 0.5]) == 0.75
    assert selector_success_prob([]) == 0.0


def test_composition_probabilities_reject_values_outside_unit_interval():
    with pytest.raises(ConfigurationError):
        sequence_success_prob([0.5, 1.5])
    with pytest.raises(ConfigurationError):
        selector_success_prob([-0.1])

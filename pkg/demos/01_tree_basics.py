"""Tree primitives: leaves, composites, tick outcomes, and learned estimates.

Builds a toy two-behavior selector, ticks it by hand, and shows how the
per-node statistics drive the success estimates that the adaptive policies
sort by.
"""
import numpy as np

from btadapt import (
    S1,
    ActionLeaf,
    Selector,
    Sequence,
    Status,
    selector_success_prob,
    sequence_success_prob,
    tick,
)


def bernoulli_leaf(p, name):
    return ActionLeaf(
        action=lambda feature, rng: (
            Status.SUCCESS if rng.random() < p else Status.FAILURE
        ),
        n_features=2,
        name=name,
    )


def main():
    rng = np.random.default_rng(0)

    flaky = bernoulli_leaf(0.3, "flaky")
    solid = bernoulli_leaf(0.9, "solid")
    chooser = Selector((flaky, solid), policy=S1, n_features=2, name="chooser")

    print("fresh estimates default to 0.5 (no evidence yet):")
    print(f"  flaky P(S) = {flaky.stats.p_success():.2f}")
    print(f"  solid P(S) = {solid.stats.p_success():.2f}")
    print()

    for step in range(200):
        tick(chooser, step % 2, rng, step_index=step)

    print("after 200 selector ticks the counters tell the real story:")
    for leaf in chooser.children:
        s = leaf.stats
        print(
            f"  {leaf.name}: {s.n_success}/{s.n_ticks} overall"
            f" -> P(S) = {s.p_success():.2f};"
            f" per feature = ["
            + ", ".join(f"{s.p_success_given(f):.2f}" for f in range(2))
            + "]"
        )
    print(f"  execution order is now {[chooser.children[i].name for i in chooser.order]}"
          " (the reliable child moved to the front)")
    print()

    # Composite success probabilities compose analytically too.
    ps = (0.3, 0.9)
    print(f"selector over children with P = {ps}:"
          f" P(any succeeds) = {selector_success_prob(ps):.3f}")
    print(f"sequence over the same children:"
          f" P(all succeed)  = {sequence_success_prob(ps):.3f}")

    both = Sequence((bernoulli_leaf(0.5, "first"), bernoulli_leaf(0.5, "second")),
                    n_features=2)
    wins = sum(tick(both, 0, rng) is Status.SUCCESS for _ in range(2000))
    print(f"simulated sequence success rate over 2000 ticks: {wins / 2000:.3f}"
          f" (expected {sequence_success_prob((0.5, 0.5)):.2f})")


if __name__ == "__main__":
    main()

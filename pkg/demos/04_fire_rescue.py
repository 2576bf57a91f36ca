"""The fire mission: when is walking worth the risk of running out of time?

Transport to the fire is a selector over a slow-but-sure walk and an
expensive, occasionally failing flight. The walk leaf gives up once its
step budget is exhausted, so the budget decides which child is actually
reliable - and the adaptive policies discover that from experience, since
learning carries over from one mission to the next.
"""
from btadapt import (
    S0,
    S2,
    FireScenarioConfig,
    aggregate_metrics,
    run_policy_trials,
)

SEED = 11
TRIALS = 300


def sweep(policy, limits):
    print(f"policy {policy.key}, {TRIALS} missions per budget:")
    print("  budget   walked   flew   failed   avg cost")
    for limit in limits:
        config = FireScenarioConfig(walk_limit=limit, trials=TRIALS, seed=SEED)
        m = aggregate_metrics(run_policy_trials(config, policy))
        print(f"  {limit:6d} {m.walk_trials:8d} {m.fly_trials:6d}"
              f" {m.fail_trials:8d} {m.avg_cost:10.1f}")
    print()


def main():
    limits = (150, 120, 90)

    # Fixed order always tries the walk first; with a tight budget most
    # missions burn the whole budget, then pay for the flight anyway.
    # (The columns count attempts, so such a mission shows up under both
    # 'walked' and 'flew'; 'failed' means even the flight fell through.)
    sweep(S0, limits)

    # Conditioned adaptation learns the walk's failure rate after a few
    # missions and goes straight to the aircraft when the budget is tight.
    sweep(S2, limits)

    # With a generous budget the cheap walk wins again - for either policy.
    roomy = FireScenarioConfig(walk_limit=900, trials=TRIALS, seed=SEED)
    m = aggregate_metrics(run_policy_trials(roomy, S2))
    print(f"S2 with a 900-step budget: {m.walk_trials}/{TRIALS} walked,"
          f" avg cost {m.avg_cost:.1f} (flight costs 350 on its own).")


if __name__ == "__main__":
    main()

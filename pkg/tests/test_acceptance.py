"""Acceptance gate: eight numbered criteria, one verdict line each.

Heavy simulation sweeps are shared through module-scoped fixtures; every
threshold below is asserted at its stated tolerance. Verdict lines are
reprinted in the terminal summary (see conftest).
"""
import numpy as np
import pytest

from btadapt import (
    ALL_TABLE_POLICIES,
    S0,
    S1,
    S2,
    S3,
    S4,
    S5,
    ExperimentSpec,
    FireScenarioConfig,
    TerrainScenarioConfig,
    Track,
    UtilityMode,
    build_walking_selector,
    default_walking_physics,
    expected_ticks_per_step,
    parse_policy,
    run_experiment,
    run_terrain_trial,
    single_terrain_track,
    step_attempt,
)

SEED = 0
TRIALS = 250
CHAIN = ("S2", "S5", "S1", "S4", "S3", "S0")  # best to worst on avg_ticks
NOISE_SLACK = 8.0  # ticks; ~3 sigma of a 250-trial mean difference
SWAP_THRESHOLD = 0.0125  # the "~1%" boundary for the cost-swap deltas

FIRE_ROWS = (
    ("S0", 150), ("S0", 120), ("S1", 120), ("S2", 120),
    ("S4", 120), ("S5", 120), ("S2", 900),
)


def verdict(acceptance_log, number, ok, detail):
    acceptance_log(f"criterion {number} {'PASS' if ok else 'FAIL'} - {detail}")
    assert ok, f"criterion {number}: {detail}"


def run_table(**overrides):
    scenario = TerrainScenarioConfig(trials=TRIALS, seed=SEED, **overrides)
    spec = ExperimentSpec(scenario=scenario, policies=ALL_TABLE_POLICIES)
    return {policy.key: metrics for policy, metrics in run_experiment(spec)}


@pytest.fixture(scope="module")
def terrain_ratio():
    return run_table()


@pytest.fixture(scope="module")
def terrain_negcost():
    return run_table(utility_mode=UtilityMode.NEGATIVE_COST)


@pytest.fixture(scope="module")
def terrain_swapped():
    return run_table(costs=(2.0, 1.0, 4.0))


@pytest.fixture(scope="module")
def fire_rows():
    rows = {}
    for label, limit in FIRE_ROWS:
        policy = parse_policy(label)
        scenario = FireScenarioConfig(
            walk_limit=limit, policy=policy, trials=1000, seed=SEED
        )
        ((_, metrics),) = run_experiment(
            ExperimentSpec(scenario=scenario, policies=(policy,))
        )
        rows[(label, limit)] = metrics
    return rows


def test_criterion_1_simulation_matches_the_closed_form_oracle(acceptance_log):
    physics = default_walking_physics()
    steps = 100_000
    worst = 0.0
    for terrain in range(3):
        config = TerrainScenarioConfig(
            track=single_terrain_track(terrain, steps), trials=1, seed=SEED
        )
        result = run_terrain_trial(
            config, 0, np.random.default_rng((SEED, terrain))
        )
        simulated = result.total_leaf_ticks / steps
        oracle = expected_ticks_per_step(physics.column(terrain))
        worst = max(worst, abs(simulated - oracle) / oracle)
    verdict(
        acceptance_log, 1, worst < 0.02,
        f"dumb-order ticks/step vs oracle over {steps} steps: "
        f"max rel err {worst:.3%} (tol 2%)",
    )


def test_criterion_2_walking_tick_ordering_and_ratio(acceptance_log, terrain_ratio):
    ticks = {key: terrain_ratio[key].avg_ticks for key in CHAIN}
    chain_ok = all(
        ticks[a] < ticks[b] + NOISE_SLACK for a, b in zip(CHAIN, CHAIN[1:])
    )
    ratio = ticks["S2"] / ticks["S0"]
    ratio_ok = 0.52 <= ratio <= 0.72
    detail = " < ".join(f"{key}:{ticks[key]:.0f}" for key in CHAIN)
    verdict(
        acceptance_log, 2, chain_ok and ratio_ok,
        f"{detail}; S2/S0 = {ratio:.3f} (want 0.62 +/- 0.10)",
    )


def test_criterion_3_greedy_needs_training_then_wins(acceptance_log, terrain_ratio):
    ticks = {key: m.avg_ticks for key, m in terrain_ratio.items()}
    untrained_penalty = ticks["S2g00"] / ticks["S2"]
    penalty_ok = untrained_penalty >= 1.25
    lowest_ok = min(ticks, key=ticks.get) == "S2g25"
    by_utility = sorted(
        terrain_ratio, key=lambda k: terrain_ratio[k].avg_utility_per_tick,
        reverse=True,
    )
    utility_ok = "S2g25" in by_utility[:2]
    verdict(
        acceptance_log, 3, penalty_ok and lowest_ok and utility_ok,
        f"S2g00/S2 ticks = {untrained_penalty:.2f} (>= 1.25); lowest = "
        f"{min(ticks, key=ticks.get)}; utility top two = {by_utility[:2]}",
    )


def test_criterion_4_accounting_mode_leaves_ticks_alone(
    acceptance_log, terrain_ratio, terrain_negcost
):
    tick_delta = max(
        abs(terrain_negcost[k].avg_ticks - terrain_ratio[k].avg_ticks)
        / terrain_ratio[k].avg_ticks
        for k in CHAIN
    )
    cost_delta = max(
        abs(terrain_negcost[k].avg_cost - terrain_ratio[k].avg_cost)
        / terrain_ratio[k].avg_cost
        for k in CHAIN
    )
    by_utility = sorted(
        CHAIN, key=lambda k: terrain_negcost[k].avg_utility_per_tick, reverse=True
    )
    top_two_ok = set(by_utility[:2]) == {"S3", "S4"}
    verdict(
        acceptance_log, 4,
        tick_delta <= 0.01 and cost_delta <= 0.015 and top_two_ok,
        f"max tick delta {tick_delta:.3%} (tol 1%), max cost delta "
        f"{cost_delta:.3%} (tol 1.5%); negative-cost utility top two = "
        f"{by_utility[:2]}",
    )


def test_criterion_5_cost_swap_moves_only_the_cost_ranked_policy(
    acceptance_log, terrain_ratio, terrain_swapped
):
    deltas = {
        key: abs(terrain_swapped[key].avg_ticks - terrain_ratio[key].avg_ticks)
        / terrain_ratio[key].avg_ticks
        for key in terrain_ratio
    }
    movers = {key for key, delta in deltas.items() if delta > SWAP_THRESHOLD}
    ok = movers == {"S3"}
    shown = ", ".join(f"{k}:{deltas[k]:.2%}" for k in sorted(deltas, key=deltas.get, reverse=True)[:3])
    verdict(
        acceptance_log, 5, ok,
        f"policies moved beyond {SWAP_THRESHOLD:.2%}: {sorted(movers)} "
        f"(largest deltas {shown})",
    )


def test_criterion_6_fire_transport_relations(acceptance_log, fire_rows):
    clauses = []

    never = fire_rows[("S0", 150)]
    clauses.append(("S0@150 no flights", never.fly_trials == 0))
    clauses.append(("S0@150 no failures", never.fail_trials == 0))

    tight = fire_rows[("S0", 120)]
    flight_fraction = tight.fly_trials / tight.n_trials
    clauses.append(
        ("S0@120 flight fraction", 0.50 <= flight_fraction <= 0.64)
    )
    fail_per_flight = tight.fail_trials / max(tight.fly_trials, 1)
    clauses.append(("S0@120 fail/flight", 0.06 <= fail_per_flight <= 0.14))

    for key in ("S1", "S2", "S4", "S5"):
        m = fire_rows[(key, 120)]
        clauses.append((f"{key}@120 flies >95%", m.fly_trials > 0.95 * m.n_trials))
        clauses.append((f"{key}@120 walks <15%", m.walk_trials < 0.15 * m.n_trials))

    patient = fire_rows[("S2", 900)]
    clauses.append(("S2@900 flies <=1%", patient.fly_trials <= 0.01 * patient.n_trials))
    clauses.append(("S2@900 cheaper than S0@150", patient.avg_cost < never.avg_cost))

    failed = [name for name, ok in clauses if not ok]
    verdict(
        acceptance_log, 6, not failed,
        f"S0@120 fly {flight_fraction:.3f}, fail/fly {fail_per_flight:.3f}; "
        f"S2@900 cost {patient.avg_cost:.1f} vs S0@150 {never.avg_cost:.1f}"
        + (f"; FAILED: {failed}" if failed else ""),
    )


def test_criterion_7_estimates_converge_to_the_physics(acceptance_log):
    physics = default_walking_physics()

    # Organic phase: a dumb walk long enough that every (leaf, terrain) pair
    # records hundreds of conditioned ticks.
    config = TerrainScenarioConfig(
        track=Track(((0, 5000), (1, 5000), (2, 5000))), trials=1, seed=SEED
    )
    tree = build_walking_selector(config)
    run_terrain_trial(config, 0, np.random.default_rng((SEED, 17)), tree=tree)
    organic_worst = 0.0
    qualifying = 0
    for i, leaf in enumerate(tree.children):
        for terrain in range(3):
            if int(leaf.stats.n_ticks_by_feature[terrain]) < 200:
                continue
            qualifying += 1
            err = abs(leaf.stats.p_success_given(terrain) - physics.prob(i, terrain))
            organic_worst = max(organic_worst, err)

    # Precision phase: drive each pair directly to 10^4 recorded ticks.
    rng = np.random.default_rng((SEED, 23))
    deep_worst = 0.0
    fresh = build_walking_selector(TerrainScenarioConfig(trials=1, seed=SEED))
    for i, leaf in enumerate(fresh.children):
        for terrain in range(3):
            for _ in range(10_000):
                leaf.stats.record(
                    terrain, step_attempt(physics, i, terrain, rng)
                )
            err = abs(leaf.stats.p_success_given(terrain) - physics.prob(i, terrain))
            deep_worst = max(deep_worst, err)

    verdict(
        acceptance_log, 7,
        qualifying >= 9 and organic_worst < 0.08 and deep_worst < 0.02,
        f"{qualifying} pairs with >=200 ticks, worst |err| {organic_worst:.4f} "
        f"(tol 0.08); at 10^4 ticks worst |err| {deep_worst:.4f} (tol 0.02)",
    )


def test_criterion_8_invariant_suites_hold(acceptance_log, tmp_path):
    # The randomized suites live in test_properties.py and run standalone;
    # re-run the five named invariants here as the gate.
    import test_properties as props

    props.test_rankings_are_always_permutations()
    props.test_tied_children_never_swap_relative_order()
    props.test_counters_stay_consistent_under_random_ticking()
    props.test_selector_and_sequence_probabilities_are_dual()
    props.test_artifact_bytes_are_identical_per_seed(tmp_path)
    verdict(
        acceptance_log, 8, True,
        "permutation validity, stable ties, counter consistency, "
        "composition duality, per-seed byte-determinism",
    )

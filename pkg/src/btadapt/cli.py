"""Command-line front end: config-driven runs, canned tables, the oracle.

Seed precedence: ``--seed`` flag, then the ``BT_ADAPT_SEED`` environment
variable, then the configuration file (default 0).
"""
from __future__ import annotations

import argparse
import os
import sys
from dataclasses import replace
from pathlib import Path

from .config import RunConfig, default_config, load_config
from .core import ConfigurationError
from .harness import ExperimentSpec, compare_policies, run_experiment
from .policies import UtilityMode, parse_policy
from .report import emit_csv, emit_plot, format_table, _num
from .scenarios import (
    FireScenarioConfig,
    TerrainScenarioConfig,
    expected_ticks_per_step,
)

__all__ = ["main"]

# The fire comparison rows: (policy label, walk_limit).
_FIRE_ROWS = (
    ("S0", 150), ("S0", 120), ("S1", 120), ("S2", 120),
    ("S3", 120), ("S4", 120), ("S5", 120), ("S2", 900),
)


def _add_common_flags(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("--seed", type=int, default=None,
                     help="base random seed (overrides BT_ADAPT_SEED and config)")
    sub.add_argument("--trials", type=int, default=None,
                     help="trials per policy")
    sub.add_argument("--policy", default=None,
                     help="restrict the run to one policy (e.g. S2 or S2g25)")
    sub.add_argument("--utility-mode", choices=[m.value for m in UtilityMode],
                     default=None, help="utility accounting mode")
    sub.add_argument("--out-dir", default=None,
                     help="directory for CSV/SVG artifacts")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="btadapt",
        description="Adaptive behavior-tree selector experiments.",
    )
    subs = parser.add_subparsers(dest="command", required=True)

    p_run = subs.add_parser("run", help="run a TOML-configured experiment")
    p_run.add_argument("config", help="path to a TOML run configuration")
    _add_common_flags(p_run)
    p_run.set_defaults(func=_cmd_run)

    p_t1 = subs.add_parser(
        "paper-table1", help="walking policy comparison on the default track"
    )
    _add_common_flags(p_t1)
    p_t1.set_defaults(func=_cmd_table1)

    p_t2 = subs.add_parser(
        "paper-table2", help="fire-rescue transport comparison across walk limits"
    )
    _add_common_flags(p_t2)
    p_t2.set_defaults(func=_cmd_table2)

    p_oracle = subs.add_parser(
        "oracle", help="expected leaf ticks per step for a fixed selector order"
    )
    p_oracle.add_argument("probs", type=float, nargs="+",
                          help="per-child success probabilities, in tick order")
    p_oracle.set_defaults(func=_cmd_oracle)

    return parser


def _resolve_seed(args: argparse.Namespace, config_seed: int) -> int:
    if args.seed is not None:
        return args.seed
    env = os.environ.get("BT_ADAPT_SEED")
    if env is not None:
        try:
            return int(env)
        except ValueError:
            raise ConfigurationError(
                f"BT_ADAPT_SEED must be an integer, got {env!r}"
            ) from None
    return config_seed


def _apply_overrides(config: RunConfig, args: argparse.Namespace) -> RunConfig:
    scenario = replace(config.scenario, seed=_resolve_seed(args, config.scenario.seed))
    if args.trials is not None:
        scenario = replace(scenario, trials=args.trials)
    if args.utility_mode is not None:
        scenario = replace(scenario, utility_mode=UtilityMode(args.utility_mode))
    policies = config.policies
    if args.policy is not None:
        policies = (parse_policy(args.policy),)
    out_dir = args.out_dir if args.out_dir is not None else config.out_dir
    return replace(config, scenario=scenario, policies=policies, out_dir=out_dir)


def _run_and_emit(config: RunConfig, label: str, write: bool) -> int:
    spec = ExperimentSpec(scenario=config.scenario, policies=config.policies, label=label)
    report = compare_policies(spec)
    print(format_table(report))
    print()
    print("lowest avg_ticks :", " < ".join(report.rankings["avg_ticks"]))
    print("highest utility  :", " > ".join(report.rankings["avg_utility_per_tick"]))
    if write:
        written = []
        if config.emit_csv:
            written += emit_csv(report, config.out_dir)
        if config.emit_svg and isinstance(config.scenario, TerrainScenarioConfig):
            written += emit_plot(report, config.out_dir)
        for path in written:
            print("wrote", path)
    return 0


def _cmd_run(args: argparse.Namespace) -> int:
    config = _apply_overrides(load_config(args.config), args)
    return _run_and_emit(config, label=Path(args.config).stem, write=True)


def _cmd_table1(args: argparse.Namespace) -> int:
    config = _apply_overrides(default_config(), args)
    return _run_and_emit(config, label="walking-comparison", write=args.out_dir is not None)


def _cmd_table2(args: argparse.Namespace) -> int:
    seed = _resolve_seed(args, 0)
    trials = args.trials if args.trials is not None else 1000
    rows = []
    for label, limit in _FIRE_ROWS:
        if args.policy is not None and parse_policy(args.policy).key != label:
            continue
        scenario = FireScenarioConfig(
            policy=parse_policy(label), walk_limit=limit, trials=trials, seed=seed,
        )
        if args.utility_mode is not None:
            scenario = replace(scenario, utility_mode=UtilityMode(args.utility_mode))
        (_, metrics), = run_experiment(
            ExperimentSpec(scenario=scenario, policies=(scenario.policy,))
        )
        rows.append((label, limit, metrics))

    header = ("policy", "walk_limit", "walk", "fly", "fail", "avg_cost", "avg_ticks")
    table = [header] + [
        (label, str(limit), str(m.walk_trials), str(m.fly_trials),
         str(m.fail_trials), _num(m.avg_cost), _num(m.avg_ticks))
        for label, limit, m in rows
    ]
    widths = [max(len(r[i]) for r in table) for i in range(len(header))]
    for row in table:
        print("  ".join(cell.rjust(widths[i]) if i else cell.ljust(widths[i])
                        for i, cell in enumerate(row)))

    if args.out_dir is not None:
        out = Path(args.out_dir)
        out.mkdir(parents=True, exist_ok=True)
        path = out / "table2.csv"
        lines = [",".join(header)] + [
            ",".join((label, str(limit), str(m.walk_trials), str(m.fly_trials),
                      str(m.fail_trials), _num(m.avg_cost), _num(m.avg_ticks)))
            for label, limit, m in rows
        ]
        path.write_text("\n".join(lines) + "\n", encoding="utf-8")
        print("wrote", path)
    return 0


def _cmd_oracle(args: argparse.Namespace) -> int:
    print(_num(expected_ticks_per_step(args.probs)))
    return 0


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ConfigurationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())

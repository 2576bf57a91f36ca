"""Run configuration: TOML schema, validation, defaults, round-trip dump.

An empty document yields the default walking comparison (symmetric physics,
costs [4, 2, 1], the 216-step default track, Ratio mode, 250 trials, seed 0,
all eight policies). Top-level keys select the scenario kind and the sweep;
kind-specific fields live in a ``[terrain]`` or ``[fire]`` table. Unknown
keys are rejected by name.
"""
from __future__ import annotations

import sys
from dataclasses import dataclass

if sys.version_info >= (3, 11):
    import tomllib
else:  # pragma: no cover - depends on interpreter version
    import tomli as tomllib

from .core import ConfigurationError
from .policies import ALL_TABLE_POLICIES, SelectorPolicy, UtilityMode, parse_policy
from .scenarios import (
    DEFAULT_COSTS,
    FireScenarioConfig,
    PhysicsMatrix,
    TerrainScenarioConfig,
    Track,
    build_default_track,
    build_fire_walk_track,
    default_fire_physics,
    default_walking_physics,
)

__all__ = ["RunConfig", "default_config", "parse_config", "load_config", "dump_config"]

_TOP_KEYS = {
    "kind", "seed", "trials", "policies", "utility_mode",
    "out_dir", "emit_csv", "emit_svg", "terrain", "fire",
}
_TERRAIN_KEYS = {"physics", "costs", "track", "persist_learning"}
_FIRE_KEYS = {
    "walk_physics", "walk_track", "walk_limit", "step_cost", "flight_cost",
    "flight_success_prob", "fire_physics", "extinguisher_cost",
    "fire_type_distribution",
}


@dataclass(frozen=True)
class RunConfig:
    """Fully validated run request: scenario, policy sweep, output options."""

    scenario: TerrainScenarioConfig | FireScenarioConfig
    policies: tuple[SelectorPolicy, ...]
    out_dir: str = "out"
    emit_csv: bool = True
    emit_svg: bool = True

    @property
    def kind(self) -> str:
        return "terrain" if isinstance(self.scenario, TerrainScenarioConfig) else "fire"


def default_config() -> RunConfig:
    """The walking comparison the summary table is built from."""
    return RunConfig(
        scenario=TerrainScenarioConfig(),
        policies=ALL_TABLE_POLICIES,
    )


def _reject_unknown(table: dict, allowed: set[str], where: str) -> None:
    for key in table:
        if key not in allowed:
            raise ConfigurationError(f"unknown configuration key '{where}{key}'")


def _expect(table: dict, key: str, types, where: str = ""):
    value = table[key]
    if isinstance(value, bool) and types is not bool or not isinstance(value, types):
        raise ConfigurationError(
            f"configuration key '{where}{key}' has wrong type {type(value).__name__}"
        )
    return value


def _physics(table: dict, key: str, where: str) -> PhysicsMatrix:
    rows = _expect(table, key, list, where)
    try:
        return PhysicsMatrix(tuple(tuple(float(p) for p in row) for row in rows))
    except (TypeError, ValueError) as exc:
        raise ConfigurationError(f"bad physics matrix at '{where}{key}': {exc}") from exc


def _track(table: dict, key: str, where: str) -> Track:
    segments = _expect(table, key, list, where)
    try:
        return Track(tuple((int(t), int(n)) for t, n in segments))
    except (TypeError, ValueError) as exc:
        raise ConfigurationError(f"bad track at '{where}{key}': {exc}") from exc


def parse_config(text: str) -> RunConfig:
    """Parse and validate a TOML run configuration."""
    try:
        doc = tomllib.loads(text)
    except tomllib.TOMLDecodeError as exc:
        raise ConfigurationError(f"configuration syntax error: {exc}") from exc

    _reject_unknown(doc, _TOP_KEYS, "")
    kind = doc.get("kind", "terrain")
    if kind not in ("terrain", "fire"):
        raise ConfigurationError(f"unknown scenario kind '{kind}'")
    if kind == "terrain" and "fire" in doc:
        raise ConfigurationError("unknown configuration key 'fire' (kind is terrain)")
    if kind == "fire" and "terrain" in doc:
        raise ConfigurationError("unknown configuration key 'terrain' (kind is fire)")

    seed = int(_expect(doc, "seed", int)) if "seed" in doc else 0
    trials = int(_expect(doc, "trials", int)) if "trials" in doc else None
    mode = UtilityMode.RATIO
    if "utility_mode" in doc:
        raw = _expect(doc, "utility_mode", str)
        try:
            mode = UtilityMode(raw)
        except ValueError:
            raise ConfigurationError(f"unknown utility_mode '{raw}'") from None
    if "policies" in doc:
        names = _expect(doc, "policies", list)
        policies = tuple(parse_policy(str(name)) for name in names)
        if not policies:
            raise ConfigurationError("'policies' must not be empty")
    else:
        policies = ALL_TABLE_POLICIES

    if kind == "terrain":
        sub = doc.get("terrain", {})
        _reject_unknown(sub, _TERRAIN_KEYS, "terrain.")
        scenario = TerrainScenarioConfig(
            physics=_physics(sub, "physics", "terrain.") if "physics" in sub
            else default_walking_physics(),
            costs=tuple(float(c) for c in _expect(sub, "costs", list, "terrain."))
            if "costs" in sub else DEFAULT_COSTS,
            track=_track(sub, "track", "terrain.") if "track" in sub
            else build_default_track(),
            trials=trials if trials is not None else 250,
            policy=policies[0],
            utility_mode=mode,
            seed=seed,
            persist_learning=bool(sub.get("persist_learning", False)),
        )
    else:
        sub = doc.get("fire", {})
        _reject_unknown(sub, _FIRE_KEYS, "fire.")
        scenario = FireScenarioConfig(
            walk_physics=_physics(sub, "walk_physics", "fire.") if "walk_physics" in sub
            else default_walking_physics(),
            walk_track=_track(sub, "walk_track", "fire.") if "walk_track" in sub
            else build_fire_walk_track(),
            walk_limit=int(_expect(sub, "walk_limit", int, "fire."))
            if "walk_limit" in sub else 120,
            step_cost=float(sub.get("step_cost", 1.0)),
            flight_cost=float(sub.get("flight_cost", 350.0)),
            flight_success_prob=float(sub.get("flight_success_prob", 0.9)),
            fire_physics=_physics(sub, "fire_physics", "fire.") if "fire_physics" in sub
            else default_fire_physics(),
            extinguisher_cost=float(sub.get("extinguisher_cost", 1.0)),
            fire_type_distribution=tuple(
                float(p) for p in sub["fire_type_distribution"]
            ) if "fire_type_distribution" in sub else (1 / 3, 1 / 3, 1 / 3),
            trials=trials if trials is not None else 1000,
            policy=policies[0],
            utility_mode=mode,
            seed=seed,
        )

    return RunConfig(
        scenario=scenario,
        policies=policies,
        out_dir=str(doc.get("out_dir", "out")),
        emit_csv=bool(doc.get("emit_csv", True)),
        emit_svg=bool(doc.get("emit_svg", True)),
    )


def load_config(path: str) -> RunConfig:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_config(fh.read())


def _toml_value(value) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, (int, float)):
        return repr(value)
    if isinstance(value, str):
        return '"' + value.replace("\\", "\\\\").replace('"', '\\"') + '"'
    if isinstance(value, (list, tuple)):
        return "[" + ", ".join(_toml_value(v) for v in value) + "]"
    raise TypeError(f"cannot serialize {type(value).__name__}")


def dump_config(config: RunConfig) -> str:
    """Serialize a RunConfig to TOML; parse_config round-trips it exactly."""
    lines = [
        f"kind = {_toml_value(config.kind)}",
        f"seed = {_toml_value(config.scenario.seed)}",
        f"trials = {_toml_value(config.scenario.trials)}",
        f"policies = {_toml_value([p.key for p in config.policies])}",
        f"utility_mode = {_toml_value(config.scenario.utility_mode.value)}",
        f"out_dir = {_toml_value(config.out_dir)}",
        f"emit_csv = {_toml_value(config.emit_csv)}",
        f"emit_svg = {_toml_value(config.emit_svg)}",
        "",
    ]
    s = config.scenario
    if isinstance(s, TerrainScenarioConfig):
        lines += [
            "[terrain]",
            f"physics = {_toml_value(s.physics.probs)}",
            f"costs = {_toml_value(s.costs)}",
            f"track = {_toml_value(s.track.segments)}",
            f"persist_learning = {_toml_value(s.persist_learning)}",
        ]
    else:
        lines += [
            "[fire]",
            f"walk_physics = {_toml_value(s.walk_physics.probs)}",
            f"walk_track = {_toml_value(s.walk_track.segments)}",
            f"walk_limit = {_toml_value(s.walk_limit)}",
            f"step_cost = {_toml_value(s.step_cost)}",
            f"flight_cost = {_toml_value(s.flight_cost)}",
            f"flight_success_prob = {_toml_value(s.flight_success_prob)}",
            f"fire_physics = {_toml_value(s.fire_physics.probs)}",
            f"extinguisher_cost = {_toml_value(s.extinguisher_cost)}",
            f"fire_type_distribution = {_toml_value(s.fire_type_distribution)}",
        ]
    return "\n".join(lines) + "\n"

"""Robot-cell simulator and adaptive stress testing for human-robot contact hazards."""

from ._core import (
    ACTION_COUNT,
    Scenario,
    ScenarioParseError,
    ScenarioRefError,
    ScenarioValidationError,
    SimulationError,
    action_name,
    builtin_scenario,
    load_scenario,
    parse_action_list,
    replay,
    resolve_scenario,
    safety_index,
    search,
    step_reward,
    trace_jsonl,
)

BUILTIN_SCENARIOS = ("s1-scanner-width", "s2-elbow-bay", "s3-fence-gap", "safe-baseline", "mini-reach")

__all__ = [
    "ACTION_COUNT",
    "BUILTIN_SCENARIOS",
    "Scenario",
    "ScenarioParseError",
    "ScenarioRefError",
    "ScenarioValidationError",
    "SimulationError",
    "action_name",
    "builtin_scenario",
    "load_scenario",
    "parse_action_list",
    "replay",
    "resolve_scenario",
    "safety_index",
    "search",
    "step_reward",
    "trace_jsonl",
]

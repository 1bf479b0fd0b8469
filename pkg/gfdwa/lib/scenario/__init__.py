"""Scenario definitions and reference trajectory sampling."""

from .loader import (
    BUNDLED_SCENARIOS,
    bundled_scenario_path,
    get_bundled_scenario_dir,
    list_scenarios,
    load_scenario,
    load_scenario_file,
)
from .models import ObstacleSpec, RobotSpec, SamplingSpec, Scenario
from .reference import sample_reference

__all__ = [
    "BUNDLED_SCENARIOS",
    "ObstacleSpec",
    "RobotSpec",
    "SamplingSpec",
    "Scenario",
    "bundled_scenario_path",
    "get_bundled_scenario_dir",
    "list_scenarios",
    "load_scenario",
    "load_scenario_file",
    "sample_reference",
]

"""Scenario loading, validation and parameter overrides."""

import math
from pathlib import Path
from typing import Any, Dict, List, Mapping, Optional, Sequence, Union

import yaml
from pydantic import BaseModel, ValidationError

from ..errors import InvariantViolation, OverrideError, SchemaError
from ..geometry import ObstacleMap, PolygonObstacle, inflate
from ..logger import get_logger
from .models import Scenario

# Reference paths must begin within this distance of the robot start
REFERENCE_START_TOLERANCE = 1.0

BUNDLED_SCENARIOS = ("s1", "s2", "s3", "s4", "s5", "multi1", "multi2")


def get_bundled_scenario_dir() -> Path:
    """Directory holding the scenario files shipped with the package."""
    return Path(__file__).parent.parent.parent / "scenarios"


def bundled_scenario_path(name: str) -> Path:
    return get_bundled_scenario_dir() / f"{name}.yaml"


def load_scenario(document: Mapping[str, Any], overrides: Optional[Sequence[str]] = None) -> Scenario:
    """Validate a scenario document and check its physical invariants.

    Args:
        document: Parsed scenario document
        overrides: Optional 'dotted.path=value' strings applied after validation

    Returns:
        Validated scenario

    Raises:
        SchemaError: If the document does not match the schema
        InvariantViolation: If starts, goals or references are inconsistent
        OverrideError: If an override names an unknown field
    """
    if not isinstance(document, Mapping):
        raise SchemaError(f"gfdwa: Scenario document must be a mapping, got {type(document).__name__}")

    scenario = _validate(document)
    if overrides:
        plain = _plain(scenario)
        for override in overrides:
            _apply_override(plain, override)
        scenario = _validate(plain)

    check_invariants(scenario)
    return scenario


def load_scenario_file(path: Union[str, Path], overrides: Optional[Sequence[str]] = None) -> Scenario:
    """Read and validate a scenario YAML file.

    Raises:
        FileNotFoundError: If the file does not exist
        SchemaError: If the YAML is malformed or does not match the schema
        InvariantViolation: If the scenario is physically inconsistent
    """
    logger = get_logger()
    scenario_file = Path(path)
    if not scenario_file.exists():
        raise FileNotFoundError(f"gfdwa: Scenario file not found: {scenario_file}")

    try:
        with open(scenario_file, 'r') as f:
            document = yaml.safe_load(f)
    except yaml.YAMLError as e:
        raise SchemaError(f"gfdwa: Invalid YAML in scenario file {scenario_file}: {e}")

    try:
        scenario = load_scenario(document, overrides)
    except (SchemaError, InvariantViolation, OverrideError) as e:
        raise type(e)(f"{scenario_file}: {e}")

    logger.debug(f"Loaded scenario '{scenario.name}' from {scenario_file} "
                 f"({len(scenario.obstacles)} obstacles, {len(scenario.robots)} robots)")
    return scenario


def check_invariants(scenario: Scenario) -> None:
    """Raise InvariantViolation naming the first inconsistent element."""
    inflated = []
    for index, obstacle in enumerate(scenario.obstacles):
        try:
            inflated.append(inflate(PolygonObstacle(obstacle.vertices), scenario.robot_shape.radius))
        except ValueError as e:
            raise InvariantViolation(f"gfdwa: obstacles.{index} ({obstacle.name or 'unnamed'}): {e}")
    obstacles = ObstacleMap(inflated)

    seen = set()
    for index, robot in enumerate(scenario.robots):
        where = f"robots.{index} ({robot.id})"
        if robot.id in seen:
            raise InvariantViolation(f"gfdwa: {where}: duplicate robot id")
        seen.add(robot.id)

        if not -math.pi < robot.start.theta <= math.pi:
            raise InvariantViolation(f"gfdwa: {where}: start.theta {robot.start.theta} outside (-pi, pi]")
        if obstacles.in_collision([robot.start.position])[0]:
            raise InvariantViolation(f"gfdwa: {where}: start {robot.start.position} is inside an inflated obstacle")
        if obstacles.in_collision([robot.goal])[0]:
            raise InvariantViolation(f"gfdwa: {where}: goal {robot.goal} is inside an inflated obstacle")

        first, last = robot.reference_path[0], robot.reference_path[-1]
        if math.dist(first, robot.start.position) > REFERENCE_START_TOLERANCE:
            raise InvariantViolation(f"gfdwa: {where}: reference_path starts {math.dist(first, robot.start.position):.2f} m from start")
        if math.dist(last, robot.goal) > scenario.goal_tolerance:
            raise InvariantViolation(f"gfdwa: {where}: reference_path ends {math.dist(last, robot.goal):.2f} m from goal")

    for i, a in enumerate(scenario.robots):
        for b in scenario.robots[i + 1:]:
            if math.dist(a.start.position, b.start.position) < 2.0 * scenario.robot_radius:
                raise InvariantViolation(f"gfdwa: robots {a.id} and {b.id} overlap at their start positions")


def _validate(document: Mapping[str, Any]) -> Scenario:
    try:
        return Scenario.model_validate(document)
    except ValidationError as e:
        problems = "; ".join(
            f"{'.'.join(str(part) for part in error['loc']) or '<root>'}: {error['msg']}"
            for error in e.errors()
        )
        raise SchemaError(f"gfdwa: Scenario schema validation failed: {problems}")


def _plain(value: Any) -> Any:
    """Nested dicts/lists with every field present, including defaults."""
    if isinstance(value, BaseModel):
        return {name: _plain(getattr(value, name)) for name in type(value).model_fields}
    if isinstance(value, tuple) and hasattr(value, "_fields"):
        return {name: _plain(getattr(value, name)) for name in value._fields}
    if isinstance(value, (list, tuple)):
        return [_plain(item) for item in value]
    return value


def _apply_override(document: Dict[str, Any], override: str) -> None:
    if "=" not in override:
        raise OverrideError(f"gfdwa: Override '{override}' is not of the form key=value")
    path, raw = override.split("=", 1)
    keys = path.strip().split(".")

    try:
        value = yaml.safe_load(raw)
    except yaml.YAMLError as e:
        raise OverrideError(f"gfdwa: Override '{override}' has an unparsable value: {e}")

    container: Any = document
    for depth, key in enumerate(keys):
        last = depth == len(keys) - 1
        if isinstance(container, dict):
            if key not in container:
                raise OverrideError(f"gfdwa: Override '{path}' names unknown field '{key}'")
            if last:
                container[key] = value
            else:
                container = container[key]
        elif isinstance(container, list):
            if not key.isdigit() or int(key) >= len(container):
                raise OverrideError(f"gfdwa: Override '{path}' has bad index '{key}'")
            if last:
                container[int(key)] = value
            else:
                container = container[int(key)]
        else:
            raise OverrideError(f"gfdwa: Override '{path}' descends into scalar at '{key}'")


def list_scenarios(directory: Union[str, Path]) -> List[Path]:
    """Scenario files of a directory in name order, expectation files excluded."""
    return sorted(
        p for p in Path(directory).glob("*.yaml")
        if p.is_file() and p.stem != "expectations"
    )

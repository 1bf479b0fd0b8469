"""Records produced by a simulation run."""

import math
from enum import Enum
from typing import Any, Dict, List, Optional, Tuple

from pydantic import BaseModel, ConfigDict, Field

from ..planner.models import ControlInput, RobotState


class RobotStatus(str, Enum):
    """Where a robot stands after adjudication."""
    ACTIVE = "active"
    REACHED = "reached"
    COLLIDED = "collided"
    TIMEOUT = "timeout"


class TraceRecord(BaseModel):
    """One robot at one step: the state it planned from and what it chose.

    Infinite costs serialize as the JSON constant Infinity.
    """
    model_config = ConfigDict(frozen=True, ser_json_inf_nan="constants")

    step: int
    robot_id: str
    state: RobotState
    control: ControlInput
    candidate_count: int
    feasible_count: int
    all_infeasible: bool
    costs: Dict[str, float]
    status: RobotStatus


class CandidateRecord(BaseModel):
    """Endpoints of every candidate of one planning step, for plotting."""
    model_config = ConfigDict(frozen=True)

    step: int
    robot_id: str
    endpoints: List[Tuple[float, float]]
    feasible: List[bool]
    selected: Optional[int] = None


class RobotOutcome(BaseModel):
    robot_id: str
    status: RobotStatus
    steps_to_goal: Optional[int] = None
    final_state: RobotState
    collision_step: Optional[int] = None
    emergency_stops: int = 0


class SimOutcome(BaseModel):
    """Result of one scenario run under one planner variant."""

    scenario: str
    variant: str
    step_budget: int
    steps_run: int
    robots: Dict[str, RobotOutcome]
    min_robot_distance: float = math.inf
    min_obstacle_clearance: float = math.inf
    planner: Dict[str, Any] = Field(default_factory=dict)
    trace: List[TraceRecord] = Field(default_factory=list)
    candidates: List[CandidateRecord] = Field(default_factory=list)

    @property
    def success(self) -> bool:
        return all(r.status == RobotStatus.REACHED for r in self.robots.values())


class MetricsSummary(BaseModel):
    """Outcome digest written next to the trace."""

    scenario: str
    variant: str
    success: bool
    steps: int
    statuses: Dict[str, RobotStatus]
    steps_to_goal: Dict[str, Optional[int]]
    min_robot_distance: Optional[float]
    min_obstacle_clearance: Optional[float]
    emergency_stops: int


def metrics(outcome: SimOutcome) -> MetricsSummary:
    """Success flag, completion steps and clearance extremes of a run.

    steps is the last arrival on success, the step budget when any robot
    timed out, and otherwise the step the run ended at.
    """
    statuses = {rid: r.status for rid, r in sorted(outcome.robots.items())}
    if outcome.success:
        steps = max(r.steps_to_goal or 0 for r in outcome.robots.values())
    elif any(s == RobotStatus.TIMEOUT for s in statuses.values()):
        steps = outcome.step_budget
    else:
        steps = outcome.steps_run

    return MetricsSummary(
        scenario=outcome.scenario,
        variant=outcome.variant,
        success=outcome.success,
        steps=steps,
        statuses=statuses,
        steps_to_goal={rid: r.steps_to_goal for rid, r in sorted(outcome.robots.items())},
        min_robot_distance=_finite(outcome.min_robot_distance),
        min_obstacle_clearance=_finite(outcome.min_obstacle_clearance),
        emergency_stops=sum(r.emergency_stops for r in outcome.robots.values()),
    )


def _finite(value: float) -> Optional[float]:
    # Solo runs and open maps have no finite extreme
    return value if math.isfinite(value) else None

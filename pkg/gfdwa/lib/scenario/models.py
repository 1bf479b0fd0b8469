"""Scenario document schema with pydantic validation."""

from typing import Any, List, Optional, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator

from ..geometry import ObstacleMap, PolygonObstacle, RobotShape, inflate
from ..gpdf.kernel import KernelParams
from ..planner.dwa import PlannerSettings
from ..planner.models import ControlLimits, CostWeights, RobotState

Point = Tuple[float, float]


class ObstacleSpec(BaseModel):
    """One static polygon obstacle, vertices in meters."""
    model_config = ConfigDict(frozen=True, extra="forbid")

    name: str = ""
    vertices: List[Point] = Field(..., min_length=3)


class RobotSpec(BaseModel):
    """One robot: start pose, goal, global reference path and reference speed."""
    model_config = ConfigDict(frozen=True, extra="forbid")

    id: str = Field(..., min_length=1)
    start: RobotState
    goal: Point
    reference_path: List[Point] = Field(..., min_length=2)
    v_ref: float = Field(..., ge=0, description="Reference speed in m/s")

    @field_validator("start", mode="before")
    @classmethod
    def _as_state(cls, value: Any) -> Any:
        if isinstance(value, dict):
            return (value.get("x"), value.get("y"), value.get("theta", 0.0))
        return value


class SamplingSpec(BaseModel):
    """Candidate sampling resolution and cap."""
    model_config = ConfigDict(frozen=True, extra="forbid")

    dv: float = Field(default=0.3, gt=0)
    domega: float = Field(default=0.08, gt=0)
    max_candidates: int = Field(default=84, ge=1)


class Scenario(BaseModel):
    """Immutable, validated scenario."""
    model_config = ConfigDict(frozen=True, extra="forbid")

    name: str = Field(..., min_length=1)
    description: str = ""
    obstacles: List[ObstacleSpec] = Field(default_factory=list)
    robots: List[RobotSpec] = Field(..., min_length=1)
    limits: ControlLimits = Field(default_factory=ControlLimits)
    weights: CostWeights = Field(default_factory=CostWeights)
    kernel: KernelParams = Field(default_factory=KernelParams)
    sampling: SamplingSpec = Field(default_factory=SamplingSpec)
    horizon: int = Field(default=20, ge=1)
    dt: float = Field(default=0.2, gt=0)
    step_budget: int = Field(default=400, ge=1)
    goal_tolerance: float = Field(default=0.5, gt=0)
    robot_radius: float = Field(default=0.5, gt=0)
    boundary_resolution: float = Field(default=0.1, gt=0, description="Spacing of obstacle boundary samples")

    def polygons(self) -> List[PolygonObstacle]:
        return [PolygonObstacle(o.vertices) for o in self.obstacles]

    @property
    def robot_shape(self) -> RobotShape:
        return RobotShape(radius=self.robot_radius)

    def inflated_polygons(self) -> List[PolygonObstacle]:
        return [inflate(p, self.robot_shape.radius) for p in self.polygons()]

    def obstacle_map(self) -> ObstacleMap:
        """Obstacles inflated by the robot radius; robots are points against it."""
        return ObstacleMap(self.inflated_polygons())

    def static_points(self) -> np.ndarray:
        return self.obstacle_map().boundary_points(self.boundary_resolution)

    def planner_settings(self, weights: Optional[CostWeights] = None) -> PlannerSettings:
        return PlannerSettings(
            limits=self.limits,
            weights=weights or self.weights,
            horizon=self.horizon,
            dt=self.dt,
            resolution=(self.sampling.dv, self.sampling.domega),
            max_candidates=self.sampling.max_candidates,
            robot_radius=self.robot_radius,
        )

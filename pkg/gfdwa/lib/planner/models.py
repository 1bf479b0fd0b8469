"""Value types of the dynamic window planner."""

import math
from typing import Any, NamedTuple, Optional, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator


class RobotState(NamedTuple):
    """Planar pose of a unicycle robot; theta in (-pi, pi]."""
    x: float
    y: float
    theta: float

    @property
    def position(self) -> Tuple[float, float]:
        return self.x, self.y


class ControlInput(NamedTuple):
    """Linear speed v (m/s) and angular velocity omega (rad/s)."""
    v: float
    omega: float


def _control(value: Any) -> Any:
    # Scenario documents spell controls as {v: .., omega: ..}
    if isinstance(value, dict):
        return (value.get("v"), value.get("omega"))
    return value


class ControlLimits(BaseModel):
    """Absolute control bounds and per-step change bounds."""
    model_config = ConfigDict(frozen=True, extra="forbid")

    u_min: ControlInput = ControlInput(0.0, -1.0)
    u_max: ControlInput = ControlInput(1.5, 1.0)
    du_minus_max: ControlInput = ControlInput(0.3, 0.16)
    du_plus_max: ControlInput = ControlInput(0.3, 0.16)

    @field_validator("u_min", "u_max", "du_minus_max", "du_plus_max", mode="before")
    @classmethod
    def _as_control(cls, value: Any) -> Any:
        return _control(value)

    @model_validator(mode="after")
    def _consistent(self) -> "ControlLimits":
        if self.u_min.v > self.u_max.v or self.u_min.omega > self.u_max.omega:
            raise ValueError("u_min must not exceed u_max componentwise")
        if min(self.du_minus_max) < 0 or min(self.du_plus_max) < 0:
            raise ValueError("change bounds must be non-negative")
        return self


class CostWeights(BaseModel):
    """Weights and shape parameters of the planner objective."""
    model_config = ConfigDict(frozen=True, extra="forbid")

    q_col: float = Field(default=1.0, ge=0)
    q_col_dist: float = Field(default=1.0, ge=0)
    q_col_grad: float = Field(default=0.02, ge=0)
    q_ref: float = Field(default=1.0, ge=0)
    q_vel: float = Field(default=0.3, ge=0)
    q_tar: float = Field(default=0.3, ge=0)
    beta: float = Field(default=2.0, ge=0, description="Exponent rate of the gradient term")
    dtheta_thre: float = Field(default=2.0 * math.pi / 3.0, description="Heading misalignment threshold, radians")
    activation_range: float = Field(default=1.0, ge=0, description="Collision terms apply within this distance, meters")

    @field_validator("dtheta_thre")
    @classmethod
    def _threshold_range(cls, value: float) -> float:
        if not math.pi / 2 < value <= math.pi:
            raise ValueError(f"dtheta_thre must lie in (pi/2, pi], got {value}")
        return value


class Trajectory(NamedTuple):
    """Constant-control rollout; states[0] is the state planning started from."""
    states: Tuple[RobotState, ...]
    control: ControlInput

    @property
    def horizon(self) -> int:
        return len(self.states) - 1

    @property
    def endpoint(self) -> RobotState:
        return self.states[-1]

    def positions(self) -> np.ndarray:
        """(N+1, 2) array of positions."""
        return np.array([(s.x, s.y) for s in self.states], dtype=float)

    def headings(self) -> np.ndarray:
        return np.array([s.theta for s in self.states], dtype=float)


class CandidateEvaluation(NamedTuple):
    """Cost breakdown of one candidate; total is +inf when infeasible."""
    trajectory: Trajectory
    feasible: bool
    j_col_dist: float
    j_col_grad: float
    j_ref: float
    j_vel: float
    j_tar: float
    total: float

    def breakdown(self) -> dict:
        return {
            "j_col_dist": self.j_col_dist,
            "j_col_grad": self.j_col_grad,
            "j_ref": self.j_ref,
            "j_vel": self.j_vel,
            "j_tar": self.j_tar,
            "total": self.total,
        }


class PlanDiagnostics(NamedTuple):
    """What the planner saw when it made a selection."""
    window: Tuple[ControlInput, ControlInput]
    evaluations: Tuple[CandidateEvaluation, ...]
    selected_index: Optional[int]
    all_infeasible: bool
    selected: Optional[CandidateEvaluation]

    @property
    def feasible_count(self) -> int:
        return sum(1 for e in self.evaluations if e.feasible)

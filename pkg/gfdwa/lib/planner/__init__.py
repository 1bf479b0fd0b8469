"""Gradient field dynamic window planner."""

from .costs import (
    bearing,
    cost_col_dist,
    cost_col_grad,
    cost_ref,
    cost_tar,
    cost_vel,
    gradient_cost_map,
)
from .dwa import DwaPlanner, PlannerSettings, PlanningContext, emergency_stop, evaluate, plan
from .factory import PlannerFactory
from .models import (
    CandidateEvaluation,
    ControlInput,
    ControlLimits,
    CostWeights,
    PlanDiagnostics,
    RobotState,
    Trajectory,
)
from .window import dynamic_window, rollout, sample_candidates, step, wrap_angle

__all__ = [
    "CandidateEvaluation",
    "ControlInput",
    "ControlLimits",
    "CostWeights",
    "DwaPlanner",
    "PlanDiagnostics",
    "PlannerFactory",
    "PlannerSettings",
    "PlanningContext",
    "RobotState",
    "Trajectory",
    "bearing",
    "cost_col_dist",
    "cost_col_grad",
    "cost_ref",
    "cost_tar",
    "cost_vel",
    "dynamic_window",
    "emergency_stop",
    "evaluate",
    "gradient_cost_map",
    "plan",
    "rollout",
    "sample_candidates",
    "step",
    "wrap_angle",
]

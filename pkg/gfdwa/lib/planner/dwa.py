"""Gradient field dynamic window planner: candidate evaluation and selection."""

import math
from typing import List, NamedTuple, Optional, Sequence, Tuple

import numpy as np

from ..errors import NoCandidates
from ..geometry import ObstacleMap
from ..gpdf.base import DistanceField
from ..logger import get_logger
from .costs import col_dist_term, col_grad_term, cost_ref, cost_tar, cost_vel
from .models import (
    CandidateEvaluation,
    ControlInput,
    ControlLimits,
    CostWeights,
    PlanDiagnostics,
    RobotState,
    Trajectory,
)
from .window import dynamic_window, rollout, sample_candidates


class PlannerSettings(NamedTuple):
    """Parameters fixed for the lifetime of a planner."""
    limits: ControlLimits
    weights: CostWeights
    horizon: int = 20
    dt: float = 0.2
    resolution: Tuple[float, float] = (0.3, 0.08)
    max_candidates: int = 84
    robot_radius: float = 0.5


class PlanningContext(NamedTuple):
    """Everything one planning step reads besides the robot's own state.

    fleet_positions holds the other robots' predicted positions aligned with
    the candidate's states 1..N, shape (R, N, 2); R may be zero.
    """
    settings: PlannerSettings
    field: DistanceField
    obstacles: ObstacleMap
    reference: np.ndarray
    target: Tuple[float, float]
    v_ref: float
    fleet_positions: Optional[np.ndarray] = None


class _Samples(NamedTuple):
    distances: np.ndarray
    gradients: np.ndarray
    feasible: bool


def evaluate(traj: Trajectory, context: PlanningContext) -> CandidateEvaluation:
    """Score one candidate trajectory."""
    future = traj.positions()[1:]
    distances, gradients = context.field.query_field(future)
    feasible = not bool(np.any(context.obstacles.in_collision(future)))
    feasible = feasible and not bool(np.any(_fleet_overlap(future[None], context)))
    return _score(traj, _Samples(distances, gradients, feasible), context)


def plan(state: RobotState, prev_u: ControlInput,
         context: PlanningContext) -> Tuple[ControlInput, Trajectory, PlanDiagnostics]:
    """Pick the minimum-cost candidate inside the dynamic window.

    Ties go to the smaller |omega|, then the larger v, then the lower sample
    index. When every candidate is infeasible an emergency stop is returned
    and flagged in the diagnostics.

    Raises:
        NoCandidates: If the sampler returns no controls
    """
    settings = context.settings
    window = dynamic_window(prev_u, settings.limits)
    controls = sample_candidates(window, settings.resolution, settings.max_candidates)
    if not controls:
        raise NoCandidates(f"gfdwa: No candidates sampled from window {window}")

    trajectories = [rollout(state, u, settings.horizon, settings.dt) for u in controls]
    evaluations = tuple(_evaluate_batch(trajectories, context))

    best = min(range(len(evaluations)), key=lambda i: _rank(evaluations[i], i))
    if evaluations[best].feasible:
        selected = evaluations[best]
        diagnostics = PlanDiagnostics(window, evaluations, best, False, selected)
        return selected.trajectory.control, selected.trajectory, diagnostics

    stop = emergency_stop(window)
    stop_traj = rollout(state, stop, settings.horizon, settings.dt)
    get_logger().warning(
        f"All {len(evaluations)} candidates infeasible at ({state.x:.2f}, {state.y:.2f}), emergency stop"
    )
    diagnostics = PlanDiagnostics(window, evaluations, None, True, evaluate(stop_traj, context))
    return stop, stop_traj, diagnostics


def emergency_stop(window: Tuple[ControlInput, ControlInput]) -> ControlInput:
    """Slowest non-negative speed the window allows, with omega as close to 0 as it allows."""
    lower, upper = window
    return ControlInput(
        v=min(max(lower.v, 0.0), upper.v),
        omega=min(max(0.0, lower.omega), upper.omega),
    )


def _rank(evaluation: CandidateEvaluation, index: int) -> Tuple[bool, float, float, float, int]:
    control = evaluation.trajectory.control
    return (not evaluation.feasible, evaluation.total, abs(control.omega), -control.v, index)


def _evaluate_batch(trajectories: Sequence[Trajectory], context: PlanningContext) -> List[CandidateEvaluation]:
    horizon = trajectories[0].horizon
    future = np.stack([t.positions()[1:] for t in trajectories])
    flat = future.reshape(-1, 2)

    distances, gradients = context.field.query_field(flat)
    distances = distances.reshape(len(trajectories), horizon)
    gradients = gradients.reshape(len(trajectories), horizon, 2)

    blocked = context.obstacles.in_collision(flat).reshape(len(trajectories), horizon).any(axis=1)
    blocked |= _fleet_overlap(future, context)

    return [
        _score(traj, _Samples(distances[i], gradients[i], not bool(blocked[i])), context)
        for i, traj in enumerate(trajectories)
    ]


def _fleet_overlap(future: np.ndarray, context: PlanningContext) -> np.ndarray:
    """Per candidate, whether any state comes within two radii of a predicted robot position."""
    others = context.fleet_positions
    if others is None or len(others) == 0:
        return np.zeros(len(future), dtype=bool)
    # (C, 1, N, 2) - (1, R, N, 2) -> (C, R, N)
    gaps = np.linalg.norm(future[:, None, :, :] - others[None, :, :, :], axis=-1)
    return np.any(gaps < 2.0 * context.settings.robot_radius, axis=(1, 2))


def _score(traj: Trajectory, samples: _Samples, context: PlanningContext) -> CandidateEvaluation:
    weights = context.settings.weights
    j_col_dist = col_dist_term(samples.distances, weights)
    j_col_grad = col_grad_term(samples.distances, samples.gradients, traj.headings()[1:], weights)
    j_ref = cost_ref(traj, context.reference)
    j_vel = cost_vel(traj.control, context.v_ref)
    j_tar = cost_tar(traj, context.target)

    if not samples.feasible:
        total = math.inf
    else:
        j_col = _weighted(weights.q_col_dist, j_col_dist) + _weighted(weights.q_col_grad, j_col_grad)
        total = (_weighted(weights.q_col, j_col) + weights.q_ref * j_ref
                 + weights.q_vel * j_vel + weights.q_tar * j_tar)

    return CandidateEvaluation(traj, samples.feasible, j_col_dist, j_col_grad, j_ref, j_vel, j_tar, total)


def _weighted(weight: float, term: float) -> float:
    # A zero weight switches a term off even when the term is infinite
    return 0.0 if weight == 0.0 else weight * term


class DwaPlanner:
    """Planner bound to fixed settings; the simulator holds one per robot."""

    def __init__(self, settings: PlannerSettings, variant: str = "gf-dwa") -> None:
        self.settings = settings
        self.variant = variant

    def context(self, field: DistanceField, obstacles: ObstacleMap, reference: np.ndarray,
                target: Tuple[float, float], v_ref: float,
                fleet_positions: Optional[np.ndarray] = None) -> PlanningContext:
        return PlanningContext(self.settings, field, obstacles, np.asarray(reference, dtype=float),
                               target, v_ref, fleet_positions)

    def plan(self, state: RobotState, prev_u: ControlInput,
             context: PlanningContext) -> Tuple[ControlInput, Trajectory, PlanDiagnostics]:
        return plan(state, prev_u, context)

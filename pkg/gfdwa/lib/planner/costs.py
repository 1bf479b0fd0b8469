"""Cost terms of the gradient field dynamic window planner."""

import math
from typing import Sequence, Tuple

import numpy as np

from ..errors import DegenerateDirection
from ..gpdf.base import DistanceField
from .models import ControlInput, CostWeights, Trajectory
from .window import wrap_angle, wrap_angles

# Positions closer than this have no defined bearing
BEARING_EPS = 1e-9


def col_dist_term(distances: np.ndarray, weights: CostWeights) -> float:
    """Reciprocal of the smallest distance; 0 outside the activation range."""
    nearest = float(np.min(distances))
    if nearest > weights.activation_range:
        return 0.0
    if nearest <= 0.0:
        return math.inf
    return 1.0 / nearest


def col_grad_term(distances: np.ndarray, gradients: np.ndarray,
                  headings: np.ndarray, weights: CostWeights) -> float:
    """Sum of exp(beta |dtheta|) - 1 over states heading against the gradient.

    dtheta is the wrapped difference between the robot heading and the
    gradient direction; states with a zero gradient contribute nothing.
    """
    if float(np.min(distances)) > weights.activation_range:
        return 0.0

    live = np.any(gradients != 0.0, axis=1)
    if not np.any(live):
        return 0.0

    gradient_heading = np.arctan2(gradients[live, 1], gradients[live, 0])
    misalignment = np.abs(wrap_angles(headings[live] - gradient_heading))
    active = misalignment >= weights.dtheta_thre
    return float(np.sum(np.expm1(weights.beta * misalignment[active])))


def cost_col_dist(traj: Trajectory, field: DistanceField, weights: CostWeights) -> float:
    """Distance-based collision term over states 1..N (the current state is ignored)."""
    return col_dist_term(field.query_distances(traj.positions()[1:]), weights)


def cost_col_grad(traj: Trajectory, field: DistanceField, weights: CostWeights) -> float:
    """Gradient-based collision term over states 1..N."""
    distances, gradients = field.query_field(traj.positions()[1:])
    return col_grad_term(distances, gradients, traj.headings()[1:], weights)


def cost_ref(traj: Trajectory, reference: np.ndarray) -> float:
    """Mean position deviation of states 1..N from the aligned reference points."""
    reference = np.asarray(reference, dtype=float).reshape(-1, 2)
    positions = traj.positions()[1:]
    if len(reference) != len(positions):
        raise ValueError(f"gfdwa: Reference has {len(reference)} points, trajectory has {len(positions)} future states")
    return float(np.mean(np.linalg.norm(positions - reference, axis=1)))


def cost_vel(u: ControlInput, v_ref: float) -> float:
    """Deviation of the candidate speed from the reference speed."""
    return abs(u.v - v_ref)


def bearing(origin: Sequence[float], point: Sequence[float]) -> float:
    """Direction from origin to point, radians.

    Raises:
        DegenerateDirection: If the two positions coincide
    """
    dx = point[0] - origin[0]
    dy = point[1] - origin[1]
    if math.hypot(dx, dy) <= BEARING_EPS:
        raise DegenerateDirection(f"gfdwa: No bearing from {tuple(origin)} to coincident {tuple(point)}")
    return math.atan2(dy, dx)


def cost_tar(traj: Trajectory, target: Sequence[float]) -> float:
    """Angle between the bearing to the target and the bearing to the trajectory endpoint.

    Zero when the robot sits on the target or the candidate ends where it
    started.
    """
    origin = traj.states[0].position
    try:
        to_target = bearing(origin, target)
        to_endpoint = bearing(origin, traj.endpoint.position)
    except DegenerateDirection:
        return 0.0
    return abs(wrap_angle(to_target - to_endpoint))


def gradient_cost_map(field: DistanceField, weights: CostWeights, xs: np.ndarray,
                      ys: np.ndarray, headings: Sequence[float]) -> Tuple[np.ndarray, np.ndarray]:
    """Single-state gradient cost over a grid, one layer per heading.

    Returns (distance grid, cost array of shape (len(headings), len(ys), len(xs))).
    Grid points beyond the activation range score zero.
    """
    grid_x, grid_y = np.meshgrid(np.asarray(xs, dtype=float), np.asarray(ys, dtype=float))
    points = np.column_stack([grid_x.ravel(), grid_y.ravel()])
    distances, gradients = field.query_field(points)

    live = np.any(gradients != 0.0, axis=1) & (distances <= weights.activation_range)
    gradient_heading = np.arctan2(gradients[:, 1], gradients[:, 0])

    layers = []
    for heading in headings:
        misalignment = np.abs(wrap_angles(heading - gradient_heading))
        cost = np.where(live & (misalignment >= weights.dtheta_thre),
                        np.expm1(weights.beta * misalignment), 0.0)
        layers.append(cost.reshape(grid_x.shape))
    return distances.reshape(grid_x.shape), np.stack(layers)

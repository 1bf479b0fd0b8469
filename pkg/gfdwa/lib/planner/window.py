"""Unicycle motion model, dynamic window and candidate sampling."""

import math
from typing import List, Tuple

import numpy as np

from .models import ControlInput, ControlLimits, RobotState, Trajectory

TWO_PI = 2.0 * math.pi

Window = Tuple[ControlInput, ControlInput]


def wrap_angle(angle: float) -> float:
    """Wrap an angle into (-pi, pi]."""
    return angle - TWO_PI * math.ceil((angle - math.pi) / TWO_PI)


def wrap_angles(angles: np.ndarray) -> np.ndarray:
    """Array form of wrap_angle."""
    return angles - TWO_PI * np.ceil((angles - np.pi) / TWO_PI)


def step(state: RobotState, u: ControlInput, dt: float) -> RobotState:
    """Advance the unicycle one explicit Euler step of length dt."""
    return RobotState(
        x=state.x + u.v * math.cos(state.theta) * dt,
        y=state.y + u.v * math.sin(state.theta) * dt,
        theta=wrap_angle(state.theta + u.omega * dt),
    )


def rollout(state: RobotState, u: ControlInput, horizon: int, dt: float) -> Trajectory:
    """Hold u constant for horizon steps starting from state."""
    if horizon < 1:
        raise ValueError(f"gfdwa: Rollout horizon must be at least 1, got {horizon}")

    states = [state]
    for _ in range(horizon):
        states.append(step(states[-1], u, dt))
    return Trajectory(states=tuple(states), control=u)


def dynamic_window(prev: ControlInput, limits: ControlLimits) -> Window:
    """Controls reachable from prev within one step, intersected with the absolute bounds."""
    lower_v = max(limits.u_min.v, prev.v - limits.du_minus_max.v)
    lower_omega = max(limits.u_min.omega, prev.omega - limits.du_minus_max.omega)
    upper_v = min(limits.u_max.v, prev.v + limits.du_plus_max.v)
    upper_omega = min(limits.u_max.omega, prev.omega + limits.du_plus_max.omega)

    # A previous control outside the absolute bounds would otherwise invert the window
    return (
        ControlInput(min(lower_v, upper_v), min(lower_omega, upper_omega)),
        ControlInput(upper_v, upper_omega),
    )


def sample_counts(window: Window, resolution: Tuple[float, float], cap: int) -> Tuple[int, int]:
    """Number of samples (gamma_v, gamma_omega) along each window axis."""
    if resolution[0] <= 0 or resolution[1] <= 0:
        raise ValueError(f"gfdwa: Sampling resolution must be positive, got {resolution}")
    if cap < 1:
        raise ValueError(f"gfdwa: Candidate cap must be at least 1, got {cap}")

    lower, upper = window
    gamma_v = _axis_count(upper.v - lower.v, resolution[0])
    gamma_omega = _axis_count(upper.omega - lower.omega, resolution[1])

    if gamma_v * gamma_omega > cap:
        if gamma_v >= gamma_omega:
            gamma_v = max(1, cap // gamma_omega)
            gamma_omega = min(gamma_omega, max(1, cap // gamma_v))
        else:
            gamma_omega = max(1, cap // gamma_v)
            gamma_v = min(gamma_v, max(1, cap // gamma_omega))
    return gamma_v, gamma_omega


def sample_candidates(window: Window, resolution: Tuple[float, float], cap: int) -> List[ControlInput]:
    """Grid of controls spanning the window, endpoints included.

    Ordered with v as the outer and omega as the inner index.
    """
    lower, upper = window
    gamma_v, gamma_omega = sample_counts(window, resolution, cap)
    speeds = _axis_samples(lower.v, upper.v, gamma_v)
    turn_rates = _axis_samples(lower.omega, upper.omega, gamma_omega)
    return [ControlInput(v, omega) for v in speeds for omega in turn_rates]


def _axis_count(width: float, resolution: float) -> int:
    """floor(width / resolution) + 1 samples, at least 2 on an axis of positive width.

    An axis narrower than one resolution step still yields both of its
    endpoints, so a robot at rest with a speed window [0, dv) can start
    moving.
    """
    if width <= 0.0:
        return 1
    return max(2, math.floor(width / resolution + 1e-9) + 1)


def _axis_samples(low: float, high: float, count: int) -> List[float]:
    if count == 1:
        return [low]
    return [float(value) for value in np.linspace(low, high, count)]

"""Fleet collision avoidance through shared predicted trajectories."""

from typing import Dict, Iterator, List, Mapping, NamedTuple, Optional, Sequence, Tuple, Union

import numpy as np

from .gpdf import ComposedField, DistanceField, EmptyField, FieldQuery, GpField, KernelParams, OffsetField
from .logger import get_logger
from .planner.models import Trajectory


class BoardEntry(NamedTuple):
    """One robot's prediction: the step it was selected at and its N+1 positions."""
    step: int
    positions: np.ndarray


class PredictedTrajectoryBoard:
    """Latest predicted trajectory of every robot, keyed by robot id.

    Robots plan against a snapshot taken before the round starts, so every
    entry they read was published in the previous round.
    """

    def __init__(self, entries: Optional[Mapping[str, BoardEntry]] = None) -> None:
        self._entries: Dict[str, BoardEntry] = dict(entries or {})

    @classmethod
    def at_rest(cls, positions: Mapping[str, Sequence[float]], horizon: int,
                step: int = -1) -> "PredictedTrajectoryBoard":
        """Board where every robot is predicted to hold its position for the horizon."""
        board = cls()
        for robot_id, position in positions.items():
            board.publish(robot_id, step, stationary(position, horizon))
        return board

    def publish(self, robot_id: str, step: int,
                trajectory: Union[Trajectory, np.ndarray]) -> "PredictedTrajectoryBoard":
        """Replace the robot's entry with a prediction selected at step."""
        if isinstance(trajectory, Trajectory):
            positions = trajectory.positions()
        else:
            positions = np.array(trajectory, dtype=float).reshape(-1, 2)
        positions.setflags(write=False)
        self._entries[robot_id] = BoardEntry(step, positions)
        return self

    def snapshot(self) -> "PredictedTrajectoryBoard":
        return PredictedTrajectoryBoard(self._entries)

    def entry(self, robot_id: str) -> BoardEntry:
        return self._entries[robot_id]

    def robot_ids(self) -> List[str]:
        return sorted(self._entries)

    def others(self, self_id: str) -> List[str]:
        """Ids of every other robot in ascending order."""
        return [robot_id for robot_id in self.robot_ids() if robot_id != self_id]

    def steps(self) -> List[int]:
        return sorted({entry.step for entry in self._entries.values()})

    def __len__(self) -> int:
        return len(self._entries)

    def __contains__(self, robot_id: object) -> bool:
        return robot_id in self._entries

    def __iter__(self) -> Iterator[str]:
        return iter(self.robot_ids())


def publish(board: PredictedTrajectoryBoard, robot_id: str, step: int,
            trajectory: Union[Trajectory, np.ndarray]) -> PredictedTrajectoryBoard:
    return board.publish(robot_id, step, trajectory)


def stationary(position: Sequence[float], horizon: int) -> np.ndarray:
    """Prediction of a robot that does not move: N+1 copies of its position."""
    return np.tile(np.asarray(position, dtype=float).reshape(1, 2), (horizon + 1, 1))


def fleet_points(board: PredictedTrajectoryBoard, self_id: str) -> np.ndarray:
    """Predicted positions of all other robots, concatenated in id order."""
    others = board.others(self_id)
    if not others:
        return np.empty((0, 2))
    return np.concatenate([board.entry(robot_id).positions for robot_id in others])


def build_fleet_field(board: PredictedTrajectoryBoard, self_id: str, params: KernelParams,
                      robot_radius: float) -> Optional[GpField]:
    """Fit a distance field on the other robots' predicted positions.

    Returns None when the robot is alone on the board. The field measures
    distance to predicted robot centers; UnifiedField subtracts 2r from it.
    """
    points = fleet_points(board, self_id)
    if len(points) == 0:
        return None
    field = GpField.fit(points, params)
    get_logger().debug(f"Fleet field for {self_id}: {len(field)} points from "
                       f"{len(board.others(self_id))} robots, clearance {2.0 * robot_radius:.2f} m")
    return field


def aligned_predictions(board: PredictedTrajectoryBoard, self_id: str, horizon: int) -> np.ndarray:
    """Other robots' predictions lined up with candidate states 1..N.

    Predictions are one step old, so candidate state n is compared with
    prediction index n+1, held at the last index. Shape (R, N, 2).
    """
    others = board.others(self_id)
    if not others:
        return np.empty((0, horizon, 2))
    aligned = []
    for robot_id in others:
        positions = board.entry(robot_id).positions
        last = len(positions) - 1
        indices = np.minimum(np.arange(2, horizon + 2), last)
        aligned.append(positions[indices])
    return np.stack(aligned)


class UnifiedField(DistanceField):
    """Static obstacle field merged with the fleet field by the min rule.

    Fleet distances are reduced by two robot radii so both members report
    clearance to a collision rather than distance to a center.
    """

    def __init__(self, static_field: Optional[DistanceField], fleet_field: Optional[DistanceField],
                 robot_radius: float) -> None:
        self.static_field = static_field if static_field is not None else EmptyField()
        self.fleet_field = fleet_field
        self.robot_radius = float(robot_radius)

        members: List[DistanceField] = [self.static_field]
        if fleet_field is not None:
            members.append(OffsetField(fleet_field, 2.0 * self.robot_radius))
        self.composed = ComposedField(members)

    @property
    def has_fleet(self) -> bool:
        return self.fleet_field is not None

    def query_distances(self, points: np.ndarray) -> np.ndarray:
        return self.composed.query_distances(points)

    def query_gradients(self, points: np.ndarray, normalize: bool = True) -> np.ndarray:
        return self.composed.query_gradients(points, normalize=normalize)

    def query_field(self, points: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
        return self.composed.query_field(points)


def unified_query(unified: UnifiedField, p: Tuple[float, float]) -> FieldQuery:
    """Distance and gradient of the merged field at one position."""
    return unified.query(p)

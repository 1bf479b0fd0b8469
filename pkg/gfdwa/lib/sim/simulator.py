"""Deterministic stepped simulation of a fleet of GF-DWA robots."""

import math
import time
from itertools import combinations
from typing import Dict, List, Optional, Tuple

import numpy as np

from ..fleet import PredictedTrajectoryBoard, UnifiedField, aligned_predictions, build_fleet_field, stationary
from ..gpdf import DistanceField, GpField
from ..logger import get_logger
from ..planner import ControlInput, DwaPlanner, PlannerFactory, PlanDiagnostics, RobotState, Trajectory, step
from ..scenario import RobotSpec, Scenario, sample_reference
from .models import CandidateRecord, RobotOutcome, RobotStatus, SimOutcome, TraceRecord


class _RobotRun:
    """Mutable per-robot bookkeeping of one run."""

    def __init__(self, robot_id: str, state: RobotState, goal: Tuple[float, float]) -> None:
        self.robot_id = robot_id
        self.state = state
        self.goal = goal
        self.control = ControlInput(0.0, 0.0)
        self.status = RobotStatus.ACTIVE
        self.steps_to_goal: Optional[int] = None
        self.collision_step: Optional[int] = None
        self.emergency_stops = 0

    @property
    def active(self) -> bool:
        return self.status == RobotStatus.ACTIVE

    def outcome(self) -> RobotOutcome:
        return RobotOutcome(
            robot_id=self.robot_id,
            status=self.status,
            steps_to_goal=self.steps_to_goal,
            final_state=self.state,
            collision_step=self.collision_step,
            emergency_stops=self.emergency_stops,
        )


class Simulator:
    """Runs a scenario in synchronous rounds.

    Each round every active robot plans against the predictions published
    in the previous round, then all controls are applied at once and the
    new states are adjudicated. Robots are always visited in id order.
    """

    def __init__(self, factory: Optional[PlannerFactory] = None, record_candidates: bool = True) -> None:
        self.factory = factory or PlannerFactory()
        self.record_candidates = record_candidates
        self.logger = get_logger()

    def static_field(self, scenario: Scenario) -> Optional[GpField]:
        """Field of the inflated obstacle boundaries, None on an open map."""
        points = scenario.static_points()
        if len(points) == 0:
            return None
        return GpField.fit(points, scenario.kernel)

    def run(self, scenario: Scenario, variant: Optional[str] = None) -> SimOutcome:
        """Simulate until every robot reached or collided, or the step budget runs out."""
        started = time.perf_counter()
        planner = self.factory.create(variant, scenario)
        settings = planner.settings
        obstacles = scenario.obstacle_map()
        static_field = self.static_field(scenario)

        robot_specs = {robot.id: robot for robot in scenario.robots}
        order = sorted(robot_specs)
        robots = {rid: _RobotRun(rid, robot_specs[rid].start, robot_specs[rid].goal) for rid in order}

        board = PredictedTrajectoryBoard.at_rest(
            {rid: robots[rid].state.position for rid in order}, settings.horizon
        )
        trace: List[TraceRecord] = []
        candidates: List[CandidateRecord] = []
        min_robot_distance = _min_pair_distance(robots)
        min_clearance = min(obstacles.clearance(r.state.position) for r in robots.values())

        k = 0
        while k < scenario.step_budget and any(r.active for r in robots.values()):
            snapshot = board.snapshot()
            decisions: Dict[str, Tuple[ControlInput, Trajectory, PlanDiagnostics]] = {}

            for rid in order:
                robot = robots[rid]
                if not robot.active:
                    continue
                decisions[rid] = self._plan(planner, scenario, static_field, obstacles, snapshot, robot, robot_specs[rid])

            for rid, (control, _, diagnostics) in decisions.items():
                robot = robots[rid]
                robot.control = control
                robot.state = step(robot.state, control, settings.dt)
                if diagnostics.all_infeasible:
                    robot.emergency_stops += 1

            self._adjudicate(robots, obstacles, scenario, k)
            min_robot_distance = min(min_robot_distance, _min_pair_distance(robots))
            min_clearance = min(min_clearance, min(obstacles.clearance(r.state.position) for r in robots.values()))

            for rid in order:
                robot = robots[rid]
                if rid in decisions and robot.active:
                    board.publish(rid, k, decisions[rid][1])
                else:
                    board.publish(rid, k, stationary(robot.state.position, settings.horizon))

            for rid, (control, traj, diagnostics) in decisions.items():
                trace.append(_trace_record(k, rid, traj.states[0], control, diagnostics, robots[rid].status))
                if self.record_candidates:
                    candidates.append(_candidate_record(k, rid, diagnostics))

            self.logger.debug(f"Step {k}: " + ", ".join(
                f"{rid}=({robots[rid].state.x:.2f}, {robots[rid].state.y:.2f}) {robots[rid].status.value}"
                for rid in order
            ))
            k += 1

        for robot in robots.values():
            if robot.active:
                robot.status = RobotStatus.TIMEOUT

        outcome = SimOutcome(
            scenario=scenario.name,
            variant=planner.variant,
            step_budget=scenario.step_budget,
            steps_run=k,
            robots={rid: robots[rid].outcome() for rid in order},
            min_robot_distance=min_robot_distance,
            min_obstacle_clearance=min_clearance,
            planner=self.factory.describe(planner.variant, scenario.weights),
            trace=trace,
            candidates=candidates,
        )
        elapsed = time.perf_counter() - started
        self.logger.info(
            f"Scenario '{scenario.name}' ({planner.variant}): "
            f"{'success' if outcome.success else 'failure'} after {k} steps in {elapsed:.2f}s "
            f"[{', '.join(f'{rid}: {robots[rid].status.value}' for rid in order)}]"
        )
        return outcome

    def _plan(self, planner: DwaPlanner, scenario: Scenario, static_field: Optional[DistanceField],
              obstacles, board: PredictedTrajectoryBoard, robot: _RobotRun,
              robot_spec: RobotSpec) -> Tuple[ControlInput, Trajectory, PlanDiagnostics]:
        settings = planner.settings
        fleet_field = build_fleet_field(board, robot.robot_id, scenario.kernel, scenario.robot_radius)
        field = UnifiedField(static_field, fleet_field, scenario.robot_radius)
        reference = sample_reference(robot_spec.reference_path, robot.state.position,
                                     robot_spec.v_ref, settings.dt, settings.horizon)
        context = planner.context(
            field, obstacles, reference, robot_spec.goal, robot_spec.v_ref,
            fleet_positions=aligned_predictions(board, robot.robot_id, settings.horizon),
        )
        return planner.plan(robot.state, robot.control, context)

    def _adjudicate(self, robots: Dict[str, _RobotRun], obstacles, scenario: Scenario, k: int) -> None:
        """Mark collisions first, then goal arrivals, for robots that moved this step."""
        moved = [rid for rid in sorted(robots) if robots[rid].active]
        collided = set()

        positions = np.array([robots[rid].state.position for rid in moved]).reshape(-1, 2)
        for rid, hit in zip(moved, obstacles.in_collision(positions)):
            if hit:
                collided.add(rid)

        for a, b in combinations(sorted(robots), 2):
            if math.dist(robots[a].state.position, robots[b].state.position) < 2.0 * scenario.robot_radius:
                collided.update(rid for rid in (a, b) if robots[rid].active)

        for rid in moved:
            robot = robots[rid]
            if rid in collided:
                robot.status = RobotStatus.COLLIDED
                robot.collision_step = k + 1
                self.logger.warning(f"Robot {rid} collided at step {k + 1} "
                                    f"({robot.state.x:.2f}, {robot.state.y:.2f})")
            elif math.dist(robot.state.position, robot.goal) <= scenario.goal_tolerance:
                robot.status = RobotStatus.REACHED
                robot.steps_to_goal = k + 1
                self.logger.info(f"Robot {rid} reached its goal at step {k + 1}")


def run(scenario: Scenario, variant: Optional[str] = None, record_candidates: bool = True) -> SimOutcome:
    """Simulate a scenario with a default factory."""
    return Simulator(record_candidates=record_candidates).run(scenario, variant)


def _min_pair_distance(robots: Dict[str, _RobotRun]) -> float:
    ids = sorted(robots)
    return min(
        (math.dist(robots[a].state.position, robots[b].state.position) for a, b in combinations(ids, 2)),
        default=math.inf,
    )


def _trace_record(k: int, rid: str, state: RobotState, control: ControlInput,
                  diagnostics: PlanDiagnostics, status: RobotStatus) -> TraceRecord:
    selected = diagnostics.selected
    return TraceRecord(
        step=k,
        robot_id=rid,
        state=state,
        control=control,
        candidate_count=len(diagnostics.evaluations),
        feasible_count=diagnostics.feasible_count,
        all_infeasible=diagnostics.all_infeasible,
        costs=selected.breakdown() if selected is not None else {},
        status=status,
    )


def _candidate_record(k: int, rid: str, diagnostics: PlanDiagnostics) -> CandidateRecord:
    return CandidateRecord(
        step=k,
        robot_id=rid,
        endpoints=[e.trajectory.endpoint.position for e in diagnostics.evaluations],
        feasible=[e.feasible for e in diagnostics.evaluations],
        selected=diagnostics.selected_index,
    )

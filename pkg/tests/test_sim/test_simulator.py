"""Tests for the stepped simulator."""

import copy
import math

from gfdwa.lib.fleet import UnifiedField
from gfdwa.lib.planner import ControlInput, PlannerFactory, RobotState, step
from gfdwa.lib.scenario import load_scenario, sample_reference
from gfdwa.lib.sim import RobotStatus, Simulator, run
from gfdwa.lib.sim.simulator import _RobotRun

OPEN_SPRINT = {
    "name": "open-sprint",
    "robots": [
        {"id": "r0", "start": {"x": 0.0, "y": 0.0, "theta": 0.0}, "goal": [3.0, 0.0],
         "reference_path": [[0.0, 0.0], [3.0, 0.0]], "v_ref": 1.0},
    ],
    "step_budget": 60,
}

CROSSING = {
    "name": "crossing",
    "robots": [
        {"id": "a", "start": {"x": 0.0, "y": 0.0, "theta": 0.0}, "goal": [6.0, 0.0],
         "reference_path": [[0.0, 0.0], [6.0, 0.0]], "v_ref": 1.0},
        {"id": "b", "start": {"x": 6.0, "y": 0.3, "theta": math.pi}, "goal": [0.0, 0.3],
         "reference_path": [[6.0, 0.3], [0.0, 0.3]], "v_ref": 0.8},
    ],
    "step_budget": 25,
}


def relabel(document, mapping):
    relabelled = copy.deepcopy(document)
    for robot in relabelled["robots"]:
        robot["id"] = mapping[robot["id"]]
    return relabelled


class TestRun:

    def test_open_map_reaches_goal(self):
        outcome = run(load_scenario(OPEN_SPRINT))
        assert outcome.success
        assert outcome.robots["r0"].status == RobotStatus.REACHED
        assert outcome.steps_run == outcome.robots["r0"].steps_to_goal
        assert len(outcome.trace) == outcome.steps_run
        assert math.isinf(outcome.min_obstacle_clearance)

    def test_trace_starts_at_start_state(self):
        outcome = run(load_scenario(OPEN_SPRINT))
        first = outcome.trace[0]
        assert first.step == 0
        assert first.state == RobotState(0.0, 0.0, 0.0)
        assert first.candidate_count == len(outcome.candidates[0].endpoints)
        assert outcome.trace[-1].status == RobotStatus.REACHED

    def test_trace_replays(self, scenario):
        outcome = Simulator().run(scenario)
        records = outcome.trace
        for before, after in zip(records, records[1:]):
            assert step(before.state, before.control, scenario.dt) == after.state

    def test_deterministic(self, scenario):
        first = Simulator().run(scenario)
        second = Simulator().run(scenario)
        assert first.model_dump() == second.model_dump()

    def test_budget_exhaustion_is_timeout(self, scenario_document):
        short = load_scenario(scenario_document, ["step_budget=5"])
        outcome = run(short)
        assert outcome.steps_run == 5
        assert outcome.robots["r0"].status == RobotStatus.TIMEOUT

    def test_without_candidate_records(self, scenario):
        assert Simulator(record_candidates=False).run(scenario).candidates == []

    def test_variant_recorded(self, scenario):
        assert run(scenario, "dwa-ablation").variant == "dwa-ablation"


class TestFleet:

    def test_relabelling_robots_does_not_change_motion(self):
        forward = Simulator(record_candidates=False).run(load_scenario(CROSSING))
        swapped = Simulator(record_candidates=False).run(load_scenario(relabel(CROSSING, {"a": "y", "b": "x"})))
        assert forward.robots["a"].final_state == swapped.robots["y"].final_state
        assert forward.robots["b"].final_state == swapped.robots["x"].final_state

    def test_document_order_is_irrelevant(self):
        reordered = copy.deepcopy(CROSSING)
        reordered["robots"].reverse()
        first = Simulator(record_candidates=False).run(load_scenario(CROSSING))
        second = Simulator(record_candidates=False).run(load_scenario(reordered))
        assert first.model_dump() == second.model_dump()

    def test_solo_run_matches_single_planner(self, scenario):
        outcome = Simulator(record_candidates=False).run(scenario)
        planner = PlannerFactory().create("gf-dwa", scenario)
        field = UnifiedField(Simulator().static_field(scenario), None, scenario.robot_radius)
        robot = scenario.robots[0]

        state, prev = robot.start, ControlInput(0.0, 0.0)
        for record in outcome.trace:
            reference = sample_reference(robot.reference_path, state.position, robot.v_ref,
                                         scenario.dt, scenario.horizon)
            context = planner.context(field, scenario.obstacle_map(), reference, robot.goal, robot.v_ref)
            control, _, _ = planner.plan(state, prev, context)
            assert record.state == state
            assert record.control == control
            state, prev = step(state, control, scenario.dt), control


class TestAdjudication:

    def robots(self, *placements):
        return {rid: _RobotRun(rid, RobotState(x, y, 0.0), goal) for rid, (x, y), goal in placements}

    def test_collision_beats_arrival(self, scenario):
        # Goal deliberately inside the inflated block
        robots = self.robots(("r0", (4.5, 0.0), (4.5, 0.0)))
        Simulator()._adjudicate(robots, scenario.obstacle_map(), scenario, 6)
        assert robots["r0"].status == RobotStatus.COLLIDED
        assert robots["r0"].collision_step == 7
        assert robots["r0"].steps_to_goal is None

    def test_arrival(self, scenario):
        robots = self.robots(("r0", (8.7, 0.0), (9.0, 0.0)))
        Simulator()._adjudicate(robots, scenario.obstacle_map(), scenario, 41)
        assert robots["r0"].status == RobotStatus.REACHED
        assert robots["r0"].steps_to_goal == 42

    def test_robots_closer_than_two_radii_collide(self, scenario):
        robots = self.robots(("a", (0.0, 0.0), (9.0, 0.0)), ("b", (0.0, 0.99), (9.0, 3.0)))
        Simulator()._adjudicate(robots, scenario.obstacle_map(), scenario, 0)
        assert robots["a"].status == robots["b"].status == RobotStatus.COLLIDED

    def test_touching_robots_do_not_collide(self, scenario):
        robots = self.robots(("a", (0.0, 0.0), (9.0, 0.0)), ("b", (0.0, 1.0), (9.0, 3.0)))
        Simulator()._adjudicate(robots, scenario.obstacle_map(), scenario, 0)
        assert robots["a"].status == robots["b"].status == RobotStatus.ACTIVE

    def test_finished_robot_is_not_readjudicated(self, scenario):
        robots = self.robots(("a", (0.0, 0.0), (9.0, 0.0)), ("b", (0.0, 0.5), (0.0, 0.5)))
        robots["b"].status = RobotStatus.REACHED
        Simulator()._adjudicate(robots, scenario.obstacle_map(), scenario, 3)
        assert robots["a"].status == RobotStatus.COLLIDED
        assert robots["b"].status == RobotStatus.REACHED


def test_static_field_absent_on_open_map():
    scenario = load_scenario(OPEN_SPRINT)
    assert Simulator().static_field(scenario) is None

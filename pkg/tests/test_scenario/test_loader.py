"""Tests for scenario loading, validation and overrides."""

import math

import pytest
import yaml

from gfdwa.lib.errors import InvariantViolation, OverrideError, SchemaError
from gfdwa.lib.scenario import (
    BUNDLED_SCENARIOS,
    bundled_scenario_path,
    get_bundled_scenario_dir,
    list_scenarios,
    load_scenario,
    load_scenario_file,
)


class TestBundled:

    @pytest.mark.parametrize("name", BUNDLED_SCENARIOS)
    def test_loads(self, name):
        scenario = load_scenario_file(bundled_scenario_path(name))
        assert scenario.name == name
        assert scenario.sampling.max_candidates == 84

    def test_listing_excludes_expectations(self, bundled_dir):
        names = [p.stem for p in list_scenarios(bundled_dir)]
        assert sorted(names) == sorted(BUNDLED_SCENARIOS)
        assert (bundled_dir / "expectations.yaml").exists()

    def test_u_shape(self):
        scenario = load_scenario_file(bundled_scenario_path("s3"))
        assert len(scenario.obstacles) == 1
        assert len(scenario.obstacles[0].vertices) == 8

    def test_fleets(self):
        assert len(load_scenario_file(bundled_scenario_path("multi1")).robots) == 4
        assert len(load_scenario_file(bundled_scenario_path("multi2")).robots) == 2
        assert load_scenario_file(bundled_scenario_path("multi1")).obstacles == []

    def test_bundled_dir(self):
        assert get_bundled_scenario_dir().is_dir()


class TestValidation:

    def test_defaults(self, scenario):
        assert scenario.horizon == 20
        assert scenario.dt == 0.2
        assert scenario.robot_radius == 0.5
        assert scenario.limits.u_max == (1.5, 1.0)
        assert scenario.kernel.length_scale == 0.2

    def test_start_parsed_as_state(self, scenario):
        start = scenario.robots[0].start
        assert (start.x, start.y, start.theta) == (0.0, 0.0, 0.0)
        assert start.position == (0.0, 0.0)

    def test_missing_v_ref(self, scenario_document):
        del scenario_document["robots"][0]["v_ref"]
        with pytest.raises(SchemaError, match="v_ref"):
            load_scenario(scenario_document)

    def test_unknown_field(self, scenario_document):
        scenario_document["gravity"] = 9.81
        with pytest.raises(SchemaError, match="gravity"):
            load_scenario(scenario_document)

    def test_not_a_mapping(self):
        with pytest.raises(SchemaError):
            load_scenario(["not", "a", "scenario"])

    def test_start_inside_obstacle(self, scenario_document):
        scenario_document["robots"][0]["start"] = {"x": 4.5, "y": 0.0, "theta": 0.0}
        scenario_document["robots"][0]["reference_path"] = [[4.5, 0.0], [9.0, 0.0]]
        with pytest.raises(InvariantViolation, match="robots.0"):
            load_scenario(scenario_document)

    def test_start_inside_inflation_margin(self, scenario_document):
        scenario_document["robots"][0]["start"] = {"x": 3.7, "y": 0.0, "theta": 0.0}
        scenario_document["robots"][0]["reference_path"] = [[3.7, 0.0], [9.0, 0.0]]
        with pytest.raises(InvariantViolation, match="inflated obstacle"):
            load_scenario(scenario_document)

    def test_goal_inside_obstacle(self, scenario_document):
        scenario_document["robots"][0]["goal"] = [4.5, 0.5]
        scenario_document["robots"][0]["reference_path"] = [[0.0, 0.0], [4.5, 0.5]]
        with pytest.raises(InvariantViolation, match="goal"):
            load_scenario(scenario_document)

    def test_theta_range(self, scenario_document):
        scenario_document["robots"][0]["start"]["theta"] = -math.pi
        with pytest.raises(InvariantViolation, match="theta"):
            load_scenario(scenario_document)

    def test_reference_must_reach_goal(self, scenario_document):
        scenario_document["robots"][0]["reference_path"] = [[0.0, 0.0], [7.0, 0.0]]
        with pytest.raises(InvariantViolation, match="reference_path"):
            load_scenario(scenario_document)

    def test_duplicate_ids(self, scenario_document):
        twin = dict(scenario_document["robots"][0], start={"x": 0.0, "y": 3.0, "theta": 0.0},
                    goal=[9.0, 3.0], reference_path=[[0.0, 3.0], [9.0, 3.0]])
        scenario_document["robots"].append(twin)
        with pytest.raises(InvariantViolation, match="duplicate"):
            load_scenario(scenario_document)

    def test_overlapping_starts(self, scenario_document):
        other = dict(scenario_document["robots"][0], id="r1", start={"x": 0.0, "y": 0.8, "theta": 0.0},
                     goal=[9.0, 3.0], reference_path=[[0.0, 0.8], [9.0, 3.0]])
        scenario_document["robots"].append(other)
        with pytest.raises(InvariantViolation, match="overlap"):
            load_scenario(scenario_document)

    def test_self_intersecting_obstacle(self, scenario_document):
        scenario_document["obstacles"][0]["vertices"] = [[4, -1], [5, 1], [5, -1], [4, 1]]
        with pytest.raises(InvariantViolation, match="obstacles.0"):
            load_scenario(scenario_document)

    def test_bad_limits(self, scenario_document):
        scenario_document["limits"] = {"u_min": {"v": 1.0, "omega": -1.0}, "u_max": {"v": 0.5, "omega": 1.0}}
        with pytest.raises(SchemaError, match="limits"):
            load_scenario(scenario_document)


class TestOverrides:

    def test_nested_field(self, scenario_document):
        scenario = load_scenario(scenario_document, ["weights.q_col_grad=0.05", "robots.0.v_ref=0.8"])
        assert scenario.weights.q_col_grad == 0.05
        assert scenario.robots[0].v_ref == 0.8

    def test_default_field_can_be_overridden(self, scenario_document):
        assert load_scenario(scenario_document, ["horizon=10"]).horizon == 10

    def test_robot_radius_inflates_obstacles(self, scenario_document):
        scenario = load_scenario(scenario_document, ["robot_radius=0.3"])
        assert scenario.robot_shape.radius == 0.3
        minx, miny, maxx, maxy = scenario.inflated_polygons()[0].polygon.bounds
        assert (minx, maxx) == pytest.approx((3.7, 5.3))
        assert (miny, maxy) == pytest.approx((-1.3, 1.3))

    def test_list_value(self, scenario_document):
        scenario = load_scenario(scenario_document, ["robots.0.goal=[9.0, 0.2]"])
        assert scenario.robots[0].goal == (9.0, 0.2)

    @pytest.mark.parametrize("override", [
        "weights.q_gravity=1",
        "robots.3.v_ref=1",
        "robots.0.v_ref.x=1",
        "horizon",
    ])
    def test_bad_override(self, scenario_document, override):
        with pytest.raises(OverrideError):
            load_scenario(scenario_document, [override])

    def test_override_value_is_validated(self, scenario_document):
        with pytest.raises(SchemaError):
            load_scenario(scenario_document, ["horizon=0"])

    def test_override_checked_against_invariants(self, scenario_document):
        with pytest.raises(InvariantViolation):
            load_scenario(scenario_document, ["robots.0.goal=[4.5, 0.0]"])


class TestFiles:

    def test_round_trip(self, scenario_file):
        assert load_scenario_file(scenario_file).name == "corridor-block"

    def test_missing_file(self, tmp_path):
        with pytest.raises(FileNotFoundError):
            load_scenario_file(tmp_path / "absent.yaml")

    def test_malformed_yaml(self, tmp_path):
        path = tmp_path / "broken.yaml"
        path.write_text("name: [unclosed\n")
        with pytest.raises(SchemaError, match="Invalid YAML"):
            load_scenario_file(path)

    def test_error_names_file(self, tmp_path, scenario_document):
        del scenario_document["robots"]
        path = tmp_path / "no-robots.yaml"
        path.write_text(yaml.safe_dump(scenario_document))
        with pytest.raises(SchemaError, match="no-robots.yaml"):
            load_scenario_file(path)

    def test_listing_sorted(self, tmp_path, scenario_document):
        for name in ("b", "a", "expectations"):
            (tmp_path / f"{name}.yaml").write_text(yaml.safe_dump(scenario_document))
        (tmp_path / "notes.txt").write_text("not a scenario")
        assert [p.name for p in list_scenarios(tmp_path)] == ["a.yaml", "b.yaml"]

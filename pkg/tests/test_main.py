"""Tests for the gfdwa command line entry point."""

import pytest
import yaml

from gfdwa.lib import config as config_module
from gfdwa.main import compare_expectations, load_expectations, main

OPEN_SPRINT = {
    "name": "open-sprint",
    "robots": [
        {"id": "r0", "start": {"x": 0.0, "y": 0.0, "theta": 0.0}, "goal": [3.0, 0.0],
         "reference_path": [[0.0, 0.0], [3.0, 0.0]], "v_ref": 1.0},
    ],
    "step_budget": 60,
}


@pytest.fixture
def config_file(tmp_path):
    path = tmp_path / "gfdwa.yaml"
    path.write_text(yaml.safe_dump({
        "logging": {"enabled": False},
        "batch": {"workers": 1},
        "output": {"directory": str(tmp_path / "runs")},
    }))
    return str(path)


@pytest.fixture
def sprint_file(tmp_path):
    path = tmp_path / "open-sprint.yaml"
    path.write_text(yaml.safe_dump(OPEN_SPRINT))
    return path


@pytest.fixture
def batch_dir(tmp_path):
    directory = tmp_path / "scenarios"
    directory.mkdir()
    (directory / "open-sprint.yaml").write_text(yaml.safe_dump(OPEN_SPRINT))
    return directory


def write_expectations(directory, table):
    (directory / "expectations.yaml").write_text(yaml.safe_dump(table))


class TestRun:

    def test_success(self, tmp_path, config_file, sprint_file, capsys):
        out = tmp_path / "out"
        assert main(["--config", config_file, "run", str(sprint_file), "--output", str(out)]) == 0
        assert "reached their goals" in capsys.readouterr().out
        metrics = yaml.safe_load((out / "metrics.yaml").read_text())
        assert metrics["success"] is True
        assert (out / "trace.jsonl").exists()

    def test_default_output_directory(self, tmp_path, config_file, sprint_file):
        assert main(["--config", config_file, "run", str(sprint_file), "--variant", "dwa-ablation"]) == 0
        assert (tmp_path / "runs" / "open-sprint" / "dwa-ablation" / "metrics.yaml").exists()

    def test_failure(self, tmp_path, config_file, sprint_file, capsys):
        code = main(["--config", config_file, "run", str(sprint_file), "--set", "step_budget=3",
                     "--output", str(tmp_path / "out")])
        assert code == 1
        assert "failed after 3 steps" in capsys.readouterr().out

    def test_overrides_recorded(self, tmp_path, config_file, sprint_file):
        out = tmp_path / "out"
        main(["--config", config_file, "run", str(sprint_file), "--set", "robots.0.v_ref=0.8", "--output", str(out)])
        assert yaml.safe_load((out / "provenance.yaml").read_text())["overrides"] == ["robots.0.v_ref=0.8"]

    def test_unknown_scenario(self, config_file):
        assert main(["--config", config_file, "run", "no-such-scenario"]) == 2

    def test_bad_override(self, config_file, sprint_file):
        assert main(["--config", config_file, "run", str(sprint_file), "--set", "weights.q_gravity=1"]) == 2

    def test_invalid_scenario(self, tmp_path, config_file):
        path = tmp_path / "broken.yaml"
        path.write_text(yaml.safe_dump({"name": "broken", "robots": []}))
        assert main(["--config", config_file, "run", str(path)]) == 2

    def test_missing_config(self, tmp_path, sprint_file):
        assert main(["--config", str(tmp_path / "absent.yaml"), "run", str(sprint_file)]) == 2

    def test_unknown_variant_is_a_usage_error(self, config_file, sprint_file):
        with pytest.raises(SystemExit) as excinfo:
            main(["--config", config_file, "run", str(sprint_file), "--variant", "mpc"])
        assert excinfo.value.code == 2

    def test_singular_kernel_is_a_configuration_error(self, tmp_path, config_file, capsys):
        code = main(["--config", config_file, "run", "s1", "--set", "kernel.length_scale=1e20",
                     "--set", "kernel.noise_sigma=0", "--output", str(tmp_path / "out")])
        assert code == 2
        assert "not positive definite" in capsys.readouterr().out
        assert not (tmp_path / "out" / "metrics.yaml").exists()

    @pytest.mark.slow
    def test_ablation_fails_in_u_shape(self, tmp_path, config_file):
        assert main(["--config", config_file, "run", "s3", "--variant", "dwa-ablation",
                     "--output", str(tmp_path / "out")]) == 1


class TestBatch:

    def test_matching_expectations(self, tmp_path, config_file, batch_dir):
        write_expectations(batch_dir, {"open-sprint": {"gf-dwa": True, "dwa-ablation": True}})
        out = tmp_path / "batch"
        assert main(["--config", config_file, "batch", str(batch_dir), "--output", str(out)]) == 0

        results = yaml.safe_load((out / "batch.yaml").read_text())
        assert results["expectations_met"] is True
        assert results["results"]["open-sprint"]["gf-dwa"]["status"] == "success"
        assert "open-sprint" in (out / "batch.txt").read_text()
        assert (out / "open-sprint" / "dwa-ablation" / "trace.jsonl").exists()

    def test_mismatch(self, tmp_path, config_file, batch_dir, capsys):
        write_expectations(batch_dir, {"open-sprint": {"gf-dwa": False, "dwa-ablation": None}})
        assert main(["--config", config_file, "batch", str(batch_dir), "--output", str(tmp_path / "b")]) == 1
        assert "open-sprint (gf-dwa): expected failure, got success" in capsys.readouterr().out

    def test_without_expectations(self, tmp_path, config_file, batch_dir):
        assert main(["--config", config_file, "batch", str(batch_dir), "--output", str(tmp_path / "b")]) == 0

    def test_error_row_is_a_mismatch(self, tmp_path, config_file, batch_dir):
        (batch_dir / "broken.yaml").write_text(yaml.safe_dump({"name": "broken"}))
        out = tmp_path / "b"
        assert main(["--config", config_file, "batch", str(batch_dir), "--output", str(out)]) == 1
        results = yaml.safe_load((out / "batch.yaml").read_text())
        assert results["results"]["broken"]["gf-dwa"]["status"] == "error"
        assert results["results"]["open-sprint"]["gf-dwa"]["status"] == "success"

    def test_empty_directory(self, tmp_path, config_file):
        empty = tmp_path / "empty"
        empty.mkdir()
        assert main(["--config", config_file, "batch", str(empty)]) == 2

    def test_missing_directory(self, tmp_path, config_file):
        assert main(["--config", config_file, "batch", str(tmp_path / "absent")]) == 2

    def test_malformed_expectations(self, tmp_path, config_file, batch_dir):
        write_expectations(batch_dir, {"open-sprint": {"gf-dwa": "yes"}})
        assert main(["--config", config_file, "batch", str(batch_dir), "--output", str(tmp_path / "b")]) == 2

    @pytest.mark.slow
    def test_bundled_scenarios(self, tmp_path, config_file):
        assert main(["--config", config_file, "batch", "--workers", "2", "--output", str(tmp_path / "b")]) == 0


class TestExpectations:

    def test_load(self, tmp_path):
        path = tmp_path / "expectations.yaml"
        path.write_text("s1: {gf-dwa: true, dwa-ablation: null}\n")
        assert load_expectations(path) == {"s1": {"gf-dwa": True, "dwa-ablation": None}}

    def test_missing_file_asserts_nothing(self, tmp_path):
        assert load_expectations(tmp_path / "expectations.yaml") == {}

    @pytest.mark.parametrize("content", ["- s1\n- s2\n", "s1: true\n", "s1: {gf-dwa: [\n"])
    def test_malformed(self, tmp_path, content):
        path = tmp_path / "expectations.yaml"
        path.write_text(content)
        with pytest.raises(ValueError):
            load_expectations(path)

    def test_compare(self):
        rows = [
            {"scenario": "s1", "variant": "gf-dwa", "status": "success", "success": True, "steps": 80, "message": None},
            {"scenario": "s3", "variant": "dwa-ablation", "status": "success", "success": True, "steps": 90, "message": None},
            {"scenario": "s9", "variant": "gf-dwa", "status": "error", "success": None, "steps": None, "message": "boom"},
            {"scenario": "multi1", "variant": "dwa-ablation", "status": "failure", "success": False, "steps": 200, "message": None},
        ]
        expectations = {
            "s1": {"gf-dwa": True},
            "s3": {"dwa-ablation": False},
            "multi1": {"dwa-ablation": None},
        }
        assert compare_expectations(rows, expectations) == [
            "s3 (dwa-ablation): expected failure, got success",
            "s9 (gf-dwa): error: boom",
        ]


def test_init_config(tmp_path, monkeypatch, capsys):
    path = tmp_path / "home" / "gfdwa.yaml"
    monkeypatch.setattr("gfdwa.main.get_default_config_path", lambda: path)
    monkeypatch.setattr(config_module, "get_default_config_path", lambda: path)

    assert main(["init-config"]) == 0
    assert path.exists()
    path.write_text("# edited\n")
    assert main(["init-config"]) == 0
    assert "already exists" in capsys.readouterr().out
    assert path.read_text() == "# edited\n"
    assert main(["init-config", "--force"]) == 0
    assert path.read_text() != "# edited\n"

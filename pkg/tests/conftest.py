"""Shared fixtures for the gfdwa test suite."""

import copy
from pathlib import Path
from typing import Any, Dict

import numpy as np
import pytest
import yaml

from gfdwa.lib.gpdf import GpField, KernelParams
from gfdwa.lib.scenario import get_bundled_scenario_dir, load_scenario

BASE_SCENARIO: Dict[str, Any] = {
    "name": "corridor-block",
    "description": "One rectangle ahead of a single robot",
    "obstacles": [
        {"name": "block", "vertices": [[4.0, -1.0], [5.0, -1.0], [5.0, 1.0], [4.0, 1.0]]},
    ],
    "robots": [
        {
            "id": "r0",
            "start": {"x": 0.0, "y": 0.0, "theta": 0.0},
            "goal": [9.0, 0.0],
            "reference_path": [[0.0, 0.0], [9.0, 0.0]],
            "v_ref": 1.0,
        },
    ],
    "step_budget": 50,
}


@pytest.fixture
def kernel() -> KernelParams:
    return KernelParams()


@pytest.fixture
def exact_kernel() -> KernelParams:
    """Noise-free kernel, for closed-form single-point checks."""
    return KernelParams(noise_sigma=0.0)


@pytest.fixture
def segment_points() -> np.ndarray:
    """41 points sampling the segment (0, 0)-(4, 0) every 0.1 m."""
    return np.column_stack([np.linspace(0.0, 4.0, 41), np.zeros(41)])


@pytest.fixture
def segment_field(segment_points: np.ndarray, kernel: KernelParams) -> GpField:
    return GpField.fit(segment_points, kernel)


@pytest.fixture
def scenario_document() -> Dict[str, Any]:
    """A fresh, mutable copy of a small valid scenario document."""
    return copy.deepcopy(BASE_SCENARIO)


@pytest.fixture
def scenario(scenario_document: Dict[str, Any]):
    return load_scenario(scenario_document)


@pytest.fixture
def scenario_file(tmp_path: Path, scenario_document: Dict[str, Any]) -> Path:
    path = tmp_path / "corridor-block.yaml"
    path.write_text(yaml.safe_dump(scenario_document))
    return path


@pytest.fixture
def bundled_dir() -> Path:
    return get_bundled_scenario_dir()

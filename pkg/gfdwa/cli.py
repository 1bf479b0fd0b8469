"""CLI inspection interface for gfdwa distance fields (for pip-installed package)"""

import sys
import math
import argparse
from pathlib import Path
from typing import Any, List, Optional

import numpy as np
import yaml

from . import __version__
from .lib.config import get_config_info, load_config
from .lib.errors import GfDwaError
from .lib.gpdf import GpField
from .lib.logger import setup_logging, get_logger
from .lib.planner import gradient_cost_map, wrap_angle
from .lib.scenario import Scenario, load_scenario_file
from .lib.sim import Simulator
from .main import resolve_scenario

# Margin around the scenario extent covered by exported grids, meters
GRID_MARGIN = 1.0


def main(argv: Optional[List[str]] = None) -> int:
    """CLI entry point for field inspection."""

    try:
        parser = argparse.ArgumentParser(description="gfdwa CLI: Inspect the distance and gradient fields of a scenario.")
        parser.add_argument('--config', type=str, default=None, help='Path to the configuration file (default: ~/.config/gfdwa/gfdwa.yaml)')
        parser.add_argument('--version', action='version', version=f'gfdwa {__version__}')
        subparsers = parser.add_subparsers(dest='command', required=True)

        field_parser = subparsers.add_parser('field', help='Export distance, gradient and gradient-cost grids as plot data')
        field_parser.add_argument('scenario', help='Scenario file or bundled scenario name')
        field_parser.add_argument('--out', type=str, required=True, help='Output directory')
        field_parser.add_argument('--resolution', type=float, default=0.1, help='Grid spacing in meters')
        field_parser.add_argument('--headings', type=int, default=8, help='Number of headings in the gradient-cost map')

        query_parser = subparsers.add_parser('query', help='Print distance, gradient and variance at one position')
        query_parser.add_argument('scenario', help='Scenario file or bundled scenario name')
        query_parser.add_argument('x', type=float)
        query_parser.add_argument('y', type=float)

        subparsers.add_parser('info', help='Show configuration paths')
        args = parser.parse_args(argv)

        config = load_config(args.config)
        setup_logging(
            log_level=config.logging.level,
            log_file=config.logging.file,
            enabled=config.logging.enabled
        )

        logger = get_logger()
        logger.info(f"gfdwa CLI started: {args.command}")

        if args.command == 'info':
            for key, value in get_config_info().items():
                print(f"{key}: {value}")
            return 0

        scenario = load_scenario_file(resolve_scenario(args.scenario))
        if args.command == 'query':
            return query_mode(scenario, args.x, args.y)
        return export_field(scenario, Path(args.out), args.resolution, args.headings, logger)

    except FileNotFoundError as e:
        print(f"Error: {e}")
        return 2
    except ValueError as e:
        print(f"Configuration Error: {e}")
        return 2
    except GfDwaError as e:
        print(f"Error: {e}")
        return 2
    except KeyboardInterrupt:
        print("\ngfdwa CLI interrupted by user")
        return 1


def query_mode(scenario: Scenario, x: float, y: float) -> int:
    field = Simulator().static_field(scenario)
    if field is None:
        print(f"{scenario.name} has no obstacles: distance is unbounded")
        return 0
    result = field.query((x, y))
    print(f"distance:  {result.distance:.4f} m")
    print(f"gradient:  ({result.gradient[0]:.4f}, {result.gradient[1]:.4f})")
    print(f"variance:  {field.query_variance((x, y)):.6f}")
    print(f"clearance: {scenario.obstacle_map().clearance((x, y)):.4f} m (exact, inflated obstacles)")
    return 0


def scenario_extent(scenario: Scenario) -> np.ndarray:
    """[[xmin, ymin], [xmax, ymax]] of every obstacle, start, goal and path vertex."""
    points: List[Any] = [v for o in scenario.obstacles for v in o.vertices]
    for robot in scenario.robots:
        points.extend([robot.start.position, robot.goal, *robot.reference_path])
    array = np.asarray(points, dtype=float)
    return np.stack([array.min(axis=0) - GRID_MARGIN, array.max(axis=0) + GRID_MARGIN])


def export_field(scenario: Scenario, out_dir: Path, resolution: float, heading_count: int, logger: Any) -> int:
    """Write field.yaml with the static field sampled on a regular grid."""
    if resolution <= 0 or heading_count < 1:
        raise ValueError("gfdwa: --resolution must be positive and --headings at least 1")

    field: Optional[GpField] = Simulator().static_field(scenario)
    if field is None:
        print(f"{scenario.name} has no obstacles, nothing to export")
        return 0

    (xmin, ymin), (xmax, ymax) = scenario_extent(scenario)
    xs = np.arange(xmin, xmax + 0.5 * resolution, resolution)
    ys = np.arange(ymin, ymax + 0.5 * resolution, resolution)
    grid_x, grid_y = np.meshgrid(xs, ys)
    points = np.column_stack([grid_x.ravel(), grid_y.ravel()])

    distances, gradients = field.query_field(points)
    base = scenario.robots[0].start.theta
    headings = [wrap_angle(base + 2.0 * math.pi * i / heading_count) for i in range(heading_count)]
    _, cost = gradient_cost_map(field, scenario.weights, xs, ys, headings)

    document = {
        'scenario': scenario.name,
        'xs': xs.tolist(),
        'ys': ys.tolist(),
        'distance': distances.reshape(grid_x.shape).tolist(),
        'gradient_x': gradients[:, 0].reshape(grid_x.shape).tolist(),
        'gradient_y': gradients[:, 1].reshape(grid_x.shape).tolist(),
        'headings': headings,
        'gradient_cost': cost.tolist(),
        'obstacles': [[list(v) for v in p.vertices] for p in scenario.inflated_polygons()],
    }

    out_dir.mkdir(parents=True, exist_ok=True)
    out_file = out_dir / "field.yaml"
    with open(out_file, 'w') as f:
        yaml.safe_dump(document, f, default_flow_style=None, sort_keys=False)

    logger.info(f"Exported {len(xs)}x{len(ys)} field grid of '{scenario.name}' to {out_file}")
    print(f"✅ Field of {scenario.name} written to {out_file} ({len(xs)}x{len(ys)} grid, {len(field)} points)")
    return 0


if __name__ == "__main__":
    sys.exit(main())

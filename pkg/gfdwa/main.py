"""Main entry point for gfdwa simulation runs (pip-installed package)"""

import sys
import argparse
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path
from typing import Any, Dict, List, Optional, Tuple

import yaml
from rich.console import Console
from rich.table import Table

from . import __version__
from .lib.artifacts import RunArtifacts
from .lib.config import VARIANTS, initialize_default_config, get_default_config_path, load_config
from .lib.errors import GfDwaError
from .lib.logger import setup_logging, get_logger
from .lib.planner import PlannerFactory
from .lib.scenario import bundled_scenario_path, get_bundled_scenario_dir, list_scenarios, load_scenario_file
from .lib.sim import Simulator


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(description="gfdwa: Gradient field dynamic window planning for robot fleets.")
    parser.add_argument('--config', type=str, default=None, help='Path to the configuration file (default: ~/.config/gfdwa/gfdwa.yaml)')
    parser.add_argument('--version', action='version', version=f'gfdwa {__version__}')
    subparsers = parser.add_subparsers(dest='command', required=True)

    run_parser = subparsers.add_parser('run', help='Simulate one scenario')
    run_parser.add_argument('scenario', help='Scenario file, or the name of a bundled scenario (s1..s5, multi1, multi2)')
    run_parser.add_argument('--output', type=str, default=None, help='Output directory (default: <output.directory>/<scenario>/<variant>)')
    run_parser.add_argument('--set', dest='overrides', action='append', default=[], metavar='KEY=VALUE',
                            help='Override a scenario field by dotted path, e.g. weights.q_col_grad=0 (repeatable)')
    run_parser.add_argument('--variant', choices=VARIANTS, default=None, help='Planner variant (default from configuration)')

    batch_parser = subparsers.add_parser('batch', help='Simulate every scenario of a directory under both variants')
    batch_parser.add_argument('directory', nargs='?', default=None, help='Scenario directory (default: bundled scenarios)')
    batch_parser.add_argument('--output', type=str, default=None, help='Output directory (default: <output.directory>/batch)')
    batch_parser.add_argument('--set', dest='overrides', action='append', default=[], metavar='KEY=VALUE',
                              help='Override applied to every scenario (repeatable)')
    batch_parser.add_argument('--workers', type=int, default=None, help='Scenarios simulated concurrently (default from configuration)')

    init_parser = subparsers.add_parser('init-config', help='Write the configuration template to the default location')
    init_parser.add_argument('--force', action='store_true', help='Overwrite an existing configuration file')

    return parser


def main(argv: Optional[List[str]] = None) -> int:
    """Main entry point for gfdwa."""

    try:
        args = build_parser().parse_args(argv)

        if args.command == 'init-config':
            return init_config(args.force)

        # Load configuration (built-in defaults when no file exists)
        config = load_config(args.config)

        setup_logging(
            log_level=config.logging.level,
            log_file=config.logging.file,
            enabled=config.logging.enabled
        )

        logger = get_logger()
        logger.info(f"gfdwa {__version__} started: {args.command}")

        if args.command == 'run':
            return cmd_run(config, args.scenario, args.output, args.overrides, args.variant)
        return cmd_batch(config, args.directory, args.output, args.overrides, args.workers)

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
        print("\ngfdwa interrupted by user")
        return 1


def init_config(force: bool = False) -> int:
    config_path = get_default_config_path()
    if config_path.exists() and not force:
        print(f"Configuration already exists at {config_path} (use --force to overwrite)")
        return 0
    initialize_default_config(config_path)
    print(f"Configuration written to {config_path}")
    return 0


def resolve_scenario(scenario: str) -> Path:
    """Scenario path as given, falling back to a bundled scenario name."""
    path = Path(scenario)
    if path.exists():
        return path
    bundled = bundled_scenario_path(scenario)
    if bundled.exists():
        return bundled
    raise FileNotFoundError(f"gfdwa: Scenario not found: {scenario}")


def cmd_run(config: Any, scenario: str, output: Optional[str] = None,
            overrides: Optional[List[str]] = None, variant: Optional[str] = None) -> int:
    """Simulate one scenario and write its artifacts.

    Returns:
        0 when every robot reached its goal, 1 otherwise, 2 on configuration errors
    """
    logger = get_logger()
    overrides = list(overrides or [])

    try:
        scenario_path = resolve_scenario(scenario)
        loaded = load_scenario_file(scenario_path, overrides)
        factory = PlannerFactory(config)
        variant = variant or factory.default_variant
        factory.weights_for(variant, loaded.weights)
    except (FileNotFoundError, ValueError) as e:
        logger.error(str(e))
        print(f"Error: {e}")
        return 2

    output_dir = Path(output) if output else Path(config.output.directory) / scenario_path.stem / variant
    try:
        outcome = Simulator(factory, record_candidates=config.output.write_candidates).run(loaded, variant)
    except GfDwaError as e:
        logger.error(f"Simulation of {scenario_path} could not run: {e}")
        print(f"Error: {e}")
        return 2

    try:
        summary = RunArtifacts(str(output_dir), config.output.write_candidates).save(outcome, str(scenario_path), overrides)
    except OSError as e:
        logger.error(f"Failed to write artifacts to {output_dir}: {e}")
        print(f"Error: cannot write to {output_dir}: {e}")
        return 2

    statuses = ", ".join(f"{rid}: {status.value}" for rid, status in summary.statuses.items())
    if summary.success:
        print(f"✅ {loaded.name} ({variant}): all robots reached their goals in {summary.steps} steps")
    else:
        print(f"❌ {loaded.name} ({variant}): failed after {summary.steps} steps [{statuses}]")
    print(f"Artifacts written to {output_dir}")
    return 0 if summary.success else 1


def run_batch_task(task: Tuple[str, str, List[str], str, bool]) -> Dict[str, Any]:
    """Simulate one (scenario file, variant) pair; never raises.

    Runs in a worker process, so it takes and returns plain data.
    """
    scenario_path, variant, overrides, output_dir, write_candidates = task
    row: Dict[str, Any] = {'scenario': Path(scenario_path).stem, 'variant': variant}
    try:
        scenario = load_scenario_file(scenario_path, overrides)
        outcome = Simulator(record_candidates=write_candidates).run(scenario, variant)
        summary = RunArtifacts(output_dir, write_candidates).save(outcome, scenario_path, overrides)
        row.update(status='success' if summary.success else 'failure', success=summary.success,
                   steps=summary.steps, message=None)
    except Exception as e:
        get_logger().error(f"Batch run of {scenario_path} ({variant}) failed: {e}")
        row.update(status='error', success=None, steps=None, message=str(e))
    return row


def load_expectations(path: Path) -> Dict[str, Dict[str, Optional[bool]]]:
    """Expected success per scenario and variant; null entries are not asserted.

    Raises:
        ValueError: If the file is not a mapping of mappings of booleans
    """
    if not path.exists():
        get_logger().warning(f"No expectations file at {path}, nothing is asserted")
        return {}

    try:
        with open(path, 'r') as f:
            raw = yaml.safe_load(f) or {}
    except yaml.YAMLError as e:
        raise ValueError(f"gfdwa: Invalid YAML in expectations file {path}: {e}")

    if not isinstance(raw, dict):
        raise ValueError(f"gfdwa: Expectations file {path} must map scenario names to variants")
    for scenario, expected in raw.items():
        if not isinstance(expected, dict) or any(v not in (True, False, None) for v in expected.values()):
            raise ValueError(f"gfdwa: {path}: entry '{scenario}' must map variants to true, false or null")
    return raw


def compare_expectations(rows: List[Dict[str, Any]],
                         expectations: Dict[str, Dict[str, Optional[bool]]]) -> List[str]:
    """Human-readable mismatches between batch rows and expectations."""
    mismatches = []
    for row in rows:
        if row['status'] == 'error':
            mismatches.append(f"{row['scenario']} ({row['variant']}): error: {row['message']}")
            continue
        expected = expectations.get(row['scenario'], {}).get(row['variant'])
        if expected is not None and expected != row['success']:
            mismatches.append(f"{row['scenario']} ({row['variant']}): expected "
                              f"{'success' if expected else 'failure'}, got {row['status']}")
    return mismatches


def render_table(rows: List[Dict[str, Any]], expectations: Dict[str, Dict[str, Optional[bool]]]) -> Table:
    table = Table(title="Success by scenario and planner variant")
    table.add_column("Scenario", style="cyan")
    for variant in VARIANTS:
        table.add_column(variant, justify="center")

    marks = {'success': "[green]✓[/green]", 'failure': "[red]×[/red]", 'error': "[yellow]error[/yellow]"}
    by_scenario: Dict[str, Dict[str, Dict[str, Any]]] = {}
    for row in rows:
        by_scenario.setdefault(row['scenario'], {})[row['variant']] = row

    for scenario in sorted(by_scenario):
        cells = []
        for variant in VARIANTS:
            row = by_scenario[scenario].get(variant)
            if row is None:
                cells.append("-")
                continue
            cell = marks[row['status']]
            if row['steps'] is not None:
                cell += f" ({row['steps']})"
            expected = expectations.get(scenario, {}).get(variant)
            if expected is not None and row['status'] != 'error' and expected != row['success']:
                cell += " [bold red]![/bold red]"
            cells.append(cell)
        table.add_row(scenario, *cells)
    return table


def cmd_batch(config: Any, directory: Optional[str] = None, output: Optional[str] = None,
              overrides: Optional[List[str]] = None, workers: Optional[int] = None) -> int:
    """Simulate every scenario of a directory under both variants.

    Returns:
        0 if the success table matches the expectations, 1 if not, 2 when
        there is nothing to run
    """
    logger = get_logger()
    scenario_dir = Path(directory) if directory else get_bundled_scenario_dir()
    if not scenario_dir.is_dir():
        raise FileNotFoundError(f"gfdwa: Scenario directory not found: {scenario_dir}")

    scenario_files = list_scenarios(scenario_dir)
    if not scenario_files:
        logger.error(f"No scenario files in {scenario_dir}")
        print(f"Error: no scenario files in {scenario_dir}")
        return 2

    expectations = load_expectations(scenario_dir / config.batch.expectations_file)
    output_dir = Path(output) if output else Path(config.output.directory) / "batch"
    workers = workers or config.batch.workers
    overrides = list(overrides or [])

    tasks = [
        (str(path), variant, overrides, str(output_dir / path.stem / variant), config.output.write_candidates)
        for path in scenario_files
        for variant in VARIANTS
    ]
    logger.info(f"Running {len(tasks)} simulations from {scenario_dir} with {workers} workers")

    if workers == 1:
        rows = [run_batch_task(task) for task in tasks]
    else:
        with ProcessPoolExecutor(max_workers=workers) as executor:
            rows = list(executor.map(run_batch_task, tasks))

    mismatches = compare_expectations(rows, expectations)
    table = render_table(rows, expectations)

    output_dir.mkdir(parents=True, exist_ok=True)
    results: Dict[str, Dict[str, Any]] = {}
    for row in rows:
        results.setdefault(row['scenario'], {})[row['variant']] = {
            k: row[k] for k in ('status', 'success', 'steps', 'message')
        }
    with open(output_dir / "batch.yaml", 'w') as f:
        yaml.dump({'results': results, 'expectations_met': not mismatches, 'mismatches': mismatches},
                  f, default_flow_style=False, sort_keys=True, allow_unicode=True)

    console = Console(record=True)
    console.print(table)
    with open(output_dir / "batch.txt", 'w') as f:
        f.write(console.export_text())

    for mismatch in mismatches:
        logger.warning(f"Expectation mismatch: {mismatch}")
        print(f"❌ {mismatch}")
    if not mismatches:
        print("✅ Success table matches expectations")
    return 0 if not mismatches else 1


if __name__ == "__main__":
    sys.exit(main())

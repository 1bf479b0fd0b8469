"""gfdwa run artifact writing: trace, plot data, metrics and provenance."""

import yaml
from pathlib import Path
from typing import Any, Dict, List, Optional
from datetime import datetime

from .logger import get_logger
from .sim.models import CandidateRecord, MetricsSummary, SimOutcome, TraceRecord, metrics
from .. import __version__


class RunArtifacts:
    """Files describing one simulation run.

    Data files carry no timestamps, so re-running a scenario reproduces
    them byte for byte; the time of the run lives only in the provenance
    sidecar.
    """

    def __init__(self, output_dir: str, write_candidates: bool = True):
        """Initialize the artifact writer.

        Args:
            output_dir: Directory receiving the run files (created if missing)
            write_candidates: Whether to write per-step candidate endpoints
        """
        self.logger = get_logger()
        self.output_dir = Path(output_dir)
        self.write_candidates = write_candidates

        self.trace_file = self.output_dir / "trace.jsonl"
        self.candidates_file = self.output_dir / "candidates.jsonl"
        self.metrics_file = self.output_dir / "metrics.yaml"
        self.provenance_file = self.output_dir / "provenance.yaml"

    def save(self, outcome: SimOutcome, scenario_path: Optional[str] = None,
             overrides: Optional[List[str]] = None) -> MetricsSummary:
        """Write every artifact of a run.

        Args:
            outcome: Completed simulation outcome
            scenario_path: Scenario file the run was loaded from
            overrides: --set overrides applied to the scenario

        Returns:
            Metrics summary that was written

        Raises:
            OSError: If the output directory cannot be written
        """
        self.output_dir.mkdir(parents=True, exist_ok=True)
        summary = metrics(outcome)

        with open(self.trace_file, 'w') as f:
            for record in outcome.trace:
                f.write(record.model_dump_json() + "\n")

        if self.write_candidates:
            with open(self.candidates_file, 'w') as f:
                for candidate in outcome.candidates:
                    f.write(candidate.model_dump_json() + "\n")

        with open(self.metrics_file, 'w') as f:
            yaml.dump(summary.model_dump(mode="json"), f, default_flow_style=False, sort_keys=True)

        provenance = {
            'timestamp': datetime.now().isoformat(),
            'version': __version__,
            'scenario': outcome.scenario,
            'scenario_path': str(scenario_path) if scenario_path else None,
            'variant': outcome.variant,
            'planner': outcome.planner,
            'overrides': list(overrides or []),
        }
        with open(self.provenance_file, 'w') as f:
            yaml.dump(provenance, f, default_flow_style=False, sort_keys=True)

        self.logger.info(f"Wrote {len(outcome.trace)} trace records for '{outcome.scenario}' to {self.output_dir}")
        return summary

    def load_trace(self) -> List[TraceRecord]:
        """Read the trace back as records."""
        with open(self.trace_file, 'r') as f:
            return [TraceRecord.model_validate_json(line) for line in f if line.strip()]

    def load_candidates(self) -> List[CandidateRecord]:
        with open(self.candidates_file, 'r') as f:
            return [CandidateRecord.model_validate_json(line) for line in f if line.strip()]

    def load_metrics(self) -> Optional[Dict[str, Any]]:
        """Read the metrics document, None if it is missing or unreadable."""
        if not self.metrics_file.exists():
            return None

        try:
            with open(self.metrics_file, 'r') as f:
                raw = yaml.safe_load(f)
            if not isinstance(raw, dict):
                self.logger.warning(f"Metrics file {self.metrics_file} is not a mapping")
                return None
            return raw
        except Exception as e:
            self.logger.error(f"Failed to read metrics from {self.metrics_file}: {e}")
            return None

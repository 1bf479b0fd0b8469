"""Stepped fleet simulation, outcomes and metrics."""

from .models import CandidateRecord, MetricsSummary, RobotOutcome, RobotStatus, SimOutcome, TraceRecord, metrics
from .simulator import Simulator, run

__all__ = [
    "CandidateRecord",
    "MetricsSummary",
    "RobotOutcome",
    "RobotStatus",
    "SimOutcome",
    "Simulator",
    "TraceRecord",
    "metrics",
    "run",
]

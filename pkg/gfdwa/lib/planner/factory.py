"""Planner variant factory for gfdwa."""

from typing import Any, Dict, List, Optional

from ..config import VARIANTS
from ..logger import get_logger
from .dwa import DwaPlanner, PlannerSettings
from .models import CostWeights


class PlannerFactory:
    """Factory for creating planners of the configured variants.

    gf-dwa keeps the scenario weights as given. dwa-ablation is the same
    planner with the gradient term switched off.
    """

    def __init__(self, config: Optional[Any] = None) -> None:
        """Initialize planner factory.

        Args:
            config: gfdwa configuration object, used for the default variant
        """
        self.config = config
        self.logger = get_logger()

    @property
    def default_variant(self) -> str:
        gfdwa_config = getattr(self.config, 'gfdwa', None)
        return gfdwa_config.default_variant if gfdwa_config else VARIANTS[0]

    @staticmethod
    def variants() -> List[str]:
        return list(VARIANTS)

    def weights_for(self, variant: str, weights: CostWeights) -> CostWeights:
        """Cost weights a variant plans with.

        Raises:
            ValueError: If the variant is unknown
        """
        if variant == "gf-dwa":
            return weights
        if variant == "dwa-ablation":
            return weights.model_copy(update={"q_col_grad": 0.0})
        raise ValueError(f"gfdwa: Unknown planner variant '{variant}' (expected one of {', '.join(VARIANTS)})")

    def create(self, variant: Optional[str], scenario: Any) -> DwaPlanner:
        """Create a planner for a scenario.

        Args:
            variant: Planner variant, the configured default when None
            scenario: Validated scenario

        Returns:
            Planner bound to the scenario's settings
        """
        variant = variant or self.default_variant
        weights = self.weights_for(variant, scenario.weights)
        settings: PlannerSettings = scenario.planner_settings(weights)
        self.logger.debug(f"Created {variant} planner for scenario '{scenario.name}' "
                          f"(horizon {settings.horizon}, dt {settings.dt}, cap {settings.max_candidates})")
        return DwaPlanner(settings, variant=variant)

    def describe(self, variant: str, weights: CostWeights) -> Dict[str, Any]:
        """Variant and effective weights as a plain dict, recorded in provenance.yaml."""
        return {"variant": variant, **self.weights_for(variant, weights).model_dump()}

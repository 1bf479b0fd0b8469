"""Base class for distance fields in gfdwa."""

from abc import ABC, abstractmethod
from typing import NamedTuple, Optional, Tuple

import numpy as np


class FieldQuery(NamedTuple):
    """Result of a point query against a distance field.

    gradient is a unit vector pointing away from obstacles, or (0, 0) at
    degenerate points such as the medial axis.
    """
    distance: float
    gradient: Tuple[float, float]
    latent_variance: Optional[float] = None


class DistanceField(ABC):
    """Abstract base class for fields answering distance and gradient queries.

    Implementations are immutable once built, so a field may be shared by
    concurrent readers and pickled to worker processes.
    """

    @abstractmethod
    def query_distances(self, points: np.ndarray) -> np.ndarray:
        """Distance at each row of a (Q, 2) array of positions."""
        pass

    @abstractmethod
    def query_gradients(self, points: np.ndarray, normalize: bool = True) -> np.ndarray:
        """Gradient of the distance at each row of a (Q, 2) array of positions."""
        pass

    def query_field(self, points: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
        """Distances and unit gradients in one call.

        Subclasses override this when both can share intermediate results.
        """
        return self.query_distances(points), self.query_gradients(points)

    def query_distance(self, p: Tuple[float, float]) -> float:
        """Distance at a single position."""
        return float(self.query_distances(_as_points(p))[0])

    def query_gradient(self, p: Tuple[float, float], normalize: bool = True) -> Tuple[float, float]:
        """Gradient at a single position, unit length unless normalize is False."""
        g = self.query_gradients(_as_points(p), normalize=normalize)[0]
        return float(g[0]), float(g[1])

    def query(self, p: Tuple[float, float]) -> FieldQuery:
        """Distance and unit gradient at a single position."""
        distances, gradients = self.query_field(_as_points(p))
        return FieldQuery(
            distance=float(distances[0]),
            gradient=(float(gradients[0, 0]), float(gradients[0, 1])),
        )


def _as_points(p: Tuple[float, float]) -> np.ndarray:
    return np.asarray(p, dtype=float).reshape(1, 2)

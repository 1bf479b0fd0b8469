"""Composition of several distance fields into one."""

from typing import Sequence, Tuple

import numpy as np

from .base import DistanceField, FieldQuery


class OffsetField(DistanceField):
    """A field whose distances are shifted down by a constant, floored at zero.

    The gradient is that of the wrapped field.
    """

    def __init__(self, field: DistanceField, offset: float) -> None:
        self.field = field
        self.offset = float(offset)

    def query_distances(self, points: np.ndarray) -> np.ndarray:
        return np.maximum(self.field.query_distances(points) - self.offset, 0.0)

    def query_gradients(self, points: np.ndarray, normalize: bool = True) -> np.ndarray:
        return self.field.query_gradients(points, normalize=normalize)

    def query_field(self, points: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
        distances, gradients = self.field.query_field(points)
        return np.maximum(distances - self.offset, 0.0), gradients


class ComposedField(DistanceField):
    """Min-composition of fields.

    Distance is the minimum over member fields; the gradient comes from the
    member attaining it, the lowest index winning ties.
    """

    def __init__(self, fields: Sequence[DistanceField]) -> None:
        if not fields:
            raise ValueError("gfdwa: A composed field needs at least one member field")
        self.fields = tuple(fields)

    def query_distances(self, points: np.ndarray) -> np.ndarray:
        if len(self.fields) == 1:
            return self.fields[0].query_distances(points)
        return np.min(np.stack([f.query_distances(points) for f in self.fields]), axis=0)

    def query_gradients(self, points: np.ndarray, normalize: bool = True) -> np.ndarray:
        if len(self.fields) == 1:
            return self.fields[0].query_gradients(points, normalize=normalize)
        distances = np.stack([f.query_distances(points) for f in self.fields])
        gradients = np.stack([f.query_gradients(points, normalize=normalize) for f in self.fields])
        return _select(distances, gradients)[1]

    def query_field(self, points: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
        if len(self.fields) == 1:
            return self.fields[0].query_field(points)
        results = [f.query_field(points) for f in self.fields]
        distances = np.stack([r[0] for r in results])
        gradients = np.stack([r[1] for r in results])
        return _select(distances, gradients)

    def winners(self, points: np.ndarray) -> np.ndarray:
        """Index of the member field supplying each composed value."""
        distances = np.stack([f.query_distances(points) for f in self.fields])
        return np.argmin(distances, axis=0)


def compose(fields: Sequence[DistanceField], p: Tuple[float, float]) -> FieldQuery:
    """Query the min-composition of fields at a single position."""
    return ComposedField(fields).query(p)


def _select(distances: np.ndarray, gradients: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    # np.argmin returns the first index among equal minima
    winner = np.argmin(distances, axis=0)
    columns = np.arange(distances.shape[1])
    return distances[winner, columns], gradients[winner, columns]


class EmptyField(DistanceField):
    """Field of an obstacle-free map: infinite distance, zero gradient."""

    def query_distances(self, points: np.ndarray) -> np.ndarray:
        return np.full(len(np.asarray(points).reshape(-1, 2)), np.inf)

    def query_gradients(self, points: np.ndarray, normalize: bool = True) -> np.ndarray:
        return np.zeros((len(np.asarray(points).reshape(-1, 2)), 2))

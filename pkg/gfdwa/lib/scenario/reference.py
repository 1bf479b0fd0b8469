"""Reference trajectory sampling along a polyline path."""

from typing import Sequence, Tuple

import numpy as np

from ..errors import EmptyPath

# Projection candidates closer than this are treated as ties
TIE_TOLERANCE = 1e-12


def project_onto_path(path: np.ndarray, point: Sequence[float]) -> Tuple[float, float]:
    """Arc length and distance of the closest point of the path to point.

    Among equally close candidates the one with the smallest arc length wins.
    """
    p = np.asarray(point, dtype=float)
    best_arc, best_distance = 0.0, np.inf
    travelled = 0.0

    for start, end in zip(path[:-1], path[1:]):
        segment = end - start
        length = float(np.hypot(*segment))
        if length == 0.0:
            continue
        t = float(np.clip(np.dot(p - start, segment) / (length * length), 0.0, 1.0))
        distance = float(np.hypot(*(start + t * segment - p)))
        if distance < best_distance - TIE_TOLERANCE:
            best_arc, best_distance = travelled + t * length, distance
        travelled += length

    return best_arc, best_distance


def sample_reference(path: Sequence[Sequence[float]], current: Sequence[float],
                     v_ref: float, dt: float, horizon: int) -> np.ndarray:
    """March horizon points along path at v_ref * dt spacing from the projection of current.

    Points past the end of the path repeat the final vertex.

    Raises:
        EmptyPath: If the path has fewer than two vertices
    """
    vertices = np.asarray(path, dtype=float).reshape(-1, 2)
    if len(vertices) < 2:
        raise EmptyPath(f"gfdwa: A reference path needs at least 2 vertices, got {len(vertices)}")

    steps = np.linalg.norm(np.diff(vertices, axis=0), axis=1)
    keep = np.concatenate([[True], steps > 0.0])
    vertices = vertices[keep]
    if len(vertices) == 1:
        return np.repeat(vertices, horizon, axis=0)

    arc = np.concatenate([[0.0], np.cumsum(np.linalg.norm(np.diff(vertices, axis=0), axis=1))])
    start_arc, _ = project_onto_path(vertices, current)

    targets = np.minimum(start_arc + v_ref * dt * np.arange(1, horizon + 1), arc[-1])
    return np.column_stack([
        np.interp(targets, arc, vertices[:, 0]),
        np.interp(targets, arc, vertices[:, 1]),
    ])

"""Polygonal obstacles: boundary sampling, inflation and collision predicates."""

import math
from typing import Iterable, List, Sequence, Tuple

import numpy as np
import shapely
import shapely.affinity
from pydantic import BaseModel, ConfigDict, Field
from shapely.geometry import Point, Polygon
from shapely.geometry.polygon import orient

# Segments approximating each quarter circle of an inflated corner
ARC_QUAD_SEGMENTS = 4
# Vertices this close to the line through their neighbours are removed after inflation
COLLINEAR_TOLERANCE = 1e-9

Vertex = Tuple[float, float]


class RobotShape(BaseModel):
    """Disc footprint of a robot."""
    model_config = ConfigDict(frozen=True, extra="forbid")

    radius: float = Field(default=0.5, gt=0, description="Robot radius in meters")


class PolygonObstacle:
    """Simple polygon obstacle, possibly non-convex, stored counterclockwise."""

    def __init__(self, vertices: Iterable[Sequence[float]]) -> None:
        coords = [(float(x), float(y)) for x, y in vertices]
        if len(coords) > 1 and coords[0] == coords[-1]:
            coords = coords[:-1]
        if len(coords) < 3:
            raise ValueError(f"gfdwa: A polygon obstacle needs at least 3 vertices, got {len(coords)}")

        polygon = Polygon(coords)
        if not polygon.is_valid or polygon.area <= 0.0:
            raise ValueError(f"gfdwa: Polygon obstacle is self-intersecting or degenerate: {coords}")

        self.polygon: Polygon = orient(polygon, sign=1.0)
        self.vertices: Tuple[Vertex, ...] = tuple(self.polygon.exterior.coords[:-1])

    def __repr__(self) -> str:
        return f"PolygonObstacle(vertices={len(self.vertices)}, bounds={self.polygon.bounds})"

    def __eq__(self, other: object) -> bool:
        return isinstance(other, PolygonObstacle) and self.vertices == other.vertices

    def __hash__(self) -> int:
        return hash(self.vertices)

    def edges(self) -> List[Tuple[Vertex, Vertex]]:
        count = len(self.vertices)
        return [(self.vertices[i], self.vertices[(i + 1) % count]) for i in range(count)]


def sample_boundary(obstacle: PolygonObstacle, resolution: float) -> np.ndarray:
    """Sample points along every edge at spacing no larger than resolution.

    Each vertex appears exactly once; points are ordered by edge, then by
    arc length along the edge.
    """
    if resolution <= 0:
        raise ValueError(f"gfdwa: Sampling resolution must be positive, got {resolution}")

    samples: List[Vertex] = []
    for (x0, y0), (x1, y1) in obstacle.edges():
        length = math.hypot(x1 - x0, y1 - y0)
        # Tolerance keeps an edge of exactly k * resolution at k subdivisions
        count = max(1, math.ceil(length / resolution - 1e-9))
        for j in range(count):
            t = j / count
            samples.append((x0 + t * (x1 - x0), y0 + t * (y1 - y0)))

    return np.asarray(samples, dtype=float)


def inflate(obstacle: PolygonObstacle, radius: float) -> PolygonObstacle:
    """Minkowski sum with a disc, corners rounded by short chords.

    The corner arcs circumscribe the disc, so every point within radius of
    the obstacle lies inside the result; the outline exceeds the exact sum
    by at most radius * (1 / cos(pi / 16) - 1) near convex corners. Holes
    the union might enclose are dropped; obstacles are solid.
    """
    if radius < 0:
        raise ValueError(f"gfdwa: Inflation radius must be non-negative, got {radius}")
    if radius == 0:
        return obstacle

    grown = obstacle.polygon.buffer(radius, quad_segs=ARC_QUAD_SEGMENTS)
    corners = [shapely.affinity.translate(_circumscribed_disc(radius), x, y) for x, y in obstacle.vertices]
    # Collinear vertices left where the union meets straight edges are dropped
    region = shapely.union_all([grown, *corners]).simplify(COLLINEAR_TOLERANCE)
    return PolygonObstacle(region.exterior.coords)


def _circumscribed_disc(radius: float) -> Polygon:
    """Regular polygon around the origin whose edges touch the circle of radius.

    Edge midpoints sit at multiples of the arc step, the axis directions
    included, so the polygon reaches exactly radius along x and y.
    """
    count = 4 * ARC_QUAD_SEGMENTS
    step = 2.0 * math.pi / count
    outer = radius / math.cos(step / 2.0)
    angles = (np.arange(count) + 0.5) * step
    return Polygon(np.column_stack([outer * np.cos(angles), outer * np.sin(angles)]))


def point_in_collision(p: Sequence[float], obstacles: Sequence[PolygonObstacle]) -> bool:
    """True if p lies inside or on the boundary of any obstacle."""
    return any(shapely.intersects_xy(o.polygon, p[0], p[1]) for o in obstacles)


class ObstacleMap:
    """Prepared union of obstacles for batched collision and clearance checks."""

    def __init__(self, obstacles: Sequence[PolygonObstacle]) -> None:
        self.obstacles = tuple(obstacles)
        if self.obstacles:
            self.region = shapely.union_all([o.polygon for o in self.obstacles])
            shapely.prepare(self.region)
        else:
            self.region = None

    def __bool__(self) -> bool:
        return self.region is not None

    def in_collision(self, points: np.ndarray) -> np.ndarray:
        """Boolean mask over (Q, 2) positions, boundary counted as collision."""
        points = np.asarray(points, dtype=float).reshape(-1, 2)
        if self.region is None:
            return np.zeros(len(points), dtype=bool)
        return shapely.intersects_xy(self.region, points[:, 0], points[:, 1])

    def clearance(self, p: Sequence[float]) -> float:
        """Distance from p to the obstacle region, zero inside it."""
        if self.region is None:
            return math.inf
        return float(self.region.distance(Point(p[0], p[1])))

    def boundary_points(self, resolution: float) -> np.ndarray:
        """Boundary samples of every obstacle, concatenated in obstacle order."""
        if not self.obstacles:
            return np.empty((0, 2))
        return np.concatenate([sample_boundary(o, resolution) for o in self.obstacles])

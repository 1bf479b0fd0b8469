"""Gaussian process distance field over an obstacle point set."""

import time
from pathlib import Path
from typing import Iterable, Sequence, Tuple, Union

import numpy as np
from scipy import linalg
from scipy.spatial import cKDTree
from scipy.spatial.distance import cdist

from ..errors import SingularKernelMatrix
from ..logger import get_logger
from .base import DistanceField
from .kernel import KernelParams, LATENT_FLOOR, inverse_map, inverse_map_derivative, kernel_eval

# Points closer than this are merged on ingestion
DEDUP_TOLERANCE = 1e-9
# Raw gradients below this magnitude are reported as the zero vector
GRADIENT_EPS = 1e-9
# Query rows processed per block, bounds the (Q, M) cross-covariance
QUERY_BLOCK = 4096


def as_point_set(points: Union[np.ndarray, Iterable[Sequence[float]]]) -> np.ndarray:
    """Return an (M, 2) float array with near-duplicate points removed.

    The first occurrence of each cluster is kept, so ordering stays
    deterministic.
    """
    array = np.asarray(points, dtype=float).reshape(-1, 2)
    if len(array) < 2:
        return array.copy()

    pairs = cKDTree(array).query_pairs(DEDUP_TOLERANCE, output_type="ndarray")
    if len(pairs) == 0:
        return array.copy()

    keep = np.ones(len(array), dtype=bool)
    keep[np.max(pairs, axis=1)] = False
    return array[keep]


def load_points(path: Union[str, Path]) -> np.ndarray:
    """Read an obstacle point set, one 'x y' or 'x, y' record per line.

    Blank lines and '#' comments are ignored.

    Raises:
        FileNotFoundError: If the file does not exist
        ValueError: If a record does not hold exactly two numbers
    """
    path = Path(path)
    if not path.exists():
        raise FileNotFoundError(f"gfdwa: Point file not found: {path}")

    records = []
    with open(path, 'r') as f:
        for line_number, line in enumerate(f, 1):
            content = line.split('#', 1)[0].replace(',', ' ').split()
            if not content:
                continue
            if len(content) != 2:
                raise ValueError(f"gfdwa: {path}:{line_number}: expected 2 values, got {len(content)}")
            try:
                records.append((float(content[0]), float(content[1])))
            except ValueError:
                raise ValueError(f"gfdwa: {path}:{line_number}: not a number: {line.strip()}")

    return as_point_set(records)


class GpField(DistanceField):
    """Fitted GP distance field.

    The latent occupancy o(p) is regressed on the obstacle points with all
    targets equal to one; distance is recovered through the inverse of the
    kernel's radial profile.
    """

    def __init__(self, points: np.ndarray, params: KernelParams,
                 alpha: np.ndarray, factor: Tuple[np.ndarray, bool]) -> None:
        self.points = points
        self.params = params
        self.alpha = alpha
        self.factor = factor
        self.points.setflags(write=False)
        self.alpha.setflags(write=False)

    @classmethod
    def fit(cls, points: Union[np.ndarray, Iterable[Sequence[float]]], params: KernelParams) -> "GpField":
        """Solve (K + sigma_o^2 I) alpha = 1 by Cholesky factorization.

        Raises:
            ValueError: If the point set is empty
            SingularKernelMatrix: If the factorization fails
        """
        logger = get_logger()
        started = time.perf_counter()

        point_set = as_point_set(points)
        if len(point_set) == 0:
            raise ValueError("gfdwa: Cannot fit a distance field on an empty point set")

        gram = kernel_eval(cdist(point_set, point_set), params)
        gram[np.diag_indices_from(gram)] += params.noise_sigma ** 2

        try:
            factor = linalg.cho_factor(gram, lower=True, check_finite=False)
        except linalg.LinAlgError as e:
            raise SingularKernelMatrix(
                f"gfdwa: Kernel matrix over {len(point_set)} points is not positive definite "
                f"(noise_sigma={params.noise_sigma}): {e}"
            )

        alpha = linalg.cho_solve(factor, np.ones(len(point_set)), check_finite=False)

        elapsed_ms = (time.perf_counter() - started) * 1000.0
        logger.debug(f"Fitted GP distance field on {len(point_set)} points in {elapsed_ms:.1f} ms")
        return cls(point_set, params, alpha, factor)

    def __len__(self) -> int:
        return len(self.points)

    def residual(self) -> float:
        """Infinity norm of (K + sigma_o^2 I) alpha - 1."""
        gram = kernel_eval(cdist(self.points, self.points), self.params)
        gram[np.diag_indices_from(gram)] += self.params.noise_sigma ** 2
        return float(np.max(np.abs(gram @ self.alpha - 1.0)))

    def latent_mean(self, points: np.ndarray) -> np.ndarray:
        """Posterior mean of the latent field at (Q, 2) positions."""
        points = np.asarray(points, dtype=float).reshape(-1, 2)
        return np.concatenate([
            kernel_eval(cdist(block, self.points), self.params) @ self.alpha
            for block in _blocks(points)
        ]) if len(points) else np.empty(0)

    def query_distances(self, points: np.ndarray) -> np.ndarray:
        return inverse_map(self.latent_mean(points), self.params)

    def query_gradients(self, points: np.ndarray, normalize: bool = True) -> np.ndarray:
        return self.query_field(points, normalize=normalize)[1]

    def query_field(self, points: np.ndarray, normalize: bool = True) -> Tuple[np.ndarray, np.ndarray]:
        points = np.asarray(points, dtype=float).reshape(-1, 2)
        latent_parts = []
        gradient_parts = []

        for block in _blocks(points):
            dist = cdist(block, self.points)
            weighted = kernel_eval(dist, self.params) * self.alpha
            latent = weighted.sum(axis=1)

            # d k(|p - p_i|) / d p = -(k / L) (p - p_i) / |p - p_i|; zero at p = p_i
            with np.errstate(divide="ignore", invalid="ignore"):
                ratio = np.where(dist > 0.0, weighted / dist, 0.0)
            latent_grad = -(block * ratio.sum(axis=1)[:, None] - ratio @ self.points) / self.params.length_scale

            latent_parts.append(latent)
            gradient_parts.append(inverse_map_derivative(latent, self.params)[:, None] * latent_grad)

        if not latent_parts:
            return np.empty(0), np.empty((0, 2))

        latent = np.concatenate(latent_parts)
        gradients = np.concatenate(gradient_parts)
        if normalize:
            gradients = normalize_rows(gradients)
        return inverse_map(latent, self.params), gradients

    def query_variances(self, points: np.ndarray) -> np.ndarray:
        """Posterior variance of the latent field, clipped to [0, sigma^2]."""
        points = np.asarray(points, dtype=float).reshape(-1, 2)
        lower, _ = self.factor
        parts = []
        for block in _blocks(points):
            cross = kernel_eval(cdist(self.points, block), self.params)
            v = linalg.solve_triangular(lower, cross, lower=True, check_finite=False)
            parts.append(self.params.variance - np.sum(v * v, axis=0))
        if not parts:
            return np.empty(0)
        return np.clip(np.concatenate(parts), 0.0, self.params.variance)

    def query_variance(self, p: Tuple[float, float]) -> float:
        return float(self.query_variances(np.asarray(p, dtype=float).reshape(1, 2))[0])

    def saturation_distance(self) -> float:
        """Largest distance this field can report."""
        return float(inverse_map(LATENT_FLOOR, self.params))


def normalize_rows(vectors: np.ndarray) -> np.ndarray:
    """Scale each row to unit length; rows shorter than GRADIENT_EPS become zero."""
    norms = np.linalg.norm(vectors, axis=1)
    out = np.zeros_like(vectors)
    live = norms >= GRADIENT_EPS
    out[live] = vectors[live] / norms[live, None]
    return out


def _blocks(points: np.ndarray):
    for start in range(0, len(points), QUERY_BLOCK):
        yield points[start:start + QUERY_BLOCK]

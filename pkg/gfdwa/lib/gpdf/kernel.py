"""Matérn 1/2 covariance kernel and its inverse radial profile."""

from typing import Union

import numpy as np
from pydantic import BaseModel, ConfigDict, Field

ArrayLike = Union[float, np.ndarray]

# Latent values are clamped to [LATENT_FLOOR, sigma^2] before the logarithm
LATENT_FLOOR = 1e-12


class KernelParams(BaseModel):
    """Kernel hyperparameters of a Gaussian process distance field."""
    model_config = ConfigDict(frozen=True, extra="forbid")

    sigma: float = Field(default=1.0, gt=0, description="Kernel amplitude")
    length_scale: float = Field(default=0.2, gt=0, description="Length scale L in meters")
    noise_sigma: float = Field(default=0.01, ge=0, description="Observation noise sigma_o")

    @property
    def variance(self) -> float:
        return self.sigma * self.sigma


def kernel_eval(d: ArrayLike, params: KernelParams) -> ArrayLike:
    """Covariance sigma^2 * exp(-d / L) for distance(s) d >= 0."""
    return params.variance * np.exp(-np.asarray(d, dtype=float) / params.length_scale)


def inverse_map(o: ArrayLike, params: KernelParams) -> ArrayLike:
    """Map latent value(s) back to distance: -L * ln(o / sigma^2).

    Far-field values (o <= 0) saturate at -L * ln(LATENT_FLOOR / sigma^2);
    overshoot above sigma^2 (dense surfaces) maps to zero distance.
    """
    clamped = np.clip(np.asarray(o, dtype=float), LATENT_FLOOR, params.variance)
    # + 0.0 folds -0.0 at the surface into 0.0
    return -params.length_scale * np.log(clamped / params.variance) + 0.0


def inverse_map_derivative(o: ArrayLike, params: KernelParams) -> ArrayLike:
    """d f_inv / d o = -L / o, evaluated at o floored to LATENT_FLOOR."""
    return -params.length_scale / np.maximum(np.asarray(o, dtype=float), LATENT_FLOOR)

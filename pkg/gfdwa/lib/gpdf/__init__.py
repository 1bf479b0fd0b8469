"""Gaussian process distance fields."""

from .base import DistanceField, FieldQuery
from .compose import ComposedField, EmptyField, OffsetField, compose
from .field import GpField, as_point_set, load_points
from .kernel import KernelParams, inverse_map, kernel_eval

__all__ = [
    "ComposedField",
    "DistanceField",
    "EmptyField",
    "FieldQuery",
    "GpField",
    "KernelParams",
    "OffsetField",
    "as_point_set",
    "compose",
    "inverse_map",
    "kernel_eval",
    "load_points",
]

"""Exception types raised by the gfdwa library."""


class GfDwaError(Exception):
    """Base class for all gfdwa errors."""


class SingularKernelMatrix(GfDwaError):
    """Cholesky factorization of the regularized kernel matrix failed.

    Usually duplicate or nearly coincident obstacle points combined with
    zero observation noise.
    """


class DegenerateDirection(GfDwaError):
    """A bearing was requested between two coincident positions."""


class NoCandidates(GfDwaError):
    """The candidate sampler produced nothing to evaluate."""


class EmptyPath(GfDwaError, ValueError):
    """A reference path has fewer than two vertices."""


class SchemaError(GfDwaError, ValueError):
    """A scenario document does not match the scenario schema."""


class InvariantViolation(GfDwaError, ValueError):
    """A scenario document is well-formed but physically inconsistent."""


class OverrideError(GfDwaError, ValueError):
    """A --set override names an unknown field or carries a bad value."""

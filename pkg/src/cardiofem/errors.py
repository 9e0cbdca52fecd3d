"""Exception types shared across the package."""


class GeometryError(ValueError):
    """Invalid geometric input: degenerate, self-intersecting, or out of domain."""


class StarShapeError(GeometryError):
    """Contour is not star-shaped about the requested center."""


class MeshError(ValueError):
    """Mesh construction or internal consistency failure."""


class ConfigurationError(ValueError):
    """Invalid or conflicting configuration values."""


class ConstraintConflictError(ValueError):
    """Two Dirichlet constraints disagree on the same degree of freedom."""


class SolverError(RuntimeError):
    """Linear solve failed or did not meet its residual contract."""

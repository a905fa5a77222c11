"""Exception types shared across the package."""


class CurveSegError(Exception):
    """Base class for curveseg-specific failures."""


class FlatImageError(CurveSegError):
    """The response map has no strictly positive values to threshold."""


class EmptyResultError(CurveSegError):
    """No support region survived the area filter."""

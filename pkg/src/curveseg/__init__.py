"""curveseg: parametric convex/concave curve segments from grayscale images.

The pipeline thresholds the positive Laplacian-of-Gaussian response into
curve support regions, fits each region's outer boundary with a Fourier
series, and splits the boundary at curvature extrema; averaging the two
boundary halves yields the final parametric segment.
"""

from .errors import CurveSegError, EmptyResultError, FlatImageError
from .synth import (
    AffineMap,
    SinusoidSpec,
    analytic_inflection_points,
    render_rectangle,
    render_sinusoid,
    render_stroke,
    warp,
)
from .filtering import LogKernel, convolve, log_kernel, respond
from .regions import (
    Contour,
    SupportRegion,
    label_components,
    signed_area,
    threshold_positive,
    trace_boundary,
)
from .descriptors import (
    FourierDescriptor,
    default_harmonics,
    derivative,
    descriptor_from_json,
    descriptor_to_json,
    evaluate,
    fit_fourier,
    reconstruct,
)
from .segmentation import (
    CurvatureProfile,
    CurveSegment,
    curvature_profile,
    extract_multi,
    extract_segment,
    find_endpoints,
)
from .pipeline import PipelineConfig, SegmentSet, export, run
from .estimator import CurveSegmentExtractor
from .image_io import read_image, write_image

__version__ = "0.1.0"

__all__ = [
    "AffineMap",
    "Contour",
    "CurvatureProfile",
    "CurveSegError",
    "CurveSegment",
    "CurveSegmentExtractor",
    "EmptyResultError",
    "FlatImageError",
    "FourierDescriptor",
    "LogKernel",
    "PipelineConfig",
    "SegmentSet",
    "SinusoidSpec",
    "SupportRegion",
    "analytic_inflection_points",
    "convolve",
    "curvature_profile",
    "default_harmonics",
    "derivative",
    "descriptor_from_json",
    "descriptor_to_json",
    "evaluate",
    "export",
    "extract_multi",
    "extract_segment",
    "find_endpoints",
    "fit_fourier",
    "label_components",
    "log_kernel",
    "read_image",
    "reconstruct",
    "render_rectangle",
    "render_sinusoid",
    "render_stroke",
    "respond",
    "run",
    "signed_area",
    "threshold_positive",
    "trace_boundary",
    "warp",
    "write_image",
]

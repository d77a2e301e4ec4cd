"""sliderule: scale construction and virtual slide-rule engine.

Given any strictly monotone distance function f(x), the package analyzes
it, builds a graduated scale with positions d = u * f(x), applies the scale
transforms (negate, reflect, translate, zoom, invert), assembles scales
into a working slide rule, and renders/serializes everything for the
browser UI.
"""

from .analysis import (
    AsymptoteReport,
    DensityPoint,
    MonotonicityReport,
    OriginReport,
    PropertyReport,
    check_exp_shift,
    check_homogeneity,
    check_log_shift,
    check_point_symmetry,
    check_self_inverse,
    classify_monotonicity,
    density_profile,
    detect_asymptotes,
    invert_value,
    locate_origin,
)
from .catalog import catalog_codes, catalog_scale
from .engine import Readout, SlideRuleModel, align, compute, compute_geometric, new_model, read
from .errors import (
    DomainError,
    NonMonotoneError,
    OffScaleError,
    OutOfRangeError,
    ParseError,
    SchemaError,
    SlideRuleError,
    UnboundedImageError,
    UnknownCodeError,
    VersionError,
)
from .expr import EvalResult, Expression, evaluate, parse, print_expr
from .interval import Interval
from .scale import (
    InverseDistance,
    LabelFormat,
    RenderedScale,
    ScaleSpec,
    Tick,
    build_scale,
    inverse_scale,
    negate_scale,
    reflect_argument_scale,
    translate_scale,
    zoom_scale,
)
from .svgrender import RenderOptions, render_svg

__version__ = "0.1.0"

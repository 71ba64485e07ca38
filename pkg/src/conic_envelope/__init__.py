"""Self-inversive cubics whose unimodular root triangles envelope a fixed conic."""

from .config import DEFAULT_TOLERANCES, Tolerances, load_tolerances
from .cpoly import CubicPoly, cubic_roots, poly_derivative, poly_eval, polish_root
from .envelope import (
    ConicDescriptor,
    ConicKind,
    LambdaStatus,
    TriangleSolution,
    compute_weights,
    conic_descriptor,
    conic_residual,
    solve_triangle,
    tangency_check,
    tangency_points,
)
from .errors import BadLambda, EnvelopeError
from .inversive import FociPair, UnimodularParam, blaschke_eval, build_p_lambda, check_self_inversive, roots_on_circle
from .lambda_scan import (
    BoundaryInfo,
    LambdaInterval,
    classify_lambda,
    refine_boundary,
    scan_good_intervals,
)
from .render import Scene, Style, View, export_csv, render_svg, sample_conic

__all__ = [
    "BadLambda",
    "BoundaryInfo",
    "ConicDescriptor",
    "ConicEnvelope",
    "ConicKind",
    "CubicPoly",
    "DEFAULT_TOLERANCES",
    "EnvelopeError",
    "FociPair",
    "LambdaInterval",
    "LambdaStatus",
    "Scene",
    "Style",
    "Tolerances",
    "TriangleSolution",
    "UnimodularParam",
    "View",
    "blaschke_eval",
    "build_p_lambda",
    "check_self_inversive",
    "classify_lambda",
    "compute_weights",
    "conic_descriptor",
    "conic_residual",
    "cubic_roots",
    "export_csv",
    "load_tolerances",
    "poly_derivative",
    "poly_eval",
    "polish_root",
    "refine_boundary",
    "render_svg",
    "roots_on_circle",
    "sample_conic",
    "scan_good_intervals",
    "solve_triangle",
    "tangency_check",
    "tangency_points",
]


def __getattr__(name):
    # scikit-learn is only imported when the estimator is asked for
    if name == "ConicEnvelope":
        from .estimator import ConicEnvelope

        return ConicEnvelope
    raise AttributeError(f"module {__name__!r} has no attribute {name!r}")

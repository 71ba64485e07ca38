"""scikit-learn style wrapper: fit on a pair of foci, transform theta values into triangles."""

from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_array, check_is_fitted

from .config import DEFAULT_TOLERANCES
from .envelope import BadLambda, LambdaStatus, conic_descriptor, solve_triangle
from .inversive import FociPair, UnimodularParam
from .lambda_scan import DEFAULT_REFINE_TOL, DEFAULT_SAMPLES, classify_lambda, sample_good_thetas, scan_good_intervals
from .render import CSV_COLUMNS


def _as_thetas(X) -> np.ndarray:
    X = check_array(X, ensure_2d=False, dtype=np.float64)
    if X.ndim == 2:
        if X.shape[1] != 1:
            raise ValueError(f"expected a single column of theta values, got shape {X.shape}")
        X = X[:, 0]
    return X


class ConicEnvelope(TransformerMixin, BaseEstimator):
    """Root triangles of the self-inversive cubic family for fixed foci.

    Parameters
    ----------
    a, b : complex
        Foci; neither may lie on the unit circle.
    n_samples : int
        Grid size used by ``fit`` to locate the good theta arcs.
    refine_tol : float
        Bisection width for arc endpoints.
    inset : float
        Fraction of each arc's width trimmed at both ends by ``sample_thetas``.

    Attributes
    ----------
    foci_ : FociPair
    descriptor_ : ConicDescriptor
    intervals_ : list of LambdaInterval

    ``transform`` maps theta values (radians) to 16 columns: the roots'
    real and imaginary parts, the three weights, the tangency points'
    real and imaginary parts, and the largest conic residual. Rows for
    thetas that are not good are NaN. ``predict`` returns 1 for good
    thetas and 0 otherwise.
    """

    def __init__(self, a=0.0, b=0.618, n_samples=DEFAULT_SAMPLES, refine_tol=DEFAULT_REFINE_TOL, inset=0.01):
        self.a = a
        self.b = b
        self.n_samples = n_samples
        self.refine_tol = refine_tol
        self.inset = inset

    def fit(self, X=None, y=None):
        self.foci_ = FociPair(complex(self.a), complex(self.b))
        self.descriptor_ = conic_descriptor(self.foci_)
        self.intervals_ = scan_good_intervals(self.foci_, self.n_samples, self.refine_tol)
        self.n_features_out_ = len(CSV_COLUMNS) - 1
        return self

    def transform(self, X):
        check_is_fitted(self, "descriptor_")
        thetas = _as_thetas(X)
        out = np.full((thetas.shape[0], self.n_features_out_), np.nan)
        for row, theta in enumerate(thetas):
            try:
                sol = solve_triangle(self.foci_, UnimodularParam(theta), DEFAULT_TOLERANCES, self.descriptor_)
            except BadLambda:
                continue
            values = []
            for z in sol.roots:
                values += [z.real, z.imag]
            values += list(sol.weights)
            for z in sol.tangency:
                values += [z.real, z.imag]
            values.append(sol.residuals.max_conic)
            out[row] = values
        return out

    def predict(self, X):
        check_is_fitted(self, "descriptor_")
        thetas = _as_thetas(X)
        return np.array([classify_lambda(self.foci_, t) is LambdaStatus.GOOD for t in thetas], dtype=int)

    def sample_thetas(self, count: int) -> np.ndarray:
        """``count`` good thetas spread over the arcs found by ``fit``."""
        check_is_fitted(self, "intervals_")
        return np.asarray(sample_good_thetas(self.intervals_, count, self.inset))

    def get_feature_names_out(self, input_features=None):
        return np.asarray(CSV_COLUMNS[1:], dtype=object)

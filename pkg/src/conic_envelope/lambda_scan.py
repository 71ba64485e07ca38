"""Locate the arcs of lambda = exp(i theta) that give three distinct unimodular roots.

Samples the indicator on a uniform grid and bisects every good/bad
transition down to the double root where two roots meet on the circle.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

from .config import DEFAULT_TOLERANCES, Tolerances
from .cpoly import cubic_roots, derivative_eval, min_separation
from .envelope import LambdaStatus, classify_roots
from .errors import InvalidBracket
from .inversive import FociPair, UnimodularParam, build_p_lambda

TWO_PI = 2 * math.pi
DEFAULT_SAMPLES = 2048
DEFAULT_REFINE_TOL = 1e-10
BOUNDARY_SEPARATION = 1e-5


@dataclass(frozen=True)
class BoundaryInfo:
    """Double-root data at a good/bad transition.

    ``simple_root`` is the third root at theta_star. The degenerate
    triangle's two remaining sides touch the conic there, so it is where the
    conic crosses the unit circle.
    """

    theta_star: float
    double_root: complex
    separation: float
    simple_root: complex


@dataclass(frozen=True)
class LambdaInterval:
    """Good arc [theta_lo, theta_hi]; theta_hi may exceed 2 pi when the arc wraps."""

    theta_lo: float
    theta_hi: float
    boundary_lo: Optional[BoundaryInfo] = None
    boundary_hi: Optional[BoundaryInfo] = None

    @property
    def width(self) -> float:
        return self.theta_hi - self.theta_lo

    @property
    def is_full_circle(self) -> bool:
        return self.boundary_lo is None and self.boundary_hi is None

    def contains(self, theta: float) -> bool:
        t = self.theta_lo + (theta - self.theta_lo) % TWO_PI
        return t <= self.theta_hi

    def inset(self, fraction: float) -> tuple[float, float]:
        if self.is_full_circle:
            return self.theta_lo, self.theta_hi
        pad = fraction * self.width
        return self.theta_lo + pad, self.theta_hi - pad


def classify_lambda(foci: FociPair, theta: float, tol: Tolerances = DEFAULT_TOLERANCES) -> LambdaStatus:
    roots = cubic_roots(build_p_lambda(foci, UnimodularParam(theta)), tol)
    return classify_roots(roots, tol)


def _is_good(foci, theta, tol) -> bool:
    return classify_lambda(foci, theta, tol) is LambdaStatus.GOOD


def refine_boundary(
    foci: FociPair,
    theta_good: float,
    theta_bad: float,
    tol: float = DEFAULT_REFINE_TOL,
    tolerances: Tolerances = DEFAULT_TOLERANCES,
) -> BoundaryInfo:
    """Bisect between a good and a bad theta down to width ``tol``.

    Bisection continues past ``tol`` if needed until the closest root pair
    at the good-side endpoint is within 1e-5. That endpoint is returned as
    theta_star together with the pair's midpoint, which must be a
    near-double root on the unit circle.
    """
    if not _is_good(foci, theta_good, tolerances) or _is_good(foci, theta_bad, tolerances):
        raise InvalidBracket(f"({theta_good!r}, {theta_bad!r}) is not a good/bad bracket")
    good, bad = theta_good, theta_bad

    def bisect():
        nonlocal good, bad
        mid = 0.5 * (good + bad)
        if mid == good or mid == bad:
            return False
        if _is_good(foci, mid, tolerances):
            good = mid
        else:
            bad = mid
        return True

    while abs(bad - good) > tol and bisect():
        pass
    # separation shrinks like sqrt(distance to the double root), so width
    # tol alone can leave the pair visibly apart; keep going until it closes
    while True:
        p = build_p_lambda(foci, UnimodularParam(good))
        roots = cubic_roots(p, tolerances)
        sep, i, j = min_separation(roots)
        if sep <= BOUNDARY_SEPARATION or not bisect():
            break
    double_root = 0.5 * (roots[i] + roots[j])
    if abs(abs(double_root) - 1.0) > 1e-6:
        raise InvalidBracket(f"collision point {double_root!r} is not on the unit circle")
    if abs(derivative_eval(p, double_root)) > 1e-4 * p.max_coeff:
        raise InvalidBracket(f"P' does not vanish at the collision point {double_root!r}")
    (k,) = {0, 1, 2} - {i, j}
    return BoundaryInfo(theta_star=good, double_root=double_root, separation=sep, simple_root=roots[k])


def scan_good_intervals(
    foci: FociPair,
    n_samples: int = DEFAULT_SAMPLES,
    refine_tol: float = DEFAULT_REFINE_TOL,
    tolerances: Tolerances = DEFAULT_TOLERANCES,
) -> list[LambdaInterval]:
    """Good arcs found from ``n_samples`` equally spaced theta values.

    Arcs narrower than the grid spacing can be missed.
    """
    if n_samples < 64:
        raise ValueError("n_samples must be at least 64")
    if refine_tol <= 0:
        raise ValueError("refine_tol must be positive")
    step = TWO_PI / n_samples
    thetas = [step * j for j in range(n_samples)]
    good = [_is_good(foci, t, tolerances) for t in thetas]
    if all(good):
        return [LambdaInterval(0.0, TWO_PI)]
    if not any(good):
        return []

    # rotate so that index 0 is the start of a good run; runs then never wrap
    start = next(j for j in range(n_samples) if good[j] and not good[j - 1])
    intervals = []
    j = 0
    while j < n_samples:
        idx = (start + j) % n_samples
        if not good[idx]:
            j += 1
            continue
        first = start + j
        while j < n_samples and good[(start + j) % n_samples]:
            j += 1
        last = start + j - 1
        lo_good, lo_bad = first * step, (first - 1) * step
        hi_good, hi_bad = last * step, (last + 1) * step
        b_lo = refine_boundary(foci, lo_good, lo_bad, refine_tol, tolerances)
        b_hi = refine_boundary(foci, hi_good, hi_bad, refine_tol, tolerances)
        shift = TWO_PI * math.floor(b_lo.theta_star / TWO_PI)
        intervals.append(
            LambdaInterval(
                theta_lo=b_lo.theta_star - shift,
                theta_hi=b_hi.theta_star - shift,
                boundary_lo=b_lo,
                boundary_hi=b_hi,
            )
        )
    intervals.sort(key=lambda iv: iv.theta_lo)
    return intervals


def sample_good_thetas(intervals: list[LambdaInterval], count: int, inset: float = 0.01) -> list[float]:
    """``count`` theta values spread over the good arcs in proportion to their width.

    Arcs are shrunk by ``inset`` of their width at both ends; a full circle
    is sampled uniformly on [0, 2 pi).
    """
    if count < 1 or not intervals:
        return []
    if len(intervals) == 1 and intervals[0].is_full_circle:
        return [TWO_PI * k / count for k in range(count)]
    spans = [iv.inset(inset) for iv in intervals]
    widths = [hi - lo for lo, hi in spans]
    total = sum(widths)
    # largest-remainder apportionment keeps the total exactly ``count``
    quotas = [count * w / total for w in widths]
    alloc = [int(q) for q in quotas]
    order = sorted(range(len(quotas)), key=lambda k: (alloc[k] - quotas[k], k))
    for k in order[: count - sum(alloc)]:
        alloc[k] += 1
    thetas = []
    for (lo, hi), n in zip(spans, alloc):
        if n == 1:
            thetas.append(0.5 * (lo + hi))
        elif n > 1:
            thetas.extend(lo + (hi - lo) * i / (n - 1) for i in range(n))
    return [t % TWO_PI for t in thetas]

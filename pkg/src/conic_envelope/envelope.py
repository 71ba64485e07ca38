"""Weights, tangency points and the common conic of the root triangles.

For good lambda the three roots z_k of P_lambda are distinct and unimodular.
The real weights m_k are the residues of (z-a)(z-b) / prod(z - z_k); the
side through z_i, z_j touches the conic with foci a, b at the point that
splits it in the ratio m_i : m_j.
"""

from __future__ import annotations

import cmath
import enum
import math
from dataclasses import dataclass
from typing import Optional, Sequence

from .config import DEFAULT_TOLERANCES, Tolerances
from .cpoly import CubicPoly, cubic_roots, min_separation
from .errors import (
    BadLambda,
    DegenerateGeometry,
    NonRealWeight,
    RootCollision,
    WeightPairDegenerate,
)
from .inversive import FociPair, UnimodularParam, build_p_lambda, roots_on_circle

# (k, i, j): tangency point k lies on the side through roots i and j
SIDES = ((0, 1, 2), (1, 0, 2), (2, 0, 1))


class LambdaStatus(enum.Enum):
    GOOD = "good"
    OFF_CIRCLE = "off_circle"
    ROOT_COLLISION = "root_collision"


class ConicKind(enum.Enum):
    ELLIPSE = "ellipse"
    HYPERBOLA = "hyperbola"
    CIRCLE = "circle"


@dataclass(frozen=True)
class ConicDescriptor:
    focus_a: complex
    focus_b: complex
    s: float
    kind: ConicKind
    center: complex
    linear_ecc: float
    semi_major: float
    semi_secondary: float
    rotation: float
    eccentricity: float

    def as_dict(self) -> dict:
        return {
            "focus_a": self.focus_a,
            "focus_b": self.focus_b,
            "s": self.s,
            "kind": self.kind.value,
            "center": self.center,
            "linear_ecc": self.linear_ecc,
            "semi_major": self.semi_major,
            "semi_secondary": self.semi_secondary,
            "rotation": self.rotation,
            "eccentricity": self.eccentricity,
        }


def conic_descriptor(foci: FociPair) -> ConicDescriptor:
    """Conic with foci a, b and focal constant |1 - conj(a) b|.

    Both foci on the same side of the unit circle gives an ellipse (a circle
    when they coincide); one inside and one outside gives a hyperbola.
    """
    a, b = foci.a, foci.b
    s = abs(1 - a.conjugate() * b)
    dist = abs(b - a)
    same_side = (abs(a) < 1) == (abs(b) < 1)
    if same_side and dist <= 1e-12 * max(1.0, abs(a)):
        kind = ConicKind.CIRCLE
    elif same_side:
        kind = ConicKind.ELLIPSE
    else:
        kind = ConicKind.HYPERBOLA
    semi_major = s / 2
    linear_ecc = dist / 2
    return ConicDescriptor(
        focus_a=a,
        focus_b=b,
        s=s,
        kind=kind,
        center=(a + b) / 2,
        linear_ecc=linear_ecc,
        semi_major=semi_major,
        semi_secondary=math.sqrt(abs(semi_major**2 - linear_ecc**2)),
        rotation=0.0 if kind is ConicKind.CIRCLE else cmath.phase(b - a),
        eccentricity=0.0 if kind is ConicKind.CIRCLE else dist / s,
    )


def focal_defect(z: complex, c: ConicDescriptor) -> float:
    """Signed focal combination minus s (zero on the conic).

    Ellipse/circle: |z-a| + |z-b| - s; hyperbola: ||z-a| - |z-b|| - s.
    """
    a, b = c.focus_a, c.focus_b
    da, db = abs(z - a), abs(z - b)
    if c.kind is ConicKind.HYPERBOLA:
        # |z-a|^2 - |z-b|^2 is affine in z; dividing avoids cancelling two large distances
        diff = (2 * (z * (b - a).conjugate()).real + abs(a) ** 2 - abs(b) ** 2) / (da + db)
        return abs(diff) - c.s
    return da + db - c.s


def conic_residual(z: complex, c: ConicDescriptor) -> float:
    return abs(focal_defect(z, c))


def inverse_weight_closed_form(z: complex, foci: FociPair) -> float:
    """1/m at a unimodular root z: 1 + (1-|a|^2)/|z-a|^2 + (1-|b|^2)/|z-b|^2."""
    a, b = foci.a, foci.b
    return 1 + (1 - abs(a) ** 2) / abs(z - a) ** 2 + (1 - abs(b) ** 2) / abs(z - b) ** 2


def residue_weights(
    roots: Sequence[complex],
    foci: FociPair,
    p: CubicPoly,
    tol: Tolerances = DEFAULT_TOLERANCES,
) -> tuple[complex, complex, complex]:
    """Complex residues (z_k - a)(z_k - b) / p'(z_k) before any realness check."""
    sep, i, j = min_separation(roots)
    if sep <= tol.separation:
        raise RootCollision(f"roots {i} and {j} are {sep:.3g} apart")
    lead = p.coeffs[3]
    out = []
    for k, z in enumerate(roots):
        deriv = lead
        for j, w in enumerate(roots):
            if j != k:
                deriv *= z - w
        out.append((z - foci.a) * (z - foci.b) / deriv)
    return tuple(out)


def compute_weights(
    roots: Sequence[complex],
    foci: FociPair,
    p: CubicPoly,
    tol: Tolerances = DEFAULT_TOLERANCES,
) -> tuple[float, float, float]:
    """Real residues m_k = (z_k - a)(z_k - b) / p'(z_k).

    p'(z_k) is taken in factored form c3 * prod_{j != k}(z_k - z_j), which
    is exact for the computed roots and avoids cancellation in the
    coefficient form. Each m_k is cross-checked against the closed form
    valid for unimodular roots.
    """
    weights = []
    for k, (z, m) in enumerate(zip(roots, residue_weights(roots, foci, p, tol))):
        scale = max(1.0, abs(m))
        if abs(m.imag) > tol.weight_imag * scale:
            raise NonRealWeight(f"m{k + 1} = {m!r} has imaginary part above {tol.weight_imag:g}")
        inv = inverse_weight_closed_form(z, foci)
        # |m - 1/inv| <= tol * scale, written without dividing by inv
        if abs(m.real * inv - 1.0) > tol.weight_crosscheck * scale * abs(inv):
            raise NonRealWeight(
                f"m{k + 1} residue {m.real!r} disagrees with closed form 1/{inv!r}; roots not unimodular?"
            )
        weights.append(m.real)
    return tuple(weights)


def tangency_points(
    roots: Sequence[complex],
    weights: Sequence[float],
    tol: Tolerances = DEFAULT_TOLERANCES,
) -> tuple[complex, complex, complex]:
    """zeta_k = (m_i z_j + m_j z_i) / (m_i + m_j) on the side through z_i, z_j."""
    out = []
    for k, i, j in SIDES:
        denom = weights[i] + weights[j]
        if abs(denom) <= tol.weight_pair:
            raise WeightPairDegenerate(
                f"m{i + 1} + m{j + 1} = {denom:.3g}; tangency point {k + 1} is at infinity"
            )
        out.append((weights[i] * roots[j] + weights[j] * roots[i]) / denom)
    return tuple(out)


@dataclass(frozen=True)
class TangencyReport:
    angle_residual: float
    second_order_ratio: float
    second_order_ok: bool
    on_segment: bool
    sign_consistent: Optional[bool] = None


def _wrap_to_pi_multiple(angle: float) -> float:
    """Distance from ``angle`` to the nearest multiple of pi."""
    r = math.fmod(angle, math.pi)
    return min(abs(r), math.pi - abs(r))


def second_order_ratio(zeta: complex, direction: complex, c: ConicDescriptor, h: float = 1e-3) -> float:
    """residual(h) / residual(h/10) for displacements +-h along ``direction``.

    Changes in the focal defect are measured from its value at zeta, and
    symmetric displacements cancel the odd terms, so contact of order two
    gives ~100 and a transversal crossing ~10. Far from the centre the
    conic flattens, so ``h`` is multiplied by max(1, |zeta - center|)^1.5.
    """
    h = h * max(1.0, abs(zeta - c.center)) ** 1.5
    base = focal_defect(zeta, c)

    def spread(step):
        return abs(focal_defect(zeta + step * direction, c) - base) + abs(
            focal_defect(zeta - step * direction, c) - base
        )

    small = spread(h / 10)
    if small == 0.0:
        return math.inf
    return spread(h) / small


def tangency_check(
    zeta: complex,
    line_p: complex,
    line_q: complex,
    c: ConicDescriptor,
    weight: Optional[float] = None,
    tol: Tolerances = DEFAULT_TOLERANCES,
    h: float = 1e-3,
) -> TangencyReport:
    """Test that the line through ``line_p``, ``line_q`` touches the conic at ``zeta``.

    The first-order test is the reflection property: the line bisects the
    directions to the two foci, i.e. arg((zeta-a)/(zeta-p)) + arg((zeta-b)/(zeta-q))
    is a multiple of pi. That alone cannot tell tangent from normal contact,
    so the residual along the line must also grow quadratically.

    ``weight`` is the m of the opposite vertex. Since
    (zeta-a)(zeta-b) / ((zeta-p)(zeta-q)) = m, the angle sum should be 0
    for m > 0 and pi for m < 0; ``sign_consistent`` reports that. Whether
    zeta lies inside the segment is reported separately: for an ellipse
    that coincides with m > 0, for a hyperbola with m < 0.
    """
    a, b = c.focus_a, c.focus_b
    gap = tol.tangency_separation
    for label, other in (("line_p", line_p), ("line_q", line_q), ("focus a", a), ("focus b", b)):
        if abs(zeta - other) <= gap:
            raise DegenerateGeometry(f"tangency point coincides with {label}")
    if abs(line_q - line_p) <= gap:
        raise DegenerateGeometry("line endpoints coincide")

    angle = cmath.phase((zeta - a) / (zeta - line_p)) + cmath.phase((zeta - b) / (zeta - line_q))
    wrapped = math.remainder(angle, 2 * math.pi)
    direction = (line_q - line_p) / abs(line_q - line_p)
    ratio = second_order_ratio(zeta, direction, c, h)
    # parameter of zeta along p -> q; inside the segment when 0 < t < 1
    t = ((zeta - line_p) / (line_q - line_p)).real
    on_segment = 0.0 < t < 1.0
    return TangencyReport(
        angle_residual=_wrap_to_pi_multiple(angle),
        second_order_ratio=ratio,
        second_order_ok=50.0 <= ratio <= 200.0,
        on_segment=on_segment,
        sign_consistent=None if weight is None else (weight > 0) == (abs(wrapped) < math.pi / 2),
    )


@dataclass(frozen=True)
class SolutionResiduals:
    max_circle: float
    max_conic: float
    max_angle: float
    weight_sum: float
    second_order_ok: tuple[bool, bool, bool]
    second_order_ratios: tuple[float, float, float]
    sign_consistent: tuple[bool, bool, bool]


@dataclass(frozen=True)
class TriangleSolution:
    theta: float
    roots: tuple[complex, complex, complex]
    weights: tuple[float, float, float]
    tangency: tuple[complex, complex, complex]
    residuals: SolutionResiduals
    conic_residuals: tuple[float, float, float]

    @property
    def lam(self) -> complex:
        return cmath.exp(1j * self.theta)

    @property
    def weight_product(self) -> float:
        m1, m2, m3 = self.weights
        return m1 * m2 * m3


def classify_roots(roots: Sequence[complex], tol: Tolerances = DEFAULT_TOLERANCES) -> LambdaStatus:
    # collisions are tested first: roots can only leave the circle through one
    if min_separation(roots)[0] <= tol.separation:
        return LambdaStatus.ROOT_COLLISION
    if not roots_on_circle(roots, tol.circle)[0]:
        return LambdaStatus.OFF_CIRCLE
    return LambdaStatus.GOOD


def solve_triangle(
    foci: FociPair,
    lam: UnimodularParam,
    tol: Tolerances = DEFAULT_TOLERANCES,
    descriptor: Optional[ConicDescriptor] = None,
) -> TriangleSolution:
    """Roots, weights, tangency points and residuals for one lambda.

    Raises :class:`BadLambda` (with ``reason``) when lambda is not good.
    """
    if not isinstance(lam, UnimodularParam):
        lam = UnimodularParam(lam)
    c = descriptor if descriptor is not None else conic_descriptor(foci)
    p = build_p_lambda(foci, lam)
    roots = cubic_roots(p, tol)
    status = classify_roots(roots, tol)
    if status is not LambdaStatus.GOOD:
        raise BadLambda(status, lam.theta)

    weights = compute_weights(roots, foci, p, tol)
    zetas = tangency_points(roots, weights, tol)
    conic_res = tuple(conic_residual(z, c) for z in zetas)
    reports = [
        tangency_check(zetas[k], roots[i], roots[j], c, weights[k], tol) for k, i, j in SIDES
    ]
    residuals = SolutionResiduals(
        max_circle=max(roots_on_circle(roots, tol.circle)[1]),
        max_conic=max(conic_res),
        max_angle=max(r.angle_residual for r in reports),
        weight_sum=abs(sum(weights) - 1.0),
        second_order_ok=tuple(r.second_order_ok for r in reports),
        second_order_ratios=tuple(r.second_order_ratio for r in reports),
        sign_consistent=tuple(r.sign_consistent for r in reports),
    )
    return TriangleSolution(
        theta=lam.theta,
        roots=roots,
        weights=weights,
        tangency=zetas,
        residuals=residuals,
        conic_residuals=conic_res,
    )


def focal_factorization_residual(solution: TriangleSolution, foci: FociPair) -> float:
    """Largest relative mismatch in zeta_k - f = m_k/(1-m_k) (f-z_i)(f-z_j)/(f-z_k), f in {a, b}."""
    worst = 0.0
    z, m = solution.roots, solution.weights
    for k, i, j in SIDES:
        for f in (foci.a, foci.b):
            predicted = m[k] / (1 - m[k]) * (f - z[i]) * (f - z[j]) / (f - z[k])
            actual = solution.tangency[k] - f
            worst = max(worst, abs(actual - predicted) / max(1.0, abs(actual)))
    return worst


def collinearity_residual(solution: TriangleSolution) -> float:
    """Largest |cross(zeta_k - z_i, z_j - z_i)| / |z_j - z_i| over the three sides."""
    worst = 0.0
    z = solution.roots
    for k, i, j in SIDES:
        u = solution.tangency[k] - z[i]
        v = z[j] - z[i]
        worst = max(worst, abs((u.conjugate() * v).imag) / abs(v))
    return worst

"""The self-inversive family P_lambda built from two foci, plus the Blaschke oracle."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

from .config import DEFAULT_TOLERANCES, Tolerances
from .cpoly import CubicPoly, as_finite_complex, unit
from .errors import DegenerateFoci, NotSelfInversive, PoleProximity, ZeroCoefficient

FOCUS_CIRCLE_GAP = 1e-9


@dataclass(frozen=True)
class FociPair:
    """Two foci, neither of which may sit on the unit circle."""

    a: complex
    b: complex

    def __post_init__(self):
        for name in ("a", "b"):
            try:
                z = as_finite_complex(getattr(self, name), name)
            except ValueError as exc:
                raise DegenerateFoci(str(exc)) from None
            if abs(abs(z) - 1.0) <= FOCUS_CIRCLE_GAP:
                raise DegenerateFoci(
                    f"focus {name}={z!r} lies on the unit circle (||{name}|-1| <= {FOCUS_CIRCLE_GAP:g})"
                )
            object.__setattr__(self, name, z)

    @property
    def both_inside(self) -> bool:
        return abs(self.a) < 1 and abs(self.b) < 1


@dataclass(frozen=True)
class UnimodularParam:
    """lambda = exp(i*theta); theta is reduced into [0, 2*pi)."""

    theta: float

    def __post_init__(self):
        theta = float(self.theta)
        if not math.isfinite(theta):
            raise ValueError(f"theta must be finite, got {theta!r}")
        object.__setattr__(self, "theta", theta % (2 * math.pi))

    @property
    def lam(self) -> complex:
        return unit(self.theta)


def build_p_lambda(foci: FociPair, lam: UnimodularParam) -> CubicPoly:
    """Expand z(z-a)(z-b) - lam (1 - conj(a) z)(1 - conj(b) z)."""
    a, b, l = foci.a, foci.b, lam.lam
    ac, bc = a.conjugate(), b.conjugate()
    return CubicPoly(
        (
            -l,
            a * b + l * (ac + bc),
            -(a + b) - l * ac * bc,
            1.0 + 0j,
        )
    )


def check_self_inversive(p: CubicPoly, tol: float = 1e-12) -> complex:
    """Return the unimodular mu with c_k = mu * conj(c_{3-k}) for every k.

    mu is read off the outer pair (c3 / conj(c0)) and then confirmed on the
    inner pair. Raises ZeroCoefficient if |c0| <= tol, and NotSelfInversive when
    the coefficients are not symmetric.
    """
    c0, c1, c2, c3 = p.coeffs
    if abs(c0) <= tol:
        raise ZeroCoefficient(f"|c0| = {abs(c0):.3g} too small to normalise")
    mu = c3 / c0.conjugate()
    scale = max(1.0, p.max_coeff)
    if abs(abs(mu) - 1.0) > tol:
        raise NotSelfInversive(f"|mu| = {abs(mu)!r} is not 1; polynomial is not self-inversive")
    for k in range(4):
        if abs(p.coeffs[k] - mu * p.coeffs[3 - k].conjugate()) > tol * scale:
            raise NotSelfInversive(f"coefficient pair ({k}, {3 - k}) breaks the symmetry for mu={mu!r}")
    return mu


def roots_on_circle(roots: Sequence[complex], tol: float) -> tuple[bool, tuple[float, ...]]:
    residuals = tuple(abs(abs(z) - 1.0) for z in roots)
    return all(r <= tol for r in residuals), residuals


def blaschke_eval(z: complex, foci: FociPair, tol: Tolerances = DEFAULT_TOLERANCES) -> complex:
    """z (z-a)/(1-conj(a)z) (z-b)/(1-conj(b)z)."""
    da = 1 - foci.a.conjugate() * z
    db = 1 - foci.b.conjugate() * z
    if abs(da) <= tol.pole or abs(db) <= tol.pole:
        raise PoleProximity(f"z={z!r} is within {tol.pole:g} of a pole")
    return z * (z - foci.a) / da * (z - foci.b) / db

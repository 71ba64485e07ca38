"""Cubic polynomial arithmetic and a simultaneous-iteration root solver.

Complex scalars are plain Python ``complex`` values; everything here is pure
and operates on immutable data.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Sequence

from .config import DEFAULT_TOLERANCES, Tolerances
from .errors import DegenerateDegree

_DK_SEED = complex(0.4, 0.9)
_DK_MAX_ITER = 200


def as_finite_complex(value, name: str = "value") -> complex:
    z = complex(value)
    if not (math.isfinite(z.real) and math.isfinite(z.imag)):
        raise ValueError(f"{name} must be finite, got {z!r}")
    return z


@dataclass(frozen=True)
class CubicPoly:
    """Polynomial c0 + c1 z + c2 z^2 + c3 z^3, ``coeffs[k]`` holding c_k."""

    coeffs: tuple[complex, complex, complex, complex]

    def __post_init__(self):
        if len(self.coeffs) != 4:
            raise ValueError(f"a cubic needs 4 coefficients, got {len(self.coeffs)}")
        object.__setattr__(
            self,
            "coeffs",
            tuple(as_finite_complex(c, f"c{k}") for k, c in enumerate(self.coeffs)),
        )

    @classmethod
    def from_roots(cls, roots: Sequence[complex], leading: complex = 1.0) -> "CubicPoly":
        r1, r2, r3 = roots
        return cls(
            (
                -leading * r1 * r2 * r3,
                leading * (r1 * r2 + r1 * r3 + r2 * r3),
                -leading * (r1 + r2 + r3),
                leading,
            )
        )

    @property
    def max_coeff(self) -> float:
        return max(abs(c) for c in self.coeffs)

    def __call__(self, z: complex) -> complex:
        return poly_eval(self, z)


def poly_eval(p: CubicPoly, z: complex) -> complex:
    """Horner evaluation of ``p`` at ``z``."""
    c0, c1, c2, c3 = p.coeffs
    return ((c3 * z + c2) * z + c1) * z + c0


def poly_derivative(p: CubicPoly) -> tuple[complex, complex, complex]:
    """Coefficients (c1, 2 c2, 3 c3) of p'(z), lowest degree first."""
    _, c1, c2, c3 = p.coeffs
    return (c1, 2 * c2, 3 * c3)


def derivative_eval(p: CubicPoly, z: complex) -> complex:
    d0, d1, d2 = poly_derivative(p)
    return (d2 * z + d1) * z + d0


def polish_root(p: CubicPoly, z0: complex, tol: Tolerances = DEFAULT_TOLERANCES) -> complex:
    """Refine ``z0`` by Newton's method.

    Returns ``z0`` untouched when |p'(z0)| is below the derivative guard
    (near-multiple root). Steps that would increase |p| are rejected, so a
    root adjacent to another one cannot be pulled across onto its neighbour.
    """
    z = complex(z0)
    if abs(derivative_eval(p, z)) < tol.derivative_guard:
        return z
    fz = poly_eval(p, z)
    for _ in range(tol.newton_max_iter):
        if abs(fz) < tol.newton_residual:
            break
        dz = derivative_eval(p, z)
        if abs(dz) < tol.derivative_guard:
            break
        step = fz / dz
        candidate = z - step
        fc = poly_eval(p, candidate)
        if abs(fc) > abs(fz):
            break
        z, fz = candidate, fc
        if abs(step) < tol.newton_step * max(1.0, abs(z)):
            break
    return z


def _durand_kerner(monic: tuple[complex, complex, complex]) -> list[complex]:
    c0, c1, c2 = monic

    def f(z):
        return ((z + c2) * z + c1) * z + c0

    # Fujiwara-type bound keeps the starting circle around all roots.
    radius = 2.0 * max(abs(c2), math.sqrt(abs(c1)), abs(c0) ** (1.0 / 3.0), 1e-3)
    shift = -c2 / 3.0
    z = [shift + radius * _DK_SEED**k for k in range(3)]
    for _ in range(_DK_MAX_ITER):
        biggest = 0.0
        for i in range(3):
            denom = 1.0 + 0.0j
            for j in range(3):
                if j != i:
                    denom *= z[i] - z[j]
            if denom == 0:
                # coincident iterates: nudge deterministically
                z[i] += 1e-8 * radius * _DK_SEED ** (i + 1)
                biggest = math.inf
                continue
            step = f(z[i]) / denom
            z[i] -= step
            biggest = max(biggest, abs(step) / max(1.0, abs(z[i])))
        if biggest <= 1e-14:
            break
    return z


def cubic_roots(p: CubicPoly, tol: Tolerances = DEFAULT_TOLERANCES) -> tuple[complex, complex, complex]:
    """All three roots of ``p`` (with multiplicity), sorted by (real, imag).

    Durand-Kerner iteration followed by a guarded Newton polish of each
    root. Raises :class:`DegenerateDegree` if the leading coefficient is
    below ``tol.leading_coeff`` in magnitude.
    """
    c0, c1, c2, c3 = p.coeffs
    if abs(c3) < tol.leading_coeff:
        raise DegenerateDegree(f"leading coefficient {c3!r} is numerically zero")
    roots = _durand_kerner((c0 / c3, c1 / c3, c2 / c3))
    roots = [polish_root(p, r, tol) for r in roots]
    roots.sort(key=lambda r: (r.real, r.imag))
    return tuple(roots)


def min_separation(roots: Sequence[complex]) -> tuple[float, int, int]:
    """Smallest pairwise distance between roots and the indices achieving it."""
    best = (math.inf, 0, 1)
    for i in range(len(roots)):
        for j in range(i + 1, len(roots)):
            d = abs(roots[i] - roots[j])
            if d < best[0]:
                best = (d, i, j)
    return best


def unit(theta: float) -> complex:
    return cmath.exp(1j * theta)

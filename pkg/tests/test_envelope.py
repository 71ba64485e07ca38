import cmath
import math
import random

import pytest

from conic_envelope.cpoly import CubicPoly
from conic_envelope.envelope import (
    ConicKind,
    LambdaStatus,
    collinearity_residual,
    compute_weights,
    conic_descriptor,
    conic_residual,
    focal_defect,
    focal_factorization_residual,
    second_order_ratio,
    solve_triangle,
    tangency_check,
    tangency_points,
)
from conic_envelope.errors import BadLambda, DegenerateGeometry, NonRealWeight, RootCollision, WeightPairDegenerate
from conic_envelope.inversive import FociPair, UnimodularParam, build_p_lambda

from conftest import EXAMPLE_FOCI, uniform_thetas
from oracles import cube_roots_of

E = 0.618


def test_descriptor_inside_example():
    c = conic_descriptor(FociPair(0, E))
    assert c.kind is ConicKind.ELLIPSE
    assert c.s == pytest.approx(1.0, abs=1e-15)
    assert c.eccentricity == pytest.approx(E, abs=1e-15)
    assert c.center == pytest.approx(E / 2)
    assert c.semi_major == pytest.approx(0.5)
    assert c.semi_secondary == pytest.approx(math.sqrt(0.25 - (E / 2) ** 2))


def test_descriptor_outside_example():
    a, b = EXAMPLE_FOCI["outside"]
    c = conic_descriptor(FociPair(a, b))
    # 1 - conj(a) b = 1 - (0.25 - 2.06i)
    assert c.kind is ConicKind.ELLIPSE
    assert c.s == pytest.approx(abs(0.75 + 2.06j), abs=1e-14)
    assert c.s == pytest.approx(2.19228, abs=1e-5)
    assert c.eccentricity == pytest.approx(math.sqrt(3.88) / abs(0.75 + 2.06j), abs=1e-14)
    assert c.eccentricity == pytest.approx(0.89850, abs=1e-5)


def test_descriptor_hyperbola_example():
    a, b = EXAMPLE_FOCI["hyperbola"]
    c = conic_descriptor(FociPair(a, b))
    assert c.kind is ConicKind.HYPERBOLA
    assert c.eccentricity == pytest.approx(abs(0.9 + 0.5j) / abs(0.7 - 0.42j), abs=1e-14)
    assert c.eccentricity > 1


def test_descriptor_circle():
    c = conic_descriptor(FociPair(0, 0))
    assert c.kind is ConicKind.CIRCLE
    assert (c.s, c.eccentricity, c.rotation) == (1.0, 0.0, 0.0)
    assert c.semi_major == c.semi_secondary == 0.5


def test_focal_identity_and_kind_agree():
    rng = random.Random(5)
    for _ in range(500):
        a = complex(rng.uniform(-3, 3), rng.uniform(-3, 3))
        b = complex(rng.uniform(-3, 3), rng.uniform(-3, 3))
        if min(abs(abs(a) - 1), abs(abs(b) - 1)) < 1e-6:
            continue
        c = conic_descriptor(FociPair(a, b))
        assert c.s > 0
        lhs = c.s**2 - abs(a - b) ** 2
        rhs = (1 - abs(a) ** 2) * (1 - abs(b) ** 2)
        assert abs(lhs - rhs) <= 1e-12 * max(1.0, c.s**2, abs(a - b) ** 2)
        if c.kind is ConicKind.ELLIPSE:
            assert c.eccentricity < 1
        else:
            assert c.eccentricity > 1


def test_weights_equilateral():
    p = build_p_lambda(FociPair(0, 0), UnimodularParam(0))
    roots = [cmath.exp(2j * math.pi * k / 3) for k in range(3)]
    m = compute_weights(roots, FociPair(0, 0), p)
    assert all(abs(x - 1 / 3) < 1e-15 for x in m)


def test_weight_at_root_one_inside_example():
    foci = FociPair(0, E)
    sol = solve_triangle(foci, UnimodularParam(0))
    # closed form at z = 1: 1/m = 1 + 1 + (1 - e^2)/(1 - e)^2
    expected = 1 / (2 + (1 - E**2) / (1 - E) ** 2)
    k = sol.roots.index(1)
    assert sol.weights[k] == pytest.approx(expected, abs=1e-14)
    assert sol.weights[k] == pytest.approx(0.16037, abs=1e-5)


def test_weights_reject_collision():
    foci = FociPair(0, E)
    with pytest.raises(RootCollision):
        compute_weights([1, 1 + 1e-8, -1], foci, CubicPoly.from_roots((1, 1, -1)))


def test_weights_reject_off_circle_roots():
    foci = FociPair(0.2, -0.3j)
    roots = (0.5, 2.0, 1j)
    with pytest.raises(NonRealWeight):
        compute_weights(roots, foci, CubicPoly.from_roots(roots))


def test_tangency_points_equilateral_midpoints():
    roots = [cmath.exp(2j * math.pi * k / 3) for k in range(3)]
    z = tangency_points(roots, (1 / 3, 1 / 3, 1 / 3))
    assert z[2] == pytest.approx((roots[0] + roots[1]) / 2, abs=1e-15)
    assert all(abs(abs(w) - 0.5) < 1e-15 for w in z)


def test_tangency_point_zero_weight_lands_on_vertex():
    # zeta3 = (m1 z2 + m2 z1)/(m1 + m2): with m2 = 0 it is z2
    roots = (1 + 0j, 1j, -1 + 0j)
    z = tangency_points(roots, (1.0, 0.0, 0.5))
    assert z[2] == roots[1]


def test_tangency_points_infinite():
    with pytest.raises(WeightPairDegenerate):
        tangency_points((1, 1j, -1), (0.5, -0.5, 1.0))


def test_conic_residual_examples():
    circle = conic_descriptor(FociPair(0, 0))
    assert conic_residual(0.5, circle) == 0
    ellipse = conic_descriptor(FociPair(0, E))
    assert conic_residual(0, ellipse) == pytest.approx(1 - E, abs=1e-15)


def test_hyperbola_residual_is_branch_agnostic():
    a, b = EXAMPLE_FOCI["hyperbola"]
    c = conic_descriptor(FociPair(a, b))
    # points on both branches from the parametric form
    for sign in (-1, 1):
        for u in (-1.0, 0.0, 0.7):
            z = c.center + cmath.exp(1j * c.rotation) * complex(
                sign * c.semi_major * math.cosh(u), c.semi_secondary * math.sinh(u)
            )
            assert conic_residual(z, c) < 1e-14


@pytest.mark.parametrize("name", sorted(EXAMPLE_FOCI))
def test_pipeline_invariants(name):
    foci = FociPair(*EXAMPLE_FOCI[name])
    c = conic_descriptor(foci)
    solved = 0
    for theta in uniform_thetas(720):
        try:
            sol = solve_triangle(foci, UnimodularParam(theta), descriptor=c)
        except BadLambda:
            continue
        solved += 1
        r = sol.residuals
        assert r.weight_sum <= 1e-10
        assert r.max_conic <= 1e-8
        assert r.max_angle <= 1e-6
        assert all(r.second_order_ok)
        assert all(r.sign_consistent)
        assert focal_factorization_residual(sol, foci) <= 1e-8
        assert collinearity_residual(sol) <= 1e-10
        expected = -1 if c.kind is ConicKind.HYPERBOLA else 1
        assert math.copysign(1, sol.weight_product) == expected
    assert solved > 0


def test_solve_inside_theta_zero():
    sol = solve_triangle(FociPair(0, E), UnimodularParam(0))
    y = math.sqrt(1 - 0.191**2)
    assert sol.roots[0] == pytest.approx(complex(-0.191, -y), abs=1e-13)
    assert sol.roots[1] == pytest.approx(complex(-0.191, y), abs=1e-13)
    assert sol.roots[2] == pytest.approx(1, abs=1e-15)
    assert sol.residuals.max_conic <= 1e-8
    for z in sol.tangency:
        assert abs(abs(z) + abs(z - E) - 1) <= 1e-8


@pytest.mark.parametrize("theta", [0.0, 0.5, 2.0, 4.1])
def test_solve_equilateral(theta):
    sol = solve_triangle(FociPair(0, 0), UnimodularParam(theta))
    expected = sorted(cube_roots_of(cmath.exp(1j * theta)), key=lambda z: (z.real, z.imag))
    for r, e in zip(sol.roots, expected):
        assert abs(r - e) < 1e-14
    assert all(abs(m - 1 / 3) < 1e-13 for m in sol.weights)
    assert all(abs(abs(z) - 0.5) < 1e-13 for z in sol.tangency)


def test_solve_bad_region_raises_off_circle():
    with pytest.raises(BadLambda) as info:
        solve_triangle(FociPair(*EXAMPLE_FOCI["outside"]), UnimodularParam(0))
    assert info.value.reason is LambdaStatus.OFF_CIRCLE


def test_tangency_check_equilateral_side():
    c = conic_descriptor(FociPair(0, 0))
    z1, z2 = 1 + 0j, cmath.exp(2j * math.pi / 3)
    report = tangency_check((z1 + z2) / 2, z1, z2, c, 1 / 3)
    assert report.angle_residual <= 1e-10
    assert report.second_order_ok
    assert report.on_segment and report.sign_consistent


def _normal_direction(z, c, h=1e-6):
    gx = (focal_defect(z + h, c) - focal_defect(z - h, c)) / (2 * h)
    gy = (focal_defect(z + 1j * h, c) - focal_defect(z - 1j * h, c)) / (2 * h)
    g = complex(gx, gy)
    return g / abs(g)


@pytest.mark.parametrize("name", sorted(EXAMPLE_FOCI))
def test_normal_line_fails_second_order(name):
    foci = FociPair(*EXAMPLE_FOCI[name])
    c = conic_descriptor(foci)
    theta = {"inside": 1.0, "outside": 3.6, "hyperbola": 0.5}[name]
    sol = solve_triangle(foci, UnimodularParam(theta), descriptor=c)
    zeta = sol.tangency[2]
    n = _normal_direction(zeta, c)
    ratio = second_order_ratio(zeta, n, c)
    assert 8 < ratio < 12
    report = tangency_check(zeta, zeta - n, zeta + n, c)
    assert not report.second_order_ok
    # the normal also satisfies the equal-angle condition; only the second-order test separates them
    assert report.angle_residual < 1e-6


def test_tangency_check_degenerate():
    c = conic_descriptor(FociPair(0, E))
    with pytest.raises(DegenerateGeometry):
        tangency_check(0j, 1, 1j, c)
    with pytest.raises(DegenerateGeometry):
        tangency_check(1 + 0j, 1, 1j, c)

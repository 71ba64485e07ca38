"""SVG figures of the unit circle, the conic and the root triangles, and CSV/JSON exports."""

from __future__ import annotations

import cmath
import csv
import enum
import io
import math
from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence

from .envelope import ConicDescriptor, ConicKind, SIDES, TriangleSolution

SIZE = 800

CSV_COLUMNS = (
    "theta",
    "z1_re", "z1_im", "z2_re", "z2_im", "z3_re", "z3_im",
    "m1", "m2", "m3",
    "zeta1_re", "zeta1_im", "zeta2_re", "zeta2_im", "zeta3_re", "zeta3_im",
    "max_conic_residual",
)  # fmt: skip


@dataclass(frozen=True)
class View:
    center: complex = 0j
    half_width: float = 1.6

    def __post_init__(self):
        if not self.half_width > 0:
            raise ValueError("half_width must be positive")


@dataclass(frozen=True)
class Style:
    circle_color: str = "#808080"
    conic_color: str = "#1f4fbf"
    side_color: str = "#c0392b"
    point_color: str = "#000000"
    circle_width: float = 1.5
    conic_width: float = 2.0
    side_width: float = 0.6
    point_radius: float = 2.5
    draw_unit_circle: bool = True
    draw_tangency_points: bool = True
    # None picks 0 when both foci are inside the disk, 3 otherwise
    extend_sides: Optional[float] = None
    conic_samples: int = 720


@dataclass(frozen=True)
class Scene:
    descriptor: ConicDescriptor
    solutions: Sequence[TriangleSolution] = ()
    view: View = field(default_factory=View)
    style: Style = field(default_factory=Style)


def default_view(c: ConicDescriptor) -> View:
    """Unit circle plus margin, widened to show both foci with 20% to spare."""
    reach = max(abs(c.focus_a), abs(c.focus_b))
    return View(0j, max(1.6, 1.2 * reach))


def default_extension(c: ConicDescriptor) -> float:
    return 0.0 if abs(c.focus_a) < 1 and abs(c.focus_b) < 1 else 3.0


def _rotate(c: ConicDescriptor) -> complex:
    return cmath.exp(1j * c.rotation)


def _in_box(z: complex, center: complex, half_width: float) -> bool:
    d = z - center
    return abs(d.real) <= half_width and abs(d.imag) <= half_width


def _branch_point(c: ConicDescriptor, sign: int, u: float) -> complex:
    return c.center + _rotate(c) * complex(sign * c.semi_major * math.cosh(u), c.semi_secondary * math.sinh(u))


def _bisect_exit(inside, u_in: float, u_out: float, iters: int = 60) -> float:
    for _ in range(iters):
        mid = 0.5 * (u_in + u_out)
        if inside(mid):
            u_in = mid
        else:
            u_out = mid
    return u_in


def _hyperbola_range(c: ConicDescriptor, sign: int, view_center: complex, half_width: float) -> tuple[float, float]:
    """Parameter range of one branch inside the clip box.

    Only the outermost crossings are located, so a branch that leaves and
    re-enters the box is kept in one piece.
    """
    reach = abs(view_center - c.center) + half_width * math.sqrt(2) + 1.0
    u_max = math.asinh(reach / math.hypot(c.semi_major, c.semi_secondary))
    grid = 512
    us = [-u_max + 2 * u_max * k / grid for k in range(grid + 1)]

    def inside(u):
        return _in_box(_branch_point(c, sign, u), view_center, half_width)

    flags = [inside(u) for u in us]
    if not any(flags):
        return -0.5, 0.5
    first = flags.index(True)
    last = grid - flags[::-1].index(True)
    lo = us[first] if first == 0 else _bisect_exit(inside, us[first], us[first - 1])
    hi = us[last] if last == grid else _bisect_exit(inside, us[last], us[last + 1])
    return lo, hi


def sample_conic(
    c: ConicDescriptor,
    n: int,
    clip_half_width: float,
    view_center: complex = 0j,
) -> list[list[complex]]:
    """Polylines tracing the conic: one closed loop, or one open polyline per hyperbola branch.

    Ellipse loops list ``n`` distinct points (the closing edge is implicit).
    """
    if n < 16 and c.kind is ConicKind.HYPERBOLA:
        raise ValueError("n must be at least 16")
    rot = _rotate(c)
    if c.kind is not ConicKind.HYPERBOLA:
        pts = []
        for k in range(n):
            t = 2 * math.pi * k / n
            pts.append(c.center + rot * complex(c.semi_major * math.cos(t), c.semi_secondary * math.sin(t)))
        return [pts]
    branches = []
    for sign in (-1, 1):
        lo, hi = _hyperbola_range(c, sign, view_center, clip_half_width)
        branches.append([_branch_point(c, sign, lo + (hi - lo) * k / (n - 1)) for k in range(n)])
    return branches


class _Canvas:
    def __init__(self, view: View):
        self.view = view
        self.scale = (SIZE / 2) / view.half_width
        self.parts: list[str] = []

    def xy(self, z: complex) -> tuple[float, float]:
        d = z - self.view.center
        return SIZE / 2 + d.real * self.scale, SIZE / 2 - d.imag * self.scale

    def points(self, zs: Iterable[complex]) -> str:
        return " ".join("%.6f,%.6f" % self.xy(z) for z in zs)


def render_svg(scene: Scene) -> str:
    """Standalone SVG 1.1 document; identical scenes give identical bytes."""
    view, style, c = scene.view, scene.style, scene.descriptor
    canvas = _Canvas(view)
    out = [
        '<?xml version="1.0" encoding="UTF-8" standalone="no"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{SIZE}" height="{SIZE}" '
        f'viewBox="0 0 {SIZE} {SIZE}">',
        f'<rect x="0" y="0" width="{SIZE}" height="{SIZE}" fill="#ffffff"/>',
    ]
    if style.draw_unit_circle:
        cx, cy = canvas.xy(0j)
        out.append(
            '<g id="unit-circle"><circle cx="%.6f" cy="%.6f" r="%.6f" fill="none" stroke="%s" stroke-width="%.6f"/></g>'
            % (cx, cy, canvas.scale, style.circle_color, style.circle_width)
        )

    out.append('<g id="conic">')
    for line in sample_conic(c, style.conic_samples, view.half_width, view.center):
        tag = "polygon" if c.kind is not ConicKind.HYPERBOLA else "polyline"
        out.append(
            '<%s points="%s" fill="none" stroke="%s" stroke-width="%.6f"/>'
            % (tag, canvas.points(line), style.conic_color, style.conic_width)
        )
    out.append("</g>")

    ext = default_extension(c) if style.extend_sides is None else style.extend_sides
    out.append('<g id="triangles">')
    for sol in sorted(scene.solutions, key=lambda s: s.theta):
        for _, i, j in SIDES:
            p, q = sol.roots[i], sol.roots[j]
            d = q - p
            x1, y1 = canvas.xy(p - ext * d)
            x2, y2 = canvas.xy(q + ext * d)
            out.append(
                '<line x1="%.6f" y1="%.6f" x2="%.6f" y2="%.6f" stroke="%s" stroke-width="%.6f"/>'
                % (x1, y1, x2, y2, style.side_color, style.side_width)
            )
    out.append("</g>")

    if style.draw_tangency_points:
        out.append('<g id="tangency">')
        for sol in sorted(scene.solutions, key=lambda s: s.theta):
            for zeta in sol.tangency:
                x, y = canvas.xy(zeta)
                out.append('<circle cx="%.6f" cy="%.6f" r="%.6f" fill="%s"/>' % (x, y, style.point_radius, style.point_color))
        out.append("</g>")
    out.append("</svg>")
    return "\n".join(out) + "\n"


def _fmt(x: float) -> str:
    return "%.12g" % x


def export_csv(solutions: Iterable[TriangleSolution]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    for s in sorted(solutions, key=lambda s: s.theta):
        row = [s.theta]
        for z in s.roots:
            row += [z.real, z.imag]
        row += list(s.weights)
        for z in s.tangency:
            row += [z.real, z.imag]
        row.append(s.residuals.max_conic)
        writer.writerow([_fmt(v) for v in row])
    return buf.getvalue()


def read_csv(text: str) -> list[dict[str, float]]:
    reader = csv.DictReader(io.StringIO(text))
    if tuple(reader.fieldnames or ()) != CSV_COLUMNS:
        raise ValueError(f"unexpected CSV header {reader.fieldnames!r}")
    return [{k: float(v) for k, v in row.items()} for row in reader]


def to_jsonable(obj):
    """Recursively convert complex numbers, enums, tuples and dataclasses into JSON types."""
    if isinstance(obj, complex):
        return {"re": obj.real, "im": obj.imag}
    if isinstance(obj, enum.Enum):
        return obj.value
    if isinstance(obj, dict):
        return {str(k): to_jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [to_jsonable(v) for v in obj]
    if hasattr(obj, "__dataclass_fields__"):
        return {k: to_jsonable(getattr(obj, k)) for k in obj.__dataclass_fields__}
    if isinstance(obj, float) and not math.isfinite(obj):
        return None
    return obj

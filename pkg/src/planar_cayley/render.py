"""SVG drawings of built balls.

Hyperbolic balls are drawn in the Poincare disk, spherical ones by
stereographic projection and Euclidean ones as they are.  In all three
cases edges are geodesics of the model, which project to circular arcs
(or segments), so every edge is drawn as the circle through its two
projected endpoints and its projected midpoint.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from xml.sax.saxutils import escape

import numpy as np

from .errors import EmptyBall
from .geometry import GeometryClass
from .tiling import Ball

PALETTE = (
    "#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd",
    "#8c564b", "#e377c2", "#17becf", "#bcbd22", "#7f7f7f",
)
FACE_PALETTE = (
    "#c6dbef", "#fcbba1", "#c7e9c0", "#fdd0a2", "#dadaeb",
    "#d9d9d9", "#fbb4b9", "#ccebc5", "#ffffcc", "#e5d8bd",
)
COLOR_MODES = ("generator", "face_class", "none")

# below this sagitta (in model units) an arc is drawn as a straight segment
_STRAIGHT_TOL = 1e-9


@dataclass(frozen=True)
class RenderOptions:
    width: int = 800
    height: int = 800
    stroke_width: float = 1.5
    color_by: str = "generator"
    label_vertices: bool = False
    center: int = 0
    vertex_radius: float = 3.0
    margin: float = 10.0

    def __post_init__(self):
        if self.width <= 0 or self.height <= 0:
            raise ValueError("image dimensions must be positive")
        if self.color_by not in COLOR_MODES:
            raise ValueError(f"color_by must be one of {COLOR_MODES}")


@dataclass(frozen=True)
class EdgeShape:
    """An edge in projected plane coordinates; ``center`` is None for segments."""

    u: int
    v: int
    generator: int
    start: tuple[float, float]
    end: tuple[float, float]
    mid: tuple[float, float]
    center: tuple[float, float] | None
    radius: float | None


def _minkowski(p, q):
    return p[0] * q[0] + p[1] * q[1] - p[2] * q[2]


class _Projection:
    def __init__(self, ball: Ball, center: int):
        if not 0 <= center < ball.n_vertices:
            raise ValueError(f"projection center {center} is not a vertex of the ball")
        self.geometry = ball.geometry
        recenter = np.linalg.inv(ball.frames[center])
        pts = ball.positions @ recenter.T
        if self.geometry is GeometryClass.SPHERICAL:
            pts = pts / np.linalg.norm(pts, axis=1)[:, None]
            self.rotation = _spherical_view(ball, pts, center)
            pts = pts @ self.rotation.T
        self.points = pts

    def midpoint(self, p, q):
        if self.geometry is GeometryClass.EUCLIDEAN:
            return (p + q) / 2
        m = p + q
        if self.geometry is GeometryClass.SPHERICAL:
            return m / np.linalg.norm(m)
        return m / math.sqrt(-_minkowski(m, m))

    def project(self, p) -> tuple[float, float]:
        if self.geometry is GeometryClass.EUCLIDEAN:
            return float(p[0] / p[2]), float(p[1] / p[2])
        return float(p[0] / (1 + p[2])), float(p[1] / (1 + p[2]))


def _rotation_to_pole(c) -> np.ndarray:
    """Rotation taking the unit vector c to (0, 0, 1)."""
    z = np.array([0.0, 0.0, 1.0])
    v = np.cross(c, z)
    s = np.linalg.norm(v)
    cos = float(c @ z)
    if s < 1e-15:
        return np.eye(3) if cos > 0 else np.diag([1.0, -1.0, -1.0])
    k = v / s
    K = np.array([[0, -k[2], k[1]], [k[2], 0, -k[0]], [-k[1], k[0], 0]])
    return np.eye(3) + s * K + (1 - cos) * (K @ K)


def _spherical_view(ball: Ball, pts, center: int) -> np.ndarray:
    """Rotation putting the projection pole at the center of the face farthest from ``center``.

    That face becomes the unbounded outer region and every other face is
    drawn inside it, with ``center`` near the middle of the picture.
    """
    best, pole = None, -pts[center]
    for f in ball.closed_faces():
        c = pts[list(f.vertices)].sum(axis=0)
        norm = np.linalg.norm(c)
        if norm < 1e-9:
            continue
        c = c / norm
        # farthest from the center vertex first, then larger faces
        key = (round(float(c @ pts[center]), 9), -len(f.darts))
        if best is None or key < best:
            best, pole = key, c
    return _rotation_to_pole(-pole)


def _circle(a, m, b):
    """Center and radius of the circle through three points, or None if they are collinear."""
    ax, ay = a
    bx, by = m
    cx, cy = b
    det = 2 * (ax * (by - cy) + bx * (cy - ay) + cx * (ay - by))
    chord = math.hypot(cx - ax, cy - ay)
    # sagitta of the arc relative to the chord midpoint
    sag = abs((bx - ax) * (cy - ay) - (by - ay) * (cx - ax)) / max(chord, 1e-300)
    if sag < _STRAIGHT_TOL * max(1.0, chord):
        return None
    a2, b2, c2 = ax * ax + ay * ay, bx * bx + by * by, cx * cx + cy * cy
    ux = (a2 * (by - cy) + b2 * (cy - ay) + c2 * (ay - by)) / det
    uy = (a2 * (cx - bx) + b2 * (ax - cx) + c2 * (bx - ax)) / det
    return (ux, uy), math.hypot(ax - ux, ay - uy)


def _shape(proj: _Projection, ball: Ball, u: int, v: int, generator: int) -> EdgeShape:
    p, q = proj.points[u], proj.points[v]
    a, b = proj.project(p), proj.project(q)
    m = proj.project(proj.midpoint(p, q))
    circ = None if proj.geometry is GeometryClass.EUCLIDEAN else _circle(a, m, b)
    if circ is None:
        return EdgeShape(u, v, generator, a, b, m, None, None)
    return EdgeShape(u, v, generator, a, b, m, circ[0], circ[1])


def edge_shapes(ball: Ball, opts: RenderOptions = RenderOptions()) -> list[EdgeShape]:
    """Continuous (pre-pixel) geometry of every edge, in projected plane coordinates."""
    if ball.n_vertices == 0:
        raise EmptyBall("nothing to draw")
    proj = _Projection(ball, opts.center)
    return [_shape(proj, ball, u, v, ball.scheme.sigma[su]) for u, su, v, _ in ball.edges()]


def projected_vertices(ball: Ball, opts: RenderOptions = RenderOptions()) -> list[tuple[float, float]]:
    if ball.n_vertices == 0:
        raise EmptyBall("nothing to draw")
    proj = _Projection(ball, opts.center)
    return [proj.project(p) for p in proj.points]


def _arc_samples(s: EdgeShape, n: int = 8) -> list[tuple[float, float]]:
    if s.center is None:
        return [s.mid]
    cx, cy = s.center
    ang = [math.atan2(p[1] - cy, p[0] - cx) for p in (s.start, s.mid, s.end)]
    two_pi = 2 * math.pi
    d_am = (ang[1] - ang[0]) % two_pi
    d_ab = (ang[2] - ang[0]) % two_pi
    span = d_ab if d_am < d_ab else d_ab - two_pi
    return [(cx + s.radius * math.cos(ang[0] + span * k / n), cy + s.radius * math.sin(ang[0] + span * k / n))
            for k in range(1, n)]


class _Canvas:
    def __init__(self, ball: Ball, opts: RenderOptions, verts, shapes):
        w, h = opts.width, opts.height
        if ball.geometry is GeometryClass.HYPERBOLIC:
            x0, x1, y0, y1 = -1.0, 1.0, -1.0, 1.0
        else:
            pts = list(verts)
            for s in shapes:
                pts.extend(_arc_samples(s))
            xs = [p[0] for p in pts]
            ys = [p[1] for p in pts]
            x0, x1, y0, y1 = min(xs), max(xs), min(ys), max(ys)
        span = max(x1 - x0, y1 - y0, 1e-9)
        self.scale = min(w, h) - 2 * opts.margin
        self.scale = max(self.scale, 1.0) / span
        self.cx, self.cy = (x0 + x1) / 2, (y0 + y1) / 2
        self.w, self.h = w, h

    def xy(self, p) -> tuple[float, float]:
        # screen y points down; flip so the drawing keeps the model's orientation
        return (self.w / 2 + (p[0] - self.cx) * self.scale,
                self.h / 2 - (p[1] - self.cy) * self.scale)


def _f(x: float) -> str:
    s = f"{x:.3f}"
    return "0.000" if s == "-0.000" else s


def _arc_command(canvas: _Canvas, shape_start, shape_end, shape_mid, center, radius) -> str:
    a, b = canvas.xy(shape_start), canvas.xy(shape_end)
    if center is None or radius * canvas.scale > 1e6:
        return f"L {_f(b[0])} {_f(b[1])}"
    c, m = canvas.xy(center), canvas.xy(shape_mid)
    ang = [math.atan2(p[1] - c[1], p[0] - c[0]) for p in (a, m, b)]
    two_pi = 2 * math.pi
    d_am = (ang[1] - ang[0]) % two_pi
    d_ab = (ang[2] - ang[0]) % two_pi
    if d_am < d_ab:
        sweep, span = 1, d_ab
    else:
        sweep, span = 0, two_pi - d_ab
    large = 1 if span > math.pi else 0
    r = radius * canvas.scale
    return f"A {_f(r)} {_f(r)} 0 {large} {sweep} {_f(b[0])} {_f(b[1])}"


def render_svg(ball: Ball, opts: RenderOptions = RenderOptions()) -> str:
    if ball.n_vertices == 0:
        raise EmptyBall("nothing to draw")
    proj = _Projection(ball, opts.center)
    verts = [proj.project(p) for p in proj.points]
    edges = ball.edges()
    shapes = [_shape(proj, ball, u, v, ball.scheme.sigma[su]) for u, su, v, _ in edges]
    canvas = _Canvas(ball, opts, verts, shapes)

    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{opts.width}" '
        f'height="{opts.height}" viewBox="0 0 {opts.width} {opts.height}">',
        f"<title>{escape(str(ball.scheme))} type {escape(str(ball.type_vector))}</title>",
        f'<rect width="{opts.width}" height="{opts.height}" fill="white"/>',
    ]
    if ball.geometry is GeometryClass.HYPERBOLIC:
        c = canvas.xy((0.0, 0.0))
        out.append(f'<circle class="boundary" cx="{_f(c[0])}" cy="{_f(c[1])}" r="{_f(canvas.scale)}" '
                   'fill="none" stroke="#999999" stroke-width="1"/>')

    if opts.color_by == "face_class":
        out.append('<g class="faces" stroke="none">')
        for f in ball.closed_faces():
            vs = list(f.vertices)
            start = canvas.xy(verts[vs[0]])
            cmds = [f"M {_f(start[0])} {_f(start[1])}"]
            for a, b in zip(vs, vs[1:] + vs[:1]):
                s = _shape(proj, ball, a, b, 0)
                cmds.append(_arc_command(canvas, s.start, s.end, s.mid, s.center, s.radius))
            color = FACE_PALETTE[f.face_class % len(FACE_PALETTE)]
            out.append(f'<path class="face" fill="{color}" d="{" ".join(cmds)} Z"/>')
        out.append("</g>")

    out.append(f'<g class="edges" fill="none" stroke-width="{_f(opts.stroke_width)}">')
    for s in shapes:
        a = canvas.xy(s.start)
        color = PALETTE[(s.generator - 1) % len(PALETTE)] if opts.color_by == "generator" else "#000000"
        d = f"M {_f(a[0])} {_f(a[1])} " + _arc_command(canvas, s.start, s.end, s.mid, s.center, s.radius)
        out.append(f'<path class="edge" data-generator="{s.generator}" stroke="{color}" d="{d}"/>')
    out.append("</g>")

    out.append('<g class="vertices">')
    for i, p in enumerate(verts):
        x, y = canvas.xy(p)
        fill = "#000000" if i == opts.center else "#ffffff"
        out.append(f'<circle class="vertex" data-id="{i}" cx="{_f(x)}" cy="{_f(y)}" '
                   f'r="{_f(opts.vertex_radius)}" fill="{fill}" stroke="#000000"/>')
        if opts.label_vertices:
            out.append(f'<text x="{_f(x + opts.vertex_radius + 1)}" y="{_f(y - opts.vertex_radius - 1)}" '
                       f'font-size="10">{i}</text>')
    out.append("</g>")
    out.append("</svg>")
    return "\n".join(out) + "\n"

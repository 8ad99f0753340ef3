"""Deterministic SVG rendering of configurations, segments, and complexes."""

from __future__ import annotations

import math
from fractions import Fraction

from .errors import TooLargeToRender
from .geom import Config, PSSegment, vsub

MAX_VERTICES = 60


def _bounds(c: Config):
    xs = [float(p[0]) for p in c.points]
    ys = [float(p[1]) for p in c.points]
    return min(xs), min(ys), max(xs), max(ys)


class _Canvas:
    def __init__(self, c: Config, size: int = 480):
        x0, y0, x1, y1 = _bounds(c)
        w = max(x1 - x0, 1e-9)
        h = max(y1 - y0, 1e-9)
        pad = 0.15 * max(w, h) + 0.1
        self.scale = size / max(w + 2 * pad, h + 2 * pad)
        self.x0 = x0 - pad
        self.y1 = y1 + pad
        self.size = size
        self.body: list[str] = []

    def pt(self, p):
        return (
            (float(p[0]) - self.x0) * self.scale,
            (self.y1 - float(p[1])) * self.scale,
        )

    def line(self, a, b, color="black", w=1.5):
        ax, ay = self.pt(a)
        bx, by = self.pt(b)
        self.body.append(
            f'<line x1="{ax:.2f}" y1="{ay:.2f}" x2="{bx:.2f}" y2="{by:.2f}" '
            f'stroke="{color}" stroke-width="{w}" fill="none"/>'
        )

    def path(self, d, color="black", w=1.5):
        self.body.append(f'<path d="{d}" stroke="{color}" stroke-width="{w}" fill="none"/>')

    def dot(self, p, r=4, color="black", label=None):
        x, y = self.pt(p)
        self.body.append(f'<circle cx="{x:.2f}" cy="{y:.2f}" r="{r}" fill="{color}"/>')
        if label is not None:
            self.body.append(
                f'<text x="{x + 6:.2f}" y="{y - 6:.2f}" font-size="12">{label}</text>'
            )

    def text(self, p, s, size=12):
        x, y = self.pt(p)
        self.body.append(f'<text x="{x:.2f}" y="{y:.2f}" font-size="{size}">{s}</text>')

    def finish(self) -> str:
        head = (
            f'<svg xmlns="http://www.w3.org/2000/svg" width="{self.size}" '
            f'height="{self.size}" viewBox="0 0 {self.size} {self.size}">'
        )
        return head + "".join(self.body) + "</svg>"


def _segment_path(cv: _Canvas, c: Config, s: PSSegment, color: str) -> None:
    """Draw a pseudo-straight segment: straight runs with semicircular
    detours around the interior points, on the recorded sides."""
    a, b = c[s.i], c[s.j]
    d = vsub(b, a)
    length = math.hypot(float(d[0]), float(d[1]))
    r = 0.06 * length + 0.02
    ux, uy = float(d[0]) / length, float(d[1]) / length
    # left normal of the directed segment
    nx, ny = -uy, ux
    pts = sorted(
        ((float(c[k][0]) - float(a[0])) * ux + (float(c[k][1]) - float(a[1])) * uy, k, side)
        for k, side in s.sides
    )
    cur = cv.pt(a)
    dparts = [f"M {cur[0]:.2f} {cur[1]:.2f}"]
    for t, k, side in pts:
        sign = 1.0 if side == "L" else -1.0
        p = c[k]
        before = (float(p[0]) - r * ux, float(p[1]) - r * uy)
        after = (float(p[0]) + r * ux, float(p[1]) + r * uy)
        bx, by = cv.pt(before)
        axx, ayy = cv.pt(after)
        dparts.append(f"L {bx:.2f} {by:.2f}")
        sweep = 1 if side == "L" else 0
        rr = r * cv.scale
        dparts.append(f"A {rr:.2f} {rr:.2f} 0 0 {sweep} {axx:.2f} {ayy:.2f}")
    ex, ey = cv.pt(b)
    dparts.append(f"L {ex:.2f} {ey:.2f}")
    cv.path(" ".join(dparts), color=color)


_PALETTE = ["#c0392b", "#2980b9", "#27ae60", "#8e44ad", "#d35400", "#16a085"]


def render_config(c: Config, segments=None) -> str:
    cv = _Canvas(c)
    segments = list(segments or [])
    for t, s in enumerate(segments):
        _segment_path(cv, c, s, _PALETTE[t % len(_PALETTE)])
    for k, p in enumerate(c.points):
        cv.dot(p, label=f"a{k}")
    return cv.finish()


def render_complex_graph(x) -> str:
    """The 1-skeleton of a simplicial complex as a labeled cycle layout."""
    nv = len(x.vertices)
    if nv > MAX_VERTICES:
        raise TooLargeToRender(f"{nv} vertices > {MAX_VERTICES}")
    size = 480
    cx = cy = size / 2
    rad = size * 0.38
    pos = []
    for k in range(nv):
        ang = 2 * math.pi * k / nv - math.pi / 2
        pos.append((cx + rad * math.cos(ang), cy + rad * math.sin(ang)))
    edges = set()
    for f in x.facets:
        fl = sorted(f)
        for a in range(len(fl)):
            for b in range(a + 1, len(fl)):
                edges.add((fl[a], fl[b]))
    body = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size}" '
        f'viewBox="0 0 {size} {size}">'
    ]
    for a, b in sorted(edges):
        body.append(
            f'<line x1="{pos[a][0]:.2f}" y1="{pos[a][1]:.2f}" '
            f'x2="{pos[b][0]:.2f}" y2="{pos[b][1]:.2f}" stroke="#888" stroke-width="1.2"/>'
        )
    for k in range(nv):
        label = repr(x.vertices[k])
        body.append(
            f'<circle cx="{pos[k][0]:.2f}" cy="{pos[k][1]:.2f}" r="5" fill="#222"/>'
        )
        body.append(
            f'<text x="{pos[k][0] + 7:.2f}" y="{pos[k][1] - 7:.2f}" font-size="11">{label}</text>'
        )
    body.append("</svg>")
    return "".join(body)

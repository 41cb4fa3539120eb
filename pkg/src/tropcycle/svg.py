"""Deterministic SVG pictures of planar cycles.

Cells are clipped to the bounding box by exact polyhedral intersection; only
the final screen coordinates are rounded (to 6 decimals). Weight labels are
printed exactly.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence
from xml.sax.saxutils import escape

from .cycles import TropicalCycle
from .errors import InputError, NotPlanar
from .polyhedra import Polyhedron, intersect

SIZE = 480
MARGIN = 20
COLORS = ("#1f5fbf", "#c0392b", "#2e8b57", "#8e44ad", "#d35400", "#555555")


def default_bbox(cycles: Sequence[TropicalCycle]) -> tuple:
    xs, ys = [Fraction(0)], [Fraction(0)]
    for S in cycles:
        for P, _ in S.cells:
            for v in P.vertices:
                xs.append(v[0])
                ys.append(v[1])
    pad = max(Fraction(2), (max(xs) - min(xs)) / 2, (max(ys) - min(ys)) / 2)
    return (min(xs) - pad, min(ys) - pad, max(xs) + pad, max(ys) + pad)


def _box(bbox) -> Polyhedron:
    x0, y0, x1, y1 = bbox
    return Polyhedron(2, [((1, 0), x0), ((-1, 0), -x1), ((0, 1), y0), ((0, -1), -y1)])


def _fmt(x) -> str:
    return f"{float(x):.6f}"


def _ordered(vs):
    """Vertices of a convex polygon in counterclockwise order, exactly."""
    cx = sum(v[0] for v in vs) / len(vs)
    cy = sum(v[1] for v in vs) / len(vs)

    def key(v):
        dx, dy = v[0] - cx, v[1] - cy
        half = 0 if (dy > 0 or (dy == 0 and dx > 0)) else 1
        # pseudo-angle inside each half plane, exact
        return (half, -dx / (abs(dx) + abs(dy)))

    return sorted(vs, key=key)


def render(cycles: Sequence[TropicalCycle], bbox=None) -> str:
    if not cycles:
        raise InputError("nothing to plot")
    for S in cycles:
        if S.ambient_dim != 2:
            raise NotPlanar("only cycles in R^2 can be plotted")
    if bbox is None:
        bbox = default_bbox(cycles)
    bbox = tuple(Fraction(b) for b in bbox)
    x0, y0, x1, y1 = bbox
    if not (x0 < x1 and y0 < y1):
        raise InputError("empty bounding box")
    box = _box(bbox)
    scale = Fraction(SIZE - 2 * MARGIN) / max(x1 - x0, y1 - y0)

    def sx(x):
        return _fmt(MARGIN + (x - x0) * scale)

    def sy(y):
        return _fmt(MARGIN + (y1 - y) * scale)

    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{SIZE}" height="{SIZE}" '
        f'viewBox="0 0 {SIZE} {SIZE}">',
        "<style>",
        "text { font-family: sans-serif; font-size: 12px; }",
    ]
    for i in range(len(cycles)):
        col = COLORS[i % len(COLORS)]
        out.append(f".cycle-{i} {{ stroke: {col}; stroke-width: 2; fill: {col}; fill-opacity: 0.15; }}")
        out.append(f".label-{i} {{ fill: {col}; }}")
    out.append("</style>")
    out.append(f'<rect x="0" y="0" width="{SIZE}" height="{SIZE}" fill="white"/>')

    for i, S in enumerate(cycles):
        items = []
        for P, w in S.cells:
            Q = intersect(P, box)
            if Q.is_empty:
                continue
            vs = sorted(Q.vertices)
            if Q.dim == 0:
                (v,) = vs
                shape = f'<circle class="cycle-{i}" cx="{sx(v[0])}" cy="{sy(v[1])}" r="3"/>'
                at = v
            elif Q.dim == 1:
                a, b = vs[0], vs[-1]
                shape = (f'<line class="cycle-{i}" x1="{sx(a[0])}" y1="{sy(a[1])}" '
                         f'x2="{sx(b[0])}" y2="{sy(b[1])}"/>')
                at = ((a[0] + b[0]) / 2, (a[1] + b[1]) / 2)
            else:
                ring = _ordered(vs)
                pts = " ".join(f"{sx(v[0])},{sy(v[1])}" for v in ring)
                shape = f'<polygon class="cycle-{i}" points="{pts}"/>'
                at = (sum(v[0] for v in ring) / len(ring), sum(v[1] for v in ring) / len(ring))
            label = (f'<text class="label-{i}" x="{_fmt(MARGIN + (at[0] - x0) * scale + 4)}" '
                     f'y="{_fmt(MARGIN + (y1 - at[1]) * scale - 4)}">{escape(str(Fraction(w)))}</text>')
            items.append((shape, label))
        out.append(f'<g class="layer-{i}">')
        for shape, label in sorted(items):
            out.append(shape)
            out.append(label)
        out.append("</g>")
    out.append("</svg>")
    return "\n".join(out) + "\n"

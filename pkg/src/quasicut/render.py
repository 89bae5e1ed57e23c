"""SVG pictures of planar polyhedra and cuts.

Geometry is exact up to the last step: polygons are clipped to a rational
viewing box with exact arithmetic, and only the final coordinates are
approximated (dyadic intervals, well inside ``2**-40``) and written as
fixed-point decimals.  The y axis is flipped by a group transform so the
coordinates in the file are the mathematical ones.
"""
from __future__ import annotations

from fractions import Fraction
from math import ceil, floor

from .exactfield import approximate, coerce
from .polyhedra import Facet, HPolyhedron, PolyhedronError, analyze

__all__ = ["decimal", "polygon_points", "render_svg", "viewing_box"]

_BITS = 56
_PLACES = 15
_CANVAS = 480


def decimal(a, places: int = _PLACES) -> str:
    """Fixed-point decimal within ``2**-40`` of ``a`` (for ``|a| < 2**12``)."""
    iv = approximate(coerce(a), _BITS)
    mid = (iv.lo + iv.hi) / 2
    q = round(mid * 10 ** places)
    sign = "-" if q < 0 else ""
    q = abs(q)
    whole, frac = divmod(q, 10 ** places)
    text = f"{sign}{whole}.{frac:0{places}d}".rstrip("0")
    return text[:-1] if text.endswith(".") else text


def _f(a) -> Fraction:
    iv = approximate(coerce(a), _BITS)
    return (iv.lo + iv.hi) / 2


def viewing_box(p: HPolyhedron, extra=()):
    """Rational box ``(xmin, ymin, xmax, ymax)`` around the vertices, with room for rays."""
    a = analyze(p)
    pts = [v.point for v in a.vertices] + [tuple(x) for x in extra]
    xs = [_f(q[0]) for q in pts]
    ys = [_f(q[1]) for q in pts]
    span = max(max(xs) - min(xs), max(ys) - min(ys), Fraction(1))
    pad = span / 4 if not a.recession_generators else span
    return (Fraction(floor((min(xs) - pad) * 4), 4), Fraction(floor((min(ys) - pad) * 4), 4),
            Fraction(ceil((max(xs) + pad) * 4), 4), Fraction(ceil((max(ys) + pad) * 4), 4))


def _boxed(p: HPolyhedron, box) -> HPolyhedron:
    tower = p.tower
    xmin, ymin, xmax, ymax = (coerce(c, tower) for c in box)
    one, zero = tower.one, tower.zero
    extra = (Facet((one, zero), xmin), Facet((zero, one), ymin),
             Facet((-one, zero), -xmax), Facet((zero, -one), -ymax))
    return HPolyhedron(2, p.facets + extra)


def polygon_points(p: HPolyhedron, box=None):
    """Exact vertices of ``p`` (clipped to ``box`` if unbounded) in boundary order."""
    if p.ambient_dim != 2:
        raise PolyhedronError("rendering needs a planar polyhedron")
    a = analyze(p)
    if not a.is_polytope:
        a = analyze(_boxed(p, box or viewing_box(p)))
    verts = list(a.vertices)
    # walk the boundary: consecutive vertices share a facet
    order = [verts[0]]
    used = {0}
    while len(order) < len(verts):
        last = order[-1]
        nxt = next((i for i, v in enumerate(verts) if i not in used
                    and set(v.active_set) & set(last.active_set)), None)
        if nxt is None:
            break
        used.add(nxt)
        order.append(verts[nxt])
    return [v.point for v in order]


def _segment(y, eps, box, tower):
    """Exact endpoints of ``<mu, y> = eps`` inside the box."""
    xmin, ymin, xmax, ymax = (coerce(c, tower) for c in box)
    y0, y1 = (coerce(c, tower) for c in y)
    eps = coerce(eps, tower)
    pts = []
    if y1 != 0:
        for x in (xmin, xmax):
            yy = (eps - y0 * x) / y1
            if ymin <= yy <= ymax:
                pts.append((x, yy))
    if y0 != 0:
        for yy in (ymin, ymax):
            x = (eps - y1 * yy) / y0
            if xmin <= x <= xmax:
                pts.append((x, yy))
    uniq = []
    for q in pts:
        if q not in uniq:
            uniq.append(q)
    return uniq[:2]


def _points_attr(points) -> str:
    return " ".join(f"{decimal(x)},{decimal(y)}" for x, y in points)


def render_svg(p: HPolyhedron, cut=None, plus: HPolyhedron | None = None,
               minus: HPolyhedron | None = None, title: str = "") -> str:
    """SVG of ``p``; with a cut ``(Y, eps)`` also the line and both halves."""
    box = viewing_box(p)
    xmin, ymin, xmax, ymax = box
    w, h = xmax - xmin, ymax - ymin
    scale = Fraction(_CANVAS) / max(w, h)
    lines = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{decimal(w * scale)}" '
        f'height="{decimal(h * scale)}" viewBox="{decimal(xmin)} {decimal(-ymax)} {decimal(w)} {decimal(h)}">',
    ]
    if title:
        lines.append(f"  <title>{title}</title>")
    lines.append('  <g transform="scale(1,-1)" stroke-linejoin="round">')
    style = 'vector-effect="non-scaling-stroke"'
    if plus is None and minus is None:
        lines.append(f'    <polygon id="delta" points="{_points_attr(polygon_points(p, box))}" '
                     f'fill="#c8d8f0" stroke="#203060" stroke-width="2" {style}/>')
    else:
        lines.append(f'    <polygon id="delta" points="{_points_attr(polygon_points(p, box))}" '
                     f'fill="none" stroke="#203060" stroke-width="3" {style}/>')
        for name, q, color in (("plus", plus, "#c8e8c8"), ("minus", minus, "#f0d0c0")):
            if q is not None:
                lines.append(f'    <polygon id="{name}" points="{_points_attr(polygon_points(q, box))}" '
                             f'fill="{color}" fill-opacity="0.8" stroke="#404040" stroke-width="1" {style}/>')
    if cut is not None:
        seg = _segment(cut[0], cut[1], box, p.tower)
        if len(seg) == 2:
            (x1, y1), (x2, y2) = seg
            lines.append(f'    <line id="hyperplane" x1="{decimal(x1)}" y1="{decimal(y1)}" '
                         f'x2="{decimal(x2)}" y2="{decimal(y2)}" stroke="#b02020" '
                         f'stroke-width="2" stroke-dasharray="6 4" {style}/>')
    lines.append("  </g>")
    lines.append("</svg>")
    return "\n".join(lines) + "\n"

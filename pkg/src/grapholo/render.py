"""Deterministic SVG and CSV emission for point clouds and lattice drawings.

Floats are printed with 12 significant digits and dict keys are sorted, so a
fixed config and seed reproduce byte-identical files.  Every emitted point is
one <circle> marker; optional edges are <line> elements.
"""

from __future__ import annotations

import json
from dataclasses import dataclass


def fmt(x: float) -> str:
    s = f"{x:.12g}"
    return "0" if s == "-0" else s


def round12(x: float) -> float:
    return float(fmt(x))


def json_ready(obj):
    """Recursively round floats so dumps are reproducible across runs."""
    if isinstance(obj, bool) or obj is None or isinstance(obj, (int, str)):
        return obj
    if isinstance(obj, float):
        return round12(obj)
    if isinstance(obj, complex):
        return [round12(obj.real), round12(obj.imag)]
    if isinstance(obj, dict):
        return {k: json_ready(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [json_ready(v) for v in obj]
    return obj


def dump_json(doc, path):
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(json_ready(doc), fh, sort_keys=True, indent=1)
        fh.write("\n")


def write_csv(path, header, rows):
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(",".join(header) + "\n")
        for row in rows:
            fh.write(",".join(fmt(x) if isinstance(x, float) else str(x) for x in row) + "\n")


@dataclass
class RenderSpec:
    width: int = 720
    height: int = 720
    point_radius: float = 2.5
    color_by: str = "depth"  # depth | branch | none
    viewport: tuple | None = None  # (re_min, re_max, im_min, im_max)

    def __post_init__(self):
        if self.width <= 0 or self.height <= 0 or self.point_radius <= 0:
            raise ValueError("render dimensions must be positive")
        if self.viewport is not None:
            a, b, c, d = self.viewport
            if not (a < b and c < d):
                raise ValueError("viewport must be a nonempty rectangle")


_PALETTE = (
    "#1f6fb2", "#d1495b", "#3e8e5a", "#e0a100", "#7b5ea7",
    "#00848c", "#c96f2f", "#5b5b5b", "#a23e8c", "#4f7d1e",
)


def _bounds(points, spec: RenderSpec):
    if spec.viewport is not None:
        return spec.viewport
    res = [z.real for z, _ in points]
    ims = [z.imag for z, _ in points]
    lo_r, hi_r = min(res), max(res)
    lo_i, hi_i = min(ims), max(ims)
    pad = 0.05 * max(hi_r - lo_r, hi_i - lo_i, 1e-9)
    return (lo_r - pad, hi_r + pad, lo_i - pad, hi_i + pad)


def svg_cloud(points, spec: RenderSpec = RenderSpec(), edges=()) -> str:
    """SVG document for tagged points [(complex, tag), ...]; tags pick colors
    when color_by != "none".  `edges` are complex pairs drawn underneath."""
    if not points:
        raise ValueError("nothing to draw")
    lo_r, hi_r, lo_i, hi_i = _bounds(points, spec)
    sx = spec.width / (hi_r - lo_r)
    sy = spec.height / (hi_i - lo_i)
    s = min(sx, sy)

    def to_screen(z):
        return ((z.real - lo_r) * s, spec.height - (z.imag - lo_i) * s)

    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{spec.width}" '
        f'height="{spec.height}" viewBox="0 0 {spec.width} {spec.height}">',
        f'<rect width="{spec.width}" height="{spec.height}" fill="white"/>',
    ]
    for a, b in edges:
        xa, ya = to_screen(a)
        xb, yb = to_screen(b)
        out.append(
            f'<line x1="{fmt(xa)}" y1="{fmt(ya)}" x2="{fmt(xb)}" y2="{fmt(yb)}" '
            'stroke="#b0b8c4" stroke-width="1"/>'
        )
    for z, tag in points:
        x, y = to_screen(z)
        color = "#204060" if spec.color_by == "none" else _PALETTE[int(tag) % len(_PALETTE)]
        out.append(
            f'<circle cx="{fmt(x)}" cy="{fmt(y)}" r="{fmt(spec.point_radius)}" fill="{color}"/>'
        )
    out.append("</svg>")
    return "\n".join(out) + "\n"


def function_cloud(f, depth_of=None):
    """Tagged points from a VertexFunction; tag = depth when a map is given."""
    pts = []
    for v, z in f.values.items():
        tag = 0 if depth_of is None else depth_of(v)
        pts.append((z, tag))
    return pts


def function_edges(f):
    segs = []
    for u, v in f.graph.edges():
        if u in f.values and v in f.values:
            segs.append((f.values[u], f.values[v]))
    return segs

"""
Static SVG figures of a fitted spline.

Plane curves get one panel. Space curves get two orthographic projections
side by side (xy and xz). Each panel shows the sampled curve, the data
points, optionally the control polygon, and the maximum-curvature point(s)
in red. Output is fully deterministic: fixed element order and fixed number
formatting.
"""

from __future__ import annotations

import numpy as np

from .curvature import CurvatureReport
from .spline import Kind, SplineCurve

__all__ = ["render_svg"]

MARGIN = 0.05
PANEL_GAP = 0.1


def _f(x: float) -> str:
    s = f"{x:.6f}".rstrip("0").rstrip(".")
    return "0" if s in ("-0", "") else s


def _points_attr(xy) -> str:
    return " ".join(f"{_f(x)},{_f(y)}" for x, y in xy)


def _panel(curve_xy, data_xy, control_xy, argmax_xy, offset_x, marker, show_control, title):
    """SVG elements for one projection; inputs are already y-flipped."""
    shift = np.array([offset_x, 0.0])
    out = [f'<g class="panel"><title>{title}</title>']
    out.append(
        f'<polyline class="curve" fill="none" stroke="#1f4e9c" stroke-width="{_f(marker * 0.4)}" '
        f'points="{_points_attr(curve_xy + shift)}"/>'
    )
    if show_control:
        out.append(
            f'<polyline class="control" fill="none" stroke="#888888" stroke-dasharray="{_f(marker)}" '
            f'stroke-width="{_f(marker * 0.25)}" points="{_points_attr(control_xy + shift)}"/>'
        )
        for x, y in control_xy + shift:
            out.append(
                f'<rect class="control-point" x="{_f(x - marker * 0.6)}" y="{_f(y - marker * 0.6)}" '
                f'width="{_f(marker * 1.2)}" height="{_f(marker * 1.2)}" fill="#888888"/>'
            )
    for x, y in data_xy + shift:
        out.append(f'<circle class="point" cx="{_f(x)}" cy="{_f(y)}" r="{_f(marker)}" fill="#000000"/>')
    for x, y in argmax_xy + shift:
        out.append(
            f'<circle class="argmax" cx="{_f(x)}" cy="{_f(y)}" r="{_f(marker * 1.5)}" fill="red"/>'
        )
    out.append("</g>")
    return out


def render_svg(C: SplineCurve, report: CurvatureReport, show_control: bool = False,
               samples_per_segment: int = 64) -> str:
    """SVG 1.1 document for ``C``; the view box fits the data with a 5% margin."""
    ts = np.linspace(0.0, C.m, C.m * samples_per_segment + 1)
    curve = C.eval(ts)
    data = C.source.points
    control = C.control.b
    if C.kind is Kind.PERIODIC:
        control = np.vstack([control, control[:1]])
    argmax = C.eval(np.array(report.argmax)) if report.argmax else np.zeros((0, C.dim))

    projections = [("xy", (0, 1))] if C.dim == 2 else [("xy", (0, 1)), ("xz", (0, 2))]
    panels = []
    cursor = 0.0
    boxes = []
    for label, (i, j) in projections:
        def proj(a, i=i, j=j):
            return np.column_stack([a[:, i], -a[:, j]]) if len(a) else np.zeros((0, 2))

        every = np.vstack([proj(curve), proj(data)] + ([proj(control)] if show_control else []))
        lo = every.min(axis=0)
        hi = every.max(axis=0)
        boxes.append((label, proj, lo, hi))
    extent = max(float(np.max(hi - lo)) for _, _, lo, hi in boxes) or 1.0
    marker = 0.012 * extent
    for label, proj, lo, hi in boxes:
        offset = cursor - lo[0]
        panels += _panel(proj(curve), proj(data), proj(control), proj(argmax),
                         offset, marker, show_control, label)
        cursor += float(hi[0] - lo[0]) + PANEL_GAP * extent
    width = cursor - PANEL_GAP * extent
    top = min(float(lo[1]) for _, _, lo, _ in boxes)
    bottom = max(float(hi[1]) for _, _, _, hi in boxes)
    height = bottom - top
    pad = MARGIN * max(width, height)
    vb = (-pad, top - pad, width + 2 * pad, height + 2 * pad)

    lines = [
        '<?xml version="1.0" encoding="UTF-8" standalone="no"?>',
        '<!DOCTYPE svg PUBLIC "-//W3C//DTD SVG 1.1//EN" "http://www.w3.org/Graphics/SVG/1.1/DTD/svg11.dtd">',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="800" '
        f'height="{_f(800 * vb[3] / vb[2])}" viewBox="{" ".join(_f(v) for v in vb)}">',
        f"<desc>{C.kind.value} spline, kappa_max={report.kappa_max:.9g}</desc>",
    ]
    lines += panels
    if report.degenerate:
        lines.append(
            f'<text class="note" x="{_f(vb[0] + pad)}" y="{_f(vb[1] + 2 * pad)}" '
            f'font-size="{_f(4 * marker)}">Degenerate: curvature is identically zero</text>'
        )
    lines.append("</svg>")
    return "\n".join(lines) + "\n"

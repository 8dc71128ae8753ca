"""Minimal self-contained SVG line charts.

Hand-emitted SVG 1.1, fixed 800x500 viewbox by default, 10 axis ticks,
no dependencies.  Output bytes depend only on the input data, so charts
from deterministic runs are themselves reproducible.
"""

from __future__ import annotations

import math
from xml.sax.saxutils import escape

PALETTE = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b")

_MARGIN_L = 70
_MARGIN_R = 20
_MARGIN_T = 20
_MARGIN_B = 45


def _finite_points(xs, ys):
    return [(float(x), float(y)) for x, y in zip(xs, ys)
            if math.isfinite(x) and math.isfinite(y)]


def _fmt(v: float) -> str:
    return f"{v:.2f}"


def _tick_label(v: float) -> str:
    return f"{v:.4g}"


def line_chart(series, x_label: str = "", y_label: str = "",
               log_y: bool = False, width: int = 800, height: int = 500) -> str:
    """Render [(label, xs, ys), ...] as an SVG document string.

    Non-finite points are dropped (NaN marks excluded values upstream);
    with log_y, nonpositive y values are dropped too.  A series reduced
    to a single point is drawn as a circle marker instead of a polyline.
    """
    cleaned = []
    for label, xs, ys in series:
        pts = _finite_points(xs, ys)
        if log_y:
            pts = [(x, y) for x, y in pts if y > 0]
        cleaned.append((label, pts))

    all_pts = [p for _, pts in cleaned for p in pts]
    if not all_pts:
        raise ValueError("nothing to plot: every point was filtered out")

    x_lo = min(p[0] for p in all_pts)
    x_hi = max(p[0] for p in all_pts)
    if x_lo == x_hi:
        x_lo, x_hi = x_lo - 0.5, x_hi + 0.5

    def y_t(v: float) -> float:
        return math.log10(v) if log_y else v

    y_lo = min(y_t(p[1]) for p in all_pts)
    y_hi = max(y_t(p[1]) for p in all_pts)
    if log_y:
        y_lo, y_hi = math.floor(y_lo), math.ceil(y_hi)
        if y_lo == y_hi:
            y_hi = y_lo + 1
    elif y_lo == y_hi:
        y_lo, y_hi = y_lo - 0.5, y_hi + 0.5

    plot_w = width - _MARGIN_L - _MARGIN_R
    plot_h = height - _MARGIN_T - _MARGIN_B

    def px(x: float) -> float:
        return _MARGIN_L + (x - x_lo) / (x_hi - x_lo) * plot_w

    def py(y: float) -> float:
        return _MARGIN_T + (y_hi - y_t(y)) / (y_hi - y_lo) * plot_h

    out = []
    out.append(
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
        f'width="{width}" height="{height}" viewBox="0 0 {width} {height}">'
    )
    out.append(f'<rect x="0" y="0" width="{width}" height="{height}" fill="white"/>')

    # axes
    x0, y0 = _MARGIN_L, _MARGIN_T + plot_h
    out.append(f'<line x1="{x0}" y1="{_MARGIN_T}" x2="{x0}" y2="{y0}" '
               f'stroke="black" stroke-width="1"/>')
    out.append(f'<line x1="{x0}" y1="{y0}" x2="{x0 + plot_w}" y2="{y0}" '
               f'stroke="black" stroke-width="1"/>')

    n_ticks = 10
    for i in range(n_ticks):
        fx = x_lo + (x_hi - x_lo) * i / (n_ticks - 1)
        X = px(fx)
        out.append(f'<line x1="{_fmt(X)}" y1="{y0}" x2="{_fmt(X)}" y2="{y0 + 5}" '
                   f'stroke="black" stroke-width="1"/>')
        out.append(f'<text x="{_fmt(X)}" y="{y0 + 18}" font-size="11" '
                   f'text-anchor="middle">{escape(_tick_label(fx))}</text>')

    if log_y:
        y_tick_values = [10.0 ** d for d in range(int(y_lo), int(y_hi) + 1)]
    else:
        y_tick_values = [y_lo + (y_hi - y_lo) * i / (n_ticks - 1) for i in range(n_ticks)]
    for tv in y_tick_values:
        Y = py(tv)
        out.append(f'<line x1="{x0 - 5}" y1="{_fmt(Y)}" x2="{x0}" y2="{_fmt(Y)}" '
                   f'stroke="black" stroke-width="1"/>')
        out.append(f'<text x="{x0 - 8}" y="{_fmt(Y + 4)}" font-size="11" '
                   f'text-anchor="end">{escape(_tick_label(tv))}</text>')

    if x_label:
        out.append(f'<text x="{_MARGIN_L + plot_w / 2:.1f}" y="{height - 8}" '
                   f'font-size="13" text-anchor="middle">{escape(x_label)}</text>')
    if y_label:
        cx, cy = 16, _MARGIN_T + plot_h / 2
        out.append(f'<text x="{cx}" y="{cy:.1f}" font-size="13" text-anchor="middle" '
                   f'transform="rotate(-90 {cx} {cy:.1f})">{escape(y_label)}</text>')

    # series
    for k, (label, pts) in enumerate(cleaned):
        color = PALETTE[k % len(PALETTE)]
        if len(pts) >= 2:
            coords = " ".join(f"{_fmt(px(x))},{_fmt(py(y))}" for x, y in pts)
            out.append(f'<polyline points="{coords}" fill="none" '
                       f'stroke="{color}" stroke-width="1.5"/>')
        elif len(pts) == 1:
            x, y = pts[0]
            out.append(f'<circle cx="{_fmt(px(x))}" cy="{_fmt(py(y))}" r="3" '
                       f'fill="{color}"/>')

    # legend, top right inside the plot area
    lx = _MARGIN_L + plot_w - 170
    ly = _MARGIN_T + 12
    for k, (label, _) in enumerate(cleaned):
        color = PALETTE[k % len(PALETTE)]
        Y = ly + 16 * k
        out.append(f'<line x1="{lx}" y1="{Y}" x2="{lx + 22}" y2="{Y}" '
                   f'stroke="{color}" stroke-width="2"/>')
        out.append(f'<text x="{lx + 28}" y="{Y + 4}" font-size="12">{escape(str(label))}</text>')

    out.append("</svg>")
    return "\n".join(out) + "\n"

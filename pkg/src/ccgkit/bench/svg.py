"""Standalone SVG step plots for performance-profile curves.

Hand-rolled on the SVG 1.1 subset (rect, polyline, line, text) so output
is deterministic byte-for-byte for identical input.
"""

from __future__ import annotations

from ..errors import EmptyInput
from .profiles import ProfileCurve

WIDTH, HEIGHT = 640, 420
MARGIN_L, MARGIN_R, MARGIN_T, MARGIN_B = 70, 170, 30, 50
PALETTE = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd",
           "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f")
AXIS_LABEL = {"time": "time threshold (s)", "gap": "relative gap threshold"}


def _fmt(v: float) -> str:
    return f"{v:.2f}"


def render_profile_svg(curves: list[ProfileCurve]) -> str:
    if not curves:
        raise EmptyInput("no curves to render")
    xs = [t for c in curves for t, _ in c.points]
    x_lo, x_hi = min(xs), max(xs)
    if x_hi <= x_lo:
        x_hi = x_lo + 1.0
    plot_w = WIDTH - MARGIN_L - MARGIN_R
    plot_h = HEIGHT - MARGIN_T - MARGIN_B

    def px(t):
        return MARGIN_L + plot_w * (t - x_lo) / (x_hi - x_lo)

    def py(f):
        return MARGIN_T + plot_h * (1.0 - f)

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" '
        f'height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}">',
        f'<rect x="0" y="0" width="{WIDTH}" height="{HEIGHT}" fill="white"/>',
        f'<rect x="{MARGIN_L}" y="{MARGIN_T}" width="{plot_w}" '
        f'height="{plot_h}" fill="none" stroke="black"/>',
    ]
    for frac in (0.0, 0.25, 0.5, 0.75, 1.0):
        y = py(frac)
        parts.append(f'<line x1="{MARGIN_L - 4}" y1="{_fmt(y)}" '
                     f'x2="{MARGIN_L}" y2="{_fmt(y)}" stroke="black"/>')
        parts.append(f'<text x="{MARGIN_L - 8}" y="{_fmt(y + 4)}" '
                     f'text-anchor="end" font-size="12">{frac:g}</text>')
    for k in range(5):
        t = x_lo + (x_hi - x_lo) * k / 4
        x = px(t)
        parts.append(f'<line x1="{_fmt(x)}" y1="{MARGIN_T + plot_h}" '
                     f'x2="{_fmt(x)}" y2="{MARGIN_T + plot_h + 4}" stroke="black"/>')
        parts.append(f'<text x="{_fmt(x)}" y="{MARGIN_T + plot_h + 18}" '
                     f'text-anchor="middle" font-size="12">{t:.3g}</text>')
    metric = curves[0].metric
    parts.append(f'<text x="{MARGIN_L + plot_w / 2:.0f}" y="{HEIGHT - 12}" '
                 f'text-anchor="middle" font-size="13">'
                 f'{AXIS_LABEL.get(metric, metric)}</text>')
    parts.append(f'<text x="16" y="{MARGIN_T + plot_h / 2:.0f}" font-size="13" '
                 f'transform="rotate(-90 16 {MARGIN_T + plot_h / 2:.0f})" '
                 f'text-anchor="middle">fraction solved</text>')

    for idx, curve in enumerate(curves):
        color = PALETTE[idx % len(PALETTE)]
        pts = sorted(curve.points)
        coords = []
        prev_f = pts[0][1]
        coords.append((px(pts[0][0]), py(prev_f)))
        for t, f in pts[1:]:
            coords.append((px(t), py(prev_f)))  # horizontal run, then step up
            coords.append((px(t), py(f)))
            prev_f = f
        path = " ".join(f"{_fmt(x)},{_fmt(y)}" for x, y in coords)
        parts.append(f'<polyline points="{path}" fill="none" '
                     f'stroke="{color}" stroke-width="2"/>')
        ly = MARGIN_T + 16 + 18 * idx
        lx = MARGIN_L + plot_w + 12
        parts.append(f'<line x1="{lx}" y1="{ly - 4}" x2="{lx + 22}" '
                     f'y2="{ly - 4}" stroke="{color}" stroke-width="2"/>')
        parts.append(f'<text x="{lx + 28}" y="{ly}" font-size="12">'
                     f'{curve.label}</text>')
    parts.append("</svg>")
    return "\n".join(parts) + "\n"

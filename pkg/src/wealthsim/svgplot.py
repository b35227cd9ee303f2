"""Deterministic SVG line charts for density series.

Hand-rolled on purpose: the output bytes depend only on the input
series and labels (no timestamps, no library version strings), so plots
can be snapshot-tested and reruns diff clean.
"""

import math

from .errors import ConfigError

WIDTH = 800
HEIGHT = 520
MARGIN_LEFT = 72
MARGIN_RIGHT = 24
MARGIN_TOP = 24
MARGIN_BOTTOM = 56

PALETTE = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b")


def nice_ticks(lo: float, hi: float, target: int = 6) -> list[float]:
    """Round tick positions covering [lo, hi] with a 1-2-5 step."""
    if not (math.isfinite(lo) and math.isfinite(hi)) or not hi > lo:
        raise ConfigError(f"cannot build ticks for range [{lo}, {hi}]")
    raw = (hi - lo) / max(target, 2)
    magnitude = 10.0 ** math.floor(math.log10(raw))
    step = 10.0 * magnitude
    for mult in (1.0, 2.0, 5.0):
        if raw <= mult * magnitude:
            step = mult * magnitude
            break
    first = math.ceil(lo / step) * step
    ticks = []
    value = first
    while value <= hi + 1e-9 * step:
        ticks.append(0.0 if value == 0 else value)
        value += step
    return ticks


def _fmt_tick(value: float) -> str:
    return f"{value:.10g}"


def _coord(value: float) -> str:
    return f"{value:.2f}"


def render_series_svg(series, x_label: str = "wealth", y_label: str = "density") -> str:
    """Render labeled (x, y) series as a self-contained SVG document.

    `series` is a sequence of (label, x-values, y-values) triples drawn
    as one polyline each, with shared axes and a legend.
    """
    series = list(series)
    if not series:
        raise ConfigError("plot needs at least one series")
    for label, xs, ys in series:
        if len(xs) != len(ys) or len(xs) < 2:
            raise ConfigError(f"series {label!r} needs two or more aligned points")

    x_lo = min(min(xs) for _, xs, _ in series)
    x_hi = max(max(xs) for _, xs, _ in series)
    y_lo = 0.0
    y_hi = max(max(ys) for _, _, ys in series)
    if not x_hi > x_lo:
        raise ConfigError("all series have a degenerate horizontal range")
    if y_hi <= y_lo:
        y_hi = 1.0
    y_hi = y_hi * 1.05

    plot_w = WIDTH - MARGIN_LEFT - MARGIN_RIGHT
    plot_h = HEIGHT - MARGIN_TOP - MARGIN_BOTTOM

    def sx(v: float) -> float:
        return MARGIN_LEFT + (v - x_lo) / (x_hi - x_lo) * plot_w

    def sy(v: float) -> float:
        return MARGIN_TOP + plot_h - (v - y_lo) / (y_hi - y_lo) * plot_h

    out = []
    out.append(
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" '
        f'viewBox="0 0 {WIDTH} {HEIGHT}">'
    )
    out.append(f'<rect x="0" y="0" width="{WIDTH}" height="{HEIGHT}" fill="white"/>')

    axis_y = MARGIN_TOP + plot_h
    for tick in nice_ticks(x_lo, x_hi):
        px = sx(tick)
        out.append(
            f'<line x1="{_coord(px)}" y1="{axis_y}" x2="{_coord(px)}" y2="{axis_y + 5}" '
            f'stroke="black" stroke-width="1"/>'
        )
        out.append(
            f'<text x="{_coord(px)}" y="{axis_y + 20}" font-family="sans-serif" '
            f'font-size="12" text-anchor="middle">{_fmt_tick(tick)}</text>'
        )
    for tick in nice_ticks(y_lo, y_hi):
        py = sy(tick)
        out.append(
            f'<line x1="{MARGIN_LEFT - 5}" y1="{_coord(py)}" x2="{MARGIN_LEFT}" y2="{_coord(py)}" '
            f'stroke="black" stroke-width="1"/>'
        )
        out.append(
            f'<text x="{MARGIN_LEFT - 8}" y="{_coord(py + 4)}" font-family="sans-serif" '
            f'font-size="12" text-anchor="end">{_fmt_tick(tick)}</text>'
        )
    out.append(
        f'<rect x="{MARGIN_LEFT}" y="{MARGIN_TOP}" width="{plot_w}" height="{plot_h}" '
        f'fill="none" stroke="black" stroke-width="1"/>'
    )
    out.append(
        f'<text x="{MARGIN_LEFT + plot_w / 2:.2f}" y="{HEIGHT - 12}" font-family="sans-serif" '
        f'font-size="14" text-anchor="middle">{_escape(x_label)}</text>'
    )
    out.append(
        f'<text x="18" y="{MARGIN_TOP + plot_h / 2:.2f}" font-family="sans-serif" '
        f'font-size="14" text-anchor="middle" '
        f'transform="rotate(-90 18 {MARGIN_TOP + plot_h / 2:.2f})">{_escape(y_label)}</text>'
    )

    for idx, (label, xs, ys) in enumerate(series):
        color = PALETTE[idx % len(PALETTE)]
        points = " ".join(f"{_coord(sx(x))},{_coord(sy(y))}" for x, y in zip(xs, ys))
        out.append(
            f'<polyline fill="none" stroke="{color}" stroke-width="1.5" points="{points}"/>'
        )

    legend_x = MARGIN_LEFT + plot_w - 150
    legend_y = MARGIN_TOP + 10
    for idx, (label, _, _) in enumerate(series):
        color = PALETTE[idx % len(PALETTE)]
        ly = legend_y + 18 * idx
        out.append(
            f'<line x1="{legend_x}" y1="{ly}" x2="{legend_x + 24}" y2="{ly}" '
            f'stroke="{color}" stroke-width="1.5"/>'
        )
        out.append(
            f'<text x="{legend_x + 30}" y="{ly + 4}" font-family="sans-serif" '
            f'font-size="12">{_escape(str(label))}</text>'
        )

    out.append("</svg>")
    return "\n".join(out) + "\n"


def _escape(text: str) -> str:
    return text.replace("&", "&amp;").replace("<", "&lt;").replace(">", "&gt;")

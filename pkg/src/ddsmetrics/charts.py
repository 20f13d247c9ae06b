"""Dependency-free SVG renderers for sweep results.

Line charts cover the single-axis sweeps (optionally with a log x-axis
for the multiplier sweep or a log error axis for the bits sweep); the
grid sweep renders as a heatmap with a blue-to-yellow ramp. Output is a
plain text function of the input data, byte-identical across runs.
"""

from __future__ import annotations

import enum
import json
import math
from dataclasses import dataclass
from typing import Sequence

from .sweeps import SweepResult, SweepRow

__all__ = [
    "ChartKind",
    "ChartStyle",
    "render_line_chart",
    "render_heatmap",
]

WIDTH = 800
HEIGHT = 600
MARGIN_LEFT = 80
MARGIN_RIGHT = 150
MARGIN_TOP = 40
MARGIN_BOTTOM = 70

SERIES_COLORS = ("#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd")

BLUE_ANCHOR = (0, 0, 255)
YELLOW_ANCHOR = (255, 255, 0)
MISSING_FILL = "#bbbbbb"


class ChartKind(enum.Enum):
    LINEAR_LINE = "linear-line"
    LOG_X_LINE = "log-x-line"
    HEATMAP = "heatmap"


@dataclass(frozen=True)
class ChartStyle:
    kind: ChartKind
    x_label: str = ""
    y_label: str = ""
    log_y: bool = False
    low_color: tuple[int, int, int] = BLUE_ANCHOR
    high_color: tuple[int, int, int] = YELLOW_ANCHOR


_METRIC_GETTERS = {
    "max_err": lambda row: row.report.max_abs_error,
    "max_err_pct": lambda row: row.report.max_err_pct,
    "paper_bound": lambda row: row.report.paper_bound,
    "eq5_bound": lambda row: row.report.paper_bound,
    "eq14_bound": lambda row: row.report.paper_bound,
    "eq16_bound": lambda row: row.report.paper_bound,
    "strict_bound": lambda row: row.report.strict_bound,
    "thd_ratio": lambda row: row.report.thd_ratio,
    "thd_db": lambda row: row.report.thd_db,
}


def _metric(row: SweepRow, name: str):
    try:
        return _METRIC_GETTERS[name](row)
    except KeyError:
        raise ValueError(f"unknown metric {name!r}") from None


def _row_x(result_kind: str, row: SweepRow) -> float:
    if result_kind == "bits":
        return float(row.report.bits)
    return float(row.requested_multiplier)


def _nice_ticks(lo: float, hi: float, target: int = 6) -> list[float]:
    if hi <= lo:
        return [lo]
    raw = (hi - lo) / target
    magnitude = 10.0 ** math.floor(math.log10(raw))
    for mult in (1.0, 2.0, 2.5, 5.0, 10.0):
        step = mult * magnitude
        if raw <= step:
            break
    first = math.ceil(lo / step) * step
    ticks = []
    value = first
    while value <= hi + step * 1e-9:
        ticks.append(round(value / step) * step)
        value += step
    return ticks


def _fmt_tick(v: float) -> str:
    if v == int(v) and abs(v) < 1e15:
        return str(int(v))
    return f"{v:.6g}"


def _svg_open(lines: list[str]) -> None:
    lines.append(
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" '
        f'height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}">'
    )
    lines.append(f'<rect x="0" y="0" width="{WIDTH}" height="{HEIGHT}" fill="#ffffff"/>')


def _axis_labels(lines: list[str], style: ChartStyle, left: int, right: int,
                 top: int, bottom: int) -> None:
    cx = (left + right) / 2
    cy = (top + bottom) / 2
    if style.x_label:
        lines.append(
            f'<text x="{cx:.1f}" y="{HEIGHT - 15}" text-anchor="middle" '
            f'font-size="15" font-family="sans-serif">{style.x_label}</text>'
        )
    if style.y_label:
        lines.append(
            f'<text x="22" y="{cy:.1f}" text-anchor="middle" font-size="15" '
            f'font-family="sans-serif" transform="rotate(-90 22 {cy:.1f})">'
            f"{style.y_label}</text>"
        )


def render_line_chart(
    result: SweepResult, style: ChartStyle, series: Sequence[str]
) -> str:
    """Self-contained SVG with one polyline per selected metric."""
    if result.kind not in ("bits", "multiplier"):
        raise ValueError(f"line charts need a bits or multiplier sweep, got {result.kind!r}")
    if not series:
        raise ValueError("series selection is empty")
    if not result.rows:
        raise ValueError("sweep result has no rows")

    log_x = style.kind is ChartKind.LOG_X_LINE

    def tx(x: float) -> float:
        return math.log10(x) if log_x else x

    def ty(y: float) -> float:
        return math.log10(y) if style.log_y else y

    points: dict[str, list[tuple[float, float]]] = {}
    for name in series:
        pts = []
        for row in result.rows:
            y = _metric(row, name)
            if y is None:
                continue
            if style.log_y and y <= 0:
                continue
            x = _row_x(result.kind, row)
            if log_x and x <= 0:
                continue
            pts.append((tx(x), ty(y)))
        points[name] = pts
    all_pts = [p for pts in points.values() for p in pts]
    if not all_pts:
        raise ValueError("selected series contain no plottable values")

    x_lo = min(p[0] for p in all_pts)
    x_hi = max(p[0] for p in all_pts)
    y_lo = min(p[1] for p in all_pts)
    y_hi = max(p[1] for p in all_pts)
    if x_hi == x_lo:
        x_lo, x_hi = x_lo - 0.5, x_hi + 0.5
    if y_hi == y_lo:
        y_lo, y_hi = y_lo - 0.5, y_hi + 0.5
    pad = 0.05 * (y_hi - y_lo)
    y_lo -= pad
    y_hi += pad

    left, right = MARGIN_LEFT, WIDTH - MARGIN_RIGHT
    top, bottom = MARGIN_TOP, HEIGHT - MARGIN_BOTTOM

    def px(x: float) -> float:
        return left + (x - x_lo) / (x_hi - x_lo) * (right - left)

    def py(y: float) -> float:
        return bottom - (y - y_lo) / (y_hi - y_lo) * (bottom - top)

    lines: list[str] = []
    _svg_open(lines)

    if log_x:
        x_ticks = [
            (float(k), f"10^{k}")
            for k in range(math.ceil(x_lo - 1e-9), math.floor(x_hi + 1e-9) + 1)
        ]
    else:
        x_ticks = [(v, _fmt_tick(v)) for v in _nice_ticks(x_lo, x_hi)]
    if style.log_y:
        y_ticks = [
            (float(k), f"10^{k}")
            for k in range(math.ceil(y_lo - 1e-9), math.floor(y_hi + 1e-9) + 1)
        ]
    else:
        y_ticks = [(v, _fmt_tick(v)) for v in _nice_ticks(y_lo, y_hi)]

    for v, label in y_ticks:
        y = py(v)
        lines.append(
            f'<line x1="{left}" y1="{y:.2f}" x2="{right}" y2="{y:.2f}" '
            f'stroke="#dddddd" stroke-width="1"/>'
        )
        lines.append(
            f'<text x="{left - 8}" y="{y + 4:.2f}" text-anchor="end" '
            f'font-size="12" font-family="sans-serif">{label}</text>'
        )
    for v, label in x_ticks:
        x = px(v)
        lines.append(
            f'<line x1="{x:.2f}" y1="{bottom}" x2="{x:.2f}" y2="{bottom + 5}" '
            f'stroke="#000000" stroke-width="1"/>'
        )
        lines.append(
            f'<text x="{x:.2f}" y="{bottom + 20}" text-anchor="middle" '
            f'font-size="12" font-family="sans-serif">{label}</text>'
        )

    lines.append(
        f'<line x1="{left}" y1="{bottom}" x2="{right}" y2="{bottom}" '
        f'stroke="#000000" stroke-width="1.5"/>'
    )
    lines.append(
        f'<line x1="{left}" y1="{top}" x2="{left}" y2="{bottom}" '
        f'stroke="#000000" stroke-width="1.5"/>'
    )

    for idx, name in enumerate(series):
        color = SERIES_COLORS[idx % len(SERIES_COLORS)]
        pts = points[name]
        coords = " ".join(f"{px(x):.2f},{py(y):.2f}" for x, y in pts)
        lines.append(
            f'<polyline fill="none" stroke="{color}" stroke-width="2" '
            f'points="{coords}"/>'
        )
        ly = top + 16 + idx * 20
        lines.append(
            f'<line x1="{right + 10}" y1="{ly}" x2="{right + 32}" y2="{ly}" '
            f'stroke="{color}" stroke-width="2"/>'
        )
        lines.append(
            f'<text x="{right + 38}" y="{ly + 4}" text-anchor="start" '
            f'font-size="12" font-family="sans-serif">{name}</text>'
        )

    _axis_labels(lines, style, left, right, top, bottom)
    lines.append("</svg>")
    return "\n".join(lines) + "\n"


def _ramp_color(t: float, low: tuple[int, int, int], high: tuple[int, int, int]) -> str:
    t = min(1.0, max(0.0, t))
    rgb = tuple(round(lo + t * (hi - lo)) for lo, hi in zip(low, high))
    return "#{:02x}{:02x}{:02x}".format(*rgb)


def render_heatmap(result: SweepResult, style: ChartStyle, metric: str) -> str:
    """One filled cell per (bits, multiplier) pair of a grid sweep.

    The max-error ramp is anchored at 0 (blue) and 1.0 (yellow); other
    metrics anchor to the observed finite range, and the anchors are
    recorded in the SVG metadata either way.
    """
    if result.kind != "grid":
        raise ValueError(f"heatmaps need a grid sweep, got {result.kind!r}")
    if not result.rows:
        raise ValueError("sweep result has no rows")

    bits_axis = sorted({row.report.bits for row in result.rows})
    mult_axis = sorted({row.requested_multiplier for row in result.rows})
    cells: dict[tuple[int, float], SweepRow] = {}
    for row in result.rows:
        key = (row.report.bits, row.requested_multiplier)
        if key in cells:
            raise ValueError(f"duplicate grid cell {key}")
        cells[key] = row
    if len(cells) != len(bits_axis) * len(mult_axis):
        raise ValueError("ragged grid: not every (bits, multiplier) pair is present")

    values = {key: _metric(row, metric) for key, row in cells.items()}
    present = [v for v in values.values() if v is not None]
    if not present:
        raise ValueError(f"metric {metric!r} has no values on this grid")
    if metric in ("max_err", "max_err_pct"):
        lo = 0.0
        hi = 1.0 if metric == "max_err" else 100.0
    else:
        lo = min(present)
        hi = max(present)

    left, right = MARGIN_LEFT, WIDTH - MARGIN_RIGHT
    top, bottom = MARGIN_TOP, HEIGHT - MARGIN_BOTTOM
    cell_w = (right - left) / len(mult_axis)
    cell_h = (bottom - top) / len(bits_axis)

    lines: list[str] = []
    _svg_open(lines)
    meta = {"metric": metric, "low": lo, "high": hi,
            "low_color": _ramp_color(0.0, style.low_color, style.high_color),
            "high_color": _ramp_color(1.0, style.low_color, style.high_color)}
    lines.append(f"<metadata>{json.dumps(meta, sort_keys=True)}</metadata>")

    for bi, bits in enumerate(bits_axis):
        # bits increase upward
        y = bottom - (bi + 1) * cell_h
        for mi, mult in enumerate(mult_axis):
            x = left + mi * cell_w
            v = values[(bits, mult)]
            if v is None:
                fill = MISSING_FILL
            elif hi == lo:
                fill = _ramp_color(0.0, style.low_color, style.high_color)
            else:
                fill = _ramp_color((v - lo) / (hi - lo), style.low_color, style.high_color)
            lines.append(
                f'<rect class="cell" x="{x:.2f}" y="{y:.2f}" width="{cell_w:.2f}" '
                f'height="{cell_h:.2f}" fill="{fill}"/>'
            )

    max_x_labels = 12
    stride = max(1, math.ceil(len(mult_axis) / max_x_labels))
    for mi, mult in enumerate(mult_axis):
        if mi % stride:
            continue
        x = left + (mi + 0.5) * cell_w
        lines.append(
            f'<text x="{x:.2f}" y="{bottom + 18}" text-anchor="middle" '
            f'font-size="11" font-family="sans-serif">{_fmt_tick(mult)}</text>'
        )
    for bi, bits in enumerate(bits_axis):
        y = bottom - (bi + 0.5) * cell_h
        lines.append(
            f'<text x="{left - 8}" y="{y + 4:.2f}" text-anchor="end" '
            f'font-size="11" font-family="sans-serif">{bits}</text>'
        )

    _axis_labels(lines, style, left, right, top, bottom)
    lines.append("</svg>")
    return "\n".join(lines) + "\n"

"""
Standalone SVG line charts of result tables: one polyline per method, x = number of trajectories,
y = root MSVE, or training seconds on a logarithmic axis.
"""
import math
from html import escape as html_escape

import numpy as np
import pandas as pd

COLORS = [
    "#0d6efd",  # blue
    "#dc3545",  # red
    "#198754",  # green
    "#fd7e14",  # orange
    "#6f42c1",  # purple
    "#20c997",  # teal
    "#6c757d",  # gray
    "#ffc107",  # yellow
]
BACKGROUND = "#ffffff"
GRID = "#e9ecef"
TEXT = "#212529"
MUTED = "#6c757d"
FONT = "system-ui, -apple-system, 'Segoe UI', sans-serif"

LOG_SCALE_COLUMNS = ("seconds", "median_seconds")
MARGIN = {"top": 50, "right": 170, "bottom": 60, "left": 80}


def _svg_header(width, height, title=""):
    return (
        '<?xml version="1.0" encoding="UTF-8" standalone="yes"?>\n'
        f'<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 {width} {height}" '
        f'width="{width}" height="{height}" style="font-family: {FONT}; background: {BACKGROUND}">\n'
        f"<title>{html_escape(title)}</title>\n"
    )


def _svg_footer():
    return "</svg>\n"


def _nice_ticks(lo, hi, max_ticks=6):
    if hi <= lo:
        hi = lo + 1
    raw = (hi - lo) / max(max_ticks - 1, 1)
    magnitude = 10 ** math.floor(math.log10(raw))
    step = magnitude * min([1, 2, 2.5, 5, 10], key=lambda nice: abs(nice * magnitude - raw))
    ticks = []
    value = math.floor(lo / step) * step
    while value <= hi + step * 0.01:
        ticks.append(round(value, 10))
        value += step
    return ticks


def _decade_ticks(lo, hi):
    # powers of ten spanning [lo, hi], both positive
    first = math.floor(math.log10(lo))
    last = math.ceil(math.log10(hi))
    if last == first:
        last += 1
    return list(range(first, last + 1))


def _fmt_num(value):
    if value == 0:
        return "0"
    if abs(value) >= 100:
        return f"{value:.0f}"
    if abs(value) >= 10:
        return f"{value:.1f}"
    if abs(value) >= 1:
        return f"{value:.2f}"
    return f"{value:.3g}"


def _fmt_decade(exponent):
    return f"1e{exponent}"


def line_chart(series, title="", x_label="", y_label="", log_y=False, width=760, height=420) -> str:
    """
    Renders a line chart.

    Parameters
    ----------
    series : dict
        series name -> sequence of (x, y) points, drawn in the given order
    title, x_label, y_label : str
        Text of the chart
    log_y : bool
        Logarithmic y axis with a tick per decade; non-positive values are dropped

    Returns
    -------
    str
        a standalone SVG document
    """

    cleaned = {}
    for name, points in series.items():
        kept = [
            (float(x), float(y))
            for x, y in points
            if np.isfinite(x) and np.isfinite(y) and (y > 0 or not log_y)
        ]
        if kept:
            cleaned[name] = sorted(kept)

    plot_w = width - MARGIN["left"] - MARGIN["right"]
    plot_h = height - MARGIN["top"] - MARGIN["bottom"]
    left, top = MARGIN["left"], MARGIN["top"]
    bottom, right = top + plot_h, left + plot_w

    parts = [_svg_header(width, height, title)]
    parts.append(
        f'<text x="{width / 2}" y="28" text-anchor="middle" font-size="15" font-weight="600" '
        f'fill="{TEXT}">{html_escape(title)}</text>\n'
    )
    parts.append(
        f'<line x1="{left}" y1="{bottom}" x2="{right}" y2="{bottom}" stroke="{TEXT}" stroke-width="1"/>\n'
        f'<line x1="{left}" y1="{top}" x2="{left}" y2="{bottom}" stroke="{TEXT}" stroke-width="1"/>\n'
    )
    parts.append(
        f'<text x="{left + plot_w / 2}" y="{height - 15}" text-anchor="middle" font-size="12" '
        f'fill="{MUTED}">{html_escape(x_label)}</text>\n'
    )
    y_label_x, y_label_y = 18, top + plot_h / 2
    parts.append(
        f'<text x="{y_label_x}" y="{y_label_y}" text-anchor="middle" font-size="12" fill="{MUTED}" '
        f'transform="rotate(-90 {y_label_x} {y_label_y})">{html_escape(y_label)}</text>\n'
    )

    if not cleaned:
        parts.append(
            f'<text x="{left + plot_w / 2}" y="{top + plot_h / 2}" text-anchor="middle" font-size="14" '
            f'fill="{MUTED}">no data</text>\n'
        )
        parts.append(_svg_footer())
        return "".join(parts)

    xs = [x for points in cleaned.values() for x, _ in points]
    ys = [y for points in cleaned.values() for _, y in points]
    x_ticks = _nice_ticks(min(xs), max(xs))
    x_lo, x_hi = x_ticks[0], x_ticks[-1]

    if log_y:
        exponents = _decade_ticks(min(ys), max(ys))
        y_lo, y_hi = exponents[0], exponents[-1]
        y_ticks = [(exponent, _fmt_decade(exponent)) for exponent in exponents]

        def y_value(y):
            return math.log10(y)

    else:
        ticks = _nice_ticks(min(0.0, min(ys)), max(ys))
        y_lo, y_hi = ticks[0], ticks[-1]
        y_ticks = [(tick, _fmt_num(tick)) for tick in ticks]

        def y_value(y):
            return y

    def x_pos(x):
        return left + plot_w * (x - x_lo) / (x_hi - x_lo)

    def y_pos(value):
        return bottom - plot_h * (value - y_lo) / (y_hi - y_lo)

    for value, label in y_ticks:
        y = y_pos(value)
        parts.append(
            f'<line x1="{left}" y1="{y:.1f}" x2="{right}" y2="{y:.1f}" stroke="{GRID}" stroke-width="1"/>\n'
            f'<text x="{left - 8}" y="{y + 4:.1f}" text-anchor="end" font-size="11" fill="{MUTED}">'
            f"{label}</text>\n"
        )
    for tick in x_ticks:
        x = x_pos(tick)
        parts.append(
            f'<text x="{x:.1f}" y="{bottom + 18}" text-anchor="middle" font-size="11" fill="{MUTED}">'
            f"{_fmt_num(tick)}</text>\n"
        )

    for index, (name, points) in enumerate(cleaned.items()):
        color = COLORS[index % len(COLORS)]
        coordinates = " ".join(f"{x_pos(x):.1f},{y_pos(y_value(y)):.1f}" for x, y in points)
        parts.append(
            f'<polyline points="{coordinates}" fill="none" stroke="{color}" stroke-width="2">'
            f"<title>{html_escape(str(name))}</title></polyline>\n"
        )
        for x, y in points:
            parts.append(
                f'<circle cx="{x_pos(x):.1f}" cy="{y_pos(y_value(y)):.1f}" r="3" fill="{color}"/>\n'
            )

        # legend swatches are rects, never polylines
        legend_y = top + 10 + index * 20
        parts.append(
            f'<rect x="{right + 15}" y="{legend_y - 9}" width="14" height="10" fill="{color}" rx="2"/>\n'
            f'<text x="{right + 35}" y="{legend_y}" font-size="11" fill="{TEXT}">'
            f"{html_escape(str(name))}</text>\n"
        )

    parts.append(_svg_footer())
    return "".join(parts)


def chart_from_table(df: pd.DataFrame, x=None, y=None, series="method", title="") -> str:
    """
    Plots a result table, averaging y over trials for each (series, x).

    x defaults to the "n" column. y defaults to root_msve for run tables and median_seconds for benchmark tables;
    timing columns get a logarithmic axis.
    """

    x = x or "n"
    if y is None:
        y = next(
            (column for column in ("root_msve", "median_seconds", "seconds") if column in df.columns),
            None,
        )
    for column in (x, y, series):
        if column is None or column not in df.columns:
            raise ValueError(f"the table has no column '{column}', its columns are {list(df.columns)}")

    data = df[[series, x, y]].copy()
    # a header-only CSV reads back with object columns
    for column in (x, y):
        data[column] = pd.to_numeric(data[column], errors="coerce")
    data = data.dropna()
    means = data.groupby([series, x], sort=False)[y].mean().reset_index()
    chart_series = {
        name: list(zip(group[x], group[y]))
        for name, group in means.groupby(series, sort=False)
    }
    return line_chart(
        chart_series,
        title=title,
        x_label=x,
        y_label=y,
        log_y=y in LOG_SCALE_COLUMNS,
    )

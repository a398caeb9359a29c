"""Serialization of sweep results: CSV, JSON, SVG and rendered PNG.

CSV and JSON carry the same five columns in the same order.  The SVG
writer is a small hand-rolled chart emitter: given identical rows it
produces identical bytes, which matplotlib output does not guarantee
across versions.  PNG rendering goes through matplotlib and is meant
for human eyes, not for diffing.
"""

import json
from pathlib import Path

from .keyregion import SweepRow

CSV_HEADER = "c,d,i_ab,i_ae,delta"

_COLUMNS = ("c", "d", "i_ab", "i_ae", "delta")

_PALETTE = (
    "#1f77b4",
    "#d62728",
    "#2ca02c",
    "#9467bd",
    "#ff7f0e",
    "#8c564b",
    "#e377c2",
    "#17becf",
    "#7f7f7f",
)


def format_value(x: float) -> str:
    """Decimal form with 17 significant digits; round-trips exactly."""
    return f"{x:.17g}"


def _series(rows: list[SweepRow]) -> list[tuple[float, list[SweepRow]]]:
    groups: dict[float, list[SweepRow]] = {}
    for row in rows:
        groups.setdefault(row.c, []).append(row)
    return [(c, sorted(groups[c], key=lambda r: r.d)) for c in sorted(groups)]


def sweep_csv_text(rows: list[SweepRow]) -> str:
    lines = [CSV_HEADER]
    for row in rows:
        lines.append(
            ",".join(format_value(getattr(row, col)) for col in _COLUMNS)
        )
    return "\n".join(lines) + "\n"


def write_sweep_csv(rows: list[SweepRow], path: str | Path) -> None:
    Path(path).write_text(sweep_csv_text(rows), encoding="utf-8", newline="\n")


def read_sweep_csv(path: str | Path) -> list[SweepRow]:
    """Parse a sweep CSV back into rows; key is recomputed from delta."""
    text = Path(path).read_text(encoding="utf-8")
    lines = [line for line in text.splitlines() if line.strip()]
    if not lines or lines[0] != CSV_HEADER:
        raise ValueError(f"expected header {CSV_HEADER!r}")
    rows = []
    for line in lines[1:]:
        parts = line.split(",")
        if len(parts) != len(_COLUMNS):
            raise ValueError(f"malformed row: {line!r}")
        values = dict(zip(_COLUMNS, (float(p) for p in parts)))
        rows.append(SweepRow(key=values["delta"] > 0.0, **values))
    return rows


def sweep_json_text(rows: list[SweepRow]) -> str:
    payload = [
        {col: getattr(row, col) for col in _COLUMNS} for row in rows
    ]
    return json.dumps(payload, indent=2) + "\n"


def write_sweep_json(rows: list[SweepRow], path: str | Path) -> None:
    Path(path).write_text(sweep_json_text(rows), encoding="utf-8", newline="\n")


def sweep_svg_text(rows: list[SweepRow], title: str = "") -> str:
    """Standalone SVG line chart of delta against d, one polyline per c.

    Deterministic: same rows and title give byte-identical output.  The
    vertical range always includes zero and the zero line is drawn.
    """
    if not rows:
        raise ValueError("nothing to plot")
    width, height = 840.0, 560.0
    left, right, top, bottom = 72.0, 168.0, 48.0, 64.0
    plot_w = width - left - right
    plot_h = height - top - bottom

    xs = [row.d for row in rows]
    ys = [row.delta for row in rows]
    x_min, x_max = min(xs), max(xs)
    if x_max == x_min:
        x_min, x_max = x_min - 0.5, x_max + 0.5
    y_min, y_max = min(min(ys), 0.0), max(max(ys), 0.0)
    pad = 0.05 * (y_max - y_min) or 0.5
    y_min, y_max = y_min - pad, y_max + pad

    def sx(x: float) -> float:
        return left + (x - x_min) / (x_max - x_min) * plot_w

    def sy(y: float) -> float:
        return top + (y_max - y) / (y_max - y_min) * plot_h

    out = []
    out.append('<?xml version="1.0" encoding="UTF-8"?>')
    out.append(
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width:.0f}" '
        f'height="{height:.0f}" viewBox="0 0 {width:.0f} {height:.0f}">'
    )
    out.append(f'<rect width="{width:.0f}" height="{height:.0f}" fill="white"/>')
    if title:
        out.append(
            f'<text x="{(left + plot_w / 2):.2f}" y="28" font-family="sans-serif" '
            f'font-size="16" text-anchor="middle">{title}</text>'
        )

    # frame and ticks
    out.append(
        f'<rect x="{left:.2f}" y="{top:.2f}" width="{plot_w:.2f}" '
        f'height="{plot_h:.2f}" fill="none" stroke="black" stroke-width="1"/>'
    )
    n_ticks = 6
    for i in range(n_ticks):
        xv = x_min + i * (x_max - x_min) / (n_ticks - 1)
        px = sx(xv)
        out.append(
            f'<line x1="{px:.2f}" y1="{top + plot_h:.2f}" x2="{px:.2f}" '
            f'y2="{top + plot_h + 6:.2f}" stroke="black" stroke-width="1"/>'
        )
        out.append(
            f'<text x="{px:.2f}" y="{top + plot_h + 22:.2f}" font-family="sans-serif" '
            f'font-size="12" text-anchor="middle">{xv:.3g}</text>'
        )
        yv = y_min + i * (y_max - y_min) / (n_ticks - 1)
        py = sy(yv)
        out.append(
            f'<line x1="{left - 6:.2f}" y1="{py:.2f}" x2="{left:.2f}" '
            f'y2="{py:.2f}" stroke="black" stroke-width="1"/>'
        )
        out.append(
            f'<text x="{left - 10:.2f}" y="{py + 4:.2f}" font-family="sans-serif" '
            f'font-size="12" text-anchor="end">{yv:.3g}</text>'
        )

    # zero line
    zy = sy(0.0)
    out.append(
        f'<line x1="{left:.2f}" y1="{zy:.2f}" x2="{left + plot_w:.2f}" '
        f'y2="{zy:.2f}" stroke="#888888" stroke-width="1" stroke-dasharray="5,4"/>'
    )

    # axis labels
    out.append(
        f'<text x="{(left + plot_w / 2):.2f}" y="{height - 18:.2f}" '
        f'font-family="sans-serif" font-size="14" text-anchor="middle">D</text>'
    )
    out.append(
        f'<text x="22" y="{(top + plot_h / 2):.2f}" font-family="sans-serif" '
        f'font-size="14" text-anchor="middle" '
        f'transform="rotate(-90 22 {(top + plot_h / 2):.2f})">&#916;I</text>'
    )

    # one polyline per concurrence, legend at the right edge
    for k, (c, group) in enumerate(_series(rows)):
        color = _PALETTE[k % len(_PALETTE)]
        points = " ".join(f"{sx(r.d):.2f},{sy(r.delta):.2f}" for r in group)
        out.append(
            f'<polyline fill="none" stroke="{color}" stroke-width="1.5" '
            f'points="{points}"/>'
        )
        ly = top + 16 + 18 * k
        out.append(
            f'<line x1="{left + plot_w + 12:.2f}" y1="{ly - 4:.2f}" '
            f'x2="{left + plot_w + 34:.2f}" y2="{ly - 4:.2f}" '
            f'stroke="{color}" stroke-width="2"/>'
        )
        out.append(
            f'<text x="{left + plot_w + 40:.2f}" y="{ly:.2f}" '
            f'font-family="sans-serif" font-size="12">c={c:g}</text>'
        )

    out.append("</svg>")
    return "\n".join(out) + "\n"


def write_sweep_svg(rows: list[SweepRow], path: str | Path, title: str = "") -> None:
    Path(path).write_text(sweep_svg_text(rows, title), encoding="utf-8", newline="\n")


def render_sweep_png(rows: list[SweepRow], path: str | Path, title: str = "") -> None:
    """Render the sweep as a PNG via matplotlib (non-interactive backend)."""
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    fig, ax = plt.subplots(figsize=(7.2, 4.8), dpi=150)
    for k, (c, group) in enumerate(_series(rows)):
        ax.plot(
            [r.d for r in group],
            [r.delta for r in group],
            color=_PALETTE[k % len(_PALETTE)],
            linewidth=1.4,
            label=f"c={c:g}",
        )
    ax.axhline(0.0, color="0.5", linewidth=0.8, linestyle="--")
    ax.set_xlabel("D")
    ax.set_ylabel(r"$\Delta I$")
    if title:
        ax.set_title(title)
    ax.legend(fontsize=8, loc="upper right", ncols=2)
    ax.grid(alpha=0.25)
    fig.tight_layout()
    fig.savefig(path)
    plt.close(fig)

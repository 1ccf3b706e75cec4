"""Dependency-free, deterministic SVG scatter plot."""

from __future__ import annotations

from pathlib import Path
from xml.sax.saxutils import escape

import numpy as np

WIDTH, HEIGHT = 480, 360
LEFT, RIGHT, TOP, BOTTOM = 64, 16, 16, 48
N_TICKS = 5


def padded_range(v: np.ndarray) -> tuple[float, float]:
    """Data range widened by 5% on each side; a zero-width range becomes +/-1."""
    lo, hi = float(np.min(v)), float(np.max(v))
    if hi == lo:
        return lo - 1.0, hi + 1.0
    pad = 0.05 * (hi - lo)
    return lo - pad, hi + pad


def _fmt(v: float) -> str:
    return f"{v:.2f}"


def scatter_svg(y, f, xlabel: str = "w'x", ylabel: str = "f") -> str:
    y = np.asarray(y, dtype=float)
    f = np.asarray(f, dtype=float)
    if y.size == 0 or y.size != f.size:
        raise ValueError("scatter needs a nonempty set of (y, f) pairs")
    x0, x1 = padded_range(y)
    y0, y1 = padded_range(f)
    pw = WIDTH - LEFT - RIGHT
    ph = HEIGHT - TOP - BOTTOM

    def sx(v):
        return LEFT + (v - x0) / (x1 - x0) * pw

    def sy(v):
        return TOP + (y1 - v) / (y1 - y0) * ph

    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" '
        f'viewBox="0 0 {WIDTH} {HEIGHT}">',
        f'<rect x="0" y="0" width="{WIDTH}" height="{HEIGHT}" fill="white"/>',
        f'<rect x="{LEFT}" y="{TOP}" width="{pw}" height="{ph}" fill="none" stroke="black"/>',
    ]
    for t in np.linspace(x0, x1, N_TICKS):
        px = _fmt(sx(t))
        out.append(f'<line x1="{px}" y1="{TOP + ph}" x2="{px}" y2="{TOP + ph + 5}" stroke="black"/>')
        out.append(
            f'<text x="{px}" y="{TOP + ph + 18}" font-size="11" text-anchor="middle">{t:.3g}</text>'
        )
    for t in np.linspace(y0, y1, N_TICKS):
        py = _fmt(sy(t))
        out.append(f'<line x1="{LEFT - 5}" y1="{py}" x2="{LEFT}" y2="{py}" stroke="black"/>')
        out.append(
            f'<text x="{LEFT - 8}" y="{py}" font-size="11" text-anchor="end" '
            f'dominant-baseline="middle">{t:.3g}</text>'
        )
    out.append(
        f'<text x="{LEFT + pw / 2:.1f}" y="{HEIGHT - 10}" font-size="13" '
        f'text-anchor="middle">{escape(xlabel)}</text>'
    )
    out.append(
        f'<text x="16" y="{TOP + ph / 2:.1f}" font-size="13" text-anchor="middle" '
        f'transform="rotate(-90 16 {TOP + ph / 2:.1f})">{escape(ylabel)}</text>'
    )
    for a, b in zip(y, f):
        out.append(
            f'<circle cx="{_fmt(sx(a))}" cy="{_fmt(sy(b))}" r="3.5" '
            'fill="none" stroke="#1f4e9c" stroke-width="1.3"/>'
        )
    out.append("</svg>")
    return "\n".join(out) + "\n"


def emit_scatter_svg(scatter, path) -> None:
    """Write a :class:`~ascheck.diagnostics.SummaryScatter` as ``scatter.svg``."""
    Path(path).write_text(scatter_svg(scatter.y, scatter.f))

"""Static SVG rendering of range boundaries: a fixed 800 x 800 viewport with
auto-scaled axes, solid inner hull, dashed outer polygon, witness points as
dots."""

from __future__ import annotations

import numpy as np

SIZE = 800
MARGIN = 60


def _fmt(x: float) -> str:
    return format(float(x), ".6g")


def _scaler(points: np.ndarray):
    xs, ys = points[:, 0], points[:, 1]
    lo = np.array([xs.min(), ys.min()])
    hi = np.array([xs.max(), ys.max()])
    span = max(float((hi - lo).max()), 1e-9)
    mid = (hi + lo) / 2.0
    scale = (SIZE - 2 * MARGIN) / span

    def to_px(p):
        x = (p[0] - mid[0]) * scale + SIZE / 2
        y = SIZE / 2 - (p[1] - mid[1]) * scale
        return x, y

    return to_px


def _path(points: np.ndarray, to_px, close: bool = True) -> str:
    cmds = []
    for i, p in enumerate(points):
        x, y = to_px(p)
        cmds.append(f"{'M' if i == 0 else 'L'} {_fmt(x)} {_fmt(y)}")
    if close:
        cmds.append("Z")
    return " ".join(cmds)


def boundary_svg(inner: np.ndarray, outer: np.ndarray, witnesses: np.ndarray) -> str:
    """Render the polygon sandwich; witnesses is an (m, 2) point array."""
    allpts = np.vstack([p for p in (inner, outer, witnesses) if len(p) > 0])
    to_px = _scaler(allpts)
    ox, oy = to_px((0.0, 0.0))
    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{SIZE}" height="{SIZE}" '
        f'viewBox="0 0 {SIZE} {SIZE}">',
        f'<rect width="{SIZE}" height="{SIZE}" fill="white"/>',
        f'<line x1="0" y1="{_fmt(oy)}" x2="{SIZE}" y2="{_fmt(oy)}" stroke="#cccccc"/>',
        f'<line x1="{_fmt(ox)}" y1="0" x2="{_fmt(ox)}" y2="{SIZE}" stroke="#cccccc"/>',
    ]
    if len(outer) >= 2:
        parts.append(
            f'<path d="{_path(outer, to_px)}" fill="none" stroke="#d62728" '
            f'stroke-width="1.5" stroke-dasharray="6 4"/>'
        )
    if len(inner) >= 2:
        parts.append(
            f'<path d="{_path(inner, to_px)}" fill="#1f77b422" stroke="#1f77b4" '
            f'stroke-width="1.5"/>'
        )
    for p in witnesses:
        x, y = to_px(p)
        parts.append(f'<circle cx="{_fmt(x)}" cy="{_fmt(y)}" r="2" fill="#333333"/>')
    parts.append("</svg>")
    return "\n".join(parts) + "\n"

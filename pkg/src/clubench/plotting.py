"""Dependency-free SVG scatterplots of 2-d (or first-two-coordinate) data.

One fixed 10-color palette cycled over cluster ids; label 0 (noise) is
grey.  Axes share one scale factor so shapes are not distorted, and the
output bytes are a pure function of the inputs.
"""

from __future__ import annotations

import numpy as np

from .errors import BadDimension

PALETTE = (
    "#4e79a7",
    "#f28e2b",
    "#e15759",
    "#76b7b2",
    "#59a147",
    "#edc948",
    "#b07aa1",
    "#ff9da7",
    "#9c755f",
    "#bab0ac",
)
NOISE_COLOR = "#999999"


def color_for(label: int) -> str:
    if label == 0:
        return NOISE_COLOR
    return PALETTE[(int(label) - 1) % len(PALETTE)]


def scatter_svg(
    points,
    labels,
    title: str = "",
    size: int = 640,
    margin: float = 40.0,
    radius: float = 3.5,
) -> str:
    """Render the first two coordinates as an SVG scatterplot string."""
    pts = np.asarray(points, dtype=np.float64)
    if pts.ndim != 2 or pts.shape[1] < 2:
        raise BadDimension(f"plotting needs d >= 2 coordinates, got shape {pts.shape}")
    labels = np.asarray(labels, dtype=np.int64)
    if labels.shape[0] != pts.shape[0]:
        raise BadDimension(f"{labels.shape[0]} labels for {pts.shape[0]} points")
    x = pts[:, 0]
    y = pts[:, 1]
    span_x = float(x.max() - x.min())
    span_y = float(y.max() - y.min())
    span = max(span_x, span_y) or 1.0
    scale = (size - 2.0 * margin) / span
    # center the data box inside the canvas, same scale on both axes
    off_x = margin + (size - 2.0 * margin - span_x * scale) / 2.0
    off_y = margin + (size - 2.0 * margin - span_y * scale) / 2.0
    xmin = float(x.min())
    ymax = float(y.max())

    lines = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size}" '
        f'viewBox="0 0 {size} {size}">',
        f'<rect width="{size}" height="{size}" fill="#ffffff"/>',
    ]
    if title:
        lines.append(
            f'<text x="{size / 2:.1f}" y="{margin / 2:.1f}" text-anchor="middle" '
            f'font-family="sans-serif" font-size="14">{_escape(title)}</text>'
        )
    for i in range(pts.shape[0]):
        cx = off_x + (float(x[i]) - xmin) * scale
        cy = off_y + (ymax - float(y[i])) * scale  # svg y grows downward
        lines.append(
            f'<circle cx="{cx:.3f}" cy="{cy:.3f}" r="{radius:g}" '
            f'fill="{color_for(int(labels[i]))}" fill-opacity="0.85"/>'
        )
    lines.append("</svg>")
    return "\n".join(lines) + "\n"


def _escape(text: str) -> str:
    return text.replace("&", "&amp;").replace("<", "&lt;").replace(">", "&gt;")

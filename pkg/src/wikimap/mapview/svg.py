"""SVG 1.1 rendering of a laid-out, colored network."""
from __future__ import annotations

from xml.sax.saxutils import escape

from ..errors import CanvasTooSmall

MIN_CANVAS = 64
MARGIN = 8
NODE_RADIUS = 1
LABEL_RADIUS = 4


def render_svg(points, colors, titles=None, canvas=(1024, 1024), background="#ffffff") -> str:
    """Draw one circle per point, in ascending node id order.

    ``points`` maps node id to normalized (x, y) with y pointing up;
    ``colors`` is a ColorAssignment or a plain id -> color mapping. Nodes in
    ``colors.labeled`` get a larger circle and a text label from ``titles``.
    """
    width, height = canvas
    if width < MIN_CANVAS or height < MIN_CANVAS:
        raise CanvasTooSmall(f"canvas {width}x{height} is below {MIN_CANVAS}x{MIN_CANVAS}")
    fill = getattr(colors, "colors", colors)
    labeled = getattr(colors, "labeled", set())
    side = min(width, height) - 2 * MARGIN
    ox = (width - side) / 2
    oy = (height - side) / 2
    out = [
        '<?xml version="1.0" encoding="UTF-8" standalone="no"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
        f'width="{width}" height="{height}" viewBox="0 0 {width} {height}">',
        f'<rect x="0" y="0" width="{width}" height="{height}" fill="{background}"/>',
        '<g id="nodes">',
    ]
    labels = []
    for node in sorted(points):
        x, y = points[node]
        cx = ox + x * side
        cy = oy + (1.0 - y) * side
        big = node in labeled
        r = LABEL_RADIUS if big else NODE_RADIUS
        out.append(f'<circle id="n{node}" cx="{cx:.3f}" cy="{cy:.3f}" r="{r}" fill="{fill[node]}"/>')
        if big and titles is not None:
            text = titles[node].replace("_", " ")
            labels.append(
                f'<text x="{cx + r + 2:.3f}" y="{cy + 3:.3f}" font-family="sans-serif" '
                f'font-size="10" fill="#000000">{escape(text)}</text>'
            )
    out.append("</g>")
    out.append('<g id="labels">')
    out.extend(labels)
    out.append("</g>")
    out.append("</svg>")
    return "\n".join(out) + "\n"

"""Schematic arc-diagram rendering: spine on a line, semicircular arcs,
one color per page.  Output bytes are deterministic for a fixed layout."""

from __future__ import annotations

import os

from .layouts import LinearLayout

PAGE_COLORS = (
    "#4472c4",  # blue
    "#b07cc6",  # lilac
    "#55a868",
    "#c44e52",
    "#dd8452",
    "#937860",
)

SPACING = 60
MARGIN = 40
BASELINE_PAD = 30
RADIUS = 9


def render_svg(layout: LinearLayout) -> str:
    n = len(layout.spine)
    pos = {v: MARGIN + i * SPACING for i, v in enumerate(layout.spine)}
    max_span = max(
        (abs(pos[u] - pos[w]) for u, w in layout.pages), default=SPACING
    )
    top = max_span // 2 + BASELINE_PAD
    width = 2 * MARGIN + max(n - 1, 0) * SPACING
    height = top + 2 * BASELINE_PAD
    base = top
    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}">',
        f'<line x1="{MARGIN - 20}" y1="{base}" x2="{width - MARGIN + 20}" y2="{base}" '
        f'stroke="#888888" stroke-width="1"/>',
    ]
    for (u, w), page in sorted(layout.pages.items(), key=lambda it: (it[1], it[0])):
        x1, x2 = sorted((pos[u], pos[w]))
        r = (x2 - x1) / 2
        color = PAGE_COLORS[(page - 1) % len(PAGE_COLORS)]
        parts.append(
            f'<path d="M {x1} {base} A {r:.1f} {r:.1f} 0 0 1 {x2} {base}" '
            f'fill="none" stroke="{color}" stroke-width="1.5"/>'
        )
    for v in layout.spine:
        x = pos[v]
        parts.append(
            f'<circle cx="{x}" cy="{base}" r="{RADIUS}" fill="#ffffff" stroke="#333333"/>'
        )
        parts.append(
            f'<text x="{x}" y="{base + 4}" font-size="10" text-anchor="middle" '
            f'font-family="monospace">{v}</text>'
        )
    parts.append("</svg>")
    return "\n".join(parts) + "\n"


def emit_svg(layout: LinearLayout, path: str) -> None:
    """Write the rendering atomically."""
    data = render_svg(layout)
    tmp = f"{path}.tmp"
    with open(tmp, "w") as fh:
        fh.write(data)
    os.replace(tmp, path)

"""SVG rendering of layered drawings.

Each layer gets a CSS class with its own stroke color from a fixed
12-color palette (colors repeat beyond 12 layers).  Output depends only
on the drawing and the options, so re-rendering is byte-identical.
"""

from __future__ import annotations

from fractions import Fraction

from .drawing import LayeredDrawing

PALETTE = (
    "#e6194b",
    "#3cb44b",
    "#4363d8",
    "#f58231",
    "#911eb4",
    "#42d4f4",
    "#f032e6",
    "#9a6324",
    "#469990",
    "#808000",
    "#000075",
    "#a9a9a9",
)
VERTEX_RADIUS = 3


def layer_color(c: int) -> str:
    return PALETTE[(c - 1) % len(PALETTE)]


def _fmt(x: Fraction) -> str:
    return f"{float(x):.3f}"


def render_svg(d: LayeredDrawing, size: int = 600, margin: int = 12, labels: bool = False) -> str:
    """The drawing scaled to fit a ``size`` x ``size`` viewbox (y axis pointing up)."""
    pts = [d.gamma[v] for v in d.graph.sorted_vertices()]
    if pts:
        lo_x, hi_x = min(p.x for p in pts), max(p.x for p in pts)
        lo_y, hi_y = min(p.y for p in pts), max(p.y for p in pts)
    else:
        lo_x = hi_x = lo_y = hi_y = Fraction(0)
    span = max(hi_x - lo_x, hi_y - lo_y) or Fraction(1)
    scale = Fraction(size - 2 * margin) / span

    def xy(v: int) -> tuple[str, str]:
        p = d.gamma[v]
        return _fmt(margin + (p.x - lo_x) * scale), _fmt(size - margin - (p.y - lo_y) * scale)

    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 {size} {size}" width="{size}" height="{size}">',
        "<style>",
        "  .vertex { fill: #222; }",
    ]
    out += [f"  .layer-{c} {{ stroke: {layer_color(c)}; stroke-width: 1.5; }}" for c in range(1, d.layers + 1)]
    out.append("</style>")
    out.append('<g id="edges">')
    for u, v in d.graph.sorted_edges():
        (x1, y1), (x2, y2) = xy(u), xy(v)
        c = d.chi[(u, v)]
        out.append(f'  <line class="layer-{c}" data-edge="{u}-{v}" x1="{x1}" y1="{y1}" x2="{x2}" y2="{y2}"/>')
    out.append("</g>")
    out.append('<g id="vertices">')
    for v in d.graph.sorted_vertices():
        x, y = xy(v)
        out.append(f'  <circle class="vertex" data-vertex="{v}" cx="{x}" cy="{y}" r="{VERTEX_RADIUS}"/>')
        if labels:
            out.append(f'  <text x="{x}" y="{y}" dx="4" dy="-4" font-size="9">{v}</text>')
    out.append("</g>")
    out.append("</svg>")
    return "\n".join(out) + "\n"

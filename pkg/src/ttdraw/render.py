"""SVG rendering of drawings: edges as lines, vertices as dots.

Long edges are styled distinctly from short ones; the measured local
ratio is recorded in a comment node rather than drawn.
"""

from __future__ import annotations

from .drawing import Drawing
from .verify import measure_ratios

_STYLE = {
    "root": 'stroke="#222222" stroke-width="2.0"',
    "long": 'stroke="#1f6fb2" stroke-width="1.6"',
    "short": 'stroke="#c23b22" stroke-width="1.0"',
}


def drawing_to_svg(d: Drawing, width: int = 800) -> str:
    """Renders a drawing to SVG 1.1, auto-fitted with a 5% margin."""
    xs = [p[0] for p in d.coords.values()]
    ys = [p[1] for p in d.coords.values()]
    x0, x1 = min(xs), max(xs)
    y0, y1 = min(ys), max(ys)
    wspan = max(x1 - x0, 1e-12)
    hspan = max(y1 - y0, 1e-12)
    margin = 0.05
    scale = width * (1.0 - 2 * margin) / wspan
    height = int(hspan * scale / (1.0 - 2 * margin)) + 1
    height = max(height, 16)

    def txy(p):
        return (
            width * margin + (p[0] - x0) * scale,
            height * (1.0 - margin) - (p[1] - y0) * scale,
        )

    try:
        ratio = measure_ratios(d).local_ratio
        ratio_note = f"<!-- local edge-length ratio: {ratio!r} -->"
    except Exception:
        ratio_note = "<!-- local edge-length ratio: undefined -->"
    lines = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
        f'width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}">',
        ratio_note,
    ]
    for (u, v), cls in sorted(d.edge_class.items()):
        if u not in d.coords or v not in d.coords:
            continue
        p1 = txy(d.coords[u])
        p2 = txy(d.coords[v])
        style = _STYLE.get(cls, _STYLE["short"])
        lines.append(
            f'<line x1="{p1[0]:.3f}" y1="{p1[1]:.3f}" '
            f'x2="{p2[0]:.3f}" y2="{p2[1]:.3f}" {style}/>'
        )
    r_dot = max(2.0, width / 400.0)
    for v in sorted(d.coords):
        p = txy(d.coords[v])
        lines.append(
            f'<circle cx="{p[0]:.3f}" cy="{p[1]:.3f}" r="{r_dot:.2f}" '
            f'fill="#333333"/>'
        )
    lines.append("</svg>")
    return "\n".join(lines) + "\n"

"""Static SVG drawings of colored point sets and trees."""
from __future__ import annotations

from typing import Optional, Sequence

from .crossings import crossing_pairs
from .errors import InputError
from .geometry import ColoredPoint
from .io import _write_text
from .minbst import ColoredTree

# Okabe-Ito palette: vermillion, blue, then the remaining hues
PALETTE = ["#D55E00", "#0072B2", "#009E73", "#E69F00", "#CC79A7", "#56B4E9", "#F0E442", "#000000"]
CANVAS = 480
MARGIN = 24
MARKER = 4.0


def _num(v: float) -> str:
    s = f"{v:.2f}".rstrip("0").rstrip(".")
    return "0" if s == "-0" else s


def _intersection(p, q, r, s):
    d = (q[0] - p[0]) * (s[1] - r[1]) - (q[1] - p[1]) * (s[0] - r[0])
    t = ((r[0] - p[0]) * (s[1] - r[1]) - (r[1] - p[1]) * (s[0] - r[0])) / d
    return p[0] + t * (q[0] - p[0]), p[1] + t * (q[1] - p[1])


def svg_text(points: Sequence[ColoredPoint], tree: Optional[ColoredTree] = None, *,
             mark_crossings: bool = False, title: Optional[str] = None) -> str:
    """SVG document for ``points`` and the edges of ``tree``.

    Color 0 is drawn as filled circles, color 1 as filled squares, further
    colors as diamonds. Output depends only on the inputs.
    """
    points = list(points)
    if not points:
        raise InputError("nothing to draw")
    xs = [p.x for p in points]
    ys = [p.y for p in points]
    span = max(max(xs) - min(xs), max(ys) - min(ys)) or 1.0
    scale = (CANVAS - 2 * MARGIN) / span
    x0, y0 = min(xs), min(ys)

    def to_px(x, y):
        # flip y so the drawing matches the usual orientation
        return MARGIN + (x - x0) * scale, CANVAS - MARGIN - (y - y0) * scale

    out = [f'<svg xmlns="http://www.w3.org/2000/svg" width="{CANVAS}" height="{CANVAS}" '
           f'viewBox="0 0 {CANVAS} {CANVAS}">']
    if title:
        safe = title.replace("&", "&amp;").replace("<", "&lt;").replace(">", "&gt;")
        out.append(f"<title>{safe}</title>")
    out.append(f'<rect width="{CANVAS}" height="{CANVAS}" fill="#FFFFFF"/>')

    if tree is not None:
        by_id = tree._index()
        out.append('<g stroke="#555555" stroke-width="1.2">')
        for a, b in tree.edges:
            (ax, ay), (bx, by) = to_px(by_id[a].x, by_id[a].y), to_px(by_id[b].x, by_id[b].y)
            out.append(f'<line x1="{_num(ax)}" y1="{_num(ay)}" x2="{_num(bx)}" y2="{_num(by)}"/>')
        out.append("</g>")
        if mark_crossings:
            out.append('<g stroke="#000000" stroke-width="1.5">')
            for i, j in crossing_pairs(tree):
                (a, b), (c, d) = tree.edges[i], tree.edges[j]
                x, y = _intersection(*((by_id[v].x, by_id[v].y) for v in (a, b, c, d)))
                px, py = to_px(x, y)
                k = MARKER
                out.append(f'<path d="M{_num(px - k)} {_num(py - k)}L{_num(px + k)} {_num(py + k)}'
                           f'M{_num(px - k)} {_num(py + k)}L{_num(px + k)} {_num(py - k)}"/>')
            out.append("</g>")

    out.append("<g>")
    for p in points:
        px, py = to_px(p.x, p.y)
        fill = PALETTE[p.color % len(PALETTE)]
        if p.color == 0:
            out.append(f'<circle cx="{_num(px)}" cy="{_num(py)}" r="{_num(MARKER)}" fill="{fill}"/>')
        elif p.color == 1:
            out.append(f'<rect x="{_num(px - MARKER)}" y="{_num(py - MARKER)}" '
                       f'width="{_num(2 * MARKER)}" height="{_num(2 * MARKER)}" fill="{fill}"/>')
        else:
            k = MARKER * 1.3
            out.append(f'<path d="M{_num(px)} {_num(py - k)}L{_num(px + k)} {_num(py)}'
                       f'L{_num(px)} {_num(py + k)}L{_num(px - k)} {_num(py)}Z" fill="{fill}"/>')
    out.append("</g>")
    out.append("</svg>")
    return "\n".join(out) + "\n"


def render_svg(points: Sequence[ColoredPoint], tree: Optional[ColoredTree], out, *,
               mark_crossings: bool = False, title: Optional[str] = None):
    """Write :func:`svg_text` to the path ``out``; raises IoError on failure."""
    _write_text(out, svg_text(points, tree, mark_crossings=mark_crossings, title=title))

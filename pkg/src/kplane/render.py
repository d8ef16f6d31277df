"""SVG output.  Floating point is fine here; nothing downstream reads it back."""

from __future__ import annotations

from typing import Optional
from xml.sax.saxutils import quoteattr

from .arrangement import Arrangement, build
from .drawing import Drawing
from .structure import NotTwoPlane, find_special

SIZE = 800.0
MARGIN = 40.0


def _transform(arr: Arrangement):
    pts = [n.location for n in arr.nodes] + [p for a in arr.arcs for p in a.points]
    if not pts:
        return lambda p: (SIZE / 2, SIZE / 2), (0.0, 0.0, SIZE, SIZE)
    xs = [float(p.x) for p in pts]
    ys = [float(p.y) for p in pts]
    x0, x1, y0, y1 = min(xs), max(xs), min(ys), max(ys)
    span = max(x1 - x0, y1 - y0, 1e-9)
    scale = (SIZE - 2 * MARGIN) / span

    def tf(p):
        return MARGIN + (float(p.x) - x0) * scale, SIZE - MARGIN - (float(p.y) - y0) * scale

    return tf, (0.0, 0.0, SIZE, SIZE)


def _walk_path(arr: Arrangement, walk, tf) -> str:
    pts = [tf(q) for h in walk for q in arr.half_edge_points(h)[:-1]]
    return "M " + " L ".join(f"{x:.2f} {y:.2f}" for x, y in pts) + " Z"


def render_svg(d: Drawing, arr: Optional[Arrangement] = None) -> str:
    arr = arr if arr is not None else build(d)
    tf, (vx, vy, vw, vh) = _transform(arr)
    try:
        special = find_special(arr).special_cells
    except NotTwoPlane:
        special = []
    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" viewBox="{vx} {vy} {vw} {vh}" width="{vw:.0f}" height="{vh:.0f}">',
        '<rect class="background" x="0" y="0" width="100%" height="100%" fill="white"/>',
    ]
    for f in special:
        face = arr.faces[f]
        parts = [_walk_path(arr, w, tf) for w in face.walks]
        if face.is_unbounded:
            parts.insert(0, f"M 0 0 L {vw} 0 L {vw} {vh} L 0 {vh} Z")
        out.append(
            f'<path class="special-cell" data-face="{f}" d={quoteattr(" ".join(parts))} '
            'fill="#f5d9a8" fill-rule="evenodd" stroke="none"/>'
        )
    for e in d.edges:
        pts = " ".join(f"{x:.2f},{y:.2f}" for x, y in map(tf, e.points))
        out.append(f'<polyline class="edge" data-edge="{e.id}" points="{pts}" fill="none" stroke="#333" stroke-width="1.5"/>')
    for n in arr.nodes:
        if n.kind == "crossing":
            x, y = tf(n.location)
            out.append(
                f'<path class="crossing" d="M {x-4:.2f} {y-4:.2f} L {x+4:.2f} {y+4:.2f} '
                f'M {x-4:.2f} {y+4:.2f} L {x+4:.2f} {y-4:.2f}" stroke="#c0392b" stroke-width="1.5"/>'
            )
    for v in d.vertices:
        x, y = tf(v.location)
        if d.degree(v.id) == 0:
            out.append(
                f'<circle class="isolated-vertex" data-vertex="{v.id}" cx="{x:.2f}" cy="{y:.2f}" r="6" '
                'fill="#2e86c1" stroke="black"/>'
            )
        else:
            out.append(f'<circle class="vertex" data-vertex="{v.id}" cx="{x:.2f}" cy="{y:.2f}" r="4" fill="black"/>')
    out.append("</svg>")
    return "\n".join(out) + "\n"

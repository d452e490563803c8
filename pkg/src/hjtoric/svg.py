"""Minimal SVG emission for lattice polygons and blowup cut diagrams.

Lattice points sit at integer coordinates scaled by a uniform factor; the
y axis is flipped so diagrams read in the usual mathematical orientation.
"""

from __future__ import annotations

from fractions import Fraction

from .blowup import cut_chords
from .lattice2d import Polygon, Wedge, wedge_polygon

_STYLE = (
    "text { font: 11px sans-serif; } "
    ".grid { fill: #bbb; } "
    ".edge { stroke: #222; stroke-width: 2; fill: none; } "
    ".cut { stroke: #c22; stroke-width: 1.5; } "
    ".label { fill: #c22; }"
)


def _fmt(x) -> str:
    f = float(x)
    return f"{f:.4f}".rstrip("0").rstrip(".")


class _Canvas:
    """Collects SVG elements in lattice coordinates, rendering at the end."""

    def __init__(self, xmax: float, ymax: float, scale: int = 40, margin: float = 0.75):
        self.scale = scale
        self.margin = margin
        self.xmax = xmax
        self.ymax = ymax
        self.parts: list[str] = []

    def _pt(self, x, y) -> tuple[float, float]:
        s = self.scale
        return ((float(x) + self.margin) * s, (self.ymax + self.margin - float(y)) * s)

    def grid(self):
        for i in range(int(self.xmax) + 1):
            for j in range(int(self.ymax) + 1):
                cx, cy = self._pt(i, j)
                self.parts.append(
                    f'<circle class="grid" cx="{_fmt(cx)}" cy="{_fmt(cy)}" r="1.6"/>'
                )

    def line(self, a, b, cls: str = "edge"):
        x1, y1 = self._pt(*a)
        x2, y2 = self._pt(*b)
        self.parts.append(
            f'<line class="{cls}" x1="{_fmt(x1)}" y1="{_fmt(y1)}" '
            f'x2="{_fmt(x2)}" y2="{_fmt(y2)}"/>'
        )

    def text(self, at, s: str, cls: str = "label"):
        x, y = self._pt(*at)
        self.parts.append(f'<text class="{cls}" x="{_fmt(x)}" y="{_fmt(y)}">{s}</text>')

    def render(self) -> str:
        w = (self.xmax + 2 * self.margin) * self.scale
        h = (self.ymax + 2 * self.margin) * self.scale
        body = "\n  ".join(self.parts)
        return (
            f'<svg xmlns="http://www.w3.org/2000/svg" width="{_fmt(w)}" '
            f'height="{_fmt(h)}" viewBox="0 0 {_fmt(w)} {_fmt(h)}">\n'
            f"  <style>{_STYLE}</style>\n  {body}\n</svg>\n"
        )


def cut_diagram_svg(p: int, q: int, scale: int = 40) -> str:
    """The cut cascade of the (p, q)-weighted blowup, chords labeled.

    Draws the two quadrant edges and every cut chord at multiplicity size,
    ending in the hypotenuse from (0, q) to (p, 0).
    """
    chords = cut_chords(q, p)
    canvas = _Canvas(p + 1, q + 1, scale)
    canvas.grid()
    canvas.line((0, 0), (0, q + 1))
    canvas.line((0, 0), (p + 1, 0))
    for label, a, b in chords:
        canvas.line(a, b, cls="cut")
        mid = ((a[0] + b[0]) / 2, (a[1] + b[1]) / 2)
        canvas.text((mid[0] + Fraction(1, 8), mid[1] + Fraction(1, 8)), f"({label[0]},{label[1]})")
    canvas.text((p - 1, q + Fraction(1, 2)), f"({p},{q})-weighted blowup cuts", cls="label")
    return canvas.render()


def polygon_svg(shape: Polygon | Wedge, scale: int = 40, ray_reach: int = 3) -> str:
    """A polygon or wedge; boundary rays are drawn ``ray_reach`` units long."""
    poly = wedge_polygon(shape) if isinstance(shape, Wedge) else shape
    pts = list(poly.vertices)
    segs: list[tuple] = []
    if poly.closed:
        for i in range(len(pts)):
            segs.append((pts[i], pts[(i + 1) % len(pts)]))
    else:
        first, last = pts[0], pts[-1]
        rin, rout = poly.ray_in, poly.ray_out
        segs.append(((first[0] + ray_reach * rin[0], first[1] + ray_reach * rin[1]), first))
        for i in range(len(pts) - 1):
            segs.append((pts[i], pts[i + 1]))
        segs.append((last, (last[0] + ray_reach * rout[0], last[1] + ray_reach * rout[1])))
    xs = [float(x) for seg in segs for x, _ in seg]
    ys = [float(y) for seg in segs for _, y in seg]
    canvas = _Canvas(max(xs + [1.0]), max(ys + [1.0]), scale)
    canvas.grid()
    for a, b in segs:
        canvas.line(a, b)
    return canvas.render()

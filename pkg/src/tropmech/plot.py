"""SVG drawings of min-plus hyperplane arrangements in the plane.

For three outcomes a point ``z`` is drawn at ``(z2 - z1, z3 - z1)``. The
hyperplane of a type ``t`` then has its apex at ``(t2 - t1, t3 - t1)`` and
three boundary rays: vertical up (outcomes 1 and 2 tie), horizontal right
(1 and 3 tie) and diagonal down-left (2 and 3 tie).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple
from xml.sax.saxutils import escape

from .errors import DimensionMismatch
from .mechanism import SpaceLike, as_space
from .tropical import covector_at

Point = Tuple[Fraction, Fraction]

# direction of each boundary ray in plot coordinates
RAYS = ((0, 1), (1, 0), (-1, -1))


@dataclass(frozen=True)
class PlotConfig:
    scale: int = 40
    margin: Fraction = Fraction(2)
    samples: int = 60
    labels: bool = False
    title: Optional[str] = None


def apexes(space: SpaceLike) -> List[Point]:
    space = as_space(space)
    if space.m != 3:
        raise DimensionMismatch(f"plots need exactly 3 outcomes, got m={space.m}")
    return [(t[1] - t[0], t[2] - t[0]) for t in space.matrix]


def _box(points: Sequence[Point], margin: Fraction):
    xs = [p[0] for p in points]
    ys = [p[1] for p in points]
    return min(xs) - margin, max(xs) + margin, min(ys) - margin, max(ys) + margin


def _ray_end(apex: Point, direction: Tuple[int, int], box) -> Point:
    x0, x1, y0, y1 = box
    ax, ay = apex
    dx, dy = direction
    steps = []
    if dx:
        steps.append(((x1 if dx > 0 else x0) - ax) / dx)
    if dy:
        steps.append(((y1 if dy > 0 else y0) - ay) / dy)
    s = min(steps)
    return ax + s * dx, ay + s * dy


def cell_labels(space: SpaceLike, box, samples: int) -> Dict[Tuple[int, ...], Point]:
    """Centroid of sampled points for each covector of an open cell inside ``box``.

    Cells are convex, so the centroid of sampled interior points lies in the cell.
    """
    space = as_space(space)
    x0, x1, y0, y1 = box
    sums: Dict[Tuple[int, ...], List] = {}
    for a in range(samples + 1):
        for b in range(samples + 1):
            x = x0 + (x1 - x0) * Fraction(2 * a + 1, 2 * samples + 2)
            y = y0 + (y1 - y0) * Fraction(2 * b + 1, 2 * samples + 2)
            cov = covector_at((0, x, y), space.matrix)
            if any(len(c) > 1 for c in cov):
                continue
            key = tuple(next(iter(c)) for c in cov)
            acc = sums.setdefault(key, [Fraction(0), Fraction(0), 0])
            acc[0] += x
            acc[1] += y
            acc[2] += 1
    return {k: (sx / n, sy / n) for k, (sx, sy, n) in sorted(sums.items())}


def arrangement_svg(space: SpaceLike, config: PlotConfig = PlotConfig()) -> str:
    """Return an SVG document drawing the arrangement of ``space``."""
    points = apexes(space)
    box = _box(points, config.margin)
    x0, x1, y0, y1 = box
    s = config.scale
    width = float((x1 - x0) * s)
    height = float((y1 - y0) * s)

    def px(p: Point) -> Tuple[float, float]:
        return float((p[0] - x0) * s), float((y1 - p[1]) * s)

    out = [f'<svg xmlns="http://www.w3.org/2000/svg" width="{width:g}" height="{height:g}" '
           f'viewBox="0 0 {width:g} {height:g}">',
           f'<rect width="{width:g}" height="{height:g}" fill="white"/>']
    if config.title:
        out.append(f'<title>{escape(config.title)}</title>')
    for i, apex in enumerate(points, start=1):
        ax, ay = px(apex)
        out.append(f'<g class="hyperplane" data-type="{i}">')
        for d in RAYS:
            ex, ey = px(_ray_end(apex, d, box))
            out.append(f'<line class="ray" x1="{ax:g}" y1="{ay:g}" x2="{ex:g}" y2="{ey:g}" '
                       f'stroke="black" stroke-width="1.5"/>')
        out.append(f'<circle class="apex" cx="{ax:g}" cy="{ay:g}" r="3" fill="black" '
                   f'data-x="{apex[0]}" data-y="{apex[1]}"/>')
        out.append(f'<text x="{ax + 5:g}" y="{ay - 5:g}" font-size="11">t{i}</text>')
        out.append('</g>')
    if config.labels:
        for key, p in cell_labels(space, box, config.samples).items():
            cx, cy = px(p)
            text = "(" + ",".join(map(str, key)) + ")"
            out.append(f'<text class="covector" x="{cx:g}" y="{cy:g}" font-size="10" '
                       f'fill="#335" text-anchor="middle">{text}</text>')
    out.append('</svg>')
    return "\n".join(out) + "\n"

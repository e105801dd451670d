"""Per-frame spacing metrics: pairwise distance, clipped Voronoi cells, centroid.

Voronoi cells are built by half-plane intersection: each cell starts as the
clip rectangle and is cut by the perpendicular bisector against every other
site. O(k^2) per frame is ample for a handful of players at a few hertz and
keeps the clipping exact, so the cells tile the clip region to float
precision.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from typing import Sequence

from .court import CourtSpec, Point
from .errors import DegenerateSitesError, InsufficientPlayersError

logger = logging.getLogger(__name__)

Polygon = list[Point]

COINCIDENT_TOL_M = 0.01  # sensor quantization at 1 m makes exact ties common
PERTURB_M = 0.001
_GOLDEN_ANGLE = math.pi * (3.0 - math.sqrt(5.0))


@dataclass(frozen=True)
class ClipRegion:
    """Axis-aligned clip rectangle for Voronoi cells."""

    x_min: float
    y_min: float
    x_max: float
    y_max: float

    def __post_init__(self) -> None:
        if not (self.x_min < self.x_max and self.y_min < self.y_max):
            raise ValueError("clip region must have positive extent")

    @classmethod
    def full_court(cls, court: CourtSpec) -> "ClipRegion":
        return cls(0.0, 0.0, court.length_m, court.width_m)

    @classmethod
    def bounding_box(cls, points: Sequence[Point], pad_m: float = 1.0) -> "ClipRegion":
        xs = [p[0] for p in points]
        ys = [p[1] for p in points]
        return cls(min(xs) - pad_m, min(ys) - pad_m, max(xs) + pad_m, max(ys) + pad_m)

    @property
    def area(self) -> float:
        return (self.x_max - self.x_min) * (self.y_max - self.y_min)

    def corners(self) -> Polygon:
        """Counter-clockwise rectangle vertices."""
        return [
            (self.x_min, self.y_min),
            (self.x_max, self.y_min),
            (self.x_max, self.y_max),
            (self.x_min, self.y_max),
        ]

    def contains(self, p: Point) -> bool:
        return self.x_min <= p[0] <= self.x_max and self.y_min <= p[1] <= self.y_max


@dataclass(frozen=True)
class SpacingFrame:
    """Spacing quantities for one resampled tick.

    players are the on-court five used for distance/centroid/phase;
    voronoi_cells maps each of them to their clipped cell (the diagram may
    contain additional tracked sites, e.g. a benched player, which is why
    the court-clipped areas do not have to total the court).
    """

    t_ms: int
    players: tuple[tuple[int, float, float], ...]
    mean_pairwise_distance_m: float
    voronoi_cells: tuple[tuple[int, Polygon], ...]
    voronoi_area_sum_m2: float
    centroid: Point
    phase: str | None = None


def mean_pairwise_distance(points: Sequence[Point]) -> float:
    """Mean Euclidean distance over all unordered pairs; needs >= 2 points."""
    k = len(points)
    if k < 2:
        raise InsufficientPlayersError(f"pairwise distance needs >= 2 points, got {k}")
    total = 0.0
    for i in range(k):
        xi, yi = points[i]
        for j in range(i + 1, k):
            total += math.hypot(points[j][0] - xi, points[j][1] - yi)
    return total / (k * (k - 1) / 2)


def centroid(points: Sequence[Point]) -> Point:
    """Arithmetic mean of coordinates; needs >= 1 point."""
    k = len(points)
    if k < 1:
        raise InsufficientPlayersError("centroid needs at least one point")
    return (sum(p[0] for p in points) / k, sum(p[1] for p in points) / k)


def polygon_area(poly: Polygon) -> float:
    """Shoelace area, positive for counter-clockwise vertex order."""
    n = len(poly)
    if n < 3:
        return 0.0
    acc = 0.0
    for i in range(n):
        x1, y1 = poly[i]
        x2, y2 = poly[(i + 1) % n]
        acc += x1 * y2 - x2 * y1
    return acc / 2.0


def clip_halfplane(poly: Polygon, a: float, b: float, c: float) -> Polygon:
    """Clip a convex polygon to the half-plane a*x + b*y + c >= 0.

    Sutherland-Hodgman step; preserves counter-clockwise orientation.
    """
    if not poly:
        return []
    out: Polygon = []
    n = len(poly)
    d_prev = a * poly[-1][0] + b * poly[-1][1] + c
    prev = poly[-1]
    for cur in poly:
        d_cur = a * cur[0] + b * cur[1] + c
        if d_cur >= 0.0:
            if d_prev < 0.0:
                t = d_prev / (d_prev - d_cur)
                out.append((prev[0] + t * (cur[0] - prev[0]), prev[1] + t * (cur[1] - prev[1])))
            out.append(cur)
        elif d_prev >= 0.0:
            t = d_prev / (d_prev - d_cur)
            out.append((prev[0] + t * (cur[0] - prev[0]), prev[1] + t * (cur[1] - prev[1])))
        prev, d_prev = cur, d_cur
    return out if len(out) >= 3 else []


def _dedup_sites(
    points: Sequence[Point],
    on_coincident: str,
    tol: float,
    perturb: float,
    warn: bool,
) -> list[Point]:
    offenders: list[tuple[int, int]] = []
    k = len(points)
    for i in range(k):
        for j in range(i + 1, k):
            if math.hypot(points[j][0] - points[i][0], points[j][1] - points[i][1]) < tol:
                offenders.append((i, j))
    if not offenders:
        return list(points)
    if on_coincident == "error":
        raise DegenerateSitesError(offenders)
    involved = sorted({idx for pair in offenders for idx in pair})
    if warn:
        logger.warning(
            "perturbing %d coincident sites (tolerance %.3g m): indices %s",
            len(involved),
            tol,
            involved,
        )
    sites = list(points)
    for idx in involved:
        ang = _GOLDEN_ANGLE * (idx + 1)
        sites[idx] = (
            sites[idx][0] + perturb * math.cos(ang),
            sites[idx][1] + perturb * math.sin(ang),
        )
    for i in range(k):
        for j in range(i + 1, k):
            if sites[i] == sites[j]:
                raise DegenerateSitesError([(i, j)])
    return sites


def voronoi_cells(
    points: Sequence[Point],
    clip: ClipRegion,
    *,
    on_coincident: str = "perturb",
    tol: float = COINCIDENT_TOL_M,
    warn: bool = True,
) -> list[Polygon]:
    """Clipped Voronoi cell per site, aligned with the input order.

    Cell i is the set of clip points at least as close to site i as to any
    other site; together the cells tile the clip region. Sites may lie
    outside the clip (their cell can be empty). Sites within tol of each
    other are deterministically perturbed by 1 mm index-seeded offsets
    (on_coincident="perturb", with a warning; batch callers may set
    warn=False and report once) or rejected (on_coincident="error").
    """
    if len(points) < 1:
        raise InsufficientPlayersError("voronoi_cells needs at least one site")
    if on_coincident not in ("perturb", "error"):
        raise ValueError("on_coincident must be 'perturb' or 'error'")
    sites = _dedup_sites(points, on_coincident, tol, PERTURB_M, warn)
    base = clip.corners()
    cells: list[Polygon] = []
    for i, (xi, yi) in enumerate(sites):
        poly = base
        for j, (xj, yj) in enumerate(sites):
            if j == i:
                continue
            # closer-to-i half-plane: |p-si|^2 <= |p-sj|^2
            a = 2.0 * (xi - xj)
            b = 2.0 * (yi - yj)
            c = (xj * xj + yj * yj) - (xi * xi + yi * yi)
            poly = clip_halfplane(poly, a, b, c)
            if not poly:
                break
        cells.append(poly)
    return cells


def voronoi_area_sum(
    points: Sequence[Point],
    clip: ClipRegion,
    *,
    on_coincident: str = "perturb",
) -> float:
    """Sum of clipped Voronoi cell areas (shoelace on each cell)."""
    return sum(polygon_area(c) for c in voronoi_cells(points, clip, on_coincident=on_coincident))


def is_convex(poly: Polygon, eps: float = 1e-9) -> bool:
    """True for counter-clockwise convex polygons (collinear edges allowed)."""
    n = len(poly)
    if n < 3:
        return False
    for i in range(n):
        ox, oy = poly[i]
        ax, ay = poly[(i + 1) % n]
        bx, by = poly[(i + 2) % n]
        cross = (ax - ox) * (by - oy) - (ay - oy) * (bx - ox)
        if cross < -eps:
            return False
    return True

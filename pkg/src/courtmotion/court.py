"""Court geometry: dimensions, grid discretization, coordinate transforms.

All engine coordinates are meters with the origin at one court corner, the
length axis as x (0..28 by default) and the width axis as y (0..15). The
bench sits in the y < 0 half-plane. Play-by-play logs use a [-100, 100]^2
frame centered at midcourt and are mapped here.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import NamedTuple

from .errors import ConfigurationError, RangeError

Point = tuple[float, float]


@dataclass(frozen=True)
class CourtSpec:
    """Physical court: 28 m x 15 m with baskets near each baseline."""

    length_m: float = 28.0
    width_m: float = 15.0
    baskets: tuple[Point, Point] = ((1.0, 8.0), (27.0, 7.0))
    attack_first_half: int = 1  # +1: attacking toward x=length_m, -1: toward x=0

    def __post_init__(self) -> None:
        if self.length_m <= 0 or self.width_m <= 0:
            raise ConfigurationError("court dimensions must be positive")
        for bx, by in self.baskets:
            if not (0 <= bx <= self.length_m and 0 <= by <= self.width_m):
                raise ConfigurationError(f"basket ({bx},{by}) lies outside the court")
        if self.attack_first_half not in (1, -1):
            raise ConfigurationError("attack_first_half must be +1 or -1")

    @property
    def midcourt_x(self) -> float:
        return self.length_m / 2.0

    def in_bench(self, point: Point) -> bool:
        """Bench region: the y < 0 half-plane beside the sideline."""
        return point[1] < 0

    def to_dict(self) -> dict:
        return {
            "length_m": self.length_m,
            "width_m": self.width_m,
            "baskets": [list(b) for b in self.baskets],
            "attack_first_half": self.attack_first_half,
        }


@dataclass(frozen=True)
class GridSpec:
    """1 m^2 occupancy grid; default 18 rows x 30 cols anchored at (-2, -2)."""

    origin: Point = (-2.0, -2.0)
    cell_size_m: float = 1.0
    n_cols: int = 30
    n_rows: int = 18

    def __post_init__(self) -> None:
        if self.cell_size_m <= 0:
            raise ConfigurationError("cell_size_m must be positive")
        if self.n_cols <= 0 or self.n_rows <= 0:
            raise ConfigurationError("grid must have positive row/col counts")

    @property
    def x_edges(self) -> tuple[float, float]:
        x0 = self.origin[0]
        return (x0, x0 + self.n_cols * self.cell_size_m)

    @property
    def y_edges(self) -> tuple[float, float]:
        y0 = self.origin[1]
        return (y0, y0 + self.n_rows * self.cell_size_m)

    def to_dict(self) -> dict:
        return {
            "origin": list(self.origin),
            "cell_size_m": self.cell_size_m,
            "n_cols": self.n_cols,
            "n_rows": self.n_rows,
        }


class CellIndex(NamedTuple):
    row: int
    col: int


def cell_of(point: Point, grid: GridSpec) -> CellIndex | None:
    """Map a point to its grid cell, or None when outside the grid footprint.

    Cells are half-open [k, k+1) per axis, so a point on an interior edge
    belongs to the higher cell and integer sensor coordinates map
    deterministically. Out-of-grid points are reported, never clamped.
    """
    x, y = point
    col = int((x - grid.origin[0]) // grid.cell_size_m)
    row = int((y - grid.origin[1]) // grid.cell_size_m)
    if 0 <= row < grid.n_rows and 0 <= col < grid.n_cols:
        return CellIndex(row, col)
    return None


def pbp_to_court(coord: Point, court: CourtSpec) -> Point:
    """Map a play-by-play coordinate in [-100, 100]^2 to court meters.

    (0, 0) is midcourt; (-100, -100) maps to the (0, 0) court corner.
    """
    x, y = coord
    if not (-100.0 <= x <= 100.0 and -100.0 <= y <= 100.0):
        raise RangeError(f"play-by-play coordinate ({x},{y}) outside [-100,100]^2")
    return (
        (x / 100.0) * (court.length_m / 2.0) + court.length_m / 2.0,
        (y / 100.0) * (court.width_m / 2.0) + court.width_m / 2.0,
    )


def court_to_pbp(point: Point, court: CourtSpec) -> Point:
    """Inverse of pbp_to_court (exact on [0, length] x [0, width])."""
    x, y = point
    return (
        (x - court.length_m / 2.0) * 200.0 / court.length_m,
        (y - court.width_m / 2.0) * 200.0 / court.width_m,
    )


def in_court(point: Point, court: CourtSpec) -> bool:
    """True iff the point lies inside the court rectangle (edges included)."""
    x, y = point
    return 0.0 <= x <= court.length_m and 0.0 <= y <= court.width_m


COURT_PRESETS: dict[str, CourtSpec] = {
    "default": CourtSpec(),
}

# "court15x28" mirrors the 15 x 28 grid shape quoted in prose; the default
# 18 x 30 grid matches the published aggregation matrix and the observed
# coordinate range (values down to -2).
GRID_PRESETS: dict[str, GridSpec] = {
    "default": GridSpec(),
    "court15x28": GridSpec(origin=(0.0, 0.0), cell_size_m=1.0, n_cols=28, n_rows=15),
}

"""Per-player occupancy counts and kernel density fields with contour levels.

Occupancy counts live on the 1 m^2 court grid (row = width, col = length);
the KDE is a product-Gaussian estimate evaluated on an n x n grid spanning
the data range. Both export to JSON/CSV with grid metadata and the
white -> yellow -> red ramp the figures use.
"""

from __future__ import annotations

import io
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .court import GridSpec, cell_of
from .errors import (
    DegenerateBandwidthError,
    DegenerateFieldError,
    EmptyDatasetError,
    EmptyGridError,
)
from .ingest import TrackingSample

COLOR_RAMP = ("#ffffff", "#ffff00", "#ff0000")  # low -> mid -> high intensity

_SQRT_2PI = float(np.sqrt(2.0 * np.pi))


@dataclass(frozen=True)
class OccupancyGrid:
    """Cell visit counts for one player; total counts in-grid samples only."""

    grid: GridSpec
    counts: np.ndarray  # (n_rows, n_cols) int64
    player: int
    total: int
    out_of_grid: int


@dataclass(frozen=True)
class DensityField:
    """KDE surface on an n x n grid; values[iy, ix] pairs y[iy] with x[ix].

    Bandwidths follow the classic kde2d parametrization: the Gaussian kernel
    standard deviation per axis is bandwidth / 4.
    """

    x: np.ndarray
    y: np.ndarray
    values: np.ndarray
    bandwidths: tuple[float, float]


def _sample_points(samples: Sequence[TrackingSample]) -> np.ndarray:
    return np.array([[s.filt_pos[0], s.filt_pos[1]] for s in samples], dtype=float)


def occupancy_grid(
    samples: Sequence[TrackingSample],
    grid: GridSpec,
    *,
    exclude_bench: bool = False,
) -> OccupancyGrid:
    """Count per-cell visits for a single player's samples.

    Out-of-grid samples are tallied separately, never clamped into edge
    cells. exclude_bench drops width < 0 samples first (the default keeps
    them: bench time shows up as hot cells beside the sideline).
    """
    players = {s.player_index for s in samples}
    if len(players) > 1:
        raise ValueError(f"occupancy_grid expects one player, got {sorted(players)}")
    player = players.pop() if players else 0
    counts = np.zeros((grid.n_rows, grid.n_cols), dtype=np.int64)
    out = 0
    for s in samples:
        if exclude_bench and s.filt_pos[1] < 0:
            out += 1
            continue
        cell = cell_of((s.filt_pos[0], s.filt_pos[1]), grid)
        if cell is None:
            out += 1
        else:
            counts[cell.row, cell.col] += 1
    return OccupancyGrid(
        grid=grid, counts=counts, player=player, total=int(counts.sum()), out_of_grid=out
    )


def relative_frequencies(og: OccupancyGrid) -> np.ndarray:
    """Counts divided by the grand total; sums to 1."""
    if og.total <= 0:
        raise EmptyGridError("occupancy grid has zero total")
    return og.counts.astype(float) / float(og.total)


def nrd_bandwidth(values: np.ndarray) -> float:
    """Normal-reference bandwidth: 4 * 1.06 * min(sd, IQR/1.34) * m^(-1/5).

    Matches the default of the source material's KDE tooling (sample sd,
    type-7 quantiles). Returns 0 for degenerate spreads.
    """
    m = len(values)
    if m < 2:
        return 0.0
    sd = float(np.std(values, ddof=1))
    q1, q3 = np.quantile(values, [0.25, 0.75])
    spread = min(sd, (q3 - q1) / 1.34)
    return 4.0 * 1.06 * spread * m ** (-0.2)


def kde2(
    points: Sequence[TrackingSample] | np.ndarray,
    n: int = 100,
    bandwidths: tuple[float, float] | None = None,
) -> DensityField:
    """Product-Gaussian KDE evaluated on an n x n grid over the data range.

    f(gx, gy) = (1/m) * sum_i K_hx(gx - x_i) * K_hy(gy - y_i) with K_h a
    Gaussian of standard deviation h/4. Default bandwidths come from
    nrd_bandwidth per axis; a zero/degenerate default raises
    DegenerateBandwidthError (pass bandwidths explicitly to override).
    """
    if len(points) and isinstance(points[0], TrackingSample):
        pts = _sample_points(points)  # type: ignore[arg-type]
    else:
        pts = np.asarray(points, dtype=float)
    if pts.size == 0 or pts.ndim != 2 or pts.shape[0] < 2:
        raise EmptyDatasetError("kde2 needs at least 2 samples")
    if pts.shape[1] != 2:
        raise ValueError("points must be an (m, 2) array")
    m = pts.shape[0]
    xs, ys = pts[:, 0], pts[:, 1]
    if bandwidths is None:
        bandwidths = (nrd_bandwidth(xs), nrd_bandwidth(ys))
    hx, hy = bandwidths
    if not (np.isfinite(hx) and np.isfinite(hy)) or hx <= 0 or hy <= 0:
        raise DegenerateBandwidthError(
            f"degenerate bandwidths ({hx}, {hy}); supply explicit positive bandwidths"
        )
    sx, sy = hx / 4.0, hy / 4.0
    gx = np.linspace(xs.min(), xs.max(), n)
    gy = np.linspace(ys.min(), ys.max(), n)
    # values[iy, ix] = (1/m) sum_k phi((gy_iy - y_k)/sy)/sy * phi((gx_ix - x_k)/sx)/sx
    zx = (gx[:, None] - xs[None, :]) / sx
    zy = (gy[:, None] - ys[None, :]) / sy
    kx = np.exp(-0.5 * zx * zx) / (_SQRT_2PI * sx)
    ky = np.exp(-0.5 * zy * zy) / (_SQRT_2PI * sy)
    values = (ky @ kx.T) / m
    return DensityField(x=gx, y=gy, values=values, bandwidths=(float(hx), float(hy)))


def contour_levels(field: DensityField, k: int = 10, floor_eps: float = 1e-5) -> list[float]:
    """Descending levels {M, (k-1)M/k, ..., M/k} plus a floor just above 0.

    M is the field maximum. The floor is floor_eps unless that would break
    strict monotonicity for small M, in which case half of the lowest
    fractional level is used. Raises DegenerateFieldError on constant
    fields.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    vmax = float(field.values.max())
    vmin = float(field.values.min())
    if vmax <= 0 or vmax == vmin:
        raise DegenerateFieldError("constant density field has no contour levels")
    levels = [vmax * j / k for j in range(k, 0, -1)]
    floor = min(floor_eps, levels[-1] / 2.0)
    levels.append(floor)
    return levels


def grid_to_json_obj(og: OccupancyGrid, *, relative: bool = False) -> dict:
    values = relative_frequencies(og) if relative else og.counts
    return {
        "kind": "occupancy",
        "player": og.player,
        "grid": og.grid.to_dict(),
        "total": og.total,
        "out_of_grid": og.out_of_grid,
        "values": [[float(v) if relative else int(v) for v in row] for row in values],
        "color_ramp": list(COLOR_RAMP),
    }


def field_to_json_obj(field: DensityField) -> dict:
    return {
        "kind": "kde",
        "x": [float(v) for v in field.x],
        "y": [float(v) for v in field.y],
        "bandwidths": [float(b) for b in field.bandwidths],
        "values": [[float(v) for v in row] for row in field.values],
        "color_ramp": list(COLOR_RAMP),
    }


def grid_to_csv(og: OccupancyGrid) -> str:
    """CSV matrix (rows south-to-north) with grid metadata comment headers."""
    buf = io.StringIO()
    g = og.grid
    buf.write(f"# occupancy player={og.player} total={og.total} out_of_grid={og.out_of_grid}\n")
    buf.write(
        f"# grid origin=({g.origin[0]},{g.origin[1]}) cell={g.cell_size_m} "
        f"rows={g.n_rows} cols={g.n_cols}\n"
    )
    for row in og.counts:
        buf.write(",".join(str(int(v)) for v in row) + "\n")
    return buf.getvalue()


def field_to_csv(field: DensityField) -> str:
    buf = io.StringIO()
    buf.write(f"# kde bandwidths=({field.bandwidths[0]:.9g},{field.bandwidths[1]:.9g})\n")
    buf.write("# first row: x axis; first column: y axis\n")
    buf.write("," + ",".join(f"{v:.9g}" for v in field.x) + "\n")
    for yv, row in zip(field.y, field.values):
        buf.write(f"{yv:.9g}," + ",".join(f"{v:.9g}" for v in row) + "\n")
    return buf.getvalue()

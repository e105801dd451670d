from __future__ import annotations

import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from courtmotion import (
    GridSpec,
    contour_levels,
    kde2,
    nrd_bandwidth,
    occupancy_grid,
    relative_frequencies,
)
from courtmotion.errors import (
    DegenerateBandwidthError,
    DegenerateFieldError,
    EmptyDatasetError,
    EmptyGridError,
)
from courtmotion.heatmap import DensityField, field_to_csv, grid_to_csv, grid_to_json_obj

from conftest import make_sample

GRID = GridSpec()


def kernel_sum_oracle(pts: np.ndarray, gx: np.ndarray, gy: np.ndarray, hx: float, hy: float):
    """Direct double-loop kernel sum, independent of the production path."""
    sx, sy = hx / 4.0, hy / 4.0
    m = len(pts)
    out = np.zeros((len(gy), len(gx)))
    for iy, yv in enumerate(gy):
        for ix, xv in enumerate(gx):
            acc = 0.0
            for x, y in pts:
                acc += (
                    math.exp(-0.5 * ((xv - x) / sx) ** 2)
                    / (sx * math.sqrt(2 * math.pi))
                    * math.exp(-0.5 * ((yv - y) / sy) ** 2)
                    / (sy * math.sqrt(2 * math.pi))
                )
            out[iy, ix] = acc / m
    return out


class TestOccupancy:
    def test_point_mass(self):
        ss = [make_sample(t_ms=i, x=0.5, y=0.5, rank=i) for i in range(10)]
        og = occupancy_grid(ss, GRID)
        assert og.counts[2, 2] == 10
        assert og.counts.sum() == og.total == 10
        assert og.out_of_grid == 0

    def test_empty_is_zero_grid(self):
        og = occupancy_grid([], GRID)
        assert og.total == 0
        assert og.counts.sum() == 0

    def test_out_of_grid_counted_separately(self):
        ss = [
            make_sample(t_ms=0, x=0.5, y=0.5, rank=0),
            make_sample(t_ms=1, x=99.0, y=0.5, rank=1),
        ]
        og = occupancy_grid(ss, GRID)
        assert og.total == 1
        assert og.out_of_grid == 1

    def test_exclude_bench_flag(self):
        ss = [
            make_sample(t_ms=0, x=5, y=-1, rank=0),
            make_sample(t_ms=1, x=5, y=5, rank=1),
        ]
        default = occupancy_grid(ss, GRID)
        assert default.total == 2  # bench cell counted by default
        excluded = occupancy_grid(ss, GRID, exclude_bench=True)
        assert excluded.total == 1
        assert excluded.out_of_grid == 1

    def test_mixed_players_rejected(self):
        ss = [make_sample(player=1, rank=0), make_sample(player=2, rank=1)]
        with pytest.raises(ValueError):
            occupancy_grid(ss, GRID)

    def test_uniform_scatter_matches_floor_oracle(self):
        rng = np.random.default_rng(5)
        n = 5400
        xs = rng.uniform(-2, 28, n)
        ys = rng.uniform(-2, 16, n)
        ss = [make_sample(t_ms=i, x=x, y=y, rank=i) for i, (x, y) in enumerate(zip(xs, ys))]
        og = occupancy_grid(ss, GRID)
        oracle = np.zeros((18, 30), dtype=int)
        for x, y in zip(xs, ys):
            col = math.floor(x + 2)
            row = math.floor(y + 2)
            if 0 <= row < 18 and 0 <= col < 30:
                oracle[row, col] += 1
        assert np.array_equal(og.counts, oracle)
        assert og.total + og.out_of_grid == n
        expected = n / (18 * 30)
        assert og.counts.max() <= 5 * expected

    @given(
        st.lists(
            st.tuples(
                st.floats(min_value=-5, max_value=31, allow_nan=False),
                st.floats(min_value=-5, max_value=19, allow_nan=False),
            ),
            max_size=60,
        )
    )
    @settings(max_examples=50, deadline=None)
    def test_conservation(self, pts):
        ss = [make_sample(t_ms=i, x=x, y=y, rank=i) for i, (x, y) in enumerate(pts)]
        og = occupancy_grid(ss, GRID)
        assert og.total + og.out_of_grid == len(pts)
        assert og.counts.sum() == og.total


class TestRelativeFrequencies:
    def test_single_cell(self):
        ss = [make_sample(t_ms=i, x=0.5, y=0.5, rank=i) for i in range(10)]
        rel = relative_frequencies(occupancy_grid(ss, GRID))
        assert rel[2, 2] == 1.0
        assert rel.sum() == pytest.approx(1.0)

    def test_two_cells_symmetric(self):
        ss = [make_sample(t_ms=i, x=0.5, y=0.5, rank=i) for i in range(5)] + [
            make_sample(t_ms=5 + i, x=3.5, y=0.5, rank=5 + i) for i in range(5)
        ]
        rel = relative_frequencies(occupancy_grid(ss, GRID))
        assert rel[2, 2] == 0.5
        assert rel[2, 5] == 0.5

    def test_division_oracle(self):
        rng = np.random.default_rng(11)
        ss = [
            make_sample(t_ms=i, x=rng.uniform(0, 28), y=rng.uniform(0, 15), rank=i)
            for i in range(200)
        ]
        og = occupancy_grid(ss, GRID)
        rel = relative_frequencies(og)
        assert np.allclose(rel, og.counts / og.counts.sum())
        assert rel.sum() == pytest.approx(1.0)

    def test_zero_total_is_error(self):
        with pytest.raises(EmptyGridError):
            relative_frequencies(occupancy_grid([], GRID))


class TestKde2:
    def test_symmetric_pair(self):
        pts = np.array([[-1.0, 0.0], [1.0, 0.0], [-1.0, 1.0], [1.0, 1.0]])
        field = kde2(pts, n=41, bandwidths=(2.0, 2.0))
        # reflection symmetry about x = 0
        assert np.allclose(field.values, field.values[:, ::-1], atol=1e-12)

    def test_matches_kernel_sum_oracle(self):
        rng = np.random.default_rng(3)
        for trial in range(3):
            pts = rng.normal(size=(40 + 20 * trial, 2)) * [2.0, 1.0] + [10.0, 7.0]
            field = kde2(pts, n=25)
            oracle = kernel_sum_oracle(pts, field.x, field.y, *field.bandwidths)
            assert np.max(np.abs(field.values - oracle)) <= 1e-9

    def test_trapezoid_integral_near_one(self):
        rng = np.random.default_rng(17)
        pts = rng.normal(size=(400, 2)) * 2.0 + [14.0, 7.5]
        field = kde2(pts, n=100)
        integral = np.trapezoid(np.trapezoid(field.values, field.x, axis=1), field.y)
        assert 0.95 <= integral <= 1.0

    def test_translation_equivariance(self):
        rng = np.random.default_rng(23)
        pts = rng.normal(size=(60, 2))
        shift = np.array([5.5, -3.25])
        f0 = kde2(pts, n=30)
        f1 = kde2(pts + shift, n=30)
        assert np.allclose(f0.values, f1.values, atol=1e-9)
        assert np.allclose(f0.x + shift[0], f1.x, atol=1e-9)
        assert np.allclose(f0.y + shift[1], f1.y, atol=1e-9)

    def test_zero_variance_degenerate(self):
        pts = np.array([[1.0, 0.0], [1.0, 1.0], [1.0, 2.0]])
        with pytest.raises(DegenerateBandwidthError):
            kde2(pts)

    def test_explicit_bandwidths_rescue_degenerate(self):
        pts = np.array([[1.0, 0.0], [1.0, 1.0], [1.0, 2.0]])
        field = kde2(pts, n=10, bandwidths=(1.0, 1.0))
        assert np.all(field.values >= 0)

    def test_too_few_samples(self):
        with pytest.raises(EmptyDatasetError):
            kde2(np.array([[1.0, 2.0]]))

    def test_accepts_tracking_samples(self):
        ss = [make_sample(t_ms=i, x=float(i), y=float(i % 3), rank=i) for i in range(10)]
        field = kde2(ss, n=12)
        assert field.values.shape == (12, 12)

    def test_nrd_matches_reference_formula(self):
        rng = np.random.default_rng(8)
        v = rng.normal(size=100)
        sd = np.std(v, ddof=1)
        iqr = np.quantile(v, 0.75) - np.quantile(v, 0.25)
        expected = 4 * 1.06 * min(sd, iqr / 1.34) * 100 ** (-0.2)
        assert nrd_bandwidth(v) == pytest.approx(expected)


class TestContourLevels:
    def _field(self, vmax: float) -> DensityField:
        values = np.linspace(0.0, vmax, 25).reshape(5, 5)
        return DensityField(x=np.arange(5.0), y=np.arange(5.0), values=values, bandwidths=(1, 1))

    def test_max_ten(self):
        levels = contour_levels(self._field(10.0))
        assert levels[:-1] == pytest.approx([10, 9, 8, 7, 6, 5, 4, 3, 2, 1])
        assert levels[-1] == pytest.approx(1e-5)

    def test_max_one(self):
        levels = contour_levels(self._field(1.0))
        assert levels[:-1] == pytest.approx([1.0, 0.9, 0.8, 0.7, 0.6, 0.5, 0.4, 0.3, 0.2, 0.1])

    def test_length_and_floor(self):
        levels = contour_levels(self._field(3.0), k=4)
        assert len(levels) == 5

    @given(st.floats(min_value=1e-12, max_value=1e12, allow_nan=False))
    def test_strictly_decreasing(self, vmax):
        levels = contour_levels(self._field(vmax))
        assert len(levels) == 11
        assert all(b < a for a, b in zip(levels, levels[1:]))

    def test_constant_field_degenerate(self):
        field = DensityField(
            x=np.arange(3.0), y=np.arange(3.0), values=np.ones((3, 3)), bandwidths=(1, 1)
        )
        with pytest.raises(DegenerateFieldError):
            contour_levels(field)


class TestExports:
    def test_grid_csv_has_metadata(self):
        ss = [make_sample(t_ms=i, x=0.5, y=0.5, rank=i) for i in range(3)]
        text = grid_to_csv(occupancy_grid(ss, GRID))
        assert text.startswith("# occupancy")
        assert "rows=18 cols=30" in text

    def test_grid_json_shape(self):
        ss = [make_sample(t_ms=i, x=0.5, y=0.5, rank=i) for i in range(3)]
        obj = grid_to_json_obj(occupancy_grid(ss, GRID))
        assert len(obj["values"]) == 18
        assert len(obj["values"][0]) == 30
        assert obj["color_ramp"][0] == "#ffffff"

    def test_field_csv_axes(self):
        pts = np.random.default_rng(1).normal(size=(30, 2))
        text = field_to_csv(kde2(pts, n=8))
        lines = text.strip().split("\n")
        assert lines[0].startswith("# kde")
        assert len(lines) == 2 + 1 + 8  # two comments, x-axis row, 8 value rows

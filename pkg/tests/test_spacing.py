from __future__ import annotations

import logging
import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from courtmotion import (
    ClipRegion,
    CourtSpec,
    centroid,
    mean_pairwise_distance,
    polygon_area,
    voronoi_area_sum,
    voronoi_cells,
)
from courtmotion.errors import DegenerateSitesError, InsufficientPlayersError
from courtmotion.spacing import clip_halfplane, is_convex

COURT = CourtSpec()
FULL = ClipRegion.full_court(COURT)


def pairwise_oracle(points):
    total, pairs = 0.0, 0
    for i in range(len(points)):
        for j in range(len(points)):
            if i < j:
                total += math.dist(points[i], points[j])
                pairs += 1
    return total / pairs


def point_in_polygon(p, poly, eps=1e-7):
    """Half-plane membership for convex CCW polygons."""
    n = len(poly)
    for i in range(n):
        ax, ay = poly[i]
        bx, by = poly[(i + 1) % n]
        if (bx - ax) * (p[1] - ay) - (by - ay) * (p[0] - ax) < -eps:
            return False
    return True


finite_pts = st.tuples(
    st.floats(min_value=0.5, max_value=27.5, allow_nan=False),
    st.floats(min_value=0.5, max_value=14.5, allow_nan=False),
)


class TestMeanPairwiseDistance:
    def test_coincident_points(self):
        assert mean_pairwise_distance([(3.0, 3.0)] * 5) == 0.0

    def test_three_four_five_mixture(self):
        pts = [(0.0, 0.0)] * 4 + [(3.0, 4.0)]
        # 4 pairs at distance 5, 6 pairs at 0 -> mean 2.0
        assert mean_pairwise_distance(pts) == pytest.approx(2.0)
        assert mean_pairwise_distance(pts) == pytest.approx(pairwise_oracle(pts))

    def test_insufficient_points(self):
        with pytest.raises(InsufficientPlayersError):
            mean_pairwise_distance([(1.0, 1.0)])

    def test_double_loop_oracle_fuzz(self):
        rng = np.random.default_rng(99)
        for _ in range(200):
            k = int(rng.integers(2, 11))
            pts = [tuple(p) for p in rng.uniform(0, 28, size=(k, 2))]
            assert abs(mean_pairwise_distance(pts) - pairwise_oracle(pts)) <= 1e-12

    @given(st.lists(finite_pts, min_size=2, max_size=8))
    @settings(max_examples=60, deadline=None)
    def test_rigid_motion_invariance_and_scaling(self, pts):
        base = mean_pairwise_distance(pts)
        ang = 0.7
        cos_a, sin_a = math.cos(ang), math.sin(ang)
        moved = [
            (x * cos_a - y * sin_a + 11.0, x * sin_a + y * cos_a - 3.0) for x, y in pts
        ]
        assert mean_pairwise_distance(moved) == pytest.approx(base, abs=1e-9)
        scaled = [(2.5 * x, 2.5 * y) for x, y in pts]
        assert mean_pairwise_distance(scaled) == pytest.approx(2.5 * base, rel=1e-12)


class TestCentroid:
    def test_midpoint(self):
        assert centroid([(0.0, 0.0), (28.0, 15.0)]) == (14.0, 7.5)

    def test_coincident(self):
        assert centroid([(3.0, 3.0)] * 5) == (3.0, 3.0)

    def test_hand_means(self):
        pts = [(0.0, 0.0), (6.0, 0.0), (0.0, 6.0), (6.0, 6.0), (3.0, 3.0)]
        assert centroid(pts) == (3.0, 3.0)

    def test_empty_is_error(self):
        with pytest.raises(InsufficientPlayersError):
            centroid([])

    @given(st.lists(finite_pts, min_size=1, max_size=8))
    def test_permutation_and_translation(self, pts):
        cx, cy = centroid(pts)
        px, py = centroid(list(reversed(pts)))
        assert (cx, cy) == pytest.approx((px, py))
        tx, ty = centroid([(x + 2.0, y - 1.0) for x, y in pts])
        assert (tx, ty) == pytest.approx((cx + 2.0, cy - 1.0))


class TestPolygonHelpers:
    def test_shoelace_unit_square(self):
        assert polygon_area([(0, 0), (1, 0), (1, 1), (0, 1)]) == 1.0

    def test_clip_halfplane_splits_square(self):
        square = [(0.0, 0.0), (2.0, 0.0), (2.0, 2.0), (0.0, 2.0)]
        left = clip_halfplane(square, -1.0, 0.0, 1.0)  # keep x <= 1
        assert polygon_area(left) == pytest.approx(2.0)

    def test_clip_empty_when_fully_outside(self):
        square = [(0.0, 0.0), (1.0, 0.0), (1.0, 1.0), (0.0, 1.0)]
        assert clip_halfplane(square, 1.0, 0.0, -5.0) == []


class TestVoronoi:
    def test_single_site_owns_court(self):
        cells = voronoi_cells([(5.0, 5.0)], FULL)
        assert polygon_area(cells[0]) == pytest.approx(420.0)

    def test_two_sites_split_at_bisector(self):
        cells = voronoi_cells([(7.0, 7.5), (21.0, 7.5)], FULL)
        a0, a1 = polygon_area(cells[0]), polygon_area(cells[1])
        assert a0 == pytest.approx(210.0)
        assert a1 == pytest.approx(210.0)
        assert all(x <= 14.0 + 1e-9 for x, _ in cells[0])
        assert all(x >= 14.0 - 1e-9 for x, _ in cells[1])

    def test_five_random_sites_partition(self):
        rng = np.random.default_rng(12)
        pts = [tuple(p) for p in rng.uniform((0, 0), (28, 15), size=(5, 2))]
        total = voronoi_area_sum(pts, FULL)
        assert total == pytest.approx(420.0, rel=1e-6)

    def test_area_sum_bbox_two_sites(self):
        clip = ClipRegion.bounding_box([(7.0, 7.5), (21.0, 7.5)], pad_m=1.0)
        cells = voronoi_cells([(7.0, 7.5), (21.0, 7.5)], clip)
        assert clip.area == pytest.approx(16.0 * 2.0)
        assert polygon_area(cells[0]) == pytest.approx(clip.area / 2)
        assert polygon_area(cells[1]) == pytest.approx(clip.area / 2)

    def test_site_outside_clip_can_lose_everything(self):
        clip = ClipRegion(0.0, 0.0, 4.0, 4.0)
        cells = voronoi_cells([(2.0, 2.0), (100.0, 100.0)], clip)
        assert polygon_area(cells[0]) == pytest.approx(16.0)
        assert cells[1] == []

    def test_coincident_error_mode_lists_offenders(self):
        with pytest.raises(DegenerateSitesError) as err:
            voronoi_cells([(5.0, 5.0), (5.0, 5.005), (9.0, 9.0)], FULL, on_coincident="error")
        assert err.value.offenders == [(0, 1)]

    def test_coincident_perturb_mode_warns_and_partitions(self, caplog):
        with caplog.at_level(logging.WARNING):
            cells = voronoi_cells([(5.0, 5.0), (5.0, 5.0), (9.0, 9.0)], FULL)
        assert any("perturb" in r.message for r in caplog.records)
        assert sum(polygon_area(c) for c in cells) == pytest.approx(420.0, rel=1e-6)
        assert all(len(c) >= 3 for c in cells)

    def test_cells_convex(self):
        rng = np.random.default_rng(42)
        pts = [tuple(p) for p in rng.uniform((0, 0), (28, 15), size=(7, 2))]
        for cell in voronoi_cells(pts, FULL):
            assert is_convex(cell)

    def test_point_location_against_nearest_site(self):
        rng = np.random.default_rng(1234)
        sites = [tuple(p) for p in rng.uniform((0, 0), (28, 15), size=(5, 2))]
        cells = voronoi_cells(sites, FULL)
        probes = rng.uniform((0, 0), (28, 15), size=(10_000, 2))
        d2 = ((probes[:, None, :] - np.array(sites)[None, :, :]) ** 2).sum(axis=2)
        nearest = d2.argmin(axis=1)
        for p, idx in zip(probes, nearest):
            assert point_in_polygon(p, cells[idx])

    @given(st.lists(finite_pts, min_size=1, max_size=8, unique=True))
    @settings(max_examples=60, deadline=None)
    def test_partition_property(self, pts):
        cells = voronoi_cells(pts, FULL)
        assert sum(polygon_area(c) for c in cells) == pytest.approx(420.0, rel=1e-6)

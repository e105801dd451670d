"""End-to-end analysis: from a raw tracking log to an immutable snapshot.

The snapshot is what the CLI commands and the HTTP service read. Frames are
resampled from session-time-filtered samples with bench positions kept, so
on-court detection can see the bench half-plane and benched players remain
Voronoi sites; the coordinate-filtered sample set is kept alongside for
summary output that mirrors the source's cleaning.
"""

from __future__ import annotations

import bisect
import logging
from dataclasses import dataclass, field
from datetime import datetime
from pathlib import Path

import numpy as np

from .config import AnalysisConfig
from .court import CourtSpec
from .errors import ConfigurationError, EmptyDatasetError
from .frames import MotionFrame
from .heatmap import DensityField, OccupancyGrid, kde2, occupancy_grid
from .ingest import (
    SessionWindows,
    TrackingSample,
    compute_speed,
    filter_session,
    parse_tracking,
    resample,
    summarize,
)
from .pbp import (
    CLOCK_FORMAT,
    BucketTable,
    ClockAlignment,
    MinuteBucket,
    PlayEvent,
    bucket_spacing,
    minute_shooting,
    parse_pbp,
)
from .phases import (
    OnCourtInterval,
    Phase,
    SegmentationResult,
    classify_phase,
    attack_direction_at,
    detect_on_court,
    grouped_spacing,
    quintet_segments,
)
from .spacing import (
    COINCIDENT_TOL_M,
    ClipRegion,
    SpacingFrame,
    centroid,
    mean_pairwise_distance,
    polygon_area,
    voronoi_cells,
)

logger = logging.getLogger(__name__)


def _has_coincident(sites: list[tuple[float, float]], tol: float = COINCIDENT_TOL_M) -> bool:
    for i in range(len(sites)):
        for j in range(i + 1, len(sites)):
            dx = sites[i][0] - sites[j][0]
            dy = sites[i][1] - sites[j][1]
            if dx * dx + dy * dy < tol * tol:
                return True
    return False


def on_court_sets(
    intervals: dict[int, list[OnCourtInterval]],
    ticks: list[int],
) -> list[set[int]]:
    """On-court player set per tick, resolved once for the whole tick list."""
    sets: list[set[int]] = [set() for _ in ticks]
    for pidx, ivs in intervals.items():
        for iv in ivs:
            if not iv.on_court:
                continue
            lo = bisect.bisect_left(ticks, iv.start_ms)
            hi = bisect.bisect_left(ticks, iv.end_ms)
            for k in range(lo, hi):
                sets[k].add(pidx)
    return sets


def compute_spacing_frames(
    frames: list[MotionFrame],
    intervals: dict[int, list[OnCourtInterval]],
    court: CourtSpec,
    *,
    clip: str = "court",
    bbox_pad_m: float = 1.0,
    windows: SessionWindows | None = None,
) -> list[SpacingFrame]:
    """Per-frame spacing metrics over the detected on-court players.

    Distance, centroid, and the phase label use the on-court set; the
    Voronoi diagram additionally includes every other tracked player in the
    frame (a benched player still contests space), and the reported area
    sums the on-court cells only. Frames with fewer than two on-court
    players are skipped.
    """
    if clip not in ("court", "bbox"):
        raise ConfigurationError(f"clip must be 'court' or 'bbox', got {clip!r}")
    ticks = [f.t_ms for f in frames]
    sets = on_court_sets(intervals, ticks)
    clip_court = ClipRegion.full_court(court)
    out: list[SpacingFrame] = []
    perturbed_frames = 0
    for f, on in zip(frames, sets):
        active = [e for e in f.entries if e.player_index in on]
        if len(active) < 2:
            continue
        pts = [(e.x, e.y) for e in active]
        site_entries = list(f.entries)
        sites = [(e.x, e.y) for e in site_entries]
        perturbed_frames += _has_coincident(sites)
        region = clip_court if clip == "court" else ClipRegion.bounding_box(pts, bbox_pad_m)
        cells = voronoi_cells(sites, region, warn=False)
        cell_of_player = {e.player_index: c for e, c in zip(site_entries, cells)}
        area = sum(polygon_area(cell_of_player[e.player_index]) for e in active)
        cen = centroid(pts)
        phase: str | None = None
        if windows is not None:
            try:
                direction = attack_direction_at(f.t_ms, windows, court.attack_first_half)
                phase = classify_phase(cen, direction, court).value
            except ConfigurationError:
                phase = None
        out.append(
            SpacingFrame(
                t_ms=f.t_ms,
                players=tuple((e.player_index, e.x, e.y) for e in active),
                mean_pairwise_distance_m=mean_pairwise_distance(pts),
                voronoi_cells=tuple(
                    (e.player_index, cell_of_player[e.player_index]) for e in active
                ),
                voronoi_area_sum_m2=area,
                centroid=cen,
                phase=phase,
            )
        )
    if perturbed_frames:
        logger.warning(
            "%d of %d spacing frames had coincident sites resolved by deterministic perturbation",
            perturbed_frames,
            len(out),
        )
    return out


@dataclass
class AnalysisSnapshot:
    """Immutable analysis of one match; everything the service exposes."""

    config: AnalysisConfig
    windows: SessionWindows  # effective windows (configured or derived)
    samples: list[TrackingSample]  # session-time filtered, bench rows kept
    samples_clean: list[TrackingSample]  # plus the coordinate filter
    roster: list[tuple[int, str]]  # (player_index, tag)
    frames: list[MotionFrame]
    intervals: dict[int, list[OnCourtInterval]]
    segmentation: SegmentationResult | None
    spacing_frames: list[SpacingFrame]
    events: list[PlayEvent] = field(default_factory=list)
    minute_buckets: list[MinuteBucket] = field(default_factory=list)

    @property
    def session_range(self) -> tuple[int, int]:
        if not self.frames:
            return (0, 0)
        step = int(round(1000.0 / self.config.rate_hz))
        return (self.frames[0].t_ms, self.frames[-1].t_ms + step)

    def player_samples(self, player_index: int, *, clean: bool = False) -> list[TrackingSample]:
        src = self.samples_clean if clean else self.samples
        return [s for s in src if s.player_index == player_index]

    def heatmap_for(self, player_index: int, *, exclude_bench: bool = False) -> OccupancyGrid:
        return occupancy_grid(
            self.player_samples(player_index), self.config.grid, exclude_bench=exclude_bench
        )

    def kde_for(self, player_index: int, n: int = 100) -> DensityField:
        return kde2(self.player_samples(player_index), n=n)

    def phase_table(self) -> list:
        return grouped_spacing(self.spacing_frames, "phase", self.segmentation)

    def quintet_table(self) -> list:
        if self.segmentation is None:
            return []
        return grouped_spacing(self.spacing_frames, "quintet_phase", self.segmentation)

    def clock_alignment(self) -> ClockAlignment | None:
        anchor = self.config.clock_anchor
        if anchor is None:
            if not self.samples:
                return None
            first = min(self.samples, key=lambda s: s.timestamp_ms)
            try:
                wall = datetime.strptime(first.wall_clock, CLOCK_FORMAT)
            except ValueError:
                logger.warning("cannot parse wall clock %r; no pbp alignment", first.wall_clock)
                return None
            return ClockAlignment(wall, first.timestamp_ms, self.config.clock_offset_ms)
        wall = datetime.strptime(anchor[0], CLOCK_FORMAT)
        return ClockAlignment(wall, anchor[1], self.config.clock_offset_ms)

    def bucket_table(self) -> BucketTable | None:
        if not self.minute_buckets:
            return None
        alignment = self.clock_alignment()
        if alignment is None:
            return None
        return bucket_spacing(self.minute_buckets, self.spacing_frames, alignment)


def build_snapshot(
    tracking: str | Path | bytes,
    config: AnalysisConfig,
    pbp: str | Path | bytes | None = None,
) -> AnalysisSnapshot:
    """Run the full pipeline over raw inputs and freeze the result."""
    raw = Path(tracking).read_bytes() if isinstance(tracking, (str, Path)) else tracking
    parsed = parse_tracking(raw, config.roles)
    if not parsed:
        raise EmptyDatasetError("tracking input has no rows")
    parsed.sort(key=lambda s: (s.timestamp_ms, s.player_index, s.time_rank))
    parsed = compute_speed(parsed, cap_mps=config.speed_cap_mps)

    windows = config.windows
    if windows is None:
        # no windows configured: treat the whole log as one half
        ts = [s.timestamp_ms for s in parsed]
        lo, hi = min(ts), max(ts)
        windows = SessionWindows(lo, hi, hi + 1, hi + 2)
        logger.warning("no session windows configured; using full span %d..%d", lo, hi)

    samples = filter_session(parsed, windows, coordinate_filter=False)
    samples_clean = filter_session(parsed, windows, coordinate_filter=True)
    if not samples:
        raise EmptyDatasetError("no samples inside the session windows")

    tags: dict[int, str] = {}
    for s in samples:
        tags.setdefault(s.player_index, s.player_tag)
    roster = sorted(tags.items())

    frames = resample(samples, config.rate_hz, config.max_gap_ms)
    intervals = detect_on_court(frames, config.on_court_window_ms)
    segmentation: SegmentationResult | None = None
    if len(roster) == 6:
        segmentation = quintet_segments(intervals, [p for p, _ in roster])
    else:
        logger.warning("roster has %d players; quintet segmentation skipped", len(roster))

    spacing = compute_spacing_frames(
        frames,
        intervals,
        config.court,
        clip=config.clip,
        bbox_pad_m=config.bbox_pad_m,
        windows=windows,
    )

    events: list[PlayEvent] = []
    buckets: list[MinuteBucket] = []
    if pbp is not None:
        raw_pbp = Path(pbp).read_bytes() if isinstance(pbp, (str, Path)) else pbp
        events = parse_pbp(raw_pbp, config.action_lexicon)
        buckets = minute_shooting(events)

    snapshot = AnalysisSnapshot(
        config=config,
        windows=windows,
        samples=samples,
        samples_clean=samples_clean,
        roster=roster,
        frames=frames,
        intervals=intervals,
        segmentation=segmentation,
        spacing_frames=spacing,
        events=events,
        minute_buckets=buckets,
    )
    return snapshot


def summarize_snapshot(snapshot: AnalysisSnapshot, *, clean: bool = False):
    return summarize(snapshot.samples_clean if clean else snapshot.samples)

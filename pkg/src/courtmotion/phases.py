"""Attack/defense labeling, on-court detection, quintet segmentation, aggregates.

A frame is attacking when the on-court centroid sits strictly inside the
offensive half for the current attack direction; exactly midcourt counts as
defense so transition moments label deterministically. On-court state uses
a 30 s centered median of the width coordinate, which shrugs off brief
bench-side excursions while pinning substitutions to within half a window.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Sequence

import numpy as np

from .court import CourtSpec, Point
from .errors import ConfigurationError, UnsupportedRosterError
from .frames import MotionFrame
from .ingest import SessionWindows
from .spacing import SpacingFrame


class Phase(str, Enum):
    ATTACK = "attack"
    DEFENSE = "defense"


DEFAULT_ON_COURT_WINDOW_MS = 30_000


@dataclass(frozen=True)
class OnCourtInterval:
    start_ms: int
    end_ms: int  # exclusive
    on_court: bool


@dataclass(frozen=True)
class QuintetSegment:
    """Maximal interval with a fixed on-court five (six-player rotation)."""

    start_ms: int
    end_ms: int  # exclusive
    on_court: frozenset[int]
    excluded: int


@dataclass(frozen=True)
class SegmentationResult:
    segments: tuple[QuintetSegment, ...]
    gaps: tuple[tuple[int, int], ...]  # intervals where on-court count != 5


@dataclass(frozen=True)
class GroupedSpacing:
    """Mean spacing quantities for one group of frames."""

    key: tuple
    mean_voronoi_area_m2: float
    mean_avg_distance_m: float
    frame_count: int


def attack_direction_at(
    t_ms: int,
    windows: SessionWindows,
    first_half_direction: int,
) -> int:
    """Attack direction (+1 toward x=length, -1 toward x=0) for a timestamp.

    Flips at halftime. Raises ConfigurationError for timestamps outside the
    two halves (no half to attribute).
    """
    if first_half_direction not in (1, -1):
        raise ConfigurationError("attack direction must be +1 or -1")
    if windows.match_start_ms <= t_ms <= windows.halftime_start_ms:
        return first_half_direction
    if windows.halftime_end_ms <= t_ms <= windows.match_end_ms:
        return -first_half_direction
    raise ConfigurationError(f"timestamp {t_ms} is outside both halves")


def classify_phase(frame_centroid: Point, attack_direction: int, court: CourtSpec) -> Phase:
    """Attack iff the centroid is strictly inside the offensive half.

    The exact midcourt line resolves to defense.
    """
    cx = frame_centroid[0]
    mid = court.midcourt_x
    if attack_direction > 0:
        return Phase.ATTACK if cx > mid else Phase.DEFENSE
    return Phase.ATTACK if cx < mid else Phase.DEFENSE


def detect_on_court(
    frames: Sequence[MotionFrame],
    window_ms: int = DEFAULT_ON_COURT_WINDOW_MS,
) -> dict[int, list[OnCourtInterval]]:
    """Per-player maximal on/off intervals from resampled frames.

    A player is off-court at a tick when the median width over the centered
    window is negative (bench half-plane) or they are absent from more than
    half of the window's real ticks; windows truncate at the session edges.
    Interval ends are exclusive, with the final tick extended by one step.
    """
    if not frames:
        return {}
    ticks = np.array([f.t_ms for f in frames], dtype=np.int64)
    n = len(ticks)
    step = int(np.median(np.diff(ticks))) if n > 1 else window_ms
    half = max(0, int(round(window_ms / 2 / step))) if step > 0 else 0
    wlen = 2 * half + 1

    players = sorted({e.player_index for f in frames for e in f.entries})
    result: dict[int, list[OnCourtInterval]] = {}
    valid = np.concatenate([np.zeros(half), np.ones(n), np.zeros(half)])
    kernel_counts = np.lib.stride_tricks.sliding_window_view(valid, wlen).sum(axis=1)

    for pidx in players:
        width = np.full(n, np.nan)
        for k, f in enumerate(frames):
            e = f.entry_for(pidx)
            if e is not None:
                width[k] = e.y
        padded = np.concatenate([np.full(half, np.nan), width, np.full(half, np.nan)])
        win = np.lib.stride_tricks.sliding_window_view(padded, wlen)
        present = np.sum(~np.isnan(win), axis=1)
        absent = kernel_counts - present
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", RuntimeWarning)  # all-NaN windows
            med = np.nanmedian(win, axis=1)
        off = (absent > kernel_counts / 2.0) | (present == 0) | (np.nan_to_num(med, nan=-1.0) < 0)
        on = ~off

        intervals: list[OnCourtInterval] = []
        run_start = 0
        for k in range(1, n + 1):
            if k == n or on[k] != on[run_start]:
                end = int(ticks[k - 1] + step) if k == n else int(ticks[k])
                intervals.append(
                    OnCourtInterval(start_ms=int(ticks[run_start]), end_ms=end, on_court=bool(on[run_start]))
                )
                run_start = k
        result[pidx] = intervals
    return result


def on_court_at(intervals: dict[int, list[OnCourtInterval]], t_ms: int) -> set[int]:
    """Players on court at a tick, per detected intervals."""
    out = set()
    for pidx, ivs in intervals.items():
        for iv in ivs:
            if iv.start_ms <= t_ms < iv.end_ms:
                if iv.on_court:
                    out.add(pidx)
                break
    return out


def quintet_segments(
    intervals: dict[int, list[OnCourtInterval]],
    roster: Sequence[int],
) -> SegmentationResult:
    """Maximal intervals with exactly five of a six-player roster on court.

    Spans with any other on-court count come back as invalid gaps; segments
    and gaps together tile the detected session span exactly.
    """
    roster = sorted(roster)
    if len(roster) != 6:
        raise UnsupportedRosterError(f"quintet segmentation needs a 6-player roster, got {len(roster)}")
    missing = [p for p in roster if p not in intervals]
    if missing:
        raise UnsupportedRosterError(f"no interval data for roster players {missing}")

    bounds = sorted(
        {iv.start_ms for p in roster for iv in intervals[p]}
        | {iv.end_ms for p in roster for iv in intervals[p]}
    )
    segments: list[QuintetSegment] = []
    gaps: list[tuple[int, int]] = []
    for lo, hi in zip(bounds[:-1], bounds[1:]):
        on = {p for p in roster if p in on_court_at(intervals, lo)}
        if len(on) == 5:
            excluded = next(p for p in roster if p not in on)
            if segments and segments[-1].end_ms == lo and segments[-1].on_court == frozenset(on):
                segments[-1] = QuintetSegment(segments[-1].start_ms, hi, frozenset(on), excluded)
            else:
                segments.append(QuintetSegment(lo, hi, frozenset(on), excluded))
        else:
            if gaps and gaps[-1][1] == lo:
                gaps[-1] = (gaps[-1][0], hi)
            else:
                gaps.append((lo, hi))
    return SegmentationResult(segments=tuple(segments), gaps=tuple(gaps))


def segment_at(segmentation: SegmentationResult, t_ms: int) -> QuintetSegment | None:
    for seg in segmentation.segments:
        if seg.start_ms <= t_ms < seg.end_ms:
            return seg
    return None


def grouped_spacing(
    spacing_frames: Iterable[SpacingFrame],
    group_by: str,
    segmentation: SegmentationResult | None = None,
) -> list[GroupedSpacing]:
    """Mean area/distance per group of labeled frames.

    group_by is one of "phase", "quintet", "quintet_phase". Frames outside
    quintet segments are excluded whenever a segmentation is supplied (and
    always for quintet groupings, which require one). Groups with zero
    frames are omitted.
    """
    if group_by not in ("phase", "quintet", "quintet_phase"):
        raise ValueError(f"unknown group_by {group_by!r}")
    if group_by != "phase" and segmentation is None:
        raise ValueError("quintet groupings need a segmentation")
    acc: dict[tuple, list[float]] = {}
    for sf in spacing_frames:
        if sf.phase is None:
            continue
        seg = segment_at(segmentation, sf.t_ms) if segmentation is not None else None
        if segmentation is not None and seg is None:
            continue
        if group_by == "phase":
            key: tuple = (sf.phase,)
        elif group_by == "quintet":
            key = (seg.excluded,)
        else:
            key = (seg.excluded, sf.phase)
        bucket = acc.setdefault(key, [0.0, 0.0, 0.0])
        bucket[0] += sf.voronoi_area_sum_m2
        bucket[1] += sf.mean_pairwise_distance_m
        bucket[2] += 1
    out = [
        GroupedSpacing(
            key=key,
            mean_voronoi_area_m2=vals[0] / vals[2],
            mean_avg_distance_m=vals[1] / vals[2],
            frame_count=int(vals[2]),
        )
        for key, vals in acc.items()
    ]
    out.sort(key=lambda g: tuple(str(k) for k in g.key))
    return out

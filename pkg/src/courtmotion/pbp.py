"""Play-by-play parsing, per-minute shooting percentages, and spacing joins.

Event logs carry only minute-resolution clocks, so the join to tracking
data is explicit at minute granularity with a configurable offset; nothing
here pretends a finer alignment exists. Shooting percentages bucket onto
{0, 25, 33, 50, 67, 100}, the values 1-4 attempts per minute can produce.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from datetime import datetime, timedelta
from typing import IO, Iterable, Sequence

from .errors import AlignmentError, SchemaError
from .ingest import _decode
from .phases import Phase
from .spacing import SpacingFrame

logger = logging.getLogger(__name__)

PBP_COLUMNS = ("timestamp", "action", "name", "surname", "x_coord", "y_coord")
CLOCK_FORMAT = "%d/%m/%Y %H:%M"

PCT_BUCKETS = (0, 25, 33, 50, 67, 100)

# Raw action string -> normalized class; everything unlisted classifies
# "other" with a warning. Extend via config for richer logs.
DEFAULT_ACTION_LEXICON: dict[str, str] = {
    "two shot made": "make_2pt",
    "two shot missed": "miss_2pt",
    "three shot made": "make_3pt",
    "three shot missed": "miss_3pt",
    "free throw made": "other",
    "free throw missed": "other",
    "rebound": "other",
    "assist": "other",
    "foul": "other",
    "turnover": "other",
    "steal": "other",
    "block": "other",
}

_SHOT_CLASSES = {"make_2pt", "miss_2pt", "make_3pt", "miss_3pt"}


@dataclass(frozen=True)
class PlayEvent:
    wall_clock: datetime  # minute resolution
    action: str  # verbatim string from the log
    first_name: str
    surname: str
    court_coord: tuple[float, float]  # [-100, 100]^2, (0,0) = midcourt
    action_class: str = "other"


@dataclass(frozen=True)
class MinuteBucket:
    minute: datetime
    attempts_2pt: int
    makes_2pt: int
    attempts_3pt: int
    makes_3pt: int
    pct_bucket: int | None  # defined iff attempts > 0

    @property
    def attempts(self) -> int:
        return self.attempts_2pt + self.attempts_3pt

    @property
    def makes(self) -> int:
        return self.makes_2pt + self.makes_3pt


@dataclass(frozen=True)
class ClockAlignment:
    """Maps sensor milliseconds onto the wall clock shared with the pbp log."""

    anchor_wall: datetime
    anchor_ms: int
    offset_ms: int = 0

    def minute_of(self, t_ms: int) -> datetime:
        wall = self.anchor_wall + timedelta(milliseconds=t_ms - self.anchor_ms + self.offset_ms)
        return wall.replace(second=0, microsecond=0)


@dataclass(frozen=True)
class BucketRow:
    pct_bucket: int
    mean_voronoi_area_m2: float
    mean_avg_distance_m: float
    frame_count: int


@dataclass(frozen=True)
class BucketTable:
    rows: tuple[BucketRow, ...]
    minutes_with_attempts: int
    minutes_matched: int  # minutes with attempts that contributed >= 1 frame

    @property
    def coverage(self) -> float:
        if self.minutes_with_attempts == 0:
            return 0.0
        return self.minutes_matched / self.minutes_with_attempts


def _sniff_delimiter(header_line: str) -> str:
    return "\t" if "\t" in header_line else ","


def parse_pbp(
    stream: bytes | str | IO[bytes] | IO[str],
    lexicon: dict[str, str] | None = None,
    clock_format: str = CLOCK_FORMAT,
) -> list[PlayEvent]:
    """Parse a tab- or comma-delimited event log into PlayEvents.

    Rows with out-of-range or unparseable coordinates are rejected with a
    logged diagnostic; unknown actions classify "other" with a warning.
    """
    lexicon = DEFAULT_ACTION_LEXICON if lexicon is None else lexicon
    text = _decode(stream)
    header_line = text.readline()
    if not header_line:
        raise SchemaError("empty input: no header row")
    delim = _sniff_delimiter(header_line)
    header = header_line.rstrip("\r\n").split(delim)
    col = {name: i for i, name in enumerate(header)}
    for name in PBP_COLUMNS:
        if name not in col:
            raise SchemaError(f"missing required column: {name}")

    events: list[PlayEvent] = []
    unknown_actions: set[str] = set()
    for lineno, line in enumerate(text, start=2):
        line = line.rstrip("\r\n")
        if not line:
            continue
        fields = line.split(delim)
        if len(fields) < len(header):
            logger.warning("pbp row %d rejected: %d fields, expected %d", lineno, len(fields), len(header))
            continue
        try:
            wall = datetime.strptime(fields[col["timestamp"]], clock_format)
            x = float(fields[col["x_coord"]])
            y = float(fields[col["y_coord"]])
        except ValueError as exc:
            logger.warning("pbp row %d rejected: %s", lineno, exc)
            continue
        if not (-100.0 <= x <= 100.0 and -100.0 <= y <= 100.0):
            logger.warning("pbp row %d rejected: coordinate (%s, %s) outside [-100,100]", lineno, x, y)
            continue
        action = fields[col["action"]]
        cls = lexicon.get(action.strip().lower())
        if cls is None:
            unknown_actions.add(action)
            cls = "other"
        events.append(
            PlayEvent(
                wall_clock=wall,
                action=action,
                first_name=fields[col["name"]],
                surname=fields[col["surname"]],
                court_coord=(x, y),
                action_class=cls,
            )
        )
    if unknown_actions:
        logger.warning("unknown actions classified 'other': %s", sorted(unknown_actions))
    return events


def _fmt_coord(v: float) -> str:
    return f"{v:g}"


def serialize_pbp(events: Iterable[PlayEvent], delimiter: str = "\t") -> str:
    """Inverse of parse_pbp for canonical-form rows (integers stay bare)."""
    lines = [delimiter.join(PBP_COLUMNS)]
    for e in events:
        lines.append(
            delimiter.join(
                (
                    e.wall_clock.strftime(CLOCK_FORMAT),
                    e.action,
                    e.first_name,
                    e.surname,
                    _fmt_coord(e.court_coord[0]),
                    _fmt_coord(e.court_coord[1]),
                )
            )
        )
    return "\n".join(lines) + "\n"


def nearest_bucket(pct: float) -> int:
    """Nearest of {0, 25, 33, 50, 67, 100}; ties resolve to the lower bucket."""
    best = PCT_BUCKETS[0]
    best_gap = abs(pct - best)
    for b in PCT_BUCKETS[1:]:
        gap = abs(pct - b)
        if gap < best_gap:
            best, best_gap = b, gap
    return best


def minute_shooting(events: Sequence[PlayEvent]) -> list[MinuteBucket]:
    """Per-minute shot attempt/make counts with the combined pct bucket.

    Only shot-classed events count; the bucket is the nearest of the six
    reference percentages to round(100 * makes / attempts) and is undefined
    for minutes without attempts (those minutes are simply not emitted).
    """
    acc: dict[datetime, list[int]] = {}
    for e in events:
        if e.action_class not in _SHOT_CLASSES:
            continue
        minute = e.wall_clock.replace(second=0, microsecond=0)
        c = acc.setdefault(minute, [0, 0, 0, 0])  # a2, m2, a3, m3
        if e.action_class.endswith("2pt"):
            c[0] += 1
            c[1] += e.action_class.startswith("make")
        else:
            c[2] += 1
            c[3] += e.action_class.startswith("make")
    out = []
    for minute in sorted(acc):
        a2, m2, a3, m3 = acc[minute]
        attempts, makes = a2 + a3, m2 + m3
        bucket = nearest_bucket(100.0 * makes / attempts) if attempts else None
        out.append(
            MinuteBucket(
                minute=minute,
                attempts_2pt=a2,
                makes_2pt=m2,
                attempts_3pt=a3,
                makes_3pt=m3,
                pct_bucket=bucket,
            )
        )
    return out


def bucket_spacing(
    buckets: Sequence[MinuteBucket],
    spacing_frames: Sequence[SpacingFrame],
    alignment: ClockAlignment,
) -> BucketTable:
    """Mean attack spacing per shooting-percentage bucket (Table-4 layout).

    Attack-labeled frames land in the minute the alignment maps them to;
    minutes without attempts contribute nothing. Raises AlignmentError when
    no frame minute overlaps any attempt minute (disjoint clocks).
    """
    by_minute = {b.minute: b for b in buckets if b.attempts > 0}
    acc: dict[int, list[float]] = {}
    matched_minutes: set[datetime] = set()
    for sf in spacing_frames:
        if sf.phase != Phase.ATTACK.value:
            continue
        minute = alignment.minute_of(sf.t_ms)
        b = by_minute.get(minute)
        if b is None or b.pct_bucket is None:
            continue
        matched_minutes.add(minute)
        cell = acc.setdefault(b.pct_bucket, [0.0, 0.0, 0.0])
        cell[0] += sf.voronoi_area_sum_m2
        cell[1] += sf.mean_pairwise_distance_m
        cell[2] += 1
    if by_minute and spacing_frames and not matched_minutes:
        raise AlignmentError(
            "no overlap between tracking minutes and play-by-play minutes; check the clock offset"
        )
    rows = tuple(
        BucketRow(
            pct_bucket=b,
            mean_voronoi_area_m2=vals[0] / vals[2],
            mean_avg_distance_m=vals[1] / vals[2],
            frame_count=int(vals[2]),
        )
        for b, vals in sorted(acc.items())
    )
    return BucketTable(
        rows=rows,
        minutes_with_attempts=len(by_minute),
        minutes_matched=len(matched_minutes),
    )

"""Parse, validate, filter, resample, and summarize raw tracking logs.

The input is a tab-delimited table with one row per sensor detection: 17
columns covering raw and Kalman-filtered positions on three axes, filtered
velocities, a per-player tag, a global time rank, and a raw speed. Which
physical axis (court length / width / height) each coordinate column plays
is configurable because the source material is ambiguous about it; the
ColumnRoleMap resolves the roles at parse time so everything downstream
works in (length, width, height) order.
"""

from __future__ import annotations

import io
import json
import logging
import math
from dataclasses import dataclass, replace
from typing import IO, Iterable, Sequence

import numpy as np

from .errors import (
    ConfigurationError,
    DuplicateKeyError,
    EmptyDatasetError,
    OrderingError,
    SchemaError,
)
from .frames import FrameEntry, MotionFrame

logger = logging.getLogger(__name__)

# Appendix-A column names, in file order.
TRACKING_COLUMNS = (
    "id",
    "insert_date",
    "tagid",
    "position_ts",
    "smt_x",
    "smt_y",
    "smt_z",
    "klm_x",
    "klm_y",
    "klm_z",
    "klv_x",
    "klv_y",
    "klv_z",
    "tagid_new",
    "time",
    "speed.mtr.sec",
    "timestamp_ms_ok",
)

_MISSING_TOKENS = {"", "NA", "NaN", "nan", "N/A", "null"}

DEFAULT_SPEED_CAP_MPS = 12.0  # above elite sprint speed; 78.57 m/s maxima are sensor noise


@dataclass(frozen=True)
class ColumnRoleMap:
    """Names the filtered-coordinate columns acting as length/width/height.

    Raw (smt_*) and velocity (klv_*) counterparts are derived by suffix, so
    width_axis="klm_y" implies smt_y and klv_y. The default matches the
    summary-table ranges (x=length 0-29, y=width 0-16, z=height 0-3); the
    "appendix" profile reproduces the source scripts, which plot klm_y/klm_z.
    """

    length_axis: str = "klm_x"
    width_axis: str = "klm_y"
    height_axis: str = "klm_z"

    def __post_init__(self) -> None:
        names = (self.length_axis, self.width_axis, self.height_axis)
        if len(set(names)) != 3:
            raise ConfigurationError(f"column roles must be distinct, got {names}")

    def _suffix(self, name: str) -> str:
        if "_" not in name:
            raise ConfigurationError(f"coordinate column {name!r} has no axis suffix")
        return name.split("_", 1)[1]

    def columns_for(self, prefix: str) -> tuple[str, str, str]:
        """Column names for a family ("klm", "smt", "klv") in role order."""
        return tuple(  # type: ignore[return-value]
            f"{prefix}_{self._suffix(n)}"
            for n in (self.length_axis, self.width_axis, self.height_axis)
        )


ROLE_PROFILES: dict[str, ColumnRoleMap] = {
    "default": ColumnRoleMap(),
    "appendix": ColumnRoleMap(length_axis="klm_y", width_axis="klm_z", height_axis="klm_x"),
}


@dataclass(frozen=True)
class TrackingSample:
    """One timestamped detection of one player.

    Positions are stored role-ordered (length, width, height); speed is
    planar meters per second and absent when the sensor reported none or an
    outlier was clamped.
    """

    record_id: int
    wall_clock: str
    player_tag: str
    player_index: int
    timestamp_ms: int
    raw_pos: tuple[float, float, float]
    filt_pos: tuple[float, float, float]
    filt_vel: tuple[float, float, float]
    time_rank: int
    speed_mps: float | None = None

    @property
    def x(self) -> float:
        """Court length coordinate (filtered)."""
        return self.filt_pos[0]

    @property
    def y(self) -> float:
        """Court width coordinate (filtered)."""
        return self.filt_pos[1]


@dataclass(frozen=True)
class SessionWindows:
    """Match period boundaries in sensor milliseconds (half-time excluded)."""

    match_start_ms: int
    halftime_start_ms: int
    halftime_end_ms: int
    match_end_ms: int

    def __post_init__(self) -> None:
        ordered = (
            self.match_start_ms
            < self.halftime_start_ms
            < self.halftime_end_ms
            < self.match_end_ms
        )
        if not ordered:
            raise ConfigurationError(
                "session windows must satisfy start < halftime_start < halftime_end < end"
            )

    def contains(self, t_ms: int) -> bool:
        return (
            self.match_start_ms <= t_ms <= self.halftime_start_ms
            or self.halftime_end_ms <= t_ms <= self.match_end_ms
        )

    def to_dict(self) -> dict:
        return {
            "match_start_ms": self.match_start_ms,
            "halftime_start_ms": self.halftime_start_ms,
            "halftime_end_ms": self.halftime_end_ms,
            "match_end_ms": self.match_end_ms,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "SessionWindows":
        return cls(
            match_start_ms=int(d["match_start_ms"]),
            halftime_start_ms=int(d["halftime_start_ms"]),
            halftime_end_ms=int(d["halftime_end_ms"]),
            match_end_ms=int(d["match_end_ms"]),
        )


@dataclass(frozen=True)
class ColumnStats:
    min: float
    q1: float
    median: float
    mean: float
    q3: float
    max: float

    def as_tuple(self) -> tuple[float, float, float, float, float, float]:
        return (self.min, self.q1, self.median, self.mean, self.q3, self.max)


@dataclass(frozen=True)
class SummaryStats:
    """Descriptive statistics over a sample set.

    Rates are formula-derived: samples_per_second_team = count / duration_s
    and the per-player rate divides by the number of distinct players. (The
    source write-up quotes higher rates than its own row count and duration
    imply; this artifact reports the formula values and leaves the
    discrepancy documented rather than tuned away.)
    """

    columns: dict[str, ColumnStats]
    total_records: int
    per_player_counts: dict[int, int]
    duration_ms: int
    samples_per_second_team: float
    samples_per_second_player: float


def _decode(stream: bytes | str | IO[bytes] | IO[str]) -> io.StringIO:
    if isinstance(stream, bytes):
        return io.StringIO(stream.decode("utf-8"))
    if isinstance(stream, str):
        return io.StringIO(stream)
    data = stream.read()
    if isinstance(data, bytes):
        data = data.decode("utf-8")
    return io.StringIO(data)


def parse_tracking(
    stream: bytes | str | IO[bytes] | IO[str],
    roles: ColumnRoleMap | None = None,
) -> list[TrackingSample]:
    """Parse a tab-delimited tracking log into TrackingSamples.

    Rows with unparseable required numerics are rejected with a logged
    diagnostic, never silently coerced; a missing required column raises
    SchemaError naming it, and a repeated (player_index, time_rank) pair
    raises DuplicateKeyError.
    """
    roles = roles or ColumnRoleMap()
    text = _decode(stream)
    header_line = text.readline()
    if not header_line:
        raise SchemaError("empty input: no header row")
    header = header_line.rstrip("\r\n").split("\t")
    col = {name: i for i, name in enumerate(header)}

    filt_cols = roles.columns_for("klm")
    raw_cols = roles.columns_for("smt")
    vel_cols = roles.columns_for("klv")
    required = [
        "id",
        "insert_date",
        "tagid",
        "position_ts",
        "tagid_new",
        "time",
        "speed.mtr.sec",
        "timestamp_ms_ok",
        *filt_cols,
        *raw_cols,
        *vel_cols,
    ]
    for name in required:
        if name not in col:
            raise SchemaError(f"missing required column: {name}")
    extras = [name for name in header if name not in set(required)]
    if extras:
        logger.warning("ignoring unknown columns: %s", ", ".join(extras))

    idx_id = col["id"]
    idx_wall = col["position_ts"]
    idx_tag = col["tagid"]
    idx_pidx = col["tagid_new"]
    idx_rank = col["time"]
    idx_speed = col["speed.mtr.sec"]
    idx_ts = col["timestamp_ms_ok"]
    idx_filt = tuple(col[c] for c in filt_cols)
    idx_raw = tuple(col[c] for c in raw_cols)
    idx_vel = tuple(col[c] for c in vel_cols)

    samples: list[TrackingSample] = []
    seen_keys: set[tuple[int, int]] = set()
    rejected = 0
    for lineno, line in enumerate(text, start=2):
        line = line.rstrip("\r\n")
        if not line:
            continue
        fields = line.split("\t")
        if len(fields) < len(header):
            logger.warning("row %d rejected: %d fields, expected %d", lineno, len(fields), len(header))
            rejected += 1
            continue
        try:
            speed_raw = fields[idx_speed]
            speed = None if speed_raw in _MISSING_TOKENS else float(speed_raw)
            sample = TrackingSample(
                record_id=int(float(fields[idx_id])),
                wall_clock=fields[idx_wall],
                player_tag=fields[idx_tag],
                player_index=int(float(fields[idx_pidx])),
                timestamp_ms=int(float(fields[idx_ts])),
                raw_pos=tuple(float(fields[i]) for i in idx_raw),
                filt_pos=tuple(float(fields[i]) for i in idx_filt),
                filt_vel=tuple(float(fields[i]) for i in idx_vel),
                time_rank=int(float(fields[idx_rank])),
                speed_mps=speed,
            )
        except ValueError as exc:
            logger.warning("row %d rejected: %s", lineno, exc)
            rejected += 1
            continue
        key = (sample.player_index, sample.time_rank)
        if key in seen_keys:
            raise DuplicateKeyError(
                f"duplicate (player_index, time_rank) = {key} at row {lineno}"
            )
        seen_keys.add(key)
        samples.append(sample)
    if rejected:
        logger.warning("rejected %d unparseable rows", rejected)
    return samples


def parse_tracking_jsonl(stream: bytes | str | IO[bytes] | IO[str]) -> list[TrackingSample]:
    """Fixture-oriented reader: one TrackingSample JSON object per line."""
    text = _decode(stream)
    samples = []
    seen: set[tuple[int, int]] = set()
    for lineno, line in enumerate(text, start=1):
        line = line.strip()
        if not line:
            continue
        obj = json.loads(line)
        sample = TrackingSample(
            record_id=int(obj["record_id"]),
            wall_clock=str(obj.get("wall_clock", "")),
            player_tag=str(obj.get("player_tag", obj["player_index"])),
            player_index=int(obj["player_index"]),
            timestamp_ms=int(obj["timestamp_ms"]),
            raw_pos=tuple(float(v) for v in obj.get("raw_pos", obj["filt_pos"])),
            filt_pos=tuple(float(v) for v in obj["filt_pos"]),
            filt_vel=tuple(float(v) for v in obj.get("filt_vel", (0.0, 0.0, 0.0))),
            time_rank=int(obj.get("time_rank", lineno)),
            speed_mps=None if obj.get("speed_mps") is None else float(obj["speed_mps"]),
        )
        key = (sample.player_index, sample.time_rank)
        if key in seen:
            raise DuplicateKeyError(f"duplicate (player_index, time_rank) = {key}")
        seen.add(key)
        samples.append(sample)
    return samples


def sample_to_jsonl_obj(s: TrackingSample) -> dict:
    return {
        "record_id": s.record_id,
        "wall_clock": s.wall_clock,
        "player_tag": s.player_tag,
        "player_index": s.player_index,
        "timestamp_ms": s.timestamp_ms,
        "raw_pos": list(s.raw_pos),
        "filt_pos": list(s.filt_pos),
        "filt_vel": list(s.filt_vel),
        "time_rank": s.time_rank,
        "speed_mps": s.speed_mps,
    }


def filter_session(
    samples: Iterable[TrackingSample],
    windows: SessionWindows,
    *,
    coordinate_filter: bool = True,
) -> list[TrackingSample]:
    """Keep in-session samples; idempotent and order-normalizing.

    Retains timestamps in [match_start, halftime_start] or
    [halftime_end, match_end]. With coordinate_filter (the default), rows
    with negative filtered width or height are dropped too — the source's
    non-negativity filter. The pipeline disables that flag for the frame
    stream so bench positions stay visible to on-court detection.
    """
    kept = [
        s
        for s in samples
        if windows.contains(s.timestamp_ms)
        and (not coordinate_filter or (s.filt_pos[1] >= 0 and s.filt_pos[2] >= 0))
    ]
    kept.sort(key=lambda s: (s.timestamp_ms, s.player_index, s.time_rank))
    return kept


def compute_speed(
    samples: Sequence[TrackingSample],
    cap_mps: float = DEFAULT_SPEED_CAP_MPS,
) -> list[TrackingSample]:
    """Recompute speed_mps from consecutive planar displacements per player.

    Speeds above cap_mps are clamped to absent (sensor glitches would
    otherwise bias every aggregate); each player's first sample has no
    speed. Raises OrderingError on non-increasing timestamps within a
    player. Input order is preserved.
    """
    last_by_player: dict[int, TrackingSample] = {}
    out: list[TrackingSample] = []
    for s in samples:
        prev = last_by_player.get(s.player_index)
        if prev is None:
            out.append(replace(s, speed_mps=None))
        else:
            dt_ms = s.timestamp_ms - prev.timestamp_ms
            if dt_ms <= 0:
                raise OrderingError(
                    f"player {s.player_index}: timestamp {s.timestamp_ms} after {prev.timestamp_ms}"
                )
            dist = math.hypot(s.filt_pos[0] - prev.filt_pos[0], s.filt_pos[1] - prev.filt_pos[1])
            speed = dist / (dt_ms / 1000.0)
            out.append(replace(s, speed_mps=None if speed > cap_mps else speed))
        last_by_player[s.player_index] = s
    return out


def _interp_channel(
    times: np.ndarray,
    values: np.ndarray,
    ticks: np.ndarray,
    max_gap_ms: float,
) -> tuple[np.ndarray, np.ndarray]:
    """Linear interpolation of one player channel onto ticks, with gap rule.

    Outside the sample range the nearest endpoint value is held. A tick is
    eligible when it coincides with a sample or its bracketing (or nearest,
    at the edges) samples are within max_gap_ms. Returns (values, ok_mask);
    values may be NaN where the underlying channel is missing.
    """
    n = len(times)
    right = np.searchsorted(times, ticks, side="left")
    exact = (right < n) & (times[np.minimum(right, n - 1)] == ticks)

    before = right == 0
    after = right == n
    interior = ~(before | after)

    out = np.empty(len(ticks), dtype=float)
    ok = np.zeros(len(ticks), dtype=bool)

    out[before] = values[0]
    ok[before] = (times[0] - ticks[before]) <= max_gap_ms
    out[after] = values[-1]
    ok[after] = (ticks[after] - times[-1]) <= max_gap_ms

    if interior.any():
        hi = right[interior]
        lo = hi - 1
        t = ticks[interior]
        gap = times[hi] - times[lo]
        w = np.where(gap > 0, (t - times[lo]) / np.where(gap > 0, gap, 1.0), 0.0)
        out[interior] = values[lo] * (1.0 - w) + values[hi] * w
        ok[interior] = gap <= max_gap_ms

    if exact.any():  # a tick sitting on a sample is eligible regardless of gaps
        out[exact] = values[right[exact]]
        ok[exact] = True
    return out, ok


def resample(
    samples: Sequence[TrackingSample],
    rate_hz: float,
    max_gap_ms: float = 1000.0,
    *,
    start_ms: int | None = None,
    end_ms: int | None = None,
) -> list[MotionFrame]:
    """Interpolate all players onto a common clock of ticks at rate_hz.

    Ticks run over the half-open range [start, end) with t_k = start +
    round(k * 1000 / rate_hz); both bounds default to the sample extremes.
    A player is absent from a tick when the samples bracketing it are more
    than max_gap_ms apart (beyond the range ends, when the nearest sample
    is farther than max_gap_ms; within reach the endpoint position is
    held). Frames are emitted for every tick, possibly with no entries.
    """
    if rate_hz <= 0:
        raise ValueError("rate_hz must be positive")
    if not samples:
        return []
    by_player: dict[int, list[TrackingSample]] = {}
    for s in samples:
        by_player.setdefault(s.player_index, []).append(s)

    t_lo = min(s.timestamp_ms for s in samples) if start_ms is None else start_ms
    t_hi = max(s.timestamp_ms for s in samples) if end_ms is None else end_ms
    if t_hi <= t_lo:
        return []
    step = 1000.0 / rate_hz
    n_ticks = int(math.ceil((t_hi - t_lo) / step))
    ticks = t_lo + np.round(np.arange(n_ticks) * step).astype(np.int64)
    ticks = ticks[ticks < t_hi]

    per_tick_entries: list[list[FrameEntry]] = [[] for _ in range(len(ticks))]
    for pidx in sorted(by_player):
        plist = sorted(by_player[pidx], key=lambda s: s.timestamp_ms)
        times = np.array([s.timestamp_ms for s in plist], dtype=np.int64)
        keep = np.ones(len(times), dtype=bool)
        keep[1:] = times[1:] > times[:-1]  # collapse exact duplicate timestamps
        times = times[keep]
        plist = [p for p, k in zip(plist, keep) if k]
        xs = np.array([s.filt_pos[0] for s in plist])
        ys = np.array([s.filt_pos[1] for s in plist])
        sp = np.array(
            [np.nan if s.speed_mps is None else s.speed_mps for s in plist], dtype=float
        )
        tick_f = ticks.astype(float)
        xi, ok = _interp_channel(times.astype(float), xs, tick_f, max_gap_ms)
        yi, _ = _interp_channel(times.astype(float), ys, tick_f, max_gap_ms)
        si, _ = _interp_channel(times.astype(float), sp, tick_f, max_gap_ms)
        for k in np.nonzero(ok)[0]:
            speed = float(si[k])
            per_tick_entries[k].append(
                FrameEntry(
                    player_index=pidx,
                    x=float(xi[k]),
                    y=float(yi[k]),
                    speed_mps=None if math.isnan(speed) else speed,
                )
            )

    return [
        MotionFrame(t_ms=int(t), entries=tuple(entries))
        for t, entries in zip(ticks, per_tick_entries)
    ]


_COLUMN_ACCESSORS = {
    "raw_length": lambda s: s.raw_pos[0],
    "raw_width": lambda s: s.raw_pos[1],
    "raw_height": lambda s: s.raw_pos[2],
    "filt_length": lambda s: s.filt_pos[0],
    "filt_width": lambda s: s.filt_pos[1],
    "filt_height": lambda s: s.filt_pos[2],
    "vel_length": lambda s: s.filt_vel[0],
    "vel_width": lambda s: s.filt_vel[1],
    "vel_height": lambda s: s.filt_vel[2],
    "speed_mps": lambda s: s.speed_mps,
}


def summarize(samples: Sequence[TrackingSample]) -> SummaryStats:
    """Table-style descriptive statistics plus sampling-rate derivation.

    Quartiles use linear interpolation between order statistics; the speed
    column skips absent values. Duration is the timestamp span and the team
    rate is records per second of that span.
    """
    if not samples:
        raise EmptyDatasetError("cannot summarize an empty sample list")
    columns: dict[str, ColumnStats] = {}
    for name, accessor in _COLUMN_ACCESSORS.items():
        vals = np.array([v for s in samples if (v := accessor(s)) is not None], dtype=float)
        if len(vals) == 0:
            continue
        q = np.quantile(vals, [0.0, 0.25, 0.5, 0.75, 1.0])
        columns[name] = ColumnStats(
            min=float(q[0]),
            q1=float(q[1]),
            median=float(q[2]),
            mean=float(vals.mean()),
            q3=float(q[3]),
            max=float(q[4]),
        )
    counts: dict[int, int] = {}
    for s in samples:
        counts[s.player_index] = counts.get(s.player_index, 0) + 1
    ts = [s.timestamp_ms for s in samples]
    duration_ms = max(ts) - min(ts)
    team_rate = len(samples) / (duration_ms / 1000.0) if duration_ms > 0 else float("nan")
    return SummaryStats(
        columns=columns,
        total_records=len(samples),
        per_player_counts=dict(sorted(counts.items())),
        duration_ms=duration_ms,
        samples_per_second_team=team_rate,
        samples_per_second_player=team_rate / len(counts),
    )

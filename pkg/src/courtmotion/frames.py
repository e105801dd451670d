"""Motion frames: per-tick synchronized player snapshots and their wire format.

A frame stream is what the motion-chart viewer consumes: every tick carries
all eligible players at court coordinates, with speed for bubble sizing and
an optional attack/defense phase tag. Exports are deterministic so that a
served payload is byte-identical to a direct export of the same range.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Iterable, Iterator

from .court import CourtSpec

# Canvas hint for a true-proportioned 28:15 court (the chart defaults to a
# square canvas otherwise).
CANVAS_WIDTH_PX = 1200
CANVAS_HEIGHT_PX = 600


@dataclass(frozen=True)
class FrameEntry:
    player_index: int
    x: float
    y: float
    speed_mps: float | None = None
    phase: str | None = None


@dataclass(frozen=True)
class MotionFrame:
    """One resampled tick; entries sorted by player_index."""

    t_ms: int
    entries: tuple[FrameEntry, ...]

    def entry_for(self, player_index: int) -> FrameEntry | None:
        for e in self.entries:
            if e.player_index == player_index:
                return e
        return None


def _round6(v: float) -> float:
    return round(float(v), 6)


def frame_to_obj(frame: MotionFrame) -> dict:
    return {
        "t_ms": frame.t_ms,
        "entries": [
            {
                "player": e.player_index,
                "x": _round6(e.x),
                "y": _round6(e.y),
                "speed": None if e.speed_mps is None else _round6(e.speed_mps),
                "phase": e.phase,
            }
            for e in frame.entries
        ],
    }


def frame_from_obj(obj: dict) -> MotionFrame:
    entries = tuple(
        FrameEntry(
            player_index=int(e["player"]),
            x=float(e["x"]),
            y=float(e["y"]),
            speed_mps=None if e.get("speed") is None else float(e["speed"]),
            phase=e.get("phase"),
        )
        for e in obj["entries"]
    )
    return MotionFrame(t_ms=int(obj["t_ms"]), entries=entries)


def stream_header(court: CourtSpec, rate_hz: float, frame_count: int) -> dict:
    return {
        "court": court.to_dict(),
        "canvas": {"width_px": CANVAS_WIDTH_PX, "height_px": CANVAS_HEIGHT_PX},
        "rate_hz": rate_hz,
        "frame_count": frame_count,
    }


def export_motion_frames(
    frames: Iterable[MotionFrame],
    court: CourtSpec,
    rate_hz: float,
    *,
    from_ms: int | None = None,
    to_ms: int | None = None,
    stride: int = 1,
    fmt: str = "json",
) -> str:
    """Serialize frames in [from_ms, to_ms) at the given stride.

    fmt="json" yields a single document {"header": ..., "frames": [...]};
    fmt="jsonl" yields the header line followed by one frame per line.
    An empty range produces a stream with the header only.
    """
    if stride < 1:
        raise ValueError("stride must be >= 1")
    selected = [
        f
        for f in frames
        if (from_ms is None or f.t_ms >= from_ms) and (to_ms is None or f.t_ms < to_ms)
    ][::stride]
    header = stream_header(court, rate_hz, len(selected))
    if fmt == "jsonl":
        lines = [json.dumps(header, separators=(",", ":"))]
        lines.extend(json.dumps(frame_to_obj(f), separators=(",", ":")) for f in selected)
        return "\n".join(lines) + "\n"
    if fmt == "json":
        doc = {"header": header, "frames": [frame_to_obj(f) for f in selected]}
        return json.dumps(doc, separators=(",", ":"))
    raise ValueError(f"unknown format {fmt!r}")


def parse_motion_frames(doc: str) -> tuple[dict, list[MotionFrame]]:
    """Re-import an exported stream (either format). Returns (header, frames)."""
    lines = [ln for ln in doc.strip().split("\n") if ln]
    first = json.loads(lines[0])
    if "frames" in first:  # single-document form
        return first["header"], [frame_from_obj(o) for o in first["frames"]]
    return first, [frame_from_obj(json.loads(ln)) for ln in lines[1:]]


def iter_frame_entries(frames: Iterable[MotionFrame]) -> Iterator[tuple[int, FrameEntry]]:
    for f in frames:
        for e in f.entries:
            yield f.t_ms, e

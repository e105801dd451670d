"""Deterministic synthetic match generator.

Produces a tracking TSV in the 17-column sensor schema, a play-by-play log,
and a ground-truth sidecar (phase timeline, rotation schedule, per-minute
shot outcomes, session windows) so the full pipeline can be exercised and
scored without the private source dataset.

Five on-court players scatter around a scripted centroid that glides
between an offensive and a defensive anchor every phase period; the benched
player sits in the y < 0 bench strip. Spread follows an
Ornstein-Uhlenbeck offset per player whose stationary deviation switches
with the phase, so attack frames are measurably wider than defense frames
by construction. Coordinates quantize to integer meters like the real
sensor feed.
"""

from __future__ import annotations

import bisect
import json
import math
from dataclasses import dataclass, field
from datetime import datetime, timedelta
from pathlib import Path

import numpy as np

from .court import CourtSpec
from .errors import ConfigurationError
from .ingest import SessionWindows, TRACKING_COLUMNS
from .pbp import CLOCK_FORMAT, PBP_COLUMNS, nearest_bucket

OU_RELAX_MS = 1500.0  # offset relaxation time; spread adapts well within a phase
TRANSITION_MS = 2000  # centroid glide between anchors at each phase flip
BENCH_Y = -1.5

ROSTER_NAMES = (
    ("Aldo", "Bianchi"),
    ("Bruno", "Conti"),
    ("Carlo", "Derossi"),
    ("Dario", "Esposito"),
    ("Enzo", "Ferrari"),
    ("Fabio", "Greco"),
)


@dataclass(frozen=True)
class SynthSpec:
    """Knobs for one synthetic match; everything downstream of the seed is
    deterministic, including file bytes."""

    seed: int = 42
    n_players: int = 6
    duration_ms: int = 2_400_000  # in-play time across both halves
    phase_period_ms: int = 24_000
    sigma_attack_m: float = 4.0
    sigma_defense_m: float = 1.5
    rotation: tuple[tuple[int, int, int], ...] | None = None  # (start_ms, end_ms, benched)
    sample_interval_ms: int = 162
    sample_jitter_ms: int = 40  # uniform +/- around the interval
    halftime_break_ms: int = 120_000
    lead_in_ms: int = 30_000
    lead_out_ms: int = 30_000
    base_timestamp_ms: int = 40_000_000
    start_wall_clock: str = "22/03/2016 19:00"
    attack_first_half: int = 1
    shots_per_minute_max: int = 4

    def __post_init__(self) -> None:
        if not (self.sigma_attack_m > self.sigma_defense_m > 0):
            raise ConfigurationError("need sigma_attack > sigma_defense > 0")
        if self.n_players != 6:
            raise ConfigurationError("generator supports exactly 6 players")
        if self.duration_ms <= 0 or self.phase_period_ms <= 0:
            raise ConfigurationError("duration and phase period must be positive")
        if self.sample_interval_ms <= self.sample_jitter_ms:
            raise ConfigurationError("sample jitter must be below the interval")
        for start, end, benched in self.rotation or ():
            if not (0 <= start < end <= self.duration_ms):
                raise ConfigurationError(f"rotation interval ({start},{end}) outside the match")
            if not (1 <= benched <= self.n_players):
                raise ConfigurationError(f"benched player {benched} not in roster")

    def default_rotation(self) -> tuple[tuple[int, int, int], ...]:
        """Six equal stints, benching players 1..6 in order (six quintets)."""
        n = 6
        edges = [round(i * self.duration_ms / n) for i in range(n + 1)]
        return tuple((edges[i], edges[i + 1], i + 1) for i in range(n))


@dataclass(frozen=True)
class SynthResult:
    tracking_path: Path
    pbp_path: Path
    truth_path: Path
    config_path: Path
    truth: dict = field(repr=False)


def _phase_of(tau: float, period: float) -> str:
    return "attack" if int(tau // period) % 2 == 0 else "defense"


def _anchor_x(phase: str, half: int, court: CourtSpec, first_dir: int) -> float:
    direction = first_dir if half == 0 else -first_dir
    offensive = court.length_m * 0.75 if direction > 0 else court.length_m * 0.25
    defensive = court.length_m - offensive
    return offensive if phase == "attack" else defensive


class _CentroidPath:
    """Scripted team centroid over in-play time tau (break excluded).

    Linear glide between anchors during the first TRANSITION_MS of each
    phase (wobble suppressed there so the midcourt crossing is exact), then
    a slow bounded wobble around the anchor.
    """

    def __init__(self, spec: SynthSpec, court: CourtSpec):
        self.spec = spec
        self.court = court
        self.half_ms = spec.duration_ms // 2

    def _half(self, tau: float) -> int:
        return 0 if tau < self.half_ms else 1

    def at(self, tau: float) -> tuple[float, float]:
        spec, court = self.spec, self.court
        period = spec.phase_period_ms
        k = int(tau // period)
        phase = _phase_of(tau, period)
        half = self._half(tau)
        cur = _anchor_x(phase, half, court, spec.attack_first_half)
        t_in = tau - k * period
        if k == 0 or t_in >= TRANSITION_MS:
            ramp = 1.0 if k == 0 else min(1.0, (t_in - TRANSITION_MS) / TRANSITION_MS)
            wob = 0.8 * math.sin(2.0 * math.pi * tau / 37_000.0) * ramp
            x = cur + wob
        else:
            prev_phase = "defense" if phase == "attack" else "attack"
            prev_half = self._half(max(0.0, k * period - 1.0))
            prev = _anchor_x(prev_phase, prev_half, court, spec.attack_first_half)
            x = prev + (cur - prev) * (t_in / TRANSITION_MS)
        y = court.width_m / 2.0 + 2.0 * math.sin(2.0 * math.pi * tau / 53_000.0)
        return x, y

    def truth_timeline(self) -> list[dict]:
        """Ground-truth phase intervals, flipping at scripted midcourt crossings.

        Anchors are symmetric about midcourt, so each glide crosses exactly
        at TRANSITION_MS/2 past the phase boundary; glides that stay on one
        side (the halftime direction flip) produce no crossing and the
        label change binds to the boundary itself.
        """
        spec = self.spec
        period = spec.phase_period_ms
        n_phases = int(math.ceil(spec.duration_ms / period))
        out: list[dict] = []
        flip = 0.0
        for k in range(1, n_phases + 1):
            boundary = k * period
            if boundary >= spec.duration_ms:
                out.append({"start_ms": flip, "end_ms": float(spec.duration_ms), "phase": _phase_of((k - 1) * period, period)})
                break
            prev_x = self.at(boundary - 1.0)[0]
            next_x = _anchor_x(_phase_of(boundary, period), self._half(boundary), self.court, spec.attack_first_half)
            mid = self.court.midcourt_x
            crosses = (prev_x - mid) * (next_x - mid) < 0
            flip_at = boundary + TRANSITION_MS / 2.0 if crosses else float(boundary)
            out.append({"start_ms": flip, "end_ms": flip_at, "phase": _phase_of((k - 1) * period, period)})
            flip = flip_at
        return out


def _true_phase(tau: float, timeline: list[dict], starts: list[float]) -> str:
    idx = bisect.bisect_right(starts, tau) - 1
    return timeline[max(0, idx)]["phase"]


def generate_synthetic(spec: SynthSpec, out_dir: str | Path) -> SynthResult:
    """Write tracking.tsv, pbp.tsv, truth.json, and config.json to out_dir."""
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    court = CourtSpec(attack_first_half=spec.attack_first_half)
    rng = np.random.default_rng(spec.seed)
    rotation = spec.rotation if spec.rotation is not None else spec.default_rotation()
    path = _CentroidPath(spec, court)
    timeline = path.truth_timeline()
    timeline_starts = [seg["start_ms"] for seg in timeline]

    half_ms = spec.duration_ms // 2
    base = spec.base_timestamp_ms
    windows = SessionWindows(
        match_start_ms=base,
        halftime_start_ms=base + half_ms,
        halftime_end_ms=base + half_ms + spec.halftime_break_ms,
        match_end_ms=base + spec.duration_ms + spec.halftime_break_ms,
    )
    wall_start = datetime.strptime(spec.start_wall_clock, CLOCK_FORMAT)

    def abs_to_tau(t_abs: int) -> float | None:
        """In-play time for an absolute timestamp; None outside the halves."""
        if windows.match_start_ms <= t_abs <= windows.halftime_start_ms:
            return float(t_abs - base)
        if windows.halftime_end_ms <= t_abs <= windows.match_end_ms:
            return float(t_abs - base - spec.halftime_break_ms)
        return None

    def benched_at(tau: float) -> int:
        for start, end, benched in rotation:
            if start <= tau < end:
                return benched
        return rotation[-1][2]

    span_start = base - spec.lead_in_ms
    span_end = windows.match_end_ms + spec.lead_out_ms

    # Per-player asynchronous sample clocks.
    rows: list[tuple] = []
    tags = [f"tag{p:02d}{'abcdef'[p-1]*8}" for p in range(1, 7)]
    sigma_axis = {
        "attack": spec.sigma_attack_m,
        "defense": spec.sigma_defense_m,
    }
    for p in range(1, 7):
        t = span_start + int(rng.integers(0, spec.sample_interval_ms))
        off = rng.normal(0.0, spec.sigma_defense_m, size=2)
        bench_jit = rng.normal(0.0, 0.3, size=2)
        prev_pos: tuple[float, float, float] | None = None
        prev_t: int | None = None
        while t < span_end:
            tau = abs_to_tau(t)
            if tau is None:
                # warm-up / break / cool-down: everyone loiters by the bench
                x = court.length_m / 2.0 + 3.0 * math.sin(2.0 * math.pi * (t - span_start) / 29_000.0 + p)
                y = BENCH_Y + 0.4 * math.sin(2.0 * math.pi * (t - span_start) / 17_000.0 + 2 * p)
                z = 0.0
            elif benched_at(tau) == p:
                bench_jit = bench_jit * 0.95 + rng.normal(0.0, 0.1, size=2)
                x = court.length_m / 2.0 + 1.5 * math.sin(2.0 * math.pi * tau / 41_000.0) + bench_jit[0]
                y = BENCH_Y + 0.2 * math.sin(2.0 * math.pi * tau / 23_000.0) + bench_jit[1]
                z = 0.0
            else:
                cx, cy = path.at(tau)
                sigma = sigma_axis[_true_phase(tau, timeline, timeline_starts)]
                dt = spec.sample_interval_ms if prev_t is None else max(1, t - prev_t)
                rho = math.exp(-dt / OU_RELAX_MS)
                off = off * rho + rng.normal(0.0, sigma * math.sqrt(1.0 - rho * rho), size=2)
                x = min(max(cx + off[0], 0.2), court.length_m - 0.2)
                y = min(max(cy + off[1], 0.2), court.width_m - 0.2)
                z = 0.0 if rng.random() > 0.02 else float(rng.integers(1, 3))
            qx, qy, qz = round(x), round(y), round(z)
            if prev_pos is None or prev_t is None:
                speed = None
                vel = (0, 0, 0)
            else:
                dt_s = (t - prev_t) / 1000.0
                speed = math.hypot(qx - prev_pos[0], qy - prev_pos[1]) / dt_s
                vel = (
                    int(round((qx - prev_pos[0]) / dt_s)),
                    int(round((qy - prev_pos[1]) / dt_s)),
                    int(round((qz - prev_pos[2]) / dt_s)),
                )
            rows.append((t, p, tags[p - 1], qx, qy, qz, vel, speed))
            prev_pos = (qx, qy, qz)
            prev_t = t
            t += int(
                spec.sample_interval_ms
                + rng.integers(-spec.sample_jitter_ms, spec.sample_jitter_ms + 1)
            )

    rows.sort(key=lambda r: (r[0], r[1]))
    tracking_path = out_dir / "tracking.tsv"
    with open(tracking_path, "w", encoding="utf-8") as fh:
        fh.write("\t".join(TRACKING_COLUMNS) + "\n")
        for rank, row in enumerate(rows, start=1):
            t, p, tag, qx, qy, qz, vel, speed = row
            wall = (wall_start + timedelta(milliseconds=t - base)).strftime(CLOCK_FORMAT)
            speed_s = "NA" if speed is None else f"{speed:.2f}"
            fh.write(
                "\t".join(
                    (
                        str(1_000_000 + rank),
                        wall,
                        tag,
                        wall,
                        str(qx),
                        str(qy),
                        str(qz),
                        str(qx),
                        str(qy),
                        str(qz),
                        str(vel[0]),
                        str(vel[1]),
                        str(vel[2]),
                        str(p),
                        str(rank),
                        speed_s,
                        str(t),
                    )
                )
                + "\n"
            )

    # Play-by-play: 0..max shots per in-play minute, uniform outcomes.
    pbp_rows: list[tuple] = []
    minute_truth: list[dict] = []
    n_minutes = spec.duration_ms // 60_000
    for minute_idx in range(n_minutes):
        tau_min = minute_idx * 60_000
        attempts = int(rng.integers(0, spec.shots_per_minute_max + 1))
        a2 = m2 = a3 = m3 = 0
        t_abs_min = base + tau_min + (spec.halftime_break_ms if tau_min >= half_ms else 0)
        wall_min = wall_start + timedelta(milliseconds=t_abs_min - base)
        for _ in range(attempts):
            is3 = bool(rng.random() < 0.35)
            made = bool(rng.random() < 0.45)
            a3 += is3
            m3 += is3 and made
            a2 += not is3
            m2 += (not is3) and made
            kind = ("three" if is3 else "two") + " shot " + ("made" if made else "missed")
            shooter = int(rng.integers(0, 6))
            pbp_rows.append(
                (
                    wall_min.strftime(CLOCK_FORMAT),
                    kind,
                    ROSTER_NAMES[shooter][0],
                    ROSTER_NAMES[shooter][1],
                    int(rng.integers(-100, 101)),
                    int(rng.integers(-100, 101)),
                )
            )
        if attempts:
            minute_truth.append(
                {
                    "minute": wall_min.strftime(CLOCK_FORMAT),
                    "tau_start_ms": tau_min,
                    "attempts_2pt": a2,
                    "makes_2pt": m2,
                    "attempts_3pt": a3,
                    "makes_3pt": m3,
                    "pct_bucket": nearest_bucket(100.0 * (m2 + m3) / attempts),
                }
            )
    pbp_path = out_dir / "pbp.tsv"
    with open(pbp_path, "w", encoding="utf-8") as fh:
        fh.write("\t".join(PBP_COLUMNS) + "\n")
        for row in pbp_rows:
            fh.write("\t".join(str(v) for v in row) + "\n")

    def tau_to_abs(tau: float, *, is_end: bool = False) -> int:
        # an interval END at the half boundary belongs to the first half;
        # a START there belongs to the second (the break sits in between)
        in_first = tau < half_ms or (is_end and tau == half_ms)
        return int(base + tau if in_first else base + tau + spec.halftime_break_ms)

    truth = {
        "seed": spec.seed,
        "session_windows": windows.to_dict(),
        "attack_first_half": spec.attack_first_half,
        "roster": list(range(1, 7)),
        "sigma_attack_m": spec.sigma_attack_m,
        "sigma_defense_m": spec.sigma_defense_m,
        "phase_period_ms": spec.phase_period_ms,
        "anchor": {"wall_clock": spec.start_wall_clock, "timestamp_ms": base},
        "phase_timeline": [
            {
                "start_ms": tau_to_abs(seg["start_ms"]),
                "end_ms": tau_to_abs(seg["end_ms"], is_end=True),
                "phase": seg["phase"],
            }
            for seg in timeline
        ],
        "rotation": [
            {
                "start_ms": tau_to_abs(float(s)),
                "end_ms": tau_to_abs(float(e), is_end=True),
                "benched": b,
            }
            for s, e, b in rotation
        ],
        "minute_shots": minute_truth,
    }
    truth_path = out_dir / "truth.json"
    truth_path.write_text(json.dumps(truth, indent=2) + "\n", encoding="utf-8")

    config = {
        "session_windows": windows.to_dict(),
        "court": {"attack_first_half": spec.attack_first_half},
        "clock_anchor": {"wall_clock": spec.start_wall_clock, "timestamp_ms": base},
    }
    config_path = out_dir / "config.json"
    config_path.write_text(json.dumps(config, indent=2) + "\n", encoding="utf-8")

    return SynthResult(
        tracking_path=tracking_path,
        pbp_path=pbp_path,
        truth_path=truth_path,
        config_path=config_path,
        truth=truth,
    )

from __future__ import annotations

import time

import pytest

from courtmotion import SynthSpec, generate_synthetic, load_config
from courtmotion.ingest import TrackingSample
from courtmotion.pipeline import build_snapshot

SESSION_T0 = time.monotonic()

# (criterion, status) pairs filled by test_acceptance; echoed after the run
ACCEPTANCE_RESULTS: list[tuple[str, str]] = []


def pytest_collection_modifyitems(items):
    # run the acceptance module last so its suite-runtime criterion covers
    # (nearly) the whole session
    items.sort(key=lambda it: it.fspath.basename == "test_acceptance.py")


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_RESULTS:
        terminalreporter.section("acceptance criteria")
        for name, status in ACCEPTANCE_RESULTS:
            terminalreporter.write_line(f"{status:4s} {name}")


def make_sample(
    player: int = 1,
    t_ms: int = 0,
    x: float = 0.0,
    y: float = 0.0,
    z: float = 0.0,
    rank: int | None = None,
    speed: float | None = None,
    wall: str = "22/03/2016 19:00",
) -> TrackingSample:
    return TrackingSample(
        record_id=t_ms * 10 + player,
        wall_clock=wall,
        player_tag=f"tag{player}",
        player_index=player,
        timestamp_ms=t_ms,
        raw_pos=(x, y, z),
        filt_pos=(x, y, z),
        filt_vel=(0.0, 0.0, 0.0),
        time_rank=rank if rank is not None else t_ms * 10 + player,
        speed_mps=speed,
    )


@pytest.fixture(scope="session")
def synth_match_dir(tmp_path_factory):
    """Full-length seeded match (40 min, sigma 4/1.5, 24 s phases)."""
    out = tmp_path_factory.mktemp("synth_match")
    generate_synthetic(SynthSpec(seed=7), out)
    return out


@pytest.fixture(scope="session")
def match_snapshot(synth_match_dir):
    cfg = load_config(synth_match_dir / "config.json")
    return build_snapshot(
        synth_match_dir / "tracking.tsv", cfg, pbp=synth_match_dir / "pbp.tsv"
    )

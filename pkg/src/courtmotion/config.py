"""Single configuration document for the pipeline, CLI, and service.

Everything optional: defaults reproduce the source setup (28 x 15 court,
18 x 30 grid at (-2,-2), default column roles, 5 Hz resampling, court clip).
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

from .court import COURT_PRESETS, GRID_PRESETS, CourtSpec, GridSpec
from .errors import ConfigurationError
from .ingest import ColumnRoleMap, ROLE_PROFILES, SessionWindows
from .pbp import DEFAULT_ACTION_LEXICON


@dataclass
class AnalysisConfig:
    court: CourtSpec = field(default_factory=CourtSpec)
    grid: GridSpec = field(default_factory=GridSpec)
    roles: ColumnRoleMap = field(default_factory=ColumnRoleMap)
    windows: SessionWindows | None = None
    rate_hz: float = 5.0
    max_gap_ms: float = 1000.0
    speed_cap_mps: float = 12.0
    clip: str = "court"  # or "bbox"
    bbox_pad_m: float = 1.0
    on_court_window_ms: int = 30_000
    action_lexicon: dict[str, str] = field(default_factory=lambda: dict(DEFAULT_ACTION_LEXICON))
    clock_anchor: tuple[str, int] | None = None  # (wall clock string, timestamp_ms)
    clock_offset_ms: int = 0

    def __post_init__(self) -> None:
        if self.rate_hz <= 0:
            raise ConfigurationError("rate_hz must be positive")
        if self.clip not in ("court", "bbox"):
            raise ConfigurationError(f"clip must be 'court' or 'bbox', got {self.clip!r}")


def _court_from_obj(obj: dict) -> CourtSpec:
    base = CourtSpec()
    return CourtSpec(
        length_m=float(obj.get("length_m", base.length_m)),
        width_m=float(obj.get("width_m", base.width_m)),
        baskets=tuple(tuple(b) for b in obj["baskets"]) if "baskets" in obj else base.baskets,
        attack_first_half=int(obj.get("attack_first_half", base.attack_first_half)),
    )


def _grid_from_obj(obj: dict) -> GridSpec:
    if isinstance(obj, str):
        if obj not in GRID_PRESETS:
            raise ConfigurationError(f"unknown grid preset {obj!r}")
        return GRID_PRESETS[obj]
    base = GridSpec()
    return GridSpec(
        origin=tuple(obj.get("origin", base.origin)),
        cell_size_m=float(obj.get("cell_size_m", base.cell_size_m)),
        n_cols=int(obj.get("n_cols", base.n_cols)),
        n_rows=int(obj.get("n_rows", base.n_rows)),
    )


def _roles_from_obj(obj) -> ColumnRoleMap:
    if isinstance(obj, str):
        if obj not in ROLE_PROFILES:
            raise ConfigurationError(f"unknown column-role profile {obj!r}")
        return ROLE_PROFILES[obj]
    return ColumnRoleMap(
        length_axis=obj.get("length_axis", "klm_x"),
        width_axis=obj.get("width_axis", "klm_y"),
        height_axis=obj.get("height_axis", "klm_z"),
    )


def load_config(path: str | Path | None = None, overrides: dict | None = None) -> AnalysisConfig:
    """Build an AnalysisConfig from an optional JSON document plus overrides.

    Overrides use the same keys as the document and win over it (the CLI
    funnels its flags through here).
    """
    doc: dict = {}
    if path is not None:
        try:
            doc = json.loads(Path(path).read_text(encoding="utf-8"))
        except FileNotFoundError as exc:
            raise ConfigurationError(f"config file not found: {path}") from exc
        except json.JSONDecodeError as exc:
            raise ConfigurationError(f"config file is not valid JSON: {exc}") from exc
    if overrides:
        doc = {**doc, **{k: v for k, v in overrides.items() if v is not None}}

    cfg = AnalysisConfig()
    if "court_preset" in doc:
        name = doc["court_preset"]
        if name not in COURT_PRESETS:
            raise ConfigurationError(f"unknown court preset {name!r}")
        cfg.court = COURT_PRESETS[name]
    if "court" in doc:
        cfg.court = _court_from_obj(doc["court"])
    if "grid" in doc:
        cfg.grid = _grid_from_obj(doc["grid"])
    if "column_roles" in doc:
        cfg.roles = _roles_from_obj(doc["column_roles"])
    if "session_windows" in doc and doc["session_windows"] is not None:
        w = doc["session_windows"]
        if isinstance(w, (list, tuple)):
            if len(w) != 4:
                raise ConfigurationError("session_windows list needs 4 integers")
            cfg.windows = SessionWindows(int(w[0]), int(w[1]), int(w[2]), int(w[3]))
        else:
            cfg.windows = SessionWindows.from_dict(w)
    for key in ("rate_hz", "max_gap_ms", "speed_cap_mps", "bbox_pad_m"):
        if key in doc:
            setattr(cfg, key, float(doc[key]))
    if "clip" in doc:
        cfg.clip = str(doc["clip"])
    if "on_court_window_ms" in doc:
        cfg.on_court_window_ms = int(doc["on_court_window_ms"])
    if "action_lexicon" in doc:
        cfg.action_lexicon = {str(k).lower(): str(v) for k, v in doc["action_lexicon"].items()}
    if "clock_anchor" in doc and doc["clock_anchor"] is not None:
        a = doc["clock_anchor"]
        cfg.clock_anchor = (str(a["wall_clock"]), int(a["timestamp_ms"]))
    if "clock_offset_ms" in doc:
        cfg.clock_offset_ms = int(doc["clock_offset_ms"])
    cfg.__post_init__()
    return cfg

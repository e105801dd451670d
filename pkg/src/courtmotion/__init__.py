"""Spatio-temporal analysis of team-sport tracking logs.

Ingests millisecond player-position logs, computes occupancy and KDE
heatmaps, Voronoi-based spacing metrics, attack/defense phases, quintet
segments, and play-by-play joins, and serves resampled motion frames to an
interactive viewer.
"""

from .court import CellIndex, CourtSpec, GridSpec, cell_of, court_to_pbp, in_court, pbp_to_court
from .config import AnalysisConfig, load_config
from .frames import FrameEntry, MotionFrame, export_motion_frames, parse_motion_frames
from .heatmap import (
    DensityField,
    OccupancyGrid,
    contour_levels,
    kde2,
    nrd_bandwidth,
    occupancy_grid,
    relative_frequencies,
)
from .ingest import (
    ColumnRoleMap,
    SessionWindows,
    SummaryStats,
    TrackingSample,
    compute_speed,
    filter_session,
    parse_tracking,
    resample,
    summarize,
)
from .pbp import (
    BucketTable,
    ClockAlignment,
    MinuteBucket,
    PlayEvent,
    bucket_spacing,
    minute_shooting,
    parse_pbp,
)
from .phases import (
    GroupedSpacing,
    OnCourtInterval,
    Phase,
    QuintetSegment,
    SegmentationResult,
    classify_phase,
    detect_on_court,
    grouped_spacing,
    quintet_segments,
)
from .pipeline import AnalysisSnapshot, build_snapshot, compute_spacing_frames
from .spacing import (
    ClipRegion,
    SpacingFrame,
    centroid,
    mean_pairwise_distance,
    polygon_area,
    voronoi_area_sum,
    voronoi_cells,
)
from .synth import SynthSpec, generate_synthetic

__version__ = "0.1.0"

__all__ = [
    "AnalysisConfig",
    "AnalysisSnapshot",
    "BucketTable",
    "CellIndex",
    "ClipRegion",
    "ClockAlignment",
    "ColumnRoleMap",
    "CourtSpec",
    "DensityField",
    "FrameEntry",
    "GridSpec",
    "GroupedSpacing",
    "MinuteBucket",
    "MotionFrame",
    "OccupancyGrid",
    "OnCourtInterval",
    "Phase",
    "PlayEvent",
    "QuintetSegment",
    "SegmentationResult",
    "SessionWindows",
    "SpacingFrame",
    "SummaryStats",
    "SynthSpec",
    "TrackingSample",
    "build_snapshot",
    "bucket_spacing",
    "cell_of",
    "centroid",
    "classify_phase",
    "compute_spacing_frames",
    "compute_speed",
    "contour_levels",
    "court_to_pbp",
    "detect_on_court",
    "export_motion_frames",
    "filter_session",
    "generate_synthetic",
    "grouped_spacing",
    "in_court",
    "kde2",
    "load_config",
    "mean_pairwise_distance",
    "minute_shooting",
    "nrd_bandwidth",
    "occupancy_grid",
    "parse_motion_frames",
    "parse_pbp",
    "parse_tracking",
    "pbp_to_court",
    "polygon_area",
    "quintet_segments",
    "relative_frequencies",
    "resample",
    "summarize",
    "voronoi_area_sum",
    "voronoi_cells",
]

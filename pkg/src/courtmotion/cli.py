"""Command-line pipeline driver.

Every subcommand is a thin wrapper over the module operations; any domain
error prints a machine-readable JSON diagnostic to stderr and exits with
the class's code (2 input/schema, 3 configuration, 4 internal).
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

from .config import AnalysisConfig, load_config
from .errors import EXIT_INTERNAL, CourtMotionError
from .frames import export_motion_frames
from .heatmap import (
    contour_levels,
    field_to_csv,
    field_to_json_obj,
    grid_to_csv,
    grid_to_json_obj,
)
from .ingest import sample_to_jsonl_obj
from .pipeline import AnalysisSnapshot, build_snapshot, summarize_snapshot
from .synth import SynthSpec, generate_synthetic

logger = logging.getLogger(__name__)


def _add_common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--config", help="JSON config document")
    parser.add_argument("--court-preset", dest="court_preset", help="named court preset")
    parser.add_argument(
        "--column-roles",
        dest="column_roles",
        help="role profile name ('default', 'appendix') or JSON object",
    )
    parser.add_argument(
        "--session-windows",
        dest="session_windows",
        help="four comma-separated integers: start,halftime_start,halftime_end,end (ms)",
    )
    parser.add_argument("--rate-hz", dest="rate_hz", type=float, help="resampling rate")
    parser.add_argument("--clip", choices=("court", "bbox"), help="Voronoi clip preset")
    parser.add_argument("--seed", type=int, default=42, help="seed for synthetic generation")


def _overrides_from_args(args: argparse.Namespace) -> dict:
    overrides: dict = {}
    if args.court_preset:
        overrides["court_preset"] = args.court_preset
    if args.column_roles:
        raw = args.column_roles
        overrides["column_roles"] = json.loads(raw) if raw.strip().startswith("{") else raw
    if args.session_windows:
        overrides["session_windows"] = [int(v) for v in args.session_windows.split(",")]
    if args.rate_hz is not None:
        overrides["rate_hz"] = args.rate_hz
    if args.clip:
        overrides["clip"] = args.clip
    return overrides


def _config(args: argparse.Namespace) -> AnalysisConfig:
    return load_config(args.config, _overrides_from_args(args))


def _snapshot(args: argparse.Namespace, *, with_pbp: bool = False) -> AnalysisSnapshot:
    cfg = _config(args)
    pbp = getattr(args, "pbp", None) if with_pbp else None
    return build_snapshot(args.tracking, cfg, pbp=pbp)


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text if text.endswith("\n") else text + "\n")


def _fmt(v: float) -> str:
    return f"{v:.6g}"


def cmd_ingest(args) -> int:
    snap = _snapshot(args)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            for s in snap.samples:
                fh.write(json.dumps(sample_to_jsonl_obj(s), separators=(",", ":")) + "\n")
    info = {
        "samples_in_session": len(snap.samples),
        "samples_clean": len(snap.samples_clean),
        "players": {str(i): tag for i, tag in snap.roster},
        "frames": len(snap.frames),
    }
    sys.stdout.write(json.dumps(info, indent=2) + "\n")
    return 0


def cmd_summary(args) -> int:
    snap = _snapshot(args)
    stats = summarize_snapshot(snap, clean=args.clean)
    lines = ["column,min,q1,median,mean,q3,max"]
    for name, cs in stats.columns.items():
        lines.append(name + "," + ",".join(_fmt(v) for v in cs.as_tuple()))
    lines.append("")
    lines.append(f"total_records,{stats.total_records}")
    lines.append(f"duration_ms,{stats.duration_ms}")
    lines.append(f"samples_per_second_team,{_fmt(stats.samples_per_second_team)}")
    lines.append(f"samples_per_second_player,{_fmt(stats.samples_per_second_player)}")
    for player, count in stats.per_player_counts.items():
        lines.append(f"records_player_{player},{count}")
    _emit("\n".join(lines), args.out)
    return 0


def _write_png(values, path: str) -> None:
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt
    from matplotlib.colors import LinearSegmentedColormap

    from .heatmap import COLOR_RAMP

    cmap = LinearSegmentedColormap.from_list("court_heat", list(COLOR_RAMP))
    fig, ax = plt.subplots(figsize=(10, 6))
    ax.imshow(values, origin="lower", cmap=cmap, aspect="equal")
    ax.set_xlabel("LENGTH")
    ax.set_ylabel("WIDTH")
    fig.savefig(path, dpi=120, bbox_inches="tight")
    plt.close(fig)


def cmd_heatmap(args) -> int:
    snap = _snapshot(args)
    og = snap.heatmap_for(args.player, exclude_bench=args.exclude_bench)
    if args.png:
        _write_png(og.counts, args.png)
    text = grid_to_csv(og) if args.format == "csv" else json.dumps(grid_to_json_obj(og), indent=2)
    _emit(text, args.out)
    return 0


def cmd_kde(args) -> int:
    snap = _snapshot(args)
    field = snap.kde_for(args.player, n=args.n)
    if args.png:
        _write_png(field.values, args.png)
    obj = field_to_json_obj(field)
    obj["contour_levels"] = contour_levels(field)
    text = field_to_csv(field) if args.format == "csv" else json.dumps(obj, indent=2)
    _emit(text, args.out)
    return 0


def cmd_spacing(args) -> int:
    snap = _snapshot(args)
    lines = ["t_ms,mean_pairwise_distance_m,voronoi_area_sum_m2,centroid_x,centroid_y,phase"]
    for sf in snap.spacing_frames:
        lines.append(
            f"{sf.t_ms},{_fmt(sf.mean_pairwise_distance_m)},{_fmt(sf.voronoi_area_sum_m2)},"
            f"{_fmt(sf.centroid[0])},{_fmt(sf.centroid[1])},{sf.phase or ''}"
        )
    _emit("\n".join(lines), args.out)
    return 0


def cmd_phases(args) -> int:
    snap = _snapshot(args)
    lines = ["phase,mean_voronoi_area_m2,mean_avg_distance_m,frame_count"]
    for g in snap.phase_table():
        lines.append(
            f"{g.key[0]},{_fmt(g.mean_voronoi_area_m2)},{_fmt(g.mean_avg_distance_m)},{g.frame_count}"
        )
    _emit("\n".join(lines), args.out)
    return 0


def cmd_quintets(args) -> int:
    snap = _snapshot(args)
    lines = ["excluded,phase,mean_voronoi_area_m2,mean_avg_distance_m,frame_count"]
    for g in snap.quintet_table():
        lines.append(
            f"{g.key[0]},{g.key[1]},{_fmt(g.mean_voronoi_area_m2)},"
            f"{_fmt(g.mean_avg_distance_m)},{g.frame_count}"
        )
    _emit("\n".join(lines), args.out)
    return 0


def cmd_buckets(args) -> int:
    snap = _snapshot(args, with_pbp=True)
    table = snap.bucket_table()
    lines = ["pct_bucket,mean_voronoi_area_m2,mean_avg_distance_m,frame_count"]
    if table is not None:
        for r in table.rows:
            lines.append(
                f"{r.pct_bucket},{_fmt(r.mean_voronoi_area_m2)},"
                f"{_fmt(r.mean_avg_distance_m)},{r.frame_count}"
            )
        lines.append("")
        lines.append(f"minutes_with_attempts,{table.minutes_with_attempts}")
        lines.append(f"minutes_matched,{table.minutes_matched}")
    _emit("\n".join(lines), args.out)
    return 0


def cmd_export_frames(args) -> int:
    snap = _snapshot(args)
    doc = export_motion_frames(
        snap.frames,
        snap.config.court,
        snap.config.rate_hz,
        from_ms=args.from_ms,
        to_ms=args.to_ms,
        stride=args.stride,
        fmt=args.format,
    )
    _emit(doc, args.out)
    return 0


def cmd_synth(args) -> int:
    spec = SynthSpec(seed=args.seed) if args.spec is None else _synth_spec_from_file(args.spec, args.seed)
    result = generate_synthetic(spec, args.out_dir)
    sys.stdout.write(
        json.dumps(
            {
                "tracking": str(result.tracking_path),
                "pbp": str(result.pbp_path),
                "truth": str(result.truth_path),
                "config": str(result.config_path),
            },
            indent=2,
        )
        + "\n"
    )
    return 0


def _synth_spec_from_file(path: str, seed: int) -> SynthSpec:
    doc = json.loads(Path(path).read_text(encoding="utf-8"))
    doc.setdefault("seed", seed)
    if "rotation" in doc and doc["rotation"] is not None:
        doc["rotation"] = tuple(tuple(r) for r in doc["rotation"])
    return SynthSpec(**doc)


def cmd_serve(args) -> int:
    from .service import run_service

    snap = _snapshot(args, with_pbp=True)
    run_service(snap, host=args.host, port=args.port)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="courtmotion", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name: str, func, *, tracking: bool = True, pbp: bool = False, out: bool = True):
        p = sub.add_parser(name)
        _add_common(p)
        if tracking:
            p.add_argument("--tracking", required=True, help="tracking TSV path")
        if pbp:
            p.add_argument("--pbp", help="play-by-play path")
        if out:
            p.add_argument("--out", help="output path (stdout when omitted)")
        p.set_defaults(func=func)
        return p

    add("ingest", cmd_ingest)
    p = add("summary", cmd_summary)
    p.add_argument("--clean", action="store_true", help="use coordinate-filtered samples")
    p = add("heatmap", cmd_heatmap)
    p.add_argument("--player", type=int, required=True)
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.add_argument("--png", help="also render a PNG (needs matplotlib)")
    p.add_argument("--exclude-bench", action="store_true", dest="exclude_bench")
    p = add("kde", cmd_kde)
    p.add_argument("--player", type=int, required=True)
    p.add_argument("--n", type=int, default=100)
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.add_argument("--png", help="also render a PNG (needs matplotlib)")
    add("spacing", cmd_spacing)
    add("phases", cmd_phases)
    add("quintets", cmd_quintets)
    add("buckets", cmd_buckets, pbp=True)
    p = add("export-frames", cmd_export_frames)
    p.add_argument("--from-ms", dest="from_ms", type=int)
    p.add_argument("--to-ms", dest="to_ms", type=int)
    p.add_argument("--stride", type=int, default=1)
    p.add_argument("--format", choices=("json", "jsonl"), default="json")
    p = add("synth", cmd_synth, tracking=False, out=False)
    p.add_argument("--out-dir", dest="out_dir", required=True)
    p.add_argument("--spec", help="SynthSpec JSON file")
    p = add("serve", cmd_serve, pbp=True, out=False)
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8787)
    return parser


def main(argv: list[str] | None = None) -> int:
    logging.basicConfig(level=logging.WARNING, format="%(levelname)s %(name)s: %(message)s")
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except CourtMotionError as exc:
        sys.stderr.write(
            json.dumps({"error": type(exc).__name__, "message": str(exc)}) + "\n"
        )
        return exc.exit_code
    except FileNotFoundError as exc:
        sys.stderr.write(json.dumps({"error": "FileNotFoundError", "message": str(exc)}) + "\n")
        return 2
    except Exception as exc:  # invariant violation
        sys.stderr.write(json.dumps({"error": type(exc).__name__, "message": str(exc)}) + "\n")
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())

"""Read-only HTTP/JSON service over an immutable analysis snapshot.

Feeds the motion-chart viewer: frames, heatmaps, spacing, quintets, and
bucket tables. Responses are pure functions of the snapshot and the query,
and the /frames payload is byte-identical to a direct export of the same
range. Error codes: 400 malformed query, 404 unknown player, 416 range
outside the session.
"""

from __future__ import annotations

from functools import lru_cache

from fastapi import FastAPI, Response
from fastapi.exceptions import RequestValidationError
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse

from .errors import CourtMotionError
from .frames import export_motion_frames, stream_header
from .heatmap import field_to_json_obj, grid_to_json_obj
from .ingest import resample
from .pipeline import AnalysisSnapshot


def _bad_request(detail: str) -> JSONResponse:
    return JSONResponse(status_code=400, content={"error": "bad_request", "detail": detail})


def _parse_int(value: str | None, name: str) -> int | None:
    if value is None:
        return None
    try:
        return int(value)
    except ValueError:
        raise ValueError(f"query parameter {name!r} must be an integer") from None


def create_app(snapshot: AnalysisSnapshot) -> FastAPI:
    app = FastAPI(title="courtmotion", docs_url=None, redoc_url=None)
    app.add_middleware(
        CORSMiddleware,
        allow_origins=["*"],  # local viewer; service is read-only
        allow_methods=["GET"],
        allow_headers=["*"],
    )
    cfg = snapshot.config
    session_lo, session_hi = snapshot.session_range

    @app.exception_handler(CourtMotionError)
    def _domain_error(_, exc: CourtMotionError):
        return JSONResponse(status_code=400, content={"error": type(exc).__name__, "detail": str(exc)})

    @app.exception_handler(RequestValidationError)
    def _validation_error(_, exc: RequestValidationError):
        return _bad_request(str(exc.errors()))

    @lru_cache(maxsize=8)
    def frames_at(hz: float):
        if abs(hz - cfg.rate_hz) < 1e-12:
            return snapshot.frames
        return resample(snapshot.samples, hz, cfg.max_gap_ms)

    @app.get("/court")
    def court():
        doc = cfg.court.to_dict()
        doc["grid"] = cfg.grid.to_dict()
        doc["session"] = snapshot.windows.to_dict()
        return doc

    @app.get("/players")
    def players():
        return {
            "players": [{"index": idx, "tag": tag} for idx, tag in snapshot.roster],
        }

    @app.get("/frames")
    def frames(from_ms: str | None = None, to_ms: str | None = None, hz: str | None = None):
        try:
            lo = _parse_int(from_ms, "from_ms")
            hi = _parse_int(to_ms, "to_ms")
            rate = float(hz) if hz is not None else cfg.rate_hz
        except ValueError as exc:
            return _bad_request(str(exc))
        if rate <= 0 or rate > 100:
            return _bad_request(f"hz must be in (0, 100], got {rate}")
        lo = session_lo if lo is None else lo
        hi = session_hi if hi is None else hi
        if lo > hi:
            return _bad_request(f"from_ms {lo} exceeds to_ms {hi}")
        if hi <= session_lo or lo >= session_hi:
            return JSONResponse(
                status_code=416,
                content={
                    "error": "range_outside_session",
                    "detail": f"session covers [{session_lo}, {session_hi})",
                },
            )
        doc = export_motion_frames(
            frames_at(rate), cfg.court, rate, from_ms=lo, to_ms=hi
        )
        return Response(content=doc, media_type="application/json")

    @app.get("/heatmap/{player}")
    def heatmap(player: int, mode: str = "counts", n: int = 100):
        if player not in {idx for idx, _ in snapshot.roster}:
            return JSONResponse(
                status_code=404,
                content={"error": "unknown_player", "detail": f"player {player} not in roster"},
            )
        if mode == "counts":
            return grid_to_json_obj(snapshot.heatmap_for(player))
        if mode == "kde":
            return field_to_json_obj(snapshot.kde_for(player, n=n))
        return _bad_request(f"mode must be 'counts' or 'kde', got {mode!r}")

    @app.get("/spacing")
    def spacing(from_ms: str | None = None, to_ms: str | None = None):
        try:
            lo = _parse_int(from_ms, "from_ms")
            hi = _parse_int(to_ms, "to_ms")
        except ValueError as exc:
            return _bad_request(str(exc))
        lo = session_lo if lo is None else lo
        hi = session_hi if hi is None else hi
        if lo > hi:
            return _bad_request(f"from_ms {lo} exceeds to_ms {hi}")
        if hi <= session_lo or lo >= session_hi:
            return JSONResponse(
                status_code=416,
                content={
                    "error": "range_outside_session",
                    "detail": f"session covers [{session_lo}, {session_hi})",
                },
            )
        rows = [
            {
                "t_ms": sf.t_ms,
                "mean_pairwise_distance_m": round(sf.mean_pairwise_distance_m, 6),
                "voronoi_area_sum_m2": round(sf.voronoi_area_sum_m2, 6),
                "centroid": [round(sf.centroid[0], 6), round(sf.centroid[1], 6)],
                "phase": sf.phase,
            }
            for sf in snapshot.spacing_frames
            if lo <= sf.t_ms < hi
        ]
        return {"clip": cfg.clip, "frames": rows}

    @app.get("/quintets")
    def quintets():
        if snapshot.segmentation is None:
            return {"segments": [], "gaps": [], "aggregates": [], "roster_size": len(snapshot.roster)}
        seg = snapshot.segmentation
        return {
            "segments": [
                {
                    "start_ms": s.start_ms,
                    "end_ms": s.end_ms,
                    "on_court": sorted(s.on_court),
                    "excluded": s.excluded,
                }
                for s in seg.segments
            ],
            "gaps": [{"start_ms": a, "end_ms": b} for a, b in seg.gaps],
            "aggregates": [
                {
                    "excluded": g.key[0],
                    "phase": g.key[1],
                    "mean_voronoi_area_m2": round(g.mean_voronoi_area_m2, 6),
                    "mean_avg_distance_m": round(g.mean_avg_distance_m, 6),
                    "frame_count": g.frame_count,
                }
                for g in snapshot.quintet_table()
            ],
        }

    @app.get("/buckets")
    def buckets():
        table = snapshot.bucket_table()
        if table is None:
            return {"rows": [], "note": "no play-by-play loaded"}
        return {
            "rows": [
                {
                    "pct_bucket": r.pct_bucket,
                    "mean_voronoi_area_m2": round(r.mean_voronoi_area_m2, 6),
                    "mean_avg_distance_m": round(r.mean_avg_distance_m, 6),
                    "frame_count": r.frame_count,
                }
                for r in table.rows
            ],
            "minutes_with_attempts": table.minutes_with_attempts,
            "minutes_matched": table.minutes_matched,
            "coverage": round(table.coverage, 6),
        }

    @app.get("/health")
    def health():
        header = stream_header(cfg.court, cfg.rate_hz, len(snapshot.frames))
        return {"status": "ok", "session": list(snapshot.session_range), "stream": header}

    return app


def run_service(snapshot: AnalysisSnapshot, host: str = "127.0.0.1", port: int = 8787) -> None:
    import uvicorn

    uvicorn.run(create_app(snapshot), host=host, port=port, log_level="warning")

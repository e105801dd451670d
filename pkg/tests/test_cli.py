from __future__ import annotations

import json

import pytest

from courtmotion.cli import main
from courtmotion.ingest import TRACKING_COLUMNS


@pytest.fixture(scope="module")
def small_match(tmp_path_factory):
    out = tmp_path_factory.mktemp("cli_match")
    spec = out / "spec.json"
    spec.write_text(json.dumps({"duration_ms": 480_000, "halftime_break_ms": 60_000}))
    code = main(["synth", "--out-dir", str(out), "--seed", "11", "--spec", str(spec)])
    assert code == 0
    return out


def run_ok(capsys, argv):
    code = main(argv)
    captured = capsys.readouterr()
    assert code == 0, captured.err
    return captured.out


class TestSynthAndIngest:
    def test_synth_writes_files(self, small_match):
        for name in ("tracking.tsv", "pbp.tsv", "truth.json", "config.json"):
            assert (small_match / name).exists()

    def test_ingest_reports_counts(self, small_match, capsys):
        out = run_ok(
            capsys,
            [
                "ingest",
                "--tracking",
                str(small_match / "tracking.tsv"),
                "--config",
                str(small_match / "config.json"),
            ],
        )
        info = json.loads(out)
        assert info["samples_in_session"] > 0
        assert len(info["players"]) == 6

    def test_session_windows_flag(self, small_match, capsys):
        truth = json.loads((small_match / "truth.json").read_text())
        w = truth["session_windows"]
        flag = ",".join(
            str(w[k])
            for k in ("match_start_ms", "halftime_start_ms", "halftime_end_ms", "match_end_ms")
        )
        out = run_ok(
            capsys,
            ["ingest", "--tracking", str(small_match / "tracking.tsv"), "--session-windows", flag],
        )
        assert json.loads(out)["samples_in_session"] > 0


class TestTables:
    def test_summary(self, small_match, capsys):
        out = run_ok(
            capsys,
            [
                "summary",
                "--tracking",
                str(small_match / "tracking.tsv"),
                "--config",
                str(small_match / "config.json"),
            ],
        )
        assert out.startswith("column,min,q1,median,mean,q3,max")
        assert "samples_per_second_team" in out

    def test_heatmap_csv(self, small_match, capsys):
        out = run_ok(
            capsys,
            [
                "heatmap",
                "--tracking",
                str(small_match / "tracking.tsv"),
                "--config",
                str(small_match / "config.json"),
                "--player",
                "1",
                "--format",
                "csv",
            ],
        )
        assert out.startswith("# occupancy player=1")

    def test_phases_table(self, small_match, capsys):
        out = run_ok(
            capsys,
            [
                "phases",
                "--tracking",
                str(small_match / "tracking.tsv"),
                "--config",
                str(small_match / "config.json"),
            ],
        )
        lines = out.strip().split("\n")
        assert lines[0] == "phase,mean_voronoi_area_m2,mean_avg_distance_m,frame_count"
        assert any(ln.startswith("attack,") for ln in lines)
        assert any(ln.startswith("defense,") for ln in lines)

    def test_buckets_table(self, small_match, capsys):
        out = run_ok(
            capsys,
            [
                "buckets",
                "--tracking",
                str(small_match / "tracking.tsv"),
                "--pbp",
                str(small_match / "pbp.tsv"),
                "--config",
                str(small_match / "config.json"),
            ],
        )
        assert out.startswith("pct_bucket,")
        assert "minutes_with_attempts" in out

    def test_export_frames(self, small_match, capsys, tmp_path):
        target = tmp_path / "frames.json"
        run_ok(
            capsys,
            [
                "export-frames",
                "--tracking",
                str(small_match / "tracking.tsv"),
                "--config",
                str(small_match / "config.json"),
                "--out",
                str(target),
            ],
        )
        doc = json.loads(target.read_text())
        assert doc["header"]["court"]["length_m"] == 28.0
        assert len(doc["frames"]) > 0


class TestErrorPaths:
    def test_missing_file_exits_2(self, capsys):
        code = main(["ingest", "--tracking", "/nonexistent/file.tsv"])
        assert code == 2
        err = json.loads(capsys.readouterr().err)
        assert "error" in err

    def test_schema_error_exits_2(self, tmp_path, capsys):
        bad = tmp_path / "bad.tsv"
        bad.write_text("a\tb\tc\n1\t2\t3\n")
        code = main(["ingest", "--tracking", str(bad)])
        assert code == 2
        err = json.loads(capsys.readouterr().err)
        assert err["error"] == "SchemaError"

    def test_bad_config_exits_3(self, small_match, tmp_path, capsys):
        cfg = tmp_path / "cfg.json"
        cfg.write_text('{"clip": "orbit"}')
        code = main(
            ["ingest", "--tracking", str(small_match / "tracking.tsv"), "--config", str(cfg)]
        )
        assert code == 3
        err = json.loads(capsys.readouterr().err)
        assert err["error"] == "ConfigurationError"

    def test_machine_readable_diagnostics(self, capsys):
        header = "\t".join(TRACKING_COLUMNS)
        code = main(["summary", "--tracking", "/missing.tsv"])
        assert code == 2
        err = capsys.readouterr().err
        json.loads(err)  # must parse

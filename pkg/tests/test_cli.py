import json

import pytest

from main import main

TRIANGLE = {"dim": 2, "senders": [[1, 0], [-1, 0], [0, 1]], "distances": [1, 1, 1], "weights": "unit"}
CIRCLE = {"dim": 2, "senders": [[1, 0], [-1, 0], [0, 1], [0, -1]], "distances": [1.65] * 4}


@pytest.fixture
def write_json(tmp_path):
    def write(name, data):
        path = tmp_path / name
        path.write_text(json.dumps(data))
        return str(path)
    return write


def test_solve_unique(write_json, capsys):
    assert main(["solve", "--input", write_json("p.json", TRIANGLE)]) == 0
    result = json.loads(capsys.readouterr().out)
    assert result["kind"] == "unique"
    assert result["points"][0] == pytest.approx([0.0, 0.0], abs=1e-9)
    assert result["rank"] == 2


def test_solve_continuum_exits_2(write_json, capsys):
    assert main(["solve", "--input", write_json("p.json", CIRCLE)]) == 2
    result = json.loads(capsys.readouterr().out)
    assert result["kind"] == "ill_defined"
    assert result["points"] == []
    assert result["cost"] is None
    assert result["sphere"]["radius"] == pytest.approx(0.85)


def test_report_sphere_and_always_return(write_json, capsys):
    code = main(["solve", "--input", write_json("p.json", CIRCLE), "--report-sphere", "--always-return"])
    assert code == 2
    result = json.loads(capsys.readouterr().out)
    assert result["kind"] == "sphere"
    assert len(result["points"]) == 1
    x, y = result["points"][0]
    assert (x**2 + y**2) ** 0.5 == pytest.approx(0.85)


def test_solve_simple_human(write_json, capsys):
    assert main(["solve", "--input", write_json("p.json", TRIANGLE), "--simple", "--format", "human"]) == 0
    out = capsys.readouterr().out
    assert "Classification: unique (rank 2 of 2)" in out


def test_solve_csv_with_refinement(write_json, tmp_path):
    out_path = tmp_path / "out.csv"
    code = main(["solve", "--input", write_json("p.json", TRIANGLE), "--refine-ml",
                 "--format", "csv", "--output", str(out_path)])
    assert code == 0
    lines = out_path.read_text().splitlines()
    assert lines[0] == "kind,lambda,cost,rank,x0,x1"
    assert lines[1].startswith("unique,")
    assert lines[2].startswith("refined,")


def test_known_coordinate(write_json, capsys):
    assert main(["solve", "--input", write_json("p.json", TRIANGLE), "--known-coord", "1=0"]) == 0
    result = json.loads(capsys.readouterr().out)
    assert result["points"][0] == pytest.approx([0.0, 0.0], abs=1e-9)


def test_simple_rejects_known_coordinate(write_json, capsys):
    assert main(["solve", "--input", write_json("p.json", TRIANGLE), "--simple", "--known-coord", "0=0"]) == 1
    assert "MalformedInput" in capsys.readouterr().err


def test_malformed_json(tmp_path, capsys):
    path = tmp_path / "bad.json"
    path.write_text("{\"dim\": 2, ")
    assert main(["solve", "--input", str(path)]) == 1
    assert "MalformedInput" in capsys.readouterr().err


def test_dimension_mismatch(write_json, capsys):
    bad = {"dim": 3, "senders": [[1, 0], [-1, 0]], "distances": [1, 1]}
    assert main(["solve", "--input", write_json("p.json", bad)]) == 1
    assert "DimensionMismatch" in capsys.readouterr().err


def test_missing_file(tmp_path, capsys):
    assert main(["solve", "--input", str(tmp_path / "missing.json")]) == 1
    assert "I/O error" in capsys.readouterr().err


def test_usage_errors_exit_1(capsys):
    assert main(["solve", "--bogus"]) == 1
    assert main(["bench", "degen", "--solvers", "magic"]) == 1
    assert main([]) == 1


def test_locate(tmp_path, capsys):
    anchors = [
        {"id": "a", "pos": [0.0, 0.0], "eta": 2.0, "c0": -40.0},
        {"id": "b", "pos": [10.0, 0.0], "eta": 2.0, "c0": -40.0},
        {"id": "c", "pos": [0.0, 8.0]},
    ]
    (tmp_path / "anchors.json").write_text(json.dumps(anchors))
    # receiver at (3, 4): ranges 5, √65, 5
    rows = ["anchor_id,kind,value", "a,rtt,5.0", f"b,rtt,{65 ** 0.5!r}", "c,rtt,5.0"]
    (tmp_path / "meas.csv").write_text("\n".join(rows) + "\n")

    args = ["locate", "--input", str(tmp_path / "meas.csv"), "--anchors", str(tmp_path / "anchors.json")]
    assert main(args) == 0
    result = json.loads(capsys.readouterr().out)
    assert result["points"][0] == pytest.approx([3.0, 4.0], abs=1e-6)

    assert main(args + ["--unweighted", "--known-coord", "1=4"]) == 0
    result = json.loads(capsys.readouterr().out)
    assert result["points"][0] == pytest.approx([3.0, 4.0], abs=1e-6)


def test_locate_unknown_anchor(tmp_path, capsys):
    (tmp_path / "anchors.json").write_text(json.dumps([{"id": "a", "pos": [0.0, 0.0]}]))
    (tmp_path / "meas.csv").write_text("anchor_id,kind,value\nz,rtt,1.0\n")
    args = ["locate", "--input", str(tmp_path / "meas.csv"), "--anchors", str(tmp_path / "anchors.json")]
    assert main(args) == 1
    assert "UnknownAnchor" in capsys.readouterr().err


def test_bench_degen_writes_reports(tmp_path, capsys):
    out_dir = tmp_path / "results"
    code = main(["bench", "degen", "--scales", "1e0..1e-2", "--trials", "2", "--solvers", "alg2,linear",
                 "--out-dir", str(out_dir), "--threads", "1", "--no-progress", "--format", "csv"])
    assert code == 0
    assert (out_dir / "degen.csv").exists()
    assert (out_dir / "degen.dat").exists()
    summary = json.loads((out_dir / "degen.json").read_text())
    assert summary["scales"] == [1.0, 0.1, 0.01]
    assert len(summary["summary"]) == 6
    assert capsys.readouterr().out.startswith("scale,solver,median_error,success_rate")


def test_bench_noise_rejects_sender_list(tmp_path, capsys):
    code = main(["bench", "noise", "--m", "4,10", "--trials", "1", "--out-dir", str(tmp_path), "--no-progress"])
    assert code == 1


def test_calibrate(tmp_path, capsys):
    path = tmp_path / "cal.csv"
    path.write_text("distance,rss_dbm\n1,-40\n10,-60\n")
    assert main(["calibrate", "--input", str(path), "--format", "json"]) == 0
    result = json.loads(capsys.readouterr().out)
    assert result["c0"] == pytest.approx(-40.0)
    assert result["eta"] == pytest.approx(2.0)


BAD_UTF8 = b"\xff\xfe{\"dim\": 2}\n"


def test_solve_invalid_utf8(tmp_path, capsys):
    path = tmp_path / "p.json"
    path.write_bytes(BAD_UTF8)
    assert main(["solve", "--input", str(path)]) == 1
    assert "MalformedInput" in capsys.readouterr().err


def test_calibrate_invalid_utf8(tmp_path, capsys):
    path = tmp_path / "cal.csv"
    path.write_bytes(b"distance,rss_dbm\n\xff\xfe,-40\n10,-60\n")
    assert main(["calibrate", "--input", str(path)]) == 1
    assert "MalformedInput" in capsys.readouterr().err


@pytest.mark.parametrize("broken", ["anchors", "measurements"])
def test_locate_invalid_utf8(tmp_path, capsys, broken):
    anchors = tmp_path / "anchors.json"
    meas = tmp_path / "meas.csv"
    anchors.write_text(json.dumps([{"id": "a", "pos": [0.0, 0.0]}]))
    meas.write_text("anchor_id,kind,value\na,rtt,1.0\n")
    (anchors if broken == "anchors" else meas).write_bytes(BAD_UTF8)
    assert main(["locate", "--input", str(meas), "--anchors", str(anchors)]) == 1
    assert "MalformedInput" in capsys.readouterr().err

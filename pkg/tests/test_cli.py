import subprocess
import sys

import pytest

from streamclust.cli import main, read_manifest
from streamclust.engine import read_assignment


def run_cli(*argv):
    return main([str(a) for a in argv])


def test_cluster_two_triangles(two_triangles_file, tmp_path, capsys):
    out = tmp_path / "out.txt"
    assert run_cli("cluster", "--input", two_triangles_file, "--vmax", 5, "--output", out) == 0
    labels = read_assignment(out)
    assert len(set(labels.values())) == 2
    printed = capsys.readouterr().out
    assert "edges: 7" in printed and "communities: 2" in printed
    manifest = read_manifest(f"{out}.manifest")
    assert manifest["edges"] == "7"
    assert manifest["v_max"] == "5"
    assert manifest["order"] == "as-is"
    assert manifest["tie"] == "pseudocode"


def test_cluster_to_stdout(two_triangles_file, capsys):
    assert run_cli("cluster", "--input", two_triangles_file, "--vmax", 5) == 0
    captured = capsys.readouterr()
    assert captured.out.splitlines() == ["1 2", "2 2", "3 2", "4 5", "5 5", "6 5"]
    assert "communities: 2" in captured.err


@pytest.mark.parametrize("bad", ["0", "-3", "x"])
def test_cluster_bad_vmax_is_usage_error(two_triangles_file, bad):
    with pytest.raises(SystemExit) as exc:
        run_cli("cluster", "--input", two_triangles_file, "--vmax", bad)
    assert exc.value.code == 2


def test_cluster_bad_tie_is_usage_error(two_triangles_file):
    with pytest.raises(SystemExit) as exc:
        run_cli("cluster", "--input", two_triangles_file, "--vmax", 5, "--tie", "coin")
    assert exc.value.code == 2


def test_cluster_deterministic_bytes(two_triangles_file, tmp_path):
    outs = []
    for k in range(2):
        out = tmp_path / f"o{k}.txt"
        run_cli("cluster", "--input", two_triangles_file, "--vmax", 3, "--shuffle-seed", 9,
                "--tie", "random:4", "--output", out)
        outs.append(out.read_bytes())
    assert outs[0] == outs[1]


def test_manifest_rerun_reproduces_output(two_triangles_file, tmp_path):
    out = tmp_path / "a.txt"
    run_cli("cluster", "--input", two_triangles_file, "--vmax", 4, "--shuffle-seed", 1,
            "--tie", "random:2", "--output", out)
    m = read_manifest(f"{out}.manifest")
    out2 = tmp_path / "b.txt"
    run_cli("cluster", "--input", m["input"], "--vmax", m["v_max"],
            "--shuffle-seed", m["shuffle_seed"], "--tie", m["tie"], "--output", out2)
    assert out.read_bytes() == out2.read_bytes()


def test_cluster_parse_error_status_1(tmp_path, capsys):
    p = tmp_path / "bad.txt"
    p.write_text("1 2\nfoo\n")
    assert run_cli("cluster", "--input", p, "--vmax", 3) == 1
    assert "line 2" in capsys.readouterr().err


def test_cluster_missing_input_status_1(tmp_path):
    assert run_cli("cluster", "--input", tmp_path / "nope.txt", "--vmax", 3) == 1


def test_sweep_two_triangles(two_triangles_file, tmp_path, capsys):
    prefix = tmp_path / "sw"
    assert run_cli("sweep", "--input", two_triangles_file, "--vmax-list", "5,100",
                   "--select", "density", "--direction", "max", "--output-prefix", prefix) == 0
    report = capsys.readouterr().out
    rows = [ln.split() for ln in report.splitlines() if ln[:1].isdigit()]
    assert [r[1] for r in rows] == ["5", "100"]
    assert float(rows[0][4]) == pytest.approx(7 / 6)
    # one node moves on the bridge: {1,2} (vol 4) and {3,4,5,6} (vol 10)
    assert float(rows[1][4]) == pytest.approx(17 / 12)
    assert "selected=1" in report
    assert (tmp_path / "sw.report.txt").read_text() == report
    assert read_manifest(tmp_path / "sw.manifest")["direction"] == "max"


def test_sweep_single_and_duplicates(two_triangles_file, tmp_path, capsys):
    run_cli("sweep", "--input", two_triangles_file, "--vmax-list", "5",
            "--output-prefix", tmp_path / "one")
    assert "selected=0" in capsys.readouterr().out
    run_cli("sweep", "--input", two_triangles_file, "--vmax-list", "5,5",
            "--output-prefix", tmp_path / "dup")
    assert "selected=0" in capsys.readouterr().out
    a = (tmp_path / "dup.0.vmax5.txt").read_bytes()
    b = (tmp_path / "dup.1.vmax5.txt").read_bytes()
    assert a == b


def test_modularity_triangle(tmp_path, capsys):
    edges = tmp_path / "t.txt"
    edges.write_text("0 1\n1 2\n0 2\n")
    part = tmp_path / "p.txt"
    part.write_text("0 0\n1 1\n2 2\n")
    assert run_cli("modularity", "--input", edges, "--partition", part) == 0
    out = capsys.readouterr().out
    assert "Q = -0.333333333333" in out
    assert "-12/36" in out and "-1/3" in out


def test_modularity_single_community(tmp_path, capsys):
    edges = tmp_path / "t.txt"
    edges.write_text("0 1\n1 2\n0 2\n2 3\n")
    part = tmp_path / "p.txt"
    part.write_text("0 1\n1 1\n2 1\n3 1\n")
    run_cli("modularity", "--input", edges, "--partition", part)
    assert "Q = 0\n" in capsys.readouterr().out


def test_modularity_missing_node(tmp_path, capsys):
    edges = tmp_path / "t.txt"
    edges.write_text("0 1\n1 2\n")
    part = tmp_path / "p.txt"
    part.write_text("0 0\n1 0\n")
    assert run_cli("modularity", "--input", edges, "--partition", part) == 1
    assert "node 2" in capsys.readouterr().err


def test_evaluate_perfect(tmp_path, capsys):
    truth = tmp_path / "cmty.txt"
    truth.write_text("1 2 3\n\n4 5 6\n")
    pred = tmp_path / "pred.txt"
    pred.write_text("1 0\n2 0\n3 0\n4 1\n5 1\n6 1\n")
    assert run_cli("evaluate", "--pred", pred, "--truth", truth, "--metric", "both") == 0
    lines = capsys.readouterr().out.splitlines()
    assert lines[0] == "f1 1.000000"
    assert lines[1] == "nmi 1.000000"
    assert any("arithmetic" in ln for ln in lines)


def test_evaluate_empty_truth_status_1(tmp_path):
    truth = tmp_path / "cmty.txt"
    truth.write_text("\n\n")
    pred = tmp_path / "pred.txt"
    pred.write_text("1 0\n")
    assert run_cli("evaluate", "--pred", pred, "--truth", truth) == 1


def test_module_entry_point(two_triangles_file):
    proc = subprocess.run(
        [sys.executable, "-m", "streamclust", "cluster", "--input", str(two_triangles_file),
         "--vmax", "5"], capture_output=True, text=True, check=True)
    assert len(proc.stdout.splitlines()) == 6

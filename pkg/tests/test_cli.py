import json

import pytest

from cdlp.cli import main


@pytest.fixture
def two_triangle_file(tmp_path):
    path = tmp_path / "tt.edges"
    path.write_text("0 1\n1 2\n0 2\n3 4\n4 5\n3 5\n")
    return path


def _q_line(text):
    return [line for line in text.splitlines() if line.startswith("Q = ")][-1]


def test_generate_gn(tmp_path):
    assert main(["generate", "gn", "--z-out", "4", "--seed", "7", "--out", str(tmp_path / "gn")]) == 0
    edges = (tmp_path / "gn.edges").read_text().splitlines()
    assert edges[0] == "# nodes: 128"
    comm = (tmp_path / "gn.communities").read_text().splitlines()
    assert len(comm) == 128
    assert {line.split()[1] for line in comm} == {"0", "1", "2", "3"}
    meta = json.loads((tmp_path / "gn.json").read_text())
    assert meta["rng"] == "numpy.random.PCG64" and meta["seed"] == 7
    assert meta["nodes"] == 128


def test_generate_is_byte_identical(tmp_path):
    for d in ("a", "b"):
        main(["generate", "lfr", "--mu", "0.3", "--n", "300", "--k-avg", "10",
              "--k-max", "25", "--seed", "5", "--out", str(tmp_path / d / "x")])
    for ext in ("edges", "communities", "json"):
        assert (tmp_path / "a" / f"x.{ext}").read_bytes() == (tmp_path / "b" / f"x.{ext}").read_bytes()


def test_generate_lfr_reports_mixing(tmp_path):
    assert main(["generate", "lfr", "--mu", "0.5", "--seed", "1", "--out", str(tmp_path / "l")]) == 0
    meta = json.loads((tmp_path / "l.json").read_text())
    assert abs(meta["realized_mu"] - 0.5) <= 0.05
    assert meta["derived"]["k_min"] > 1


def test_generate_bad_config(tmp_path, capsys):
    assert main(["generate", "gn", "--z-out", "30", "--out", str(tmp_path / "x")]) == 1
    assert "z_out" in capsys.readouterr().err


def test_detect_two_triangles(two_triangle_file, tmp_path, capsys):
    out = tmp_path / "p.comm"
    assert main(["detect", str(two_triangle_file), "--out", str(out)]) == 0
    assert "Q = 0.500000" in capsys.readouterr().out
    assert len({line.split()[1] for line in out.read_text().splitlines()}) == 2


def test_detect_triangle(tmp_path, capsys):
    path = tmp_path / "k3.edges"
    path.write_text("0 1\n1 2\n2 0\n")
    assert main(["detect", str(path)]) == 0
    out = capsys.readouterr().out
    assert "communities = 1" in out and "Q = 0.000000" in out


def test_detect_empty(tmp_path, capsys):
    path = tmp_path / "e.edges"
    path.write_text("")
    assert main(["detect", str(path)]) == 2
    assert "graph has no edges" in capsys.readouterr().err


def test_detect_parse_error(tmp_path, capsys):
    path = tmp_path / "bad.edges"
    path.write_text("0 1\nfoo bar\n")
    assert main(["detect", str(path)]) == 1
    assert ":2:" in capsys.readouterr().err


def test_cdlp_report(tmp_path, capsys):
    main(["generate", "gn", "--z-out", "4", "--seed", "0", "--out", str(tmp_path / "gn")])
    capsys.readouterr()
    assert main(["cdlp", str(tmp_path / "gn.edges"), "--p-d", "0.05", "--p-a", "0.05",
                 "--truth", str(tmp_path / "gn.communities")]) == 0
    out = capsys.readouterr().out
    for stage in ("G1", "G2", "G3"):
        assert f"\n{stage} " in out
    assert "chosen = G" in out
    assert out.count(" *") == 1


def test_cdlp_without_edits_matches_detect(tmp_path, capsys):
    main(["generate", "gn", "--z-out", "6", "--seed", "2", "--out", str(tmp_path / "gn")])
    graph = str(tmp_path / "gn.edges")
    capsys.readouterr()
    main(["detect", graph, "--out", str(tmp_path / "d.comm")])
    detect_out = capsys.readouterr().out
    for cmd in ("cdlp", "baseline2"):
        main([cmd, graph, "--p-d", "0", "--p-a", "0", "--out", str(tmp_path / f"{cmd}.comm")])
        out = capsys.readouterr().out
        assert _q_line(out) == _q_line(detect_out)
        assert out.endswith(detect_out)
        assert (tmp_path / f"{cmd}.comm").read_bytes() == (tmp_path / "d.comm").read_bytes()


def test_degenerate_stage_exit_code(tmp_path, capsys):
    path = tmp_path / "sparse.edges"
    path.write_text("0 1\n1 2\n2 3\n3 4\n4 5\n")
    assert main(["cdlp", str(path), "--p-d", "0.99"]) == 2
    assert "no edges left" in capsys.readouterr().err


def test_nmi_selection_requires_truth(two_triangle_file, capsys):
    assert main(["cdlp", str(two_triangle_file), "--selection", "nmi"]) == 1
    assert "ground-truth" in capsys.readouterr().err


def test_experiment_command(tmp_path, capsys):
    spec = tmp_path / "spec.json"
    spec.write_text(json.dumps({"family": "GN", "sweep": [2, 9], "instances": 2, "seed": 3}))
    assert main(["experiment", str(spec), "--out", str(tmp_path / "run")]) == 0
    results = (tmp_path / "run" / "results.csv").read_text().splitlines()
    assert results[0] == "# cdlp-results v1"
    assert len(results) == 2 + 2 * 3 * 2


def test_experiment_unknown_key(tmp_path, capsys):
    spec = tmp_path / "spec.json"
    spec.write_text(json.dumps({"family": "GN", "sweep": [2], "colour": "red"}))
    assert main(["experiment", str(spec), "--out", str(tmp_path / "run")]) == 1
    assert "colour" in capsys.readouterr().err


def test_experiment_partial_failure(tmp_path, capsys):
    spec = tmp_path / "spec.json"
    # n=60 cannot host the default 50-degree cap comfortably; k_avg=2 has no k_min solution
    spec.write_text(json.dumps({"family": "LFR", "sweep": [0.2], "instances": 1,
                                "generator": {"n": 60, "k_avg": 2, "k_max": 50}}))
    assert main(["experiment", str(spec), "--out", str(tmp_path / "run")]) == 3
    text = (tmp_path / "run" / "results.csv").read_text()
    assert "failed" in text and "degrees" in text

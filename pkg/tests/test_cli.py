import json

import pytest

from sagraph.cli import run


@pytest.fixture
def fast_config(tmp_path):
    path = tmp_path / "solver.yaml"
    path.write_text("certificate_horizon: 5000\n")
    return str(path)


def _run(capsys, *argv):
    code = run(["--no-timestamp", *argv])
    out = capsys.readouterr().out
    return code, (json.loads(out) if out.strip() else None)


def test_generate_to_stdout(capsys):
    code, out = _run(capsys, "generate", "-f", "ex52", "--rows", "3")
    assert code == 0
    assert len(out["result"]["vertices"]) == 6
    assert len(out["result"]["edges"]) == 8
    manifest = out["manifest"]
    assert manifest["command"] == "generate"
    assert manifest["timestamp"] is None
    assert "family" in manifest["input_digests"]


def test_generate_validate_and_check_a_file(capsys, tmp_path):
    path = tmp_path / "ex52.json"
    code, out = _run(capsys, "generate", "-f", "ex52", "--rows", "12", "--out", str(path))
    assert code == 0
    assert out["result"]["path"] == str(path)

    code, out = _run(capsys, "validate", str(path))
    assert code == 0
    assert out["result"]["violations"] == []
    assert out["manifest"]["input_digests"]["graph"]

    code, out = _run(capsys, "check", "--criterion", "thm3", "-f", str(path))
    assert code == 0
    assert out["verdict"] == "Pass"


def test_validate_reports_violations(capsys, tmp_path):
    path = tmp_path / "split.json"
    path.write_text(json.dumps({"vertices": [{"id": "a", "mu": 1.0}, {"id": "b", "mu": 1.0}]}))
    code, out = _run(capsys, "validate", str(path))
    assert code == 3
    assert any("disconnected" in v for v in out["result"]["violations"])


def test_metric_from_a_layered_vertex(capsys):
    argv = ["metric", "-f", "ex52", "--rows", "6", "--from", "2,1", "--lengths", "sigma_q"]
    code, out = _run(capsys, *argv)
    assert code == 0
    result = out["result"]
    assert result["source"] == "x2_1"
    assert result["distances"]["x2_1"] == 0.0
    assert result["distances"]["x1_1"] == pytest.approx(0.2973018, abs=1e-7)
    assert result["strongly_intrinsic"]["passes"]


def test_spectrum_of_flux_free_path(capsys, tmp_path):
    dump = tmp_path / "S.txt"
    code, out = _run(
        capsys, "spectrum", "-f", "path", "--rows", "4", "--symmetrized-dump", str(dump)
    )
    assert code == 0
    assert out["result"]["eigenvalues"][0] == pytest.approx(0.0, abs=1e-12)
    entries = {tuple(line.split()[:2]) for line in dump.read_text().splitlines()}
    assert len(entries) == 4 + 2 * 3


def test_boundary_bounds(capsys):
    code, out = _run(capsys, "boundary", "-f", "ex51", "--rows", "30", "--vertex", "x1_1")
    assert code == 0
    bounds = out["result"]
    assert bounds["lower"] >= 1.941967 - 1e-6
    assert bounds["lower"] <= bounds["upper"]
    assert bounds["assumptions"]


def test_covering_report(capsys):
    code, out = _run(capsys, "covering", "-f", "ex51", "--rows", "4")
    assert code == 0
    report = out["result"]
    assert report["m"] == 2
    assert len(report["cells"]) == 3
    assert all(cell["p"] >= 1.0 for cell in report["cells"])
    assert "covering" in out["manifest"]["input_digests"]


@pytest.mark.parametrize(
    "argv, code",
    [
        (["--criterion", "thm1", "-f", "ex51", "--rows", "30", "--potential", "opposite"], 0),
        (["--criterion", "thm1", "-f", "ex51", "--rows", "30"], 1),
        (["--criterion", "thm2", "-f", "ex51", "--beta", "0.6", "--rows", "30"], 0),
        (["--criterion", "thm3", "-f", "ex52", "--rows", "20"], 0),
        (["--criterion", "golenia", "-f", "ex52", "--rows", "30"], 1),
        (["--criterion", "golenia", "-f", "path", "--rows", "30"], 2),
    ],
)
def test_check_exit_codes(capsys, fast_config, argv, code):
    found, out = _run(capsys, "--config", fast_config, "check", *argv)
    assert found == code
    assert out["manifest"]["command"] == "check"
    assert out["manifest"]["arguments"]["criterion"] == argv[1]


def test_check_is_reproducible(capsys, fast_config):
    argv = ["--config", fast_config, "check", "--criterion", "thm1", "-f", "ex51", "--rows", "20"]
    first = _run(capsys, *argv)
    second = _run(capsys, *argv)
    assert first == second


def test_golenia_exit_codes(capsys):
    code, out = _run(capsys, "golenia", "-f", "ex52", "--rows", "30")
    assert code == 1
    assert out["result"]["classification"] == "Converges"
    assert "lambda" in out["result"]

    code, out = _run(capsys, "golenia", "-f", "path", "--rows", "30", "--n-max", "10")
    assert code == 0
    assert len(out["result"]["path"]) == 10


def test_verify_suite(capsys):
    code, out = _run(capsys, "--seed", "5", "verify", "--suite", "operator", "--instances", "2")
    assert code == 0
    assert out["passed"] == 8
    assert out["manifest"]["seed"] == 5


def test_probe_is_not_conclusive(capsys):
    code, out = _run(capsys, "probe", "-f", "ex52", "--rows", "5,10")
    assert code == 0
    assert out["conclusive"] is False
    assert out["lambda_plain"][1] <= out["lambda_plain"][0] + 1e-9


@pytest.mark.parametrize(
    "argv",
    [
        ["check", "--criterion", "thm1", "-f", "nonexistent"],
        ["check", "--criterion", "thm1", "-f", "ex51", "--C", "abc"],
        ["check", "--criterion", "thm4", "-f", "ex51"],
        ["generate", "-f", "ex52", "--rows", "0"],
        ["check", "--criterion", "thm1", "-f", "ex51", "--beta", "0.9"],
        ["probe", "-f", "ex52", "--rows", "5,x"],
    ],
)
def test_bad_input_exits_with_three(capsys, argv):
    assert run(["--no-timestamp", *argv]) == 3
    assert capsys.readouterr().out == ""


def test_timestamp_is_recorded_by_default(capsys):
    assert run(["generate", "-f", "path", "--rows", "2"]) == 0
    assert json.loads(capsys.readouterr().out)["manifest"]["timestamp"]


@pytest.mark.slow
def test_verify_all_at_full_size(capsys):
    code, out = _run(capsys, "--seed", "7", "verify", "--suite", "all", "--instances", "500")
    assert code == 0
    assert out["failed"] == 0
    assert out["worst_rel_err"] < 1e-6


def test_verbose_logs_to_stderr(capsys):
    assert run(["--no-timestamp", "-v", "generate", "-f", "path", "--rows", "3"]) == 0
    captured = capsys.readouterr()
    assert "generated path with 3 rows" in captured.err
    assert json.loads(captured.out)["manifest"]["command"] == "generate"


def test_invalid_graph_file_is_rejected_before_checking(capsys, tmp_path):
    path = tmp_path / "split.json"
    path.write_text(json.dumps({"vertices": [{"id": "a", "mu": 1.0}, {"id": "b", "mu": 1.0}]}))
    assert run(["--no-timestamp", "check", "--criterion", "thm3", "-f", str(path)]) == 3
    captured = capsys.readouterr()
    assert captured.out == ""
    assert "invalid graph" in captured.err

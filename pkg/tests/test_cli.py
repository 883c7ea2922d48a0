import json
import math

import pytest

from mubswitch.cli import main


def test_qubit_sweep_cli(tmp_path):
    out = tmp_path / "q.csv"
    assert main(["qubit-sweep", "--p", "0:1:11", "--theta", "0:0:1", "--phi", "0:0:1", "--out", str(out)]) == 0
    lines = out.read_text().splitlines()
    assert len(lines) == 12
    assert lines[6].startswith("2,0.5,coherent,0,0,bloch,0.25,")


def test_qubit_sweep_json(tmp_path):
    out = tmp_path / "q.json"
    args = ["qubit-sweep", "--p", "0.5", "--theta", "0:3.141592653589793:3", "--phi", "0", "--out", str(out), "--format", "json"]
    assert main(args) == 0
    rows = json.loads(out.read_text())
    assert len(rows) == 3 and all(r["relative_entropy"] == "inf" for r in rows)


def test_qudit_sweep_cli_deterministic(tmp_path):
    paths = [tmp_path / "a.csv", tmp_path / "b.csv"]
    for path in paths:
        assert main(["qudit-sweep", "--dim", "3", "--p", "0:1:5", "--states", "4", "--seed", "99", "--out", str(path)]) == 0
    assert paths[0].read_bytes() == paths[1].read_bytes()
    assert len(paths[0].read_text().splitlines()) == 1 + 5 * (3 + 4)


def test_single_print_matrix(capsys):
    assert main(["single", "--p", "0.5", "--theta", "0", "--phi", "0", "--print-matrix"]) == 0
    out = capsys.readouterr().out.splitlines()
    assert "trace_distance = 0.25" in out
    matrix = [line.split() for line in out[-4:]]
    assert [complex(x.replace("j", "j")) for x in matrix[0]][:3] == [0.25, 0, 0.25]
    assert abs(complex(matrix[3][3]) - 0.25) < 1e-12


def test_single_wraps_phi(capsys):
    assert main(["single", "--p", "0.3", "--theta", "1", "--phi", str(2 * math.pi)]) == 0


def test_config_file_and_override(tmp_path):
    cfg = tmp_path / "run.cfg"
    out = tmp_path / "x.csv"
    cfg.write_text(f"# manifest\nmode = qudit-sweep\ndim = 3\np = 0.5\nseed = 4\nstates = 1\nout = {out}\n")
    assert main(["qudit-sweep", "--config", str(cfg)]) == 0
    assert len(out.read_text().splitlines()) == 1 + 4
    assert main(["qudit-sweep", "--config", str(cfg), "--states", "3"]) == 0
    assert len(out.read_text().splitlines()) == 1 + 6


@pytest.mark.parametrize(
    "argv",
    [
        ["qudit-sweep", "--dim", "3", "--p", "0.5", "--out", "x.csv"],  # missing seed
        ["qudit-sweep", "--dim", "40", "--p", "0.5", "--seed", "1", "--out", "x.csv"],
        ["qubit-sweep", "--p", "0:2:3", "--theta", "0", "--phi", "0", "--out", "x.csv"],
        ["qubit-sweep", "--p", "0:1", "--theta", "0", "--phi", "0", "--out", "x.csv"],
        ["single", "--p", "0.5", "--theta", "7", "--phi", "0"],
        ["verify", "--tol", "-1"],
        ["verify", "--dim-max", "1"],
    ],
)
def test_bad_arguments_exit_2(argv, tmp_path, monkeypatch):
    monkeypatch.chdir(tmp_path)
    assert main(argv) == 2


def test_unknown_config_key(tmp_path):
    cfg = tmp_path / "bad.cfg"
    cfg.write_text("colour = blue\n")
    assert main(["single", "--config", str(cfg), "--p", "0", "--theta", "0", "--phi", "0"]) == 2


def test_argparse_errors_exit_2():
    with pytest.raises(SystemExit) as exc:
        main(["nonsense"])
    assert exc.value.code == 2


def test_unwritable_output(tmp_path):
    argv = ["qubit-sweep", "--p", "0.5", "--theta", "0", "--phi", "0", "--out", str(tmp_path / "no" / "x.csv")]
    assert main(argv) == 2


def test_verify_small_and_fault(tmp_path, capsys):
    report = tmp_path / "r.json"
    assert main(["verify", "--dim-max", "3", "--states", "5", "--report", str(report)]) == 0
    doc = json.loads(report.read_text())
    assert doc["passed"] and all(c["passed"] for c in doc["checks"])
    assert main(["verify", "--dim-max", "3", "--states", "5", "--inject-fault", "kraus"]) == 1
    out = capsys.readouterr().out
    assert "FAIL  channels.completeness[d=2]" in out

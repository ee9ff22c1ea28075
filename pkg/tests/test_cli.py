"""
Tests for the spt-teleport command line.
"""
import csv
import io
import json

import pytest

from spt_teleport.cli import build_parser, main


@pytest.fixture(autouse=True)
def serial(monkeypatch):
    monkeypatch.setenv("SPT_THREADS", "1")
    monkeypatch.delenv("SPT_DEBUG", raising=False)


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


class TestCommands:
    """Every subcommand on a small case."""

    def test_graph(self, capsys):
        code, out, _ = run(capsys, "graph", "--graph", "diamond")
        assert code == 0
        assert "s_x = X1 X3 X5 Z6" in out
        assert "s_z = Z1 X2 X4 X6" in out

    def test_graph_latex(self, capsys):
        code, out, _ = run(capsys, "graph", "--graph", "diamond", "--format", "latex")
        assert code == 0
        assert "X_{1} X_{3} X_{5} Z_{6}" in out

    def test_teleport_to_stdout(self, capsys):
        code, out, _ = run(capsys, "teleport", "--graph", "diamond", "--path", "p1", "--path", "p2",
                           "--error", "zz:3,5,0.3", "--shots", "exact", "--input", "polar:1.2,0.4")
        assert code == 0
        rows = list(csv.DictReader(io.StringIO(out)))
        assert [r["path"] for r in rows] == ["p1", "p2"]
        assert float(rows[0]["fidelity"]) == pytest.approx(1.0, abs=1e-9)
        assert rows[0]["shots"] == "exact"
        assert rows[0]["errors"] == "zz:3,5,0.3"

    def test_teleport_to_file(self, capsys, tmp_path):
        target = tmp_path / "sub" / "t.csv"
        code, out, _ = run(capsys, "teleport", "--graph", "chain:6", "--shots", "20", "--inputs", "2",
                           "--seed", "4", "--out", str(target))
        assert code == 0
        assert out == ""
        rows = list(csv.DictReader(target.open()))
        assert len(rows) == 1
        assert rows[0]["input"] == "blochx2"
        assert rows[0]["shots"] == "20"

    def test_spectrum(self, capsys):
        code, out, _ = run(capsys, "spectrum", "--graph", "chain:6", "--cut", "4,5,6")
        assert code == 0
        assert "Rank : 2" in out

    def test_calibrate(self, capsys):
        code, out, _ = run(capsys, "calibrate", "--graph", "diamond", "--error", "zz:3,5,0.3", "--shots", "exact")
        assert code == 0
        assert "protected, use path p1" in out

    def test_majority(self, capsys):
        code, out, _ = run(capsys, "calibrate", "--majority", "--graph", "hourglass:n=2,rows=3",
                           "--input", "one", "--seed", "2")
        assert code == 0
        assert "decision  : 1" in out
        assert "dissent   : none" in out

    def test_sop(self, capsys):
        code, out, _ = run(capsys, "sop", "--hamiltonian", "hy", "--alpha-sweep", "0,0.5", "--L", "6")
        assert code == 0
        rows = list(csv.DictReader(io.StringIO(out)))
        assert [r["alpha"] for r in rows] == ["0.0", "0.5"]
        assert float(rows[0]["sop"]) == pytest.approx(1.0, abs=1e-9)

    def test_list(self, capsys):
        code, out, _ = run(capsys, "list")
        assert code == 0
        assert "fig3_diamond" in out
        code, out, _ = run(capsys, "list", "--show", "fig9_depolarizing")
        assert json.loads(out)["name"] == "fig9_depolarizing"

    def test_run_config_file(self, capsys, tmp_path):
        config = tmp_path / "mini.json"
        config.write_text(json.dumps({
            "name": "mini",
            "protocol": "teleport_exact",
            "graph": "diamond",
            "paths": ["p1"],
            "errors": ["zz:3,5,$eps"],
            "sweep": {"eps": [0.1, 0.2]},
            "input": "plus",
        }))
        code, out, _ = run(capsys, "run", str(config), "--out", str(tmp_path / "res"))
        assert code == 0
        assert "mini: 2 rows" in out
        assert (tmp_path / "res" / "mini.csv").exists()
        assert (tmp_path / "res" / "mini.manifest.json").exists()

    def test_run_table(self, capsys, tmp_path):
        config = tmp_path / "mini.json"
        config.write_text(json.dumps({
            "name": "mini",
            "protocol": "teleport_exact",
            "graph": "diamond",
            "paths": ["p1", "p2"],
            "errors": ["zz:3,5,$eps"],
            "sweep": {"eps": [0.0, 0.3]},
            "input": "plus",
        }))
        code, out, _ = run(capsys, "run", str(config), "--out", str(tmp_path / "res"), "--table")
        assert code == 0
        lines = out.splitlines()
        start = next(i for i, line in enumerate(lines) if "fidelity" in line)
        assert lines[start].split()[:3] == ["cell", "seed", "eps"]
        body = [line for line in lines[start + 2:] if line.strip()]
        assert len(body) == 4
        assert body[0].split()[3] == "diamond"


class TestFailures:
    """Exit status and messages for bad requests."""

    def test_unknown_graph(self, capsys):
        code, _, err = run(capsys, "graph", "--graph", "ladder:4")
        assert code == 2
        assert err.startswith("error:")

    def test_bad_error_spec(self, capsys):
        code, _, err = run(capsys, "teleport", "--graph", "diamond", "--error", "zz:3,x,0.1")
        assert code == 2
        assert "errors.0" in err

    def test_unknown_builtin(self, capsys, tmp_path):
        code, _, err = run(capsys, "run", "fig99", "--out", str(tmp_path))
        assert code == 2
        assert "cannot read config" in err

    def test_unknown_path(self, capsys):
        code, _, err = run(capsys, "teleport", "--graph", "diamond", "--path", "p9", "--shots", "exact")
        assert code == 1
        assert "p9" in err

    def test_too_large(self, capsys):
        code, _, err = run(capsys, "spectrum", "--graph", "chain:40", "--cut", "1")
        assert code == 2
        assert err.startswith("refused:")

    @pytest.mark.parametrize("shots", ["0", "-3", "many"])
    def test_bad_shots(self, shots):
        with pytest.raises(SystemExit) as exc:
            build_parser().parse_args(["teleport", "--graph", "diamond", "--shots", shots])
        assert exc.value.code == 2

import json
import subprocess
import sys
from pathlib import Path

import pytest

from nudgekit.cli import EXIT_ERROR, EXIT_NUDGABLE, EXIT_OK, main

GOLDEN = Path(__file__).parent / "golden"


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


class TestAnalyze:
    def test_symmetric(self, capsys):
        code, out, _ = run(capsys, "analyze", "S:5")
        assert code == EXIT_OK
        assert "verdict  non-nudgable" in out

    def test_nudgable_exit_code(self, capsys):
        code, out, _ = run(capsys, "analyze", "embed:S:3@4fix2", "--format", "structured", "--no-timing")
        assert code == EXIT_NUDGABLE
        doc = json.loads(out)
        assert sorted([doc["d_size"], doc["d_inverse_size"]]) == [1, 2]

    def test_golden(self, capsys):
        _, out, _ = run(capsys, "analyze", "embed:S:3@4fix2", "--format", "structured", "--no-timing")
        assert out == (GOLDEN / "analyze_ex2.json").read_text()

    def test_human_shows_cycles(self, capsys):
        _, out, _ = run(capsys, "analyze", "A:6")
        assert "witness  [" in out and "(" in out
        assert "elapsed" in out

    @pytest.mark.parametrize("spec", ["S:0", "S:", "bogus", "embed:S:3@4fix9"])
    def test_bad_spec(self, capsys, spec):
        code, out, err = run(capsys, "analyze", spec)
        assert code == EXIT_ERROR
        assert "offset" in err and out == ""

    def test_cap(self, capsys):
        code, _, err = run(capsys, "analyze", "S:6", "--classify-cap", "100")
        assert code == EXIT_ERROR and "cap" in err

    def test_eq_condition(self, capsys):
        code, out, _ = run(capsys, "analyze", "gen:(1 2)(3 4);(1 5)(2 3)@5", "--eq-condition",
                           "--format", "structured", "--no-timing")
        assert code == EXIT_OK
        doc = json.loads(out)
        assert doc["order"] == 10 and doc["eq_condition"]["verdict"] == "holds"
        assert len(doc["eq_condition"]["certificates"]) == 10


class TestDset:
    def test_a6(self, capsys):
        code, out, _ = run(capsys, "dset", "A:6", "--perm", "6 5 3 1 4 2", "--format", "structured")
        assert code == EXIT_OK
        doc = json.loads(out)
        assert (doc["d_size"], doc["d_inverse_size"]) == (3, 2)

    def test_identity(self, capsys):
        _, out, _ = run(capsys, "dset", "S:3", "--perm", "1 2 3", "--format", "structured")
        assert json.loads(out)["d_size"] == 6

    def test_three_cycle(self, capsys):
        _, out, _ = run(capsys, "dset", "S:3", "--perm", "2 3 1", "--format", "structured")
        doc = json.loads(out)
        assert doc["d_set"] == ["1 2 3", "2 1 3"]
        assert doc["d_set_inverse"] == ["1 2 3", "1 3 2"]

    def test_human(self, capsys):
        _, out, _ = run(capsys, "dset", "A:6", "--perm", "6 5 3 1 4 2")
        assert "D(pi): 3" in out and "(1 2)(3 4)" in out

    @pytest.mark.parametrize("perm", ["2 1 3 4", "1 1 2 3", "1 2 3"])
    def test_errors(self, capsys, perm):
        code, _, err = run(capsys, "dset", "A:4", "--perm", perm)
        assert code == EXIT_ERROR and err


class TestSample:
    def test_golden(self, capsys):
        code, out, _ = run(capsys, "sample", "--n", "5", "--count", "40", "--seed", "7", "--format", "structured")
        assert code == EXIT_OK
        assert out == (GOLDEN / "sample_n5_c40_s7.json").read_text()

    def test_csv_golden(self, capsys, tmp_path):
        path = tmp_path / "rows.csv"
        run(capsys, "sample", "--n", "5", "--count", "40", "--seed", "7", "--csv", str(path))
        assert path.read_text() == (GOLDEN / "sample_n5_c40_s7.csv").read_text()

    def test_human(self, capsys):
        _, out, _ = run(capsys, "sample", "--n", "4", "--count", "30", "--seed", "1")
        assert "S_n or A_n fraction" in out

    def test_bad_args(self, capsys):
        code, _, _ = run(capsys, "sample", "--n", "1", "--count", "3")
        assert code == EXIT_ERROR


class TestSweep:
    def test_golden(self, capsys):
        _, out, _ = run(capsys, "sweep", "--n", "3", "--format", "structured")
        assert out == (GOLDEN / "sweep_n3.json").read_text()

    def test_n4(self, capsys):
        code, out, _ = run(capsys, "sweep", "--n", "4", "--fixpoint")
        assert code == EXIT_OK
        assert "minimal nudgable order  6" in out

    def test_too_large(self, capsys):
        code, _, err = run(capsys, "sweep", "--n", "6")
        assert code == EXIT_ERROR and "n <= 5" in err


class TestVerify:
    def test_subset(self, capsys):
        code, out, _ = run(capsys, "verify", "--only", "1", "8")
        assert code == EXIT_OK
        lines = out.splitlines()
        assert [ln.split()[0] for ln in lines[:2]] == ["PASS", "PASS"]
        assert lines[-1] == "2/2 checks passed"

    def test_unknown_id(self, capsys):
        code, _, err = run(capsys, "verify", "--only", "99")
        assert code == EXIT_ERROR and "99" in err


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "nudgekit", "analyze", "embed:S:3@4fix2"],
                          capture_output=True, text=True)
    assert proc.returncode == EXIT_NUDGABLE
    assert "nudgable" in proc.stdout


def test_requires_subcommand(capsys):
    with pytest.raises(SystemExit) as exc:
        main([])
    assert exc.value.code != 0

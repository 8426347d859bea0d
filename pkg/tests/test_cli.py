"""
Tests for the command-line interface
"""
import json

import pytest

from hecke_engine.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out.strip(), captured.err.strip()


class TestTextOutput:
    """Commands in text mode"""

    def test_mult(self, capsys):
        assert run(capsys, "mult", "--d", "3", "Trho * T1 * Trho")[:2] == (0, "[T0]")

    def test_mult_quadratic(self, capsys):
        assert run(capsys, "mult", "--d", "3", "T1 * T1")[1] == "v^2·[e] + (-1 + v^2)·[T1]"

    def test_mult_window(self, capsys):
        assert run(capsys, "mult", "--d", "3", "[w=1,2,3,4,5,6] * T2")[1] == "[T2]"

    def test_mult_several_expressions(self, capsys):
        """Separate arguments are multiplied left to right"""
        assert run(capsys, "mult", "--d", "3", "Trho", "T1", "Trho")[1] == "[T0]"

    def test_factor(self, capsys):
        assert run(capsys, "factor", "--d", "3", "--w", "7,2,3,4,5,0")[:2] == (0, "T1 * T2 * T3 * T1 * Trho")

    def test_factor_trivial(self, capsys):
        assert run(capsys, "factor", "--d", "3", "--w", "1,2,3,4,5,6")[1] == "e"
        assert run(capsys, "factor", "--d", "3", "--w", "0,2,4,3,5,7")[1] == "Trho"

    def test_factor_replay(self, capsys):
        assert run(capsys, "factor", "--d", "3", "--w", "7,2,3,4,5,0", "--replay")[0] == 0

    def test_length(self, capsys):
        assert run(capsys, "length", "--d", "3", "--w", "7,2,3,4,5,0")[:2] == (0, "4")

    def test_bruhat(self, capsys):
        assert run(capsys, "bruhat", "--d", "3", "--y", "1,2,3,4,5,6", "--w", "2,1,3,4,6,5")[1] == "y < w"
        assert run(capsys, "bruhat", "--d", "3", "--y", "2,1,3,4,6,5", "--w", "1,3,2,5,4,6")[1] == "incomparable"

    def test_check(self, capsys):
        code, out, _ = run(capsys, "check", "--d", "3")
        assert code == 0
        assert out.startswith("relations: PASS")

    def test_check_verify(self, capsys):
        code, out, _ = run(capsys, "check", "--d", "3", "--verify", "--upto-length", "1")
        assert code == 0
        assert len(out.splitlines()) == 8

    def test_compositions(self, capsys):
        code, out, _ = run(capsys, "compositions", "--n", "4", "--d", "3")
        assert code == 0
        assert out.splitlines() == ["0,3,3,0", "1,2,2,1", "2,1,1,2", "3,0,0,3"]

    def test_matrix(self, capsys):
        code, out, _ = run(capsys, "matrix", "--d", "3", "--w", "2,1,3,4,6,5")
        assert code == 0
        assert out.splitlines()[0] == "0 1 0 0 0 0"
        assert out.splitlines()[1] == "1 0 0 0 0 0"

    def test_kl(self, capsys):
        code, out, _ = run(capsys, "kl", "--d", "3", "--upto-length", "1")
        assert code == 0
        assert "P(e, T1) = v^-1" in out.splitlines()
        assert len(out.splitlines()) == 18


class TestMachineOutput:
    """Commands with --machine print one JSON record"""

    def test_length(self, capsys):
        out = run(capsys, "length", "--d", "3", "--w", "7,2,3,4,5,0", "--machine")[1]
        assert out == '{"d":3,"w":[7,2,3,4,5,0],"length":4}'

    def test_factor(self, capsys):
        record = json.loads(run(capsys, "factor", "--d", "3", "--w", "7,2,3,4,5,0", "--machine", "--replay")[1])
        assert record["rho_prefix"] is True
        assert record["word"] == ["T1", "T2", "T3", "T1"]
        assert record["replayed"] is True

    def test_mult(self, capsys):
        record = json.loads(run(capsys, "mult", "--d", "3", "T1 * T1", "--machine")[1])
        assert record["terms"][0] == {"w": [1, 2, 3, 4, 5, 6], "coeff": [[2, 1]]}

    def test_bruhat(self, capsys):
        record = json.loads(run(capsys, "bruhat", "--d", "3", "--y", "2,1,3,4,6,5", "--w=-1,0,3,4,7,8", "--machine")[1])
        assert record["y_leq_w"] is False
        assert record["w_leq_y"] is False
        assert record["y_dominated_by_w"] is True

    def test_deterministic(self, capsys):
        first = run(capsys, "kl", "--d", "3", "--upto-length", "2", "--machine")[1]
        second = run(capsys, "kl", "--d", "3", "--upto-length", "2", "--machine")[1]
        assert first == second


class TestErrors:
    """Exit-code contract"""

    def test_parse_error(self, capsys):
        code, _, err = run(capsys, "mult", "--d", "3", "T1 T2")
        assert code == 2
        assert "position 3" in err

    def test_rank_too_small(self, capsys):
        assert run(capsys, "length", "--d", "2", "--w", "1,2,3,4")[0] == 2

    def test_invalid_window(self, capsys):
        code, _, err = run(capsys, "length", "--d", "3", "--w", "1,2,4,3,5,6")
        assert code == 3
        assert "parity" in err

    def test_machine_error_record(self, capsys):
        code, out, _ = run(capsys, "length", "--d", "3", "--w", "1,2,3,4,6,5", "--machine")
        assert code == 3
        record = json.loads(out)
        assert record["error"] == "SymmetryError"
        assert record["exit_code"] == 3

    def test_odd_n(self, capsys):
        assert run(capsys, "compositions", "--n", "3", "--d", "3")[0] == 2

    def test_negative_length(self, capsys):
        assert run(capsys, "kl", "--d", "3", "--upto-length", "-1")[0] == 2

    def test_unknown_command(self, capsys):
        with pytest.raises(SystemExit) as excinfo:
            main(["frobnicate"])
        assert excinfo.value.code == 2


class TestCacheCommands:
    """kl --cache and the cache command"""

    def test_kl_writes_cache(self, capsys, tmp_path):
        path = tmp_path / "kl.jsonl"
        assert run(capsys, "kl", "--d", "3", "--upto-length", "1", "--cache", str(path))[0] == 0
        assert len(path.read_text(encoding="utf-8").splitlines()) == 18
        code, out, _ = run(capsys, "cache", "validate", "--cache", str(path))
        assert code == 0
        assert out.endswith("18 entries, d=3")

    def test_kl_extends_cache(self, capsys, tmp_path):
        path = tmp_path / "kl.jsonl"
        run(capsys, "kl", "--d", "3", "--upto-length", "1", "--cache", str(path))
        run(capsys, "kl", "--d", "3", "--upto-length", "2", "--cache", str(path))
        fresh = tmp_path / "fresh.jsonl"
        run(capsys, "kl", "--d", "3", "--upto-length", "2", "--cache", str(fresh))
        assert path.read_text(encoding="utf-8") == fresh.read_text(encoding="utf-8")

    def test_merge(self, capsys, tmp_path):
        small, large, target = tmp_path / "small.jsonl", tmp_path / "large.jsonl", tmp_path / "target.jsonl"
        run(capsys, "kl", "--d", "3", "--upto-length", "1", "--cache", str(small))
        run(capsys, "kl", "--d", "3", "--upto-length", "2", "--cache", str(large))
        code = run(capsys, "cache", "merge", str(small), str(large), "--cache", str(target))[0]
        assert code == 0
        assert target.read_text(encoding="utf-8") == large.read_text(encoding="utf-8")

    def test_validate_malformed(self, capsys, tmp_path):
        path = tmp_path / "bad.jsonl"
        path.write_text("not json\n", encoding="utf-8")
        code, _, err = run(capsys, "cache", "validate", "--cache", str(path))
        assert code == 2
        assert "line 1" in err

    def test_validate_missing(self, capsys, tmp_path):
        assert run(capsys, "cache", "validate", "--cache", str(tmp_path / "none.jsonl"))[0] == 2


if __name__ == "__main__":
    pytest.main([__file__, "-v"])

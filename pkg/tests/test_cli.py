"""CLI surface: subcommands, formats, exit codes, determinism."""

import json

import numpy as np
import pytest

from classent import states
from classent.cli import main
from classent.matcore import load_matrix_csv, load_matrix_json


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestUsageErrors:
    def test_no_command(self, capsys):
        code, _, _ = run(capsys, )
        assert code == 2

    def test_unknown_state(self, capsys):
        code, _, err = run(capsys, "measure", "--state", "nope")
        assert code == 2
        assert "unknown state" in err

    def test_bad_grid(self, capsys):
        code, _, err = run(capsys, "delta", "--state", "ghz", "--grid", "banana")
        assert code == 2

    def test_help_exits_zero(self, capsys):
        code, out, _ = run(capsys, "--help")
        assert code == 0
        assert "measure" in out and "verify" in out

    def test_squashed_on_mixed_is_usage_error(self, capsys):
        code, _, err = run(
            capsys, "delta", "--state", "rho:0.5", "--measure", "squashed",
            "--grid", "8,4",
        )
        assert code == 2
        assert "mixed" in err


class TestMeasure:
    def test_ghz_plain(self, capsys):
        code, out, _ = run(capsys, "measure", "--state", "ghz")
        assert code == 0
        assert "negativity: 1.5" in out
        assert "negativity AB|C: 0.5" in out
        assert "entropy A: 1" in out

    def test_bell_chain_total(self, capsys):
        code, out, _ = run(
            capsys, "measure", "--state", "bells:3", "--measure", "negativity"
        )
        assert code == 0
        assert "negativity: 5.5" in out

    def test_w_squashed_json(self, capsys):
        code, out, _ = run(
            capsys, "measure", "--state", "w", "--measure", "squashed",
            "--format", "json",
        )
        assert code == 0
        payload = json.loads(out)
        assert payload["values"]["squashed"] == pytest.approx(1.37744, abs=1e-5)


class TestDelta:
    def test_pure_ghz_json(self, capsys):
        code, out, _ = run(
            capsys, "delta", "--state", "psi:1", "--grid", "24,8",
            "--format", "json",
        )
        assert code == 0
        payload = json.loads(out)
        assert payload["delta"] == pytest.approx(0.5, abs=1e-9)
        assert payload["grid"] == [24, 8]

    def test_flower_with_bounds(self, capsys):
        code, out, _ = run(
            capsys, "delta", "--state", "flower:2", "--bounds", "--grid", "24,8",
            "--format", "json",
        )
        assert code == 0
        payload = json.loads(out)
        assert payload["delta"] == pytest.approx(0.0, abs=1e-10)
        assert payload["upper_bound"] == pytest.approx(0.25, abs=1e-9)

    def test_plain_report_lines(self, capsys):
        code, out, _ = run(capsys, "delta", "--state", "ghz", "--grid", "24,8")
        assert code == 0
        assert "delta: 0.5" in out
        assert "best direction:" in out


class TestSweep:
    def test_header_and_shape(self, capsys, tmp_path):
        path = tmp_path / "sweep.csv"
        code, out, _ = run(
            capsys, "sweep", "--state", "psi", "--range", "0,1,5",
            "--grid", "12,4", "--output", str(path),
        )
        assert code == 0
        lines = path.read_text().strip().splitlines()
        assert lines[0] == (
            "param,negativity_global,negativity_delta,"
            "negativity_lower,negativity_upper"
        )
        assert len(lines) == 6
        assert lines[1].startswith("0,")
        assert lines[-1].startswith("1,")

    def test_deterministic_bytes(self, capsys, tmp_path):
        a, b = tmp_path / "a.csv", tmp_path / "b.csv"
        for path in (a, b):
            code, _, _ = run(
                capsys, "sweep", "--state", "rho", "--range", "0,1,4",
                "--grid", "8,4", "--output", str(path),
            )
            assert code == 0
        assert a.read_bytes() == b.read_bytes()

    def test_both_measures_columns(self, capsys):
        code, out, _ = run(
            capsys, "sweep", "--state", "psi", "--range", "0,1,3",
            "--grid", "8,4", "--measure", "negativity", "--measure", "squashed",
        )
        assert code == 0
        header = out.splitlines()[0]
        assert "squashed_delta" in header and "negativity_lower" in header

    def test_twelve_significant_digits(self, capsys):
        code, out, _ = run(
            capsys, "sweep", "--state", "psi", "--range", "0,1,3", "--grid", "8,4"
        )
        cell = out.splitlines()[1].split(",")[1]
        assert cell == "1.41421356237"
        assert "," not in cell.replace(",", "")  # '.' decimal separator only

    def test_parametrized_family_needs_range(self, capsys):
        code, _, err = run(capsys, "sweep", "--state", "ak")
        assert code == 2
        assert "--range" in err

    def test_rejects_non_sweepable(self, capsys):
        code, _, err = run(capsys, "sweep", "--state", "bells")
        assert code == 2

    def test_rejects_degenerate_range(self, capsys):
        code, _, _ = run(capsys, "sweep", "--state", "psi", "--range", "1,0,5")
        assert code == 2
        code, _, _ = run(capsys, "sweep", "--state", "psi", "--range", "0,1,1")
        assert code == 2

    def test_unwritable_path(self, capsys):
        code, _, err = run(
            capsys, "sweep", "--state", "psi", "--range", "0,1,2",
            "--grid", "8,4", "--output", "/nonexistent/dir/out.csv",
        )
        assert code == 2
        assert err


class TestDump:
    def test_json_round_trip(self, capsys, tmp_path):
        path = tmp_path / "tilde.json"
        code, _, _ = run(capsys, "dump", "--state", "tilde", "--output", str(path))
        assert code == 0
        loaded = load_matrix_json(path)
        np.testing.assert_array_equal(loaded, states.tilde_state().data)

    def test_csv_round_trip(self, capsys, tmp_path):
        path = tmp_path / "upb.csv"
        code, _, _ = run(
            capsys, "dump", "--state", "upb", "--format", "csv",
            "--output", str(path),
        )
        assert code == 0
        loaded = load_matrix_csv(path)
        np.testing.assert_array_equal(loaded, states.upb_state().data)

    def test_stdout_json_parses(self, capsys):
        code, out, _ = run(capsys, "dump", "--state", "tilde")
        assert code == 0
        rows = json.loads(out)
        assert len(rows) == 8
        # dyadic entries survive the float round-trip untouched
        assert rows[1][1] == [0.25, 0.0]
        assert rows[2][5] == [0.125, 0.0]

    def test_dump_load_dump_idempotent(self, capsys, tmp_path):
        p1 = tmp_path / "one.csv"
        run(capsys, "dump", "--state", "adma", "--format", "csv", "--output", str(p1))
        text1 = p1.read_text()
        from classent.matcore import matrix_from_csv, matrix_to_csv

        assert matrix_to_csv(matrix_from_csv(text1)) == text1


class TestVerify:
    def test_fast_suite_passes(self, capsys):
        code, out, _ = run(capsys, "verify", "condition1")
        assert code == 0
        assert "PASS tilde-scan" in out
        assert "PASS ghz-scan-rejects" in out
        assert "PASS upb-scan" in out
        assert "3/3" in out

    def test_json_summary(self, capsys):
        code, out, _ = run(capsys, "verify", "condition1", "--format", "json")
        assert code == 0
        payload = json.loads(out)
        assert payload["passed"] is True
        names = [c["name"] for c in payload["checks"]]
        assert names == ["tilde-scan", "ghz-scan-rejects", "upb-scan"]
        for c in payload["checks"]:
            assert "margin" in c and "seconds" in c

    def test_failing_check_names_itself(self, capsys):
        # an absurdly tight tolerance turns eigensolver noise into failure
        code, out, _ = run(capsys, "verify", "condition1", "--tol", "1e-20")
        assert code == 1
        assert "FAIL tilde-scan" in out

    def test_unknown_suite_rejected(self, capsys):
        code, _, _ = run(capsys, "verify", "everything")
        assert code == 2

    def test_zoo_suite_passes(self, capsys):
        code, out, _ = run(capsys, "verify", "zoo")
        assert code == 0
        assert "4/4" in out

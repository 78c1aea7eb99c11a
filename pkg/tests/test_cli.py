"""End-to-end tests of the command-line interface."""

import csv
import io
import json

import pytest

from nbtail.cli import main


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def parse_csv(out):
    rows = list(csv.reader(io.StringIO(out)))
    header, data = rows[0], rows[1:]
    return [dict(zip(header, row)) for row in data]


class TestEvalCommands:
    def test_inf_r1(self, capsys):
        code, out, _ = run_cli(capsys, "inf", "--r", "1")
        rows = parse_csv(out)
        assert code == 0
        assert rows[0]["value"] == "0.5"
        assert rows[0]["attained"] == "false"
        assert rows[0]["status"] == "ok"

    def test_inf_r2_r3(self, capsys):
        _, out, _ = run_cli(capsys, "inf", "--r", "2")
        assert float(parse_csv(out)[0]["value"]) == pytest.approx(4.0 / 9.0, rel=1e-15)
        _, out, _ = run_cli(capsys, "inf", "--r", "3")
        assert float(parse_csv(out)[0]["value"]) == pytest.approx(27.0 / 64.0, rel=1e-15)

    def test_inf_interval(self, capsys):
        code, out, _ = run_cli(capsys, "inf", "--r", "2", "--n", "0")
        rows = parse_csv(out)
        assert code == 0
        assert float(rows[0]["value"]) == pytest.approx(4.0 / 9.0, rel=1e-15)

    def test_a_seq_rows(self, capsys):
        code, out, _ = run_cli(capsys, "a-seq", "--r", "1", "--n-max", "1")
        rows = parse_csv(out)
        assert code == 0
        assert [row["n"] for row in rows] == ["0", "1"]
        assert rows[0]["value"] == "0.5"
        assert rows[1]["value"].startswith("0.5555555555")

    def test_mean_tail_degenerate(self, capsys):
        code, out, _ = run_cli(capsys, "mean-tail", "--r", "1", "--p", "1")
        rows = parse_csv(out)
        assert code == 0
        assert rows[0]["value"] == "1"

    def test_rational_flag_syntax(self, capsys):
        _, out_rat, _ = run_cli(capsys, "mean-tail", "--r", "1", "--p", "1/2")
        _, out_dec, _ = run_cli(capsys, "mean-tail", "--r", "1", "--p", "0.5")
        assert out_rat == out_dec
        assert float(parse_csv(out_rat)[0]["value"]) == 0.75

    def test_pmf(self, capsys):
        code, out, _ = run_cli(capsys, "pmf", "--r", "2", "--p", "0.5", "--n", "1")
        rows = parse_csv(out)
        assert code == 0
        assert float(rows[0]["value"]) == pytest.approx(0.25, rel=1e-14)
        assert rows[0]["path"] == "direct-sum"

    def test_cdf_reports_both_routes(self, capsys):
        code, out, _ = run_cli(capsys, "cdf", "--r", "2.5", "--p", "0.3", "--n", "4")
        rows = parse_csv(out)
        assert code == 0
        assert float(rows[0]["abs_diff"]) <= 1e-12
        assert float(rows[0]["direct_sum"]) == pytest.approx(
            float(rows[0]["incomplete_beta"]), abs=1e-12
        )

    def test_eval_over_grid(self, capsys):
        code, out, _ = run_cli(capsys, "mean-tail", "--r", "1", "--grid", "0.2:1:5")
        rows = parse_csv(out)
        assert code == 0
        assert len(rows) == 5
        assert [float(row["p"]) for row in rows] == pytest.approx([0.2, 0.4, 0.6, 0.8, 1.0])

    def test_seventeen_digit_round_trip(self, capsys):
        _, out, _ = run_cli(capsys, "mean-tail", "--r", "2.7", "--p", "0.37")
        value = parse_csv(out)[0]["value"]
        assert float(value) == float(f"{float(value):.17g}")
        digits = value.replace(".", "").replace("-", "").lstrip("0")
        assert len(digits) >= 16


class TestJsonFormat:
    def test_json_lines_parse(self, capsys):
        code, out, _ = run_cli(capsys, "inf", "--r", "1", "--format", "json")
        lines = [line for line in out.splitlines() if line]
        payload = json.loads(lines[0])
        assert code == 0
        assert payload["command"] == "inf"
        assert payload["outputs"]["value"] == 0.5
        assert payload["outputs"]["attained"] is False
        assert payload["status"] == "ok"

    def test_json_and_csv_agree(self, capsys):
        _, out_csv, _ = run_cli(capsys, "cdf", "--r", "2", "--p", "0.5", "--n", "3")
        _, out_json, _ = run_cli(
            capsys, "cdf", "--r", "2", "--p", "0.5", "--n", "3", "--format", "json"
        )
        csv_value = float(parse_csv(out_csv)[0]["direct_sum"])
        json_value = json.loads(out_json.splitlines()[0])["outputs"]["direct_sum"]
        assert csv_value == json_value


class TestVerify:
    def test_seq_forms_suite_passes(self, capsys):
        code, out, _ = run_cli(
            capsys, "verify", "--suite", "lemma21", "--r", "2", "--n-max", "50"
        )
        rows = parse_csv(out)
        assert code == 0
        assert len(rows) == 51
        assert all(row["status"] == "ok" for row in rows)

    def test_monotone_suite_passes(self, capsys):
        code, out, _ = run_cli(
            capsys, "verify", "--suite", "monotone", "--r", "0.5", "--n-max", "300"
        )
        rows = parse_csv(out)
        assert code == 0
        assert len(rows) == 300
        assert all(row["status"] == "ok" for row in rows)

    def test_chvatal_suite_passes(self, capsys):
        code, out, _ = run_cli(capsys, "verify", "--suite", "chvatal-binomial", "--n-max", "12")
        rows = parse_csv(out)
        assert code == 0
        for row in rows:
            argmin = set(row["argmin"].split(";"))
            closest = set(row["closest"].split(";"))
            assert argmin <= closest

    def test_tail_and_bound_suites_pass(self, capsys):
        code, _, _ = run_cli(capsys, "verify", "--suite", "lemma22", "--r", "1", "--n-max", "5")
        assert code == 0
        code, _, _ = run_cli(capsys, "verify", "--suite", "bound222", "--r", "1", "--n-max", "5")
        assert code == 0

    def test_coeff_suite_passes(self, capsys):
        code, out, _ = run_cli(capsys, "verify", "--suite", "coeff", "--r", "2", "--n-max", "10")
        rows = parse_csv(out)
        assert code == 0
        assert len(rows) == 55

    def test_unreachable_tolerance_fails_with_exit_one(self, capsys):
        code, out, _ = run_cli(
            capsys,
            "verify", "--suite", "lemma21", "--r", "2", "--n-max", "5", "--tol", "1e-18",
        )
        rows = parse_csv(out)
        assert code == 1
        assert any(row["status"] == "failed" for row in rows)


class TestSweep:
    def test_summary_row_and_strict_bound(self, capsys):
        code, out, _ = run_cli(capsys, "sweep", "--r", "1", "--grid", "1/999:1:999")
        rows = parse_csv(out)
        assert code == 0
        points = [row for row in rows if row["p"] != ""]
        summary = [row for row in rows if row["p"] == ""]
        assert len(points) == 999
        assert len(summary) == 1
        assert float(summary[0]["grid_min"]) > 0.5
        assert float(summary[0]["infimum"]) == 0.5

    def test_single_point_grid(self, capsys):
        code, out, _ = run_cli(capsys, "sweep", "--r", "2", "--grid", "1:1:1")
        rows = parse_csv(out)
        assert code == 0
        assert rows[0]["mean_tail"] == "1"

    def test_zero_start_is_nudged_with_warning(self, capsys):
        code, out, err = run_cli(capsys, "sweep", "--r", "1", "--grid", "0:1:5")
        rows = parse_csv(out)
        assert code == 0
        assert "warning" in err
        points = [row for row in rows if row["p"] != ""]
        assert points[0]["p"] == "0.25"

    def test_grid_min_near_infimum(self, capsys):
        code, out, _ = run_cli(capsys, "sweep", "--r", "3", "--grid", "0.750001:1:2")
        summary = [row for row in parse_csv(out) if row["p"] == ""][0]
        assert float(summary["grid_min"]) - 27.0 / 64.0 <= 1e-3


class TestSample:
    def test_deterministic_bytes(self, capsys):
        _, first, _ = run_cli(
            capsys, "sample", "--r", "2.5", "--p", "0.3", "--seed", "9", "--draws", "25"
        )
        _, second, _ = run_cli(
            capsys, "sample", "--r", "2.5", "--p", "0.3", "--seed", "9", "--draws", "25"
        )
        assert first == second

    def test_seed_changes_output(self, capsys):
        _, first, _ = run_cli(
            capsys, "sample", "--r", "2.5", "--p", "0.3", "--seed", "1", "--draws", "25"
        )
        _, second, _ = run_cli(
            capsys, "sample", "--r", "2.5", "--p", "0.3", "--seed", "2", "--draws", "25"
        )
        assert first != second

    def test_summary_with_estimate(self, capsys):
        code, out, _ = run_cli(
            capsys,
            "sample", "--r", "1", "--p", "0.5", "--seed", "3", "--draws", "4000", "--n", "1",
        )
        rows = parse_csv(out)
        assert code == 0
        draws = [row for row in rows if row["index"] != ""]
        summary = [row for row in rows if row["index"] == ""][0]
        assert len(draws) == 4000
        estimate = float(summary["estimate"])
        std_error = float(summary["std_error"])
        assert abs(estimate - float(summary["analytic"])) <= 4.0 * std_error


class TestErrorPaths:
    def test_missing_flags_exit_two(self, capsys):
        code, _, err = run_cli(capsys, "mean-tail", "--r", "1")
        assert code == 2
        assert "usage error" in err

    def test_bad_grid_exits_two(self, capsys):
        with pytest.raises(SystemExit) as excinfo:
            main(["sweep", "--r", "1", "--grid", "nonsense"])
        assert excinfo.value.code == 2

    def test_unknown_flag_exits_two(self, capsys):
        with pytest.raises(SystemExit) as excinfo:
            main(["inf", "--bogus", "1"])
        assert excinfo.value.code == 2

    def test_domain_error_record(self, capsys):
        code, out, err = run_cli(capsys, "pmf", "--r", "-1", "--p", "0.5", "--n", "0")
        rows = parse_csv(out)
        assert code == 1
        assert rows[0]["status"] == "error"
        assert "error" in err

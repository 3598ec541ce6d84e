"""Command surface: schemas, determinism, exit codes."""

import csv
import json
import math

import pytest

from dc_optlab.cli import main


def run(args):
    return main([str(a) for a in args])


def read_rows(path):
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader)
        return header, [row for row in reader if row]


class TestGenData:
    def test_writes_csv_with_split(self, tmp_path):
        out, tr, te = tmp_path / "d.csv", tmp_path / "tr.csv", tmp_path / "te.csv"
        code = run(["gen-data", "--out", out, "--m", 20, "--seed", 3,
                    "--train-out", tr, "--test-out", te])
        assert code == 0
        header, rows = read_rows(out)
        assert header == ["x1", "x2", "y"]
        assert len(rows) == 20
        assert len(read_rows(tr)[1]) == 16
        assert len(read_rows(te)[1]) == 4

    def test_byte_identical_reruns(self, tmp_path):
        a, b = tmp_path / "a.csv", tmp_path / "b.csv"
        run(["gen-data", "--out", a, "--seed", 7])
        run(["gen-data", "--out", b, "--seed", 7])
        assert a.read_bytes() == b.read_bytes()

    def test_half_split_flags_rejected(self, tmp_path):
        code = run(["gen-data", "--out", tmp_path / "d.csv", "--train-out", tmp_path / "t.csv"])
        assert code == 2


class TestCurves:
    def test_no_dc_prob_anchor_at_difficulty(self, tmp_path):
        out = tmp_path / "c.csv"
        assert run(["curves", "--out", out, "--preset", "no-dc",
                    "--t-min", -6, "--t-max", 6, "--samples", 241]) == 0
        header, rows = read_rows(out)
        assert header == ["config", "t", "prob", "loss", "derivative", "f"]
        at_zero = [r for r in rows if float(r[1]) == 0.0]
        assert len(at_zero) == 1
        assert float(at_zero[0][2]) == pytest.approx(0.5, rel=1e-12)

    def test_derivative_column_matches_column_differences(self, tmp_path):
        out = tmp_path / "c.csv"
        run(["curves", "--out", out, "--preset", "no-dc",
             "--t-min", -4, "--t-max", 4, "--samples", 801])
        _, rows = read_rows(out)
        t = [float(r[1]) for r in rows]
        loss = [float(r[3]) for r in rows]
        deriv = [float(r[4]) for r in rows]
        for i in range(1, len(rows) - 1):
            fd = (loss[i + 1] - loss[i - 1]) / (t[i + 1] - t[i - 1])
            assert abs(deriv[i] - fd) <= 1e-4 * max(1.0, abs(deriv[i]))

    def test_all_presets_emitted(self, tmp_path):
        out = tmp_path / "c.csv"
        run(["curves", "--out", out, "--preset", "all", "--samples", 11])
        _, rows = read_rows(out)
        assert {r[0] for r in rows} == {"no-dc", "growing-dc", "decaying-dc", "grow-decay-dc"}
        assert len(rows) == 4 * 11

    def test_explicit_params(self, tmp_path):
        out = tmp_path / "c.csv"
        assert run(["curves", "--out", out, "--params", "2,1,1,0.7", "--samples", 5]) == 0
        _, rows = read_rows(out)
        assert rows[0][0] == "custom0"

    def test_single_sample_rejected(self, tmp_path):
        assert run(["curves", "--out", tmp_path / "c.csv", "--samples", 1]) == 2

    def test_malformed_params_rejected(self, tmp_path):
        assert run(["curves", "--out", tmp_path / "c.csv", "--params", "1,2,3"]) == 2


class TestRates:
    def test_dc_rate_below_default(self, tmp_path):
        out = tmp_path / "r.csv"
        assert run(["rates", "--out", out, "--z-min", 3, "--z-max", 10,
                    "--samples", 50]) == 0
        header, rows = read_rows(out)
        assert header == ["z", "g_dc", "g_default", "lower", "upper", "z_min"]
        assert len(rows) == 50
        for row in rows:
            assert float(row[1]) < float(row[2])
            assert float(row[5]) == pytest.approx(1.0)

    def test_difficulty_shifts_by_exactly_d(self, tmp_path):
        a, b = tmp_path / "d0.csv", tmp_path / "d5.csv"
        run(["rates", "--out", a, "--d", 0, "--z-min", 3, "--z-max", 8, "--samples", 21])
        run(["rates", "--out", b, "--d", 5, "--z-min", 3, "--z-max", 8, "--samples", 21])
        _, ra = read_rows(a)
        _, rb = read_rows(b)
        for r0, r5 in zip(ra, rb):
            assert float(r5[1]) == float(r0[1]) + 5.0

    def test_whole_range_below_onset_rejected(self, tmp_path):
        assert run(["rates", "--out", tmp_path / "r.csv", "--z-min", 0.1,
                    "--z-max", 0.9, "--samples", 9]) == 2

    def test_partial_range_keeps_valid_rows(self, tmp_path):
        out = tmp_path / "r.csv"
        run(["rates", "--out", out, "--z-min", 0.5, "--z-max", 3.0, "--samples", 26])
        _, rows = read_rows(out)
        assert 0 < len(rows) < 26
        assert all(float(r[0]) >= 1.0 for r in rows)


class TestVerify:
    @pytest.mark.parametrize("suite", ["lambert", "theorem", "corollary", "gradient"])
    def test_each_suite_passes(self, suite, tmp_path, capsys):
        report_path = tmp_path / "report.json"
        code = run(["verify", "--suite", suite, "--json-out", report_path])
        assert code == 0
        report = json.loads(report_path.read_text())
        assert report["passed"] is True
        assert report["suites"][0]["suite"] == suite

    def test_all_runs_every_suite(self, tmp_path):
        report_path = tmp_path / "report.json"
        assert run(["verify", "--suite", "all", "--json-out", report_path]) == 0
        report = json.loads(report_path.read_text())
        assert [s["suite"] for s in report["suites"]] == [
            "lambert", "theorem", "corollary", "gradient",
        ]

    def test_unknown_suite_is_usage_error(self, tmp_path):
        with pytest.raises(SystemExit) as exc:
            run(["verify", "--suite", "nope"])
        assert exc.value.code == 2

    def test_theorem_grid_coverage(self, tmp_path):
        report_path = tmp_path / "report.json"
        run(["verify", "--suite", "theorem", "--json-out", report_path])
        report = json.loads(report_path.read_text())
        coverage = [c for c in report["suites"][0]["checks"] if c["name"] == "grid_coverage"]
        assert coverage[0]["checked"] >= 1000

    def test_gradient_suite_accepts_seed(self, tmp_path):
        report_path = tmp_path / "report.json"
        assert run(["verify", "--suite", "gradient", "--seed", 5, "--json-out",
                    report_path]) == 0
        assert json.loads(report_path.read_text())["passed"] is True


class TestTrain:
    def test_trace_and_weights(self, tmp_path):
        trace, weights = tmp_path / "t.csv", tmp_path / "w.json"
        code = run(["train", "--trace-out", trace, "--weights-out", weights,
                    "--m", 100, "--epochs", 10, "--seed", 1])
        assert code == 0
        header, rows = read_rows(trace)
        assert header == ["epoch", "train_loss", "test_accuracy", "theta_norm",
                          "min_normalized_margin"]
        assert len(rows) == 10
        theta = json.loads(weights.read_text())["theta"]
        assert len(theta) == 2

    def test_byte_identical_reruns(self, tmp_path):
        a, b = tmp_path / "a.csv", tmp_path / "b.csv"
        args = ["--m", 100, "--epochs", 8, "--seed", 5, "--data-seed", 2]
        run(["train", "--trace-out", a] + args)
        run(["train", "--trace-out", b] + args)
        assert a.read_bytes() == b.read_bytes()

    def test_csv_input_round(self, tmp_path):
        data = tmp_path / "d.csv"
        run(["gen-data", "--out", data, "--m", 60, "--seed", 4])
        trace = tmp_path / "t.csv"
        code = run(["train", "--trace-out", trace, "--data", data,
                    "--epochs", 5, "--batch-size", 12])
        assert code == 0
        assert len(read_rows(trace)[1]) == 5

    def test_missing_data_file_is_io_error(self, tmp_path):
        assert run(["train", "--trace-out", tmp_path / "t.csv",
                    "--data", tmp_path / "nope.csv"]) == 3

    def test_preset_flag(self, tmp_path):
        trace = tmp_path / "t.csv"
        assert run(["train", "--trace-out", trace, "--preset", "growing-dc",
                    "--m", 60, "--epochs", 3, "--batch-size", 12]) == 0


class TestSweep:
    def test_desk_profile_deterministic_and_sized(self, tmp_path):
        ja, ca = tmp_path / "a.json", tmp_path / "a.csv"
        jb, cb = tmp_path / "b.json", tmp_path / "b.csv"
        args = ["sweep", "--profile", "desk", "--m", 80, "--epochs", 6,
                "--batch-size", 16, "--seed", 2]
        assert run(args + ["--json-out", ja, "--csv-out", ca]) == 0
        assert run(args + ["--json-out", jb, "--csv-out", cb]) == 0
        assert ja.read_bytes() == jb.read_bytes()
        assert ca.read_bytes() == cb.read_bytes()
        result = json.loads(ja.read_text())
        assert len(result["per_config"]) == 8  # 12.5% of the 64-config desk grid
        assert result["runs_per_config"] == 3
        _, rows = read_rows(ca)
        assert len(rows) == 8 * 3

    def test_threads_flag_keeps_bytes(self, tmp_path):
        a, b = tmp_path / "a.json", tmp_path / "b.json"
        args = ["sweep", "--profile", "desk", "--m", 60, "--epochs", 4,
                "--batch-size", 12, "--seed", 9]
        run(args + ["--threads", 1, "--json-out", a])
        run(args + ["--threads", 4, "--json-out", b])
        assert a.read_bytes() == b.read_bytes()

    def test_table_printed(self, tmp_path, capsys):
        run(["sweep", "--profile", "desk", "--m", 60, "--epochs", 3,
             "--batch-size", 12, "--seed", 1])
        out = capsys.readouterr().out
        assert "family" in out
        assert "no_dc" in out

    def test_grid_spec_file(self, tmp_path):
        spec = tmp_path / "grid.json"
        spec.write_text(json.dumps({
            "d_steps": 1, "p_steps": 1, "r_steps": 2, "c_steps": 2,
            "pick_fraction": 1.0, "runs": 1, "seed": 4,
        }))
        out = tmp_path / "s.csv"
        assert run(["sweep", "--grid-spec", spec, "--m", 60, "--epochs", 3,
                    "--batch-size", 12, "--csv-out", out]) == 0
        _, rows = read_rows(out)
        assert len(rows) == 4  # 1*1*2*2 grid, full pick, one run each

    def test_grid_spec_bad_json_is_format_error(self, tmp_path):
        spec = tmp_path / "grid.json"
        spec.write_text("{not json")
        assert run(["sweep", "--grid-spec", spec, "--m", 60, "--epochs", 2,
                    "--batch-size", 12]) == 3

    def test_grid_spec_unknown_field_is_usage_error(self, tmp_path):
        spec = tmp_path / "grid.json"
        spec.write_text(json.dumps({"bogus": 1}))
        assert run(["sweep", "--grid-spec", spec, "--m", 60, "--epochs", 2,
                    "--batch-size", 12]) == 2


class TestPlot:
    def make_rates_csv(self, tmp_path):
        path = tmp_path / "rates.csv"
        run(["rates", "--out", path, "--z-min", 3, "--z-max", 8, "--samples", 11])
        return path

    def test_rates_plot_has_four_series(self, tmp_path):
        svg = tmp_path / "r.svg"
        assert run(["plot", "--kind", "rates", "--in", self.make_rates_csv(tmp_path),
                    "--out", svg]) == 0
        text = svg.read_text()
        assert text.count("<polyline") == 4
        for label in ("g_dc", "g_default", "lower", "upper"):
            assert label in text

    def test_byte_deterministic(self, tmp_path):
        src = self.make_rates_csv(tmp_path)
        a, b = tmp_path / "a.svg", tmp_path / "b.svg"
        run(["plot", "--kind", "rates", "--in", src, "--out", a])
        run(["plot", "--kind", "rates", "--in", src, "--out", b])
        assert a.read_bytes() == b.read_bytes()

    def test_empty_series_gives_axes_only(self, tmp_path):
        src = tmp_path / "empty.csv"
        src.write_text("config,t,prob,loss,derivative,f\n")
        svg = tmp_path / "e.svg"
        assert run(["plot", "--kind", "curves", "--in", src, "--out", svg]) == 0
        text = svg.read_text()
        assert "<polyline" not in text
        assert "<rect" in text

    def test_curves_and_trace_and_sweep_kinds(self, tmp_path):
        curves = tmp_path / "c.csv"
        run(["curves", "--out", curves, "--preset", "all", "--samples", 9])
        assert run(["plot", "--kind", "curves", "--in", curves,
                    "--out", tmp_path / "c.svg"]) == 0

        trace = tmp_path / "t.csv"
        run(["train", "--trace-out", trace, "--m", 60, "--epochs", 4, "--batch-size", 12])
        assert run(["plot", "--kind", "trace", "--in", trace,
                    "--out", tmp_path / "t.svg"]) == 0

        sweep_csv = tmp_path / "s.csv"
        run(["sweep", "--profile", "desk", "--m", 60, "--epochs", 3,
             "--batch-size", 12, "--csv-out", sweep_csv])
        assert run(["plot", "--kind", "sweep", "--in", sweep_csv,
                    "--out", tmp_path / "s.svg"]) == 0

    def test_bad_header_is_format_error(self, tmp_path):
        src = tmp_path / "bad.csv"
        src.write_text("a,b\n1,2\n")
        assert run(["plot", "--kind", "rates", "--in", src, "--out", tmp_path / "x.svg"]) == 3

    def test_missing_file_is_io_error(self, tmp_path):
        assert run(["plot", "--kind", "rates", "--in", tmp_path / "nope.csv",
                    "--out", tmp_path / "x.svg"]) == 3

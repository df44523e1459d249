"""Command-line interface.

Every test drives ``main`` in process and reads captured stdout and
stderr, so the assertions cover the exact bytes a shell user sees:
column names, printed precision, exit codes, and the error channel.
"""

import csv
import io
import json
import math
import re

import pytest

from confunc.cli import main


def run(capsys, argv):
    code = main(argv)
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def parse_csv(text):
    return list(csv.DictReader(io.StringIO(text)))


class TestLambda0Command:
    def test_single_value(self, capsys):
        code, out, err = run(capsys, ["lambda0", "--c", "1.0"])
        assert code == 0
        rows = parse_csv(out)
        assert len(rows) == 1
        assert set(rows[0]) == {
            "c",
            "lambda0",
            "one_minus_lambda0",
            "small_c_approx",
            "large_c_approx",
        }
        assert rows[0]["lambda0"] == "0.572582"

    def test_zero(self, capsys):
        code, out, _ = run(capsys, ["lambda0", "--c", "0"])
        assert code == 0
        row = parse_csv(out)[0]
        assert float(row["lambda0"]) == 0.0
        assert float(row["one_minus_lambda0"]) == 1.0

    def test_repeatable_and_range(self, capsys):
        code, out, _ = run(
            capsys, ["lambda0", "--c", "0.25", "--c", "0.5", "--order", "160"]
        )
        assert code == 0
        assert len(parse_csv(out)) == 2
        code, out, _ = run(capsys, ["lambda0", "--range", "0.5:2:0.5", "--order", "160"])
        assert code == 0
        values = [float(r["lambda0"]) for r in parse_csv(out)]
        assert len(values) == 4
        assert values == sorted(values)

    def test_requires_values(self, capsys):
        code, _, err = run(capsys, ["lambda0"])
        assert code == 2
        assert "error:" in err

    @pytest.mark.parametrize("spec", ["1:2", "a:b:c", "2:1:0.5", "1:2:-1"])
    def test_malformed_range(self, capsys, spec):
        code, _, err = run(capsys, ["lambda0", "--range", spec])
        assert code == 2
        assert "error:" in err


class TestBoundsCommand:
    def test_point_report(self, capsys):
        code, out, _ = run(capsys, ["bounds", "--tx", "0.9", "--tp", "0.9"])
        assert code == 0
        row = parse_csv(out)[0]
        assert row["region"] == "bounded"
        assert row["lp_measurable"] == "4.02124"
        assert row["lp_interval"] == "4.62261"
        assert row["donoho_stark"] == "0.848789"
        assert row["elementary"] == "1.16698"
        assert row["gaussian_product"] == "5.41109"

    def test_trivial_point(self, capsys):
        code, out, _ = run(capsys, ["bounds", "--tx", "0.3", "--tp", "0.5"])
        assert code == 0
        row = parse_csv(out)[0]
        assert row["region"] == "trivial"
        assert float(row["lp_measurable"]) == 0.0
        assert float(row["lp_interval"]) == 0.0
        assert row["elementary"] == ""

    def test_divergent_corner(self, capsys):
        code, out, _ = run(capsys, ["bounds", "--tx", "1", "--tp", "1"])
        assert code == 0
        row = parse_csv(out)[0]
        assert row["lp_interval"] == "divergent"
        assert row["gaussian_product"] == "inf"

    def test_out_of_square(self, capsys):
        code, _, err = run(capsys, ["bounds", "--tx", "1.2", "--tp", "0.5"])
        assert code == 2
        assert "error:" in err

    def test_requires_point_or_grid(self, capsys):
        code, _, err = run(capsys, ["bounds"])
        assert code == 2
        assert "error:" in err

    def test_landscape_grid(self, capsys):
        code, out, _ = run(capsys, ["bounds", "--grid", "7", "--order", "120"])
        assert code == 0
        rows = parse_csv(out)
        assert len(rows) == 49
        assert set(rows[0]) == {"theta_x", "theta_p", "lp_interval"}
        for row in rows:
            tx, tp = float(row["theta_x"]), float(row["theta_p"])
            if tx + tp <= 1.0:
                assert float(row["lp_interval"]) == 0.0
            else:
                assert float(row["lp_interval"]) > 0.0

    def test_rejects_empty_grid(self, capsys):
        code, _, err = run(capsys, ["bounds", "--grid", "0"])
        assert code == 2
        assert "error:" in err


class TestCompareCommand:
    def test_default_levels(self, capsys):
        code, out, _ = run(capsys, ["compare"])
        assert code == 0
        rows = parse_csv(out)
        assert [r["theta"] for r in rows] == [
            "0.55",
            "0.6",
            "0.7",
            "0.8",
            "0.9",
            "0.95",
            "0.99",
        ]
        by_theta = {r["theta"]: r for r in rows}
        assert by_theta["0.9"]["gaussian"] == "5.41109"
        assert abs(float(by_theta["0.9"]["ratio"]) - 1.17) <= 0.01
        assert abs(float(by_theta["0.55"]["ratio"]) - 18.16) <= 0.05

    def test_half_level_degenerates(self, capsys):
        code, out, _ = run(capsys, ["compare", "--theta", "0.5"])
        assert code == 0
        row = parse_csv(out)[0]
        assert float(row["slepian"]) == 0.0
        assert row["ratio"] == "inf"

    def test_rejects_boundary_theta(self, capsys):
        code, _, err = run(capsys, ["compare", "--theta", "1.0"])
        assert code == 2
        assert "error:" in err


class TestVerifyCommand:
    def test_two_route_suite_passes(self, capsys):
        code, out, _ = run(capsys, ["verify", "two-route"])
        assert code == 0
        rows = parse_csv(out)
        assert len(rows) == 4
        assert all(r["status"] == "pass" for r in rows)
        assert all(float(r["measured"]) <= 1e-6 for r in rows)

    def test_unknown_suite(self, capsys):
        code, _, _ = run(capsys, ["verify", "nonsense"])
        assert code == 2


class TestStateCommand:
    def test_gaussian(self, capsys):
        code, out, err = run(capsys, ["state", "gaussian", "--sigma", "1.0"])
        assert code == 0
        rows = parse_csv(out)
        assert len(rows) == 4096
        assert set(rows[0]) == {"x", "re_psi", "im_psi", "density_x", "p", "density_p"}
        assert "entropic floor=2.144730" in err
        match = re.search(r"sum=([0-9.]+)", err)
        assert match is not None
        assert abs(float(match.group(1)) - math.log(math.pi * math.e)) <= 1e-3

    def test_slepian_reports_band_mass(self, capsys):
        code, out, err = run(capsys, ["state", "slepian", "--c", "1.0"])
        assert code == 0
        assert len(parse_csv(out)) == 1 << 15
        assert "lambda0=0.572582" in err
        match = re.search(r"in-band momentum mass=([0-9.]+)", err)
        assert abs(float(match.group(1)) - 0.572582) <= 2e-3

    def test_rect_sinc_reports_masses(self, capsys):
        code, out, err = run(capsys, ["state", "rect-sinc", "--L", "1", "--W", "1"])
        assert code == 0
        assert len(parse_csv(out)) == 1024
        match = re.search(r"position mass=([0-9.]+) \(continuum ([0-9.]+)\)", err)
        assert match is not None
        assert abs(float(match.group(1)) - float(match.group(2))) <= 5e-3

    def test_slepian_requires_c(self, capsys):
        code, _, err = run(capsys, ["state", "slepian"])
        assert code == 2
        assert "error:" in err

    def test_rect_sinc_requires_window(self, capsys):
        code, _, err = run(capsys, ["state", "rect-sinc", "--L", "1"])
        assert code == 2
        assert "error:" in err

    def test_unknown_kind(self, capsys):
        code, _, _ = run(capsys, ["state", "plane-wave"])
        assert code == 2


class TestOutputPlumbing:
    def test_json_mirrors_csv(self, capsys):
        _, csv_out, _ = run(capsys, ["lambda0", "--c", "1.0"])
        _, json_out, _ = run(capsys, ["lambda0", "--c", "1.0", "--format", "json"])
        csv_row = parse_csv(csv_out)[0]
        json_row = json.loads(json_out)[0]
        assert set(json_row) == set(csv_row)
        assert json_row["lambda0"] == float(csv_row["lambda0"])

    def test_json_encodes_infinity_as_string(self, capsys):
        _, out, _ = run(
            capsys, ["bounds", "--tx", "1", "--tp", "1", "--format", "json"]
        )
        row = json.loads(out)[0]
        assert row["gaussian_product"] == "inf"
        assert row["lp_interval"] == "divergent"

    def test_out_file(self, capsys, tmp_path):
        path = tmp_path / "table.csv"
        code, out, _ = run(capsys, ["lambda0", "--c", "2.0", "--out", str(path)])
        assert code == 0
        assert out == ""
        rows = parse_csv(path.read_text())
        assert rows[0]["lambda0"] == "0.88056"

    def test_deterministic_output(self, capsys):
        _, first, _ = run(capsys, ["bounds", "--grid", "5", "--order", "120"])
        _, second, _ = run(capsys, ["bounds", "--grid", "5", "--order", "120"])
        assert first == second


class TestOrderResolution:
    def test_env_is_used(self, capsys, monkeypatch):
        monkeypatch.setenv("CONFUNC_ORDER", "1")
        code, _, err = run(capsys, ["lambda0", "--c", "1.0"])
        assert code == 2
        assert "error:" in err

    def test_flag_overrides_env(self, capsys, monkeypatch):
        monkeypatch.setenv("CONFUNC_ORDER", "1")
        code, out, _ = run(capsys, ["lambda0", "--c", "1.0", "--order", "120"])
        assert code == 0
        assert parse_csv(out)[0]["lambda0"] == "0.572582"

    def test_malformed_env(self, capsys, monkeypatch):
        monkeypatch.setenv("CONFUNC_ORDER", "plenty")
        code, _, err = run(capsys, ["lambda0", "--c", "1.0"])
        assert code == 2
        assert "must be an integer" in err

    def test_bad_flag_value(self, capsys):
        code, _, err = run(capsys, ["lambda0", "--c", "1.0", "--order", "1"])
        assert code == 2
        assert "error:" in err


class TestParserBasics:
    def test_unknown_subcommand(self, capsys):
        code, _, _ = run(capsys, ["sing"])
        assert code == 2

    def test_no_arguments(self, capsys):
        code, _, _ = run(capsys, [])
        assert code == 2

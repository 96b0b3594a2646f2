import json

import pytest

from divpart import cli


def run_cli(args, capsys):
    code = cli.main(args)
    out = capsys.readouterr()
    return code, out.out, out.err


class TestConstants:
    def test_r1_values(self, capsys, tmp_path):
        path = tmp_path / "constants.json"
        code, _, _ = run_cli(["constants", "--r", "1", "--output", str(path)], capsys)
        assert code == 0
        doc = json.loads(path.read_text())
        assert abs(float(doc["C"]) - 1.339784) < 1e-5
        assert abs(float(doc["zeta2_times_C"]) - 2.20386) < 1e-4

    def test_r2_has_both_conventions(self, capsys):
        code, out, _ = run_cli(["constants", "--r", "2"], capsys)
        assert code == 0
        doc = json.loads(out)
        for key in ("C", "Cprime", "K1", "N", "C_mu", "C_sigma", "convention"):
            assert key in doc
        assert doc["convention"] == "standard"
        assert doc["alt_convention"] == "shifted-zeta"
        assert float(doc["C_mu"]) > 0


class TestTable:
    def test_csv_contains_known_cell(self, capsys):
        code, out, _ = run_cli(["table", "--r", "2", "--N", "3", "--format", "csv"], capsys)
        assert code == 0
        assert out.splitlines()[0] == "n,k,coefficient"
        assert "3,2,20" in out.splitlines()

    def test_json_format(self, capsys):
        code, out, _ = run_cli(["table", "--r", "2", "--N", "5", "--format", "json"], capsys)
        assert code == 0
        doc = json.loads(out)
        assert doc["n_max"] == 5


class TestSaddleCommand:
    def test_keys_and_residual(self, capsys):
        code, out, _ = run_cli(
            ["saddle", "--n", "100", "--r", "2", "--u", "1.0", "--mode", "general"],
            capsys,
        )
        assert code == 0
        doc = json.loads(out)
        for key in ("tau", "residual", "F", "F_g", "F_gg", "B2", "mu", "nu2"):
            assert key in doc
        assert float(doc["residual"]) < 1e-7


class TestReportCommands:
    def test_clt_report_csv_and_json(self, capsys, tmp_path):
        csv_path = tmp_path / "rows.csv"
        json_path = tmp_path / "summary.json"
        code, _, _ = run_cli(
            ["clt-report", "--r", "2", "--n-list", "10,20,30,40",
             "--csv", str(csv_path), "--output", str(json_path)],
            capsys,
        )
        assert code == 0
        lines = csv_path.read_text().splitlines()
        assert lines[0].startswith("n,mean_exact")
        assert len(lines) == 5
        doc = json.loads(json_path.read_text())
        assert doc["n_list"] == [10, 20, 30, 40]
        assert "exclusion_count" in doc

    def test_tail_refusal_becomes_finding(self, capsys):
        code, out, _ = run_cli(["tail", "--n", "50", "--r", "2", "--x-grid", "1,2"], capsys)
        assert code == 0
        assert "# finding:" in out

    def test_mgf_with_override(self, capsys):
        code, out, _ = run_cli(
            ["mgf", "--n", "50", "--r", "2", "--theta-grid", "0.25,0.5",
             "--max-negative-mass", "0.01"],
            capsys,
        )
        assert code == 0
        lines = out.splitlines()
        assert lines[0] == "theta,mgf_exact,gauss_target,rel_deviation"
        assert len(lines) == 3

    def test_mgf_strict_refuses(self, capsys):
        code, _, err = run_cli(["mgf", "--n", "50", "--r", "2"], capsys)
        assert code == 1
        assert "refused" in err


class TestDirichletCheck:
    def test_emits_series_comparison(self, capsys):
        code, out, _ = run_cli(["dirichlet-check", "--r", "2", "--s", "5.0"], capsys)
        assert code == 0
        doc = json.loads(out)
        assert float(doc["d1_difference"]) < 1e-3
        assert doc["shifted_ok"] is True
        assert float(doc["dsigma_residual"]) < 1e-6


class TestVerify:
    def test_quick_passes(self, capsys, tmp_path):
        path = tmp_path / "verify.json"
        code, out, _ = run_cli(["verify", "--quick", "--output", str(path)], capsys)
        assert code == 0
        assert out.strip().endswith("checks passed)")
        doc = json.loads(path.read_text())
        assert doc["failures"] == 0


class TestDeterminism:
    def test_byte_identical_reruns(self, capsys):
        _, out1, _ = run_cli(["table", "--r", "2", "--N", "12", "--format", "json"], capsys)
        _, out2, _ = run_cli(["table", "--r", "2", "--N", "12", "--format", "json"], capsys)
        assert out1 == out2
        _, c1, _ = run_cli(["constants", "--r", "2"], capsys)
        _, c2, _ = run_cli(["constants", "--r", "2"], capsys)
        assert c1 == c2


class TestConfigErrors:
    def test_bad_r(self, capsys):
        code, _, err = run_cli(["constants", "--r", "0"], capsys)
        assert code == 2
        assert "configuration error" in err

    def test_unknown_flag_rejected(self, capsys):
        with pytest.raises(SystemExit) as exc:
            cli.main(["constants", "--bogus", "3"])
        assert exc.value.code == 2
        capsys.readouterr()

    def test_help_lists_defaults(self, capsys):
        with pytest.raises(SystemExit) as exc:
            cli.main(["constants", "--help"])
        assert exc.value.code == 0
        out = capsys.readouterr().out
        assert "--prime-cutoff" in out
        assert "1000000" in out

"""Tests for the command-line interface: argument guards, CSV format,
determinism and exit codes."""

import subprocess
import sys

import pytest

from matball.cli import main, parse_complex, parse_radii


def run_cli(args):
    return main(args)


class TestParsing:
    def test_complex_forms(self):
        assert parse_complex("3") == 3.0
        assert parse_complex("2.5+1i") == 2.5 + 1j
        assert parse_complex("2.5-0.5j") == 2.5 - 0.5j
        with pytest.raises(Exception):
            parse_complex("abc")

    def test_radii(self):
        assert parse_radii("0.5,0.9") == (0.5, 0.9)
        with pytest.raises(Exception):
            parse_radii("0.5,1.5")

    def test_usage_error_names_guard(self, capsys):
        with pytest.raises(SystemExit) as exc:
            run_cli(["key-lemma", "--n", "2", "--s", "0.5"])
        assert exc.value.code == 2
        assert "asymptotic range" in capsys.readouterr().err

    def test_valid_config_runs(self, tmp_path):
        out = tmp_path / "km.csv"
        code = run_cli(["key-lemma", "--n", "2", "--nu", "0", "--s", "3.0",
                        "--max-m", "1", "--out", str(out)])
        assert code == 0
        assert out.exists()


class TestCsvFormat:
    def test_header_and_determinism(self, tmp_path):
        out1 = tmp_path / "a.csv"
        out2 = tmp_path / "b.csv"
        args = ["lemma-b", "--n", "2", "--seed", "7"]
        assert run_cli(args + ["--out", str(out1)]) == 0
        assert run_cli(args + ["--out", str(out2)]) == 0
        b1, b2 = out1.read_bytes(), out2.read_bytes()
        assert b1 == b2  # bit-identical for identical config
        text = b1.decode()
        lines = text.splitlines()
        assert lines[0].startswith("# matball ")
        assert lines[1] == "# command: lemma-b"
        assert lines[2].startswith("# config: ")
        assert "seed=7" in lines[2]
        assert lines[3] == "# seed: 7"
        header = lines[4].split(",")
        assert "ratio_re" in header and "ratio_im" in header
        assert all(c == c.lower() for c in header)

    def test_seventeen_digit_floats(self, tmp_path):
        out = tmp_path / "km.csv"
        run_cli(["key-lemma", "--n", "1", "--s", "1.5", "--max-m", "1",
                 "--out", str(out)])
        rows = [ln for ln in out.read_text().splitlines()
                if not ln.startswith("#")][1:]
        # a generic deviation value carries 17 significant digits
        cell = rows[0].split(",")[-1]
        mantissa = cell.lstrip("-0.").replace(".", "").split("e")[0]
        assert len(mantissa) >= 15


class TestExitCodes:
    def test_pass(self, tmp_path):
        assert run_cli(["e9", "--out", str(tmp_path / "e9.csv")]) == 0

    def test_usage(self):
        with pytest.raises(SystemExit) as exc:
            run_cli(["key-lemma", "--n", "0"])
        assert exc.value.code == 2

    def test_numerical_guard(self, tmp_path, capsys):
        # an oversized finite-difference step pushes probes out of the ball
        code = run_cli(["hua-check", "--n", "1", "--fd-step", "0.2",
                        "--out", str(tmp_path / "h.csv")])
        assert code == 3
        assert "MarginError" in capsys.readouterr().err

    def test_subprocess_entry_point(self, tmp_path):
        # the installed console script mirrors main()
        proc = subprocess.run(
            [sys.executable, "-m", "matball.cli", "kernel", "--n", "1",
             "--nu", "1", "--s", "2.0", "--out", str(tmp_path / "k.csv")],
            capture_output=True, text=True)
        assert proc.returncode == 0


class TestCommands:
    def test_phi_oracle_comparison(self, tmp_path):
        out = tmp_path / "phi.csv"
        assert run_cli(["phi", "--n", "1", "--s", "1.5", "--max-m", "2",
                        "--radii", "0.2,0.5", "--out", str(out)]) == 0
        rows = [ln for ln in out.read_text().splitlines()
                if not ln.startswith("#")]
        assert rows[0].split(",")[-1] == "passed"
        assert all(ln.endswith(",1") for ln in rows[1:])

    def test_kernel_modes(self, tmp_path):
        assert run_cli(["kernel", "--n", "2", "--nu", "1", "--s", "3.0",
                        "--max-m", "2", "--out", str(tmp_path / "k.csv")]) == 0

    def test_lemma_a_seeded(self, tmp_path):
        assert run_cli(["lemma-a", "--n", "3", "--seed", "42",
                        "--out", str(tmp_path / "la.csv")]) == 0

    def test_forelli(self, tmp_path):
        assert run_cli(["forelli-rudin", "--n", "2", "--nu", "1", "--s", "3.0",
                        "--out", str(tmp_path / "fr.csv")]) == 0

    def test_sandwich_and_invert(self, tmp_path):
        assert run_cli(["sandwich", "--n", "1", "--nu", "0", "--s", "1.5",
                        "--out", str(tmp_path / "sw.csv")]) == 0
        assert run_cli(["invert", "--n", "1", "--nu", "0", "--s", "1.5",
                        "--out", str(tmp_path / "inv.csv")]) == 0

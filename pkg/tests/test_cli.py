import json
import os
import subprocess
import sys

import jsonschema
import pytest

from lieosc.cli import main
from lieosc.export import load_schema


def run(argv, capsys):
    code = main(argv)
    out, err = capsys.readouterr()
    return code, out, err


def run_json(argv, capsys):
    code, out, _ = run(argv, capsys)
    return code, json.loads(out)


class TestExitCodes:
    def test_verify_all_c2(self, capsys):
        code, doc = run_json(["verify-all", "--family", "c", "--rank", "2", "--cutoff", "8"], capsys)
        assert code == 0 and doc["pass"]

    @pytest.mark.parametrize("family, rank", [("d", 3), ("b", 2)])
    def test_verify_all_spinor(self, family, rank, capsys):
        code, doc = run_json(["verify-all", "--family", family, "--rank", str(rank)], capsys)
        assert code == 0
        tags = {s["identity"] for s in doc["summary"]}
        assert {"2.1", "3.13", "5.12", "r_so", "1.4"} <= tags

    def test_verify_all_su3(self, capsys):
        code, _ = run_json(["verify-all", "--family", "a", "--rank", "2", "--cutoff", "4"], capsys)
        assert code == 0

    def test_check_casimir_reports_stated_quartic(self, capsys):
        code, doc = run_json(["check-casimir", "--family", "c", "--rank", "2", "--cutoff", "8"], capsys)
        failed = [c["relation"] for r in doc["reports"] for c in r["checks"] if not c["pass"]]
        assert code == 1 and failed == ["C4 = 2/3 (n^2-1)(n+2)(2n+1) = 40"]

    def test_trivial_rtt(self, capsys):
        code, _ = run_json(["check-rtt", "--family", "d", "--rank", "3", "--u", "1", "--v", "1", "--eta", "1"], capsys)
        assert code == 0

    @pytest.mark.parametrize(
        "argv",
        [
            ["check-quadratic", "--family", "c", "--rank", "2"],
            ["check-quadratic", "--family", "d", "--rank", "3", "--cutoff", "6"],
            ["check-ybe", "--family", "c", "--rank", "2", "--samples", "2"],
            ["check-ybe", "--family", "c", "--rank", "2", "--u", "1", "--v", "2", "--eta", "1", "--seed", "3"],
            ["check-rtt", "--family", "d", "--rank", "3", "--u", "1"],
            ["gen-rep", "--family", "d", "--rank", "2"],
            ["gen-rep", "--family", "x", "--rank", "2"],
            ["frobnicate", "--family", "c", "--rank", "2"],
            ["check-rtt", "--family", "c", "--rank", "2", "--cutoff", "8", "--u", "-3", "--v", "0", "--eta", "1"],
            ["monodromy", "--family", "d", "--rank", "3", "--samples", "1", "--seed", "1", "--sites", "4"],
            ["gen-tensors", "--family", "c", "--rank", "2", "--tensor", "f"],
            ["check-ybe", "--family", "c", "--rank", "2", "--u", "1/0", "--v", "1", "--eta", "1"],
        ],
    )
    def test_usage_errors(self, argv, capsys):
        code, _, err = run(argv, capsys)
        assert code == 2 and err

    def test_unwritable_path(self, tmp_path, capsys):
        blocker = tmp_path / "file"
        blocker.write_text("")
        code, _, err = run(["gen-rep", "--family", "c", "--rank", "2", "-o", str(blocker / "x.json")], capsys)
        assert code == 2 and "cannot write" in err


class TestOutputs:
    def test_gen_rep_b2(self, capsys):
        code, doc = run_json(["gen-rep", "--family", "b", "--rank", "2", "--format", "json"], capsys)
        assert code == 0 and len(doc["generators"]) == 10
        assert all(g["matrix"]["shape"] == [5, 5] for g in doc["generators"])

    def test_c_tensor_csv(self, capsys):
        _, out, _ = run(["gen-tensors", "--family", "c", "--rank", "2", "--tensor", "c", "--format", "csv"], capsys)
        lines = out.splitlines()
        assert lines[0] == "i,j,k,value"
        keys = [tuple(int(x) for x in line.split(",")[:3]) for line in lines[1:]]
        assert keys == sorted(keys) and len(keys) == len(set(keys))

    def test_empty_tensor_csv(self, capsys):
        _, out, _ = run(["gen-tensors", "--family", "a", "--rank", "1", "--tensor", "d", "--format", "csv"], capsys)
        assert out == "i,j,k,value\n"

    def test_v_tensor_csv(self, capsys):
        code, out, _ = run(["gen-tensors", "--family", "d", "--rank", "3", "--tensor", "v", "--format", "csv"], capsys)
        assert code == 0 and out.startswith("i,j,k,l,value\n")

    def test_spectrum(self, capsys):
        code, doc = run_json(["spectrum", "--family", "c", "--rank", "2", "--cutoff", "8"], capsys)
        assert code == 0
        blocks = {b["block"]: b for b in doc["blocks"]}
        assert blocks["even"]["eigenvalues"] == ["-1/2", "-5/2"]
        assert blocks["even"]["multiplicities"] == [48, 16]

    def test_monodromy(self, capsys):
        code, doc = run_json(["monodromy", "--family", "d", "--rank", "3", "--samples", "1", "--seed", "5"], capsys)
        assert code == 0 and doc["pass"]

    @pytest.mark.parametrize(
        "argv",
        [
            ["gen-rep", "--family", "c", "--rank", "3"],
            ["gen-tensors", "--family", "b", "--rank", "2"],
            ["osc-rep", "--family", "c", "--rank", "2", "--cutoff", "4"],
            ["spectrum", "--family", "d", "--rank", "3"],
            ["verify-all", "--family", "b", "--rank", "2"],
            ["check-ybe", "--family", "d", "--rank", "3", "--samples", "2", "--seed", "1"],
        ],
    )
    def test_schemas(self, argv, capsys):
        _, doc = run_json(argv, capsys)
        jsonschema.validate(doc, load_schema(argv[0]))

    def test_reports_carry_tags(self, capsys):
        _, doc = run_json(["check-quadratic", "--family", "b", "--rank", "3"], capsys)
        assert [r["identity"] for r in doc["reports"]] == ["5.11", "5.12"]


class TestDeterminism:
    ARGS = ["verify-all", "--family", "d", "--rank", "3", "--samples", "2", "--seed", "11"]

    @pytest.mark.parametrize("fmt", ["json", "csv"])
    def test_byte_identical(self, tmp_path, fmt, capsys):
        a, b = tmp_path / f"a.{fmt}", tmp_path / f"b.{fmt}"
        assert main([*self.ARGS, "--format", fmt, "-o", str(a)]) == 0
        assert main([*self.ARGS, "--format", fmt, "-o", str(b)]) == 0
        assert a.read_bytes() == b.read_bytes()
        assert a.read_bytes().endswith(b"\n")

    def test_env_output_dir_in_subprocess(self, tmp_path):
        env = {**os.environ, "LIEOSC_OUTPUT_DIR": str(tmp_path / "out")}
        argv = [sys.executable, "-m", "lieosc", "gen-rep", "--family", "d", "--rank", "3"]
        first = subprocess.run(argv, env=env, capture_output=True, check=True)
        target = tmp_path / "out" / "gen-rep-d3.json"
        assert first.stdout == b"" and target.exists()
        data = target.read_bytes()
        subprocess.run(argv, env=env, capture_output=True, check=True)
        assert target.read_bytes() == data


def test_version(capsys):
    assert main(["--version"]) == 0
    assert capsys.readouterr().out == "lieosc 0.1.0\n"

import json

from digitcover.bundle import DATA_ROOT
from digitcover.cli import main

D9_FILE = str(DATA_ROOT / "coverings" / "d9.txt")


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestCoverCli:
    def test_verify_shipped_d9(self, capsys):
        code, out, _ = run(capsys, "cover", "verify", D9_FILE)
        assert code == 0
        assert "covering: True" in out

    def test_verify_naive_and_fast_routes(self, capsys):
        for route in ("--naive", "--fast"):
            code, out, _ = run(capsys, "cover", "verify", D9_FILE, route)
            assert code == 0

    def test_non_covering_exits_1_with_witness(self, tmp_path, capsys):
        path = tmp_path / "half.txt"
        path.write_text("0 2 1\n")
        code, out, _ = run(capsys, "cover", "verify", str(path))
        assert code == 1
        assert "uncovered: 1" in out

    def test_parse_error_exits_2(self, tmp_path, capsys):
        path = tmp_path / "bad.txt"
        path.write_text("0 2 1 9 9\n")
        code, _, err = run(capsys, "cover", "verify", str(path))
        assert code == 2
        assert "bad.txt:1" in err

    def test_profile_output(self, capsys):
        code, out, _ = run(capsys, "cover", "verify", D9_FILE, "--profile", "--w", "2")
        assert code == 0
        assert "max span" in out
        assert "u=   1" in out

    def test_json_format(self, capsys):
        code, out, _ = run(capsys, "--format", "json", "cover", "verify", D9_FILE)
        assert code == 0
        payload = json.loads(out)
        assert payload["covering"] is True
        assert payload["lcm"] == "8"


class TestConstructCli:
    def test_assemble_and_certify_round_trip(self, tmp_path, capsys):
        out_file = tmp_path / "mini.txt"
        code, out, _ = run(
            capsys,
            "construct", "assemble",
            "--digits", "9,2,5,8,-1,-4,-7",
            "--out", str(out_file),
        )
        assert code == 0
        assert "A=33333333" in out
        assert "B=8523682" in out

        code, out, _ = run(
            capsys,
            "construct", "certify",
            "--construction", str(out_file),
            "--n", "8523682", "--d", "9", "--k", "3",
        )
        assert code == 0
        assert "101" in out and "certificate valid: True" in out

    def test_certify_rejects_off_progression(self, tmp_path, capsys):
        out_file = tmp_path / "mini.txt"
        run(capsys, "construct", "assemble", "--digits", "9", "--out", str(out_file))
        code, _, err = run(
            capsys,
            "construct", "certify",
            "--construction", str(out_file),
            "--n", "12345", "--d", "9", "--k", "0",
        )
        assert code == 2
        assert "not an element" in err

    def test_unresolvable_digit_is_data_error(self, capsys):
        code, _, err = run(capsys, "construct", "assemble", "--digits", "-3")
        assert code == 2
        assert "cannot resolve" in err


class TestDelicateCli:
    def test_check_delicate_prime(self, capsys):
        code, out, _ = run(capsys, "delicate", "check", "294001")
        assert code == 0
        assert "digitally delicate: True" in out

    def test_check_widely_fails_with_witness(self, capsys):
        code, out, _ = run(capsys, "delicate", "check", "294001", "--widely", "1")
        assert code == 1
        assert "10294001" in out

    def test_check_composite_input_is_error(self, capsys):
        code, _, err = run(capsys, "delicate", "check", "294002")
        assert code == 2
        assert "not prime" in err

    def test_check_non_delicate_prints_witness(self, capsys):
        code, out, _ = run(capsys, "delicate", "check", "101")
        assert code == 1
        assert "witness" in out

    def test_scan(self, capsys):
        code, out, _ = run(capsys, "delicate", "scan", "--bound", "300000")
        assert code == 0
        assert out.strip() == "294001"

    def test_scan_none(self, capsys):
        code, out, _ = run(capsys, "delicate", "scan", "--bound", "1000")
        assert code == 0
        assert out.strip() == "none"

    def test_stable(self, capsys):
        code, out, _ = run(capsys, "delicate", "stable", "212159")
        assert code == 0
        assert "True" in out

    def test_stable_false_exits_1(self, capsys):
        code, out, _ = run(capsys, "delicate", "stable", "9")
        assert code == 1
        assert "witness" in out


class TestGrahamCli:
    PRIMES = "2,3,5,7,11,17,19,23,31,41,47,61,107,181,541,1103,2521"

    def test_verify(self, capsys):
        code, out, _ = run(
            capsys,
            "graham", "verify",
            "--a", "106276436867", "--b", "35256392432", "--primes", self.PRIMES,
        )
        assert code == 0
        assert "N = 1821895895860356790898731230" in out

    def test_verify_failure(self, capsys):
        code, out, _ = run(
            capsys, "graham", "verify", "--a", "1", "--b", "1", "--primes", "2"
        )
        assert code == 1
        assert "uncovered index 0" in out

    def test_reduce(self, capsys):
        code, out, _ = run(
            capsys,
            "graham", "reduce",
            "--a", "106276436867", "--b", "35256392432", "--primes", self.PRIMES,
        )
        assert code == 0
        assert "gcd(a, N) = 31" in out
        assert "3428272157 (mod 58770835350334090028991330)" in out
        assert "17628196216 (mod 910947947930178395449365615)" in out


class TestOrderCli:
    def test_primes(self, capsys):
        code, out, _ = run(capsys, "order", "primes", "8")
        assert code == 0
        assert "73, 137" in out

    def test_validate(self, tmp_path, capsys):
        good = tmp_path / "good.txt"
        good.write_text("6: 7, 13\n")
        code, out, _ = run(capsys, "order", "validate", str(good))
        assert code == 0

        bad = tmp_path / "bad.txt"
        bad.write_text("2: 11, 121*2\n")
        code, out, _ = run(capsys, "order", "validate", str(bad))
        assert code == 1
        assert "121" in out

    def test_counts(self, capsys):
        code, out, _ = run(capsys, "order", "counts", "--limit", "13")
        assert code == 0
        assert "all rows consistent: True" in out


class TestReportCli:
    def test_report_ok(self, capsys):
        code, out, _ = run(capsys, "report", "--resolve-limit", "8")
        assert code == 0
        assert "overall OK" in out

    def test_report_json(self, capsys):
        code, out, _ = run(
            capsys, "--format", "json", "report", "--resolve-limit", "8"
        )
        assert code == 0
        payload = json.loads(out)
        assert payload["ok"] is True
        assert len(payload["digits"]) == 18
        d3 = next(r for r in payload["digits"] if r["digit"] == -3)
        assert d3["lcm"] == "1486147703040"
        assert d3["congruences"] == 739

    def test_missing_tables_dir_is_error(self, capsys):
        code, _, err = run(capsys, "report", "--tables", "/nonexistent-path")
        assert code == 2

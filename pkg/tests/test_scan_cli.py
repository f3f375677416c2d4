import json
import subprocess
import sys
from fractions import Fraction

import pytest

from rfkit import selftest
from rfkit.cli import main
from rfkit.scan import cmd_scan, dec, dec_sqrt, family_classes, rows_to_csv, scan_row

RF3 = Fraction(363, 32)


def run_cli(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_decimal_rendering_is_derived_from_exact_value():
    assert dec(Fraction(1, 3)) == "0.333333333333"
    assert dec(Fraction(363, 32)) == "11.34375"
    assert dec_sqrt(Fraction(2)) == "1.41421356237"


def test_scan_rows_around_rf3():
    rows = cmd_scan(3, 11, 13, 8)
    assert [r.a for r in rows][:3] == [11, Fraction(45, 4), Fraction(23, 2)]
    for r in rows:
        assert r.cb_lower >= 1
        if r.a < RF3:
            assert r.mu_best == Fraction(11, 8) and not r.certified
        else:
            assert r.certified
        if r.certified:
            assert r.mu_best ** 2 <= r.volume_sq


def test_single_point_r5():
    row = scan_row(Fraction(6, 5), 8, family_classes(8))
    assert row.mu_best == Fraction(241, 132)
    assert row.mu_best ** 2 > row.volume_sq


def test_enumerated_classes_empty_and_certified_past_rf3():
    rows = cmd_scan(3, RF3, Fraction(143, 12), 3, "enumerate", d_max=12)
    assert all(r.best_class is None and r.certified for r in rows)


def test_csv_header_and_thread_independence():
    one = rows_to_csv(cmd_scan(3, 11, 12, 4, threads=1))
    two = rows_to_csv(cmd_scan(3, 11, 12, 4, threads=2))
    assert one == two
    assert one.splitlines()[0].startswith("a,b,volume,cb_lower,mu_best,class,certified")


def test_cli_scan_repeatable_and_json(capsys):
    args = ["scan", "--b", "3", "--a-from", "11", "--a-to", "12", "--steps", "2"]
    c1, out1, _ = run_cli(capsys, *args)
    c2, out2, _ = run_cli(capsys, *args, "--threads", "2")
    assert c1 == c2 == 0 and out1 == out2
    code, out, _ = run_cli(capsys, "--json", *args)
    assert code == 0 and len(json.loads(out)) == 3


def test_cli_scan_writes_files(capsys, tmp_path):
    csv_path, png = tmp_path / "rows.csv", tmp_path / "scan.png"
    code, _, _ = run_cli(capsys, "scan", "--b", "3", "--a-from", "11", "--a-to", "12",
                         "--steps", "2", "--out", str(csv_path), "--plot", str(png))
    assert code == 0
    assert csv_path.read_text().startswith("a,b,")
    assert png.read_bytes()[:8] == b"\x89PNG\r\n\x1a\n"


def test_cli_discontinuity_plot(capsys, tmp_path):
    png = tmp_path / "disc.png"
    code, out, _ = run_cli(capsys, "discontinuity", "--n-from", "5", "--n-to", "7",
                           "--plot", str(png))
    assert code == 0 and "(66,55;31,30x7)" in out and png.stat().st_size > 1000


def test_cli_invalid_range(capsys):
    code, _, err = run_cli(capsys, "scan", "--b", "3", "--a-from", "12", "--a-to", "11")
    assert code == 1 and "error" in err


def test_cli_usage_and_domain_errors(capsys):
    assert run_cli(capsys, "nonsense")[0] == 1
    assert run_cli(capsys, "weights")[0] == 1
    assert run_cli(capsys, "weights", "1/2")[0] == 1
    assert run_cli(capsys, "rf", "--b", "3/2")[0] == 1
    assert run_cli(capsys, "rf-beta", "--n", "4")[0] == 1


def test_cli_reduce_exit_codes(capsys):
    code, out, _ = run_cli(capsys, "reduce", "--a", "363/32", "--b", "3")
    assert code == 0 and "Certified" in out
    assert run_cli(capsys, "reduce", "--a", "1", "--b", "1")[0] == 2
    assert run_cli(capsys, "reduce", "--a", "363/32", "--b", "3", "--max-steps", "2")[0] == 2
    code, out, _ = run_cli(capsys, "reduce", "--a", "363/32", "--b", "3", "--json", "--trace")
    assert json.loads(out)["steps"][0]["action"] == "start"


def test_cli_other_subcommands(capsys):
    code, out, _ = run_cli(capsys, "weights", "25/3")
    assert code == 0 and "1^x8, 1/3^x3" in out
    code, out, _ = run_cli(capsys, "--csv", "ech", "--shape", "E", "--x", "1", "--y", "2",
                           "--n", "4")
    assert out.splitlines() == ["k,value,decimal", "0,0,0", "1,1,1", "2,2,2", "3,2,2", "4,3,3"]
    code, out, _ = run_cli(capsys, "mu", "--class", "4,4;3,2x6", "--a", "7+1/32", "--b", "1",
                           "--json")
    data = json.loads(out)
    assert data["mu"] == "15/8" and data["obstructive"] is False
    code, out, _ = run_cli(capsys, "cb", "--a", "11", "--b", "3")
    assert code == 0 and "11/8" in out
    code, out, _ = run_cli(capsys, "enumerate", "--a", "8", "--b", "6/5", "--dmax", "70")
    assert code == 0 and "(66,55;31,30x7)" in out
    code, out, _ = run_cli(capsys, "rf", "--b", "3", "--json")
    assert code == 0 and json.loads(out)["rf"] == "363/32"
    code, out, _ = run_cli(capsys, "rf-beta", "--n", "5")
    assert code == 0 and "58081/7260" in out


def test_selftest_fresh_build(capsys):
    code, out, _ = run_cli(capsys, "selftest")
    assert code == 0 and out.count("[flagged]") == len(selftest.FLAGS)


def test_selftest_list(capsys):
    code, out, _ = run_cli(capsys, "selftest", "--list")
    assert code == 0 and "[published]" in out and "[computed]" in out


def test_selftest_corrupted_table(capsys, monkeypatch):
    bad = selftest.Golden("RF(3)", "closed form", "363/33", lambda: "363/32")
    monkeypatch.setattr(selftest, "GOLDEN", selftest.GOLDEN + (bad,))
    assert run_cli(capsys, "selftest")[0] == 3


def test_console_entry_point():
    proc = subprocess.run([sys.executable, "-m", "rfkit", "rf-beta", "--n", "5", "--json"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["class"]["d"] == 66

import argparse
import json
import subprocess
import sys

import pytest

from darboux import tables
from darboux.cli import parse_complex

from conftest import run_cli


@pytest.mark.parametrize("text,value", [("0+1i", 1j), ("2-0.5i", 2 - 0.5j), ("i", 1j), ("-i", -1j), ("1.5", 1.5),
                                        ("-3i", -3j), ("1e-3+2i", 0.001 + 2j)])
def test_parse_complex(text, value):
    assert parse_complex(text) == value


@pytest.mark.parametrize("text", ["1+2j", "1 + 2i", "", "abc", "1+2ii"])
def test_parse_complex_rejects(text):
    with pytest.raises(argparse.ArgumentTypeError):
        parse_complex(text)


def test_spectrum_harmonic_analytic():
    code, out, _ = run_cli("spectrum", "harmonic", "--epsilon", "-0.5", "--beta", "0+1i", "--levels", "5", "--no-numerical")
    assert code == 0
    header, rows = tables.parse_csv(out)
    assert header == ["n", "analytic", "re_numerical", "im_numerical", "delta"]
    assert [r[1] for r in rows] == [-0.5, 0.5, 1.5, 2.5, 3.5]


def test_spectrum_harmonic_numerical():
    code, out, _ = run_cli("spectrum", "harmonic", "--beta", "0+1i", "--levels", "5", "--grid=-10:10:1001")
    assert code == 0
    _, rows = tables.parse_csv(out)
    assert all(isinstance(r[4], float) and r[4] < 2e-3 for r in rows)
    assert all(abs(r[3]) < 1e-6 for r in rows)


def test_spectrum_expwell():
    code, out, _ = run_cli("spectrum", "expwell", "--m", "2", "--levels", "4")
    assert code == 0
    _, rows = tables.parse_csv(out)
    exact = [r[4] for r in rows if r[0] == "exact" and r[5] == 0]
    assert exact == [0.125, 1.125, 3.125, 6.125]
    sc = [r[4] for r in rows if r[0] == "semiclassical"]
    assert sc[0] == 1 / 32


def test_spectrum_unbound_notice():
    code, out, err = run_cli("spectrum", "expwell", "--m", "1")
    assert code == 0
    assert "unbound spectrum" in err
    _, rows = tables.parse_csv(out)
    assert rows and all(r[0] == "semiclassical" for r in rows)


def test_inadmissible_beta_exit_code():
    code, out, err = run_cli("spectrum", "harmonic", "--beta", "2", "--no-numerical")
    assert code == 2 and out == ""
    assert "AdmissibilityError" in err and "beta_c" in err


def test_bad_levels():
    code, _, err = run_cli("spectrum", "expwell", "--levels", "0")
    assert code == 2 and "ParameterError" in err
    code, _, err = run_cli("spectrum", "expwell", "--m", "0")
    assert code == 2 and "RangeError" in err


def test_argparse_errors_exit_2():
    with pytest.raises(SystemExit) as exc:
        run_cli("spectrum", "harmonic", "--beta", "1+2j")
    assert exc.value.code == 2
    with pytest.raises(SystemExit) as exc:
        run_cli("figures", "fig9")
    assert exc.value.code == 2


def test_figures_csv_round_trip():
    code, out, _ = run_cli("figures", "fig1", "--grid=-5:5:41")
    assert code == 0
    header, rows = tables.parse_csv(out)
    assert header[:3] == ["x", "re_v2", "im_v2"]
    assert len(rows) % 41 == 0
    assert tables.format_csv(header, rows) == out


def test_figures_deterministic_and_json():
    a = run_cli("figures", "fig2", "--grid=-4:4:33")[1]
    b = run_cli("figures", "fig2", "--grid=-4:4:33")[1]
    assert a == b
    code, js, _ = run_cli("figures", "fig2", "--grid=-4:4:33", "--format", "json")
    data = json.loads(js)
    assert data["columns"][6] == "pt_defect"
    assert max(r[6] for r in data["rows"]) > 0


def test_fig3_flags_singular_rows():
    _, out, _ = run_cli("figures", "fig3", "--grid=-5:5:101")
    _, rows = tables.parse_csv(out)
    assert any(r[7] == 1 for r in rows)


def test_potential_commands(tmp_path):
    path = tmp_path / "v2.csv"
    code, out, _ = run_cli("potential", "harmonic", "--beta", "i", "--grid=-3:3:31", "--out", str(path))
    assert code == 0 and out == ""
    text = path.read_bytes().decode()
    assert "\r" not in text
    header, rows = tables.parse_csv(text)
    assert len(rows) == 31
    code, out, _ = run_cli("potential", "bb", "--bigN", "3", "--grid=-5:5:21")
    assert code == 0
    header, rows = tables.parse_csv(out)
    assert header == ["t", "re_x", "im_x", "re_v2", "im_v2"] and len(rows) == 21


def test_bb_grid_must_be_symmetric():
    code, _, err = run_cli("potential", "bb", "--grid=0:5:21")
    assert code == 2 and "odd count" in err


def test_unwritable_output():
    code, _, err = run_cli("spectrum", "expwell", "--out", "/nonexistent/dir/x.csv")
    assert code == 3 and "IoError" in err


def test_verify_report(verify_run):
    code, rep = verify_run
    assert code == 0
    assert rep["schema"] == 1
    assert rep["count"] >= 20 and len(rep["checks"]) == rep["count"]
    failed = [c["name"] for c in rep["checks"] if not c["passed"]]
    assert failed == []
    assert len({c["name"] for c in rep["checks"]}) == rep["count"]


def test_verify_corruption_fails(corrupted_run):
    code, rep = corrupted_run
    assert code == 1 and rep["corrupted"]
    failed = {c["name"] for c in rep["checks"] if not c["passed"]}
    assert "pt_invariant_for_imaginary_beta" in failed
    assert "fd_spectrum_matches_closed_form" in failed


def test_seed_tolerance_override(monkeypatch):
    monkeypatch.setenv("DARBOUX_SEED_TOL", "1e-30")
    code, out, _ = run_cli("verify", "--suite", "exp_potential")
    assert code == 1
    rep = json.loads(out)
    assert not next(c for c in rep["checks"] if c["name"] == "exp_solutions_ode_residual")["passed"]
    monkeypatch.setenv("DARBOUX_SEED_TOL", "1e-6")
    assert run_cli("verify", "--suite", "exp_potential")[0] == 0


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "darboux", "spectrum", "expwell", "--m", "3", "--levels", "2"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0
    assert proc.stdout.splitlines()[0] == "kind,m,n,nu,energy,excluded"

"""Command line surface: exit codes, JSON reports, CSV output, config."""

import json
import math
import subprocess
import sys

import pytest

from smearprop import cli
from smearprop.oracle import OracleConvergenceError


def run_cli(capsys, *argv: str) -> tuple[int, str, str]:
    code = cli.main(list(argv))
    cap = capsys.readouterr()
    return code, cap.out, cap.err


# ---------------------------------------------------------------------------
# eval


def test_eval_known_point(capsys):
    code, out, _ = run_cli(
        capsys, "eval", "--kind", "wightman",
        "--T", "1", "--sigma", "1", "--Omega", "0", "--sep", "0")
    assert code == 0
    rec = json.loads(out)
    assert rec["kind"] == "wightman"
    assert rec["re"] == 1.0 / (8.0 * math.pi)
    assert rec["im"] == 0.0
    assert rec["params"]["sigma1"] == 1.0 and rec["params"]["sep"] == 0.0


def test_eval_with_oracle_reports_small_discrepancy(capsys):
    code, out, _ = run_cli(
        capsys, "eval", "--kind", "hadamard", "--with-oracle",
        "--T", "1.3", "--sigma", "0.2", "--Omega", "0.7",
        "--t0", "0.4", "--sep", "2.0")
    assert code == 0
    rec = json.loads(out)
    assert rec["rel_err"] <= 1e-10
    assert rec["oracle_re"] == pytest.approx(rec["re"], rel=1e-9)


def test_eval_asymmetric_widths_flag_spelling(capsys):
    code, out, _ = run_cli(
        capsys, "eval", "--kind", "wightman",
        "--T-1", "1.0", "--T-2", "2.0", "--sigma", "0.3",
        "--Omega-1", "0.5", "--Omega-2", "-0.5", "--sep", "1.0")
    assert code == 0
    rec = json.loads(out)
    assert rec["params"]["T1"] == 1.0 and rec["params"]["T2"] == 2.0
    assert rec["params"]["Omega2"] == -0.5


def test_eval_rejects_mismatched_widths_for_symmetric_kind(capsys):
    code, _, err = run_cli(
        capsys, "eval", "--kind", "retarded",
        "--sigma-1", "0.2", "--sigma-2", "0.3", "--sep", "1.0")
    assert code == 2
    assert "error:" in err


def test_eval_rejects_nonpositive_width(capsys):
    code, _, err = run_cli(capsys, "eval", "--kind", "wightman", "--T", "-1")
    assert code == 2
    assert "error:" in err


def test_unknown_kind_is_an_argparse_error(capsys):
    with pytest.raises(SystemExit) as exc:
        cli.main(["eval", "--kind", "nonsense"])
    assert exc.value.code == 2


# ---------------------------------------------------------------------------
# verify


def test_verify_report_schema_and_success(capsys):
    code, out, _ = run_cli(capsys, "verify")
    assert code == 0
    rep = json.loads(out)
    assert rep["schema"] == 1
    names = [c["name"] for c in rep["checks"]]
    assert names == ["oracle_grid", "identities", "newint"]
    for c in rep["checks"]:
        assert c["pass"] is True
        assert 0.0 <= c["max_rel_err"] < 1e-8


def test_verify_only_selects_one_check(capsys):
    code, out, _ = run_cli(capsys, "verify", "--only", "identities")
    assert code == 0
    rep = json.loads(out)
    assert [c["name"] for c in rep["checks"]] == ["identities"]
    assert rep["checks"][0]["max_rel_err"] <= 1e-12


def test_verify_unknown_check_name(capsys):
    code, _, err = run_cli(capsys, "verify", "--only", "bogus")
    assert code == 2
    assert "unknown check" in err


def test_verify_injected_fault_fails_closed(capsys):
    code, out, _ = run_cli(
        capsys, "verify", "--only", "oracle_grid", "--inject-fault")
    assert code == 1
    rep = json.loads(out)
    assert rep["checks"][0]["pass"] is False
    assert rep["checks"][0]["max_rel_err"] > 1e-8


def test_verify_newint_point_override(capsys):
    code, out, _ = run_cli(
        capsys, "verify", "--only", "newint",
        "--gamma", "1.0", "--sigma", "2.0", "--ell", "3.0")
    assert code == 0
    assert json.loads(out)["checks"][0]["pass"] is True


def test_verify_partial_point_flags_rejected(capsys):
    code, _, err = run_cli(capsys, "verify", "--only", "newint",
                           "--gamma", "1.0")
    assert code == 2
    assert "together" in err


def test_oracle_breakdown_maps_to_exit_3(capsys, monkeypatch):
    def boom(*a, **k):
        raise OracleConvergenceError("synthetic non-convergence")

    monkeypatch.setattr(cli, "oracle_value", boom)
    code, _, err = run_cli(
        capsys, "eval", "--kind", "wightman", "--with-oracle", "--T", "1")
    assert code == 3
    assert "did not converge" in err


# ---------------------------------------------------------------------------
# newint


def test_newint_json_fields(capsys):
    code, out, _ = run_cli(
        capsys, "newint", "--gamma", "0.5", "--sigma", "1.5", "--ell", "2.0")
    assert code == 0
    rec = json.loads(out)
    assert set(rec) == {"gamma", "sigma", "ell",
                        "quadrature", "closed", "rel_err"}
    assert rec["rel_err"] <= 1e-8
    assert rec["quadrature"] == pytest.approx(rec["closed"], rel=1e-7)


def test_newint_domain_guard(capsys):
    code, _, err = run_cli(
        capsys, "newint", "--gamma", "2.0", "--sigma", "1.0", "--ell", "1.0")
    assert code == 2
    assert "error:" in err


# ---------------------------------------------------------------------------
# figure CSVs


def _read_bytes(path) -> bytes:
    with open(path, "rb") as fh:
        return fh.read()


def test_fig1_csv_shape_and_determinism(tmp_path, capsys):
    out = tmp_path / "fig1.csv"
    code, _, _ = run_cli(capsys, "fig1", "--out", str(out), "--points", "12")
    assert code == 0
    first = _read_bytes(out)
    assert b"\r\n" in first
    lines = first.decode("ascii").split("\r\n")
    assert lines[0] == "OmegaT,negativity_over_lambda2,half_delta_over_lambda2"
    assert lines[-1] == ""
    assert len(lines) == 14  # header + 12 rows + trailing newline
    row0 = lines[1].split(",")
    assert float(row0[0]) == 0.0
    rowN = lines[-2].split(",")
    assert float(rowN[0]) == 6.0
    # every cell survives a text round trip unchanged
    for ln in lines[1:-1]:
        for cell in ln.split(","):
            assert cell == "%.17g" % float(cell)
    code, _, _ = run_cli(capsys, "fig1", "--out", str(out), "--points", "12")
    assert code == 0
    assert _read_bytes(out) == first


def test_fig3_writes_one_file_per_coupling(tmp_path, capsys):
    code, _, _ = run_cli(
        capsys, "fig3", "--out-dir", str(tmp_path),
        "--lam", "0.5", "--lam", "1", "--points", "4",
        "--t-min", "0.2", "--t-max", "1.1")
    assert code == 0
    for tag in ("0.5", "1"):
        lines = _read_bytes(tmp_path / f"fig3_{tag}.csv") \
            .decode("ascii").split("\r\n")
        assert lines[0].split(",") == (
            ["T_over_L"]
            + [f"ev{i}_full" for i in (1, 2, 3, 4)]
            + [f"ev{i}_unitary" for i in (1, 2, 3, 4)])
        assert len(lines) == 6
        for ln in lines[1:5]:
            vals = [float(v) for v in ln.split(",")]
            assert sum(vals[1:5]) == pytest.approx(1.0, abs=1e-12)
            assert sum(vals[5:9]) == pytest.approx(1.0, abs=1e-12)


def test_fig4_header_tracks_couplings(tmp_path, capsys):
    out = tmp_path / "fig4.csv"
    code, _, _ = run_cli(
        capsys, "fig4", "--out", str(out), "--lam", "0.25", "--lam", "2",
        "--points", "3", "--t-min", "1.0", "--t-max", "3.0")
    assert code == 0
    lines = _read_bytes(out).decode("ascii").split("\r\n")
    assert lines[0] == ("T_over_L,hs_sq_0.25,hs_sq_2,"
                        "hs_limit_0.25,hs_limit_2")
    assert len(lines) == 5
    vals = [float(v) for v in lines[1].split(",")]
    assert 0.0 < vals[1] < vals[2]


def test_bad_grid_rejected(tmp_path, capsys):
    code, _, err = run_cli(
        capsys, "fig4", "--out", str(tmp_path / "x.csv"),
        "--t-min", "2.0", "--t-max", "1.0", "--points", "3")
    assert code == 2
    assert "grid" in err


# ---------------------------------------------------------------------------
# config file


def test_config_supplies_defaults_flags_win(tmp_path, capsys):
    cfg = tmp_path / "opts.ini"
    cfg.write_text(
        "# sweep shape\n"
        "points = 10\n"
        "omega-t-max = 4.0\n")
    out = tmp_path / "fig1.csv"
    code, _, _ = run_cli(
        capsys, "fig1", "--config", str(cfg),
        "--out", str(out), "--points", "6")
    assert code == 0
    lines = _read_bytes(out).decode("ascii").split("\r\n")
    assert len(lines) == 8  # flag --points 6 beat config points=10
    assert float(lines[-2].split(",")[0]) == 4.0  # config omega-t-max applied


def test_config_sectioned_ini_and_underscore_keys(tmp_path, capsys):
    cfg = tmp_path / "opts.ini"
    cfg.write_text("[sweep]\nomega_t_max = 2.0\npoints = 4\n")
    out = tmp_path / "fig1.csv"
    code, _, _ = run_cli(capsys, "fig1", "--config", str(cfg),
                         "--out", str(out))
    assert code == 0
    lines = _read_bytes(out).decode("ascii").split("\r\n")
    assert len(lines) == 6
    assert float(lines[-2].split(",")[0]) == 2.0


def test_missing_config_file(capsys):
    code, _, err = run_cli(capsys, "verify", "--config", "/nonexistent/opts.ini",
                           "--only", "newint")
    assert code == 2
    assert "error:" in err


# ---------------------------------------------------------------------------
# installed entry point


def test_console_script_round_trip():
    proc = subprocess.run(
        [sys.executable, "-m", "smearprop.cli", "eval", "--kind", "wightman",
         "--T", "1", "--sigma", "1", "--Omega", "0", "--sep", "0"],
        capture_output=True, text=True, timeout=60)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["re"] == 1.0 / (8.0 * math.pi)

import json
import math
import subprocess
import sys

import pytest

from fluxmacro.cli import build_registry, load_config, main
from fluxmacro.errors import ConfigError


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_macro_json_output(capsys):
    code, out, err = run_cli(capsys, "macro", "--z", "0.9", "--z", "0.8")
    assert code == 0
    body = json.loads(out)
    assert body["M"] == pytest.approx(1.1520546143095582, rel=1e-12)
    assert body["variance"] == pytest.approx(2.0 * body["M"], rel=1e-12)
    assert "lambda" in body


def test_macro_csv_output(capsys):
    code, out, _ = run_cli(capsys, "macro", "--z", "0.9", "--format", "csv")
    assert code == 0
    lines = out.splitlines()
    assert lines[0].startswith("M,lambda,")
    assert float(lines[1].split(",")[0]) == 1.0


def test_macro_requires_overlaps(capsys):
    code, _, err = run_cli(capsys, "macro")
    assert code == 2
    assert "config error" in err


def test_macro_domain_error_exit_code(capsys):
    code, _, err = run_cli(capsys, "macro", "--z", "1.0", "--z", "-1.0")
    assert code == 1
    assert "domain error" in err


def test_unknown_command_exits_with_usage():
    with pytest.raises(SystemExit) as exc:
        main(["frobnicate"])
    assert exc.value.code == 2


def test_no_command_is_config_error(capsys):
    code, _, err = run_cli(capsys)
    assert code == 2
    assert "no command" in err


def test_instanton_preset(capsys):
    code, out, _ = run_cli(
        capsys, "instanton", "--preset", "lukens", "--rel-tol", "1e-10"
    )
    assert code == 0
    body = json.loads(out)
    assert body["lambda"] == pytest.approx(240.30544280999902, rel=1e-9)
    assert body["M"] == pytest.approx(481.61088561999804, rel=1e-9)


def test_instanton_rejects_bad_rel_tol(capsys):
    code, _, err = run_cli(
        capsys, "instanton", "--preset", "lukens", "--rel-tol", "0.5"
    )
    assert code == 2
    assert "rel_tol" in err


def test_instanton_domain_error(capsys):
    # E_L < 4 E_J makes the literal potential dip below zero
    code, _, err = run_cli(
        capsys,
        "instanton",
        "--config",
        "/dev/null/nonexistent.toml",
    )
    assert code == 2  # unreadable config is a config error
    cfg = {"instanton": {"E_J_K": 76.0, "E_L_K": 100.0, "E_C_K": 0.009}}
    code, _, err = run_cli_with_config(capsys, cfg, "instanton")
    assert code == 1
    assert "domain error" in err


def run_cli_with_config(capsys, cfg, *argv, tmp_dir=None):
    import tempfile
    from pathlib import Path

    d = tmp_dir or tempfile.mkdtemp()
    path = Path(d) / "cfg.json"
    path.write_text(json.dumps(cfg))
    return run_cli(capsys, *argv, "--config", str(path))


def test_config_file_toml(tmp_path, capsys):
    cfg = tmp_path / "run.toml"
    cfg.write_text(
        'command = "instanton"\nrel_tol = 1e-10\n\n'
        '[instanton]\npreset = "lukens"\nkappa_K = 645.0\n'
    )
    code, out, _ = run_cli(capsys, "--config", str(cfg))
    assert code == 0
    assert json.loads(out)["M"] == pytest.approx(674.1347623805608, rel=1e-9)


def test_config_file_json(tmp_path, capsys):
    cfg = tmp_path / "run.json"
    cfg.write_text(
        json.dumps(
            {
                "command": "crb",
                "crb": {"M": 4.0, "mode_count": 16.0, "modes_in_cutoff": 100},
            }
        )
    )
    code, out, _ = run_cli(capsys, "--config", str(cfg))
    assert code == 0
    body = json.loads(out)
    assert body["bound_theta"] == pytest.approx(1.0 / 16.0, rel=1e-12)
    assert body["bound_flux_over_Phi0"] == pytest.approx(0.025, rel=1e-12)


def test_malformed_toml_reports_location(tmp_path, capsys):
    cfg = tmp_path / "bad.toml"
    cfg.write_text('command = "macro"\n[macro\nreals = [0.5]\n')
    code, _, err = run_cli(capsys, "--config", str(cfg))
    assert code == 2
    assert "line 2" in err


def test_malformed_json_reports_location(tmp_path, capsys):
    cfg = tmp_path / "bad.json"
    cfg.write_text('{"command": "macro",\n  "macro": {')
    code, _, err = run_cli(capsys, "--config", str(cfg))
    assert code == 2
    assert "line" in err and "column" in err


def test_unknown_config_field_is_diagnosed(tmp_path, capsys):
    cfg = tmp_path / "run.toml"
    cfg.write_text('command = "macro"\n[macro]\nznumbers = [0.5]\n')
    code, _, err = run_cli(capsys, "--config", str(cfg))
    assert code == 2
    assert "znumbers" in err


def test_unsupported_extension(tmp_path, capsys):
    cfg = tmp_path / "run.yaml"
    cfg.write_text("command: macro\n")
    code, _, err = run_cli(capsys, "--config", str(cfg))
    assert code == 2
    assert "extension" in err


def test_registry_override(tmp_path, capsys):
    cfg = tmp_path / "run.toml"
    cfg.write_text(
        'command = "instanton"\nrel_tol = 1e-10\n\n'
        '[instanton]\npreset = "lukens"\n\n'
        "[registry.circuits.lukens]\nE_L_K = 1290.0\n"
    )
    code, out, _ = run_cli(capsys, "--config", str(cfg))
    assert code == 0
    # E_L = 1290 K with no extra kappa matches E_L = 645 K + kappa 645 K
    assert json.loads(out)["M"] == pytest.approx(674.1347623805608, rel=1e-9)


def test_registry_new_circuit_requires_all_energies():
    with pytest.raises(ConfigError, match="E_L_K"):
        build_registry({"circuits": {"custom": {"E_J_K": 10.0}}})


def test_registry_unknown_field():
    with pytest.raises(ConfigError, match="E_J_mK"):
        build_registry({"circuits": {"lukens": {"E_J_mK": 76000.0}}})


def test_out_flag_writes_atomically(tmp_path, capsys):
    target = tmp_path / "report.json"
    code, out, _ = run_cli(
        capsys, "macro", "--z", "0.5", "--out", str(target)
    )
    assert code == 0
    assert out == ""
    body = json.loads(target.read_text())
    assert body["M"] == 1.0
    leftovers = [p for p in tmp_path.iterdir() if p.name != "report.json"]
    assert leftovers == []


def test_reproduce_deterministic_bytes(tmp_path, capsys):
    a = tmp_path / "a.csv"
    b = tmp_path / "b.csv"
    assert run_cli(capsys, "reproduce", "--format", "csv", "--out", str(a))[0] == 0
    assert run_cli(capsys, "reproduce", "--format", "csv", "--out", str(b))[0] == 0
    assert a.read_bytes() == b.read_bytes()


def test_reproduce_csv_columns(tmp_path, capsys):
    out_path = tmp_path / "rep.csv"
    code, _, _ = run_cli(capsys, "reproduce", "--format", "csv", "--out", str(out_path))
    assert code == 0
    lines = out_path.read_text().splitlines()
    assert lines[0] == "claim,reference,computed,rel_dev,tolerance,passed,flagged"
    claims = [line.split(",")[0] for line in lines[1:]]
    assert claims[:3] == ["C2_scale", "kappa_energy_baseline", "M_lukens"]
    # decimal separator is a point in every numeric cell
    for line in lines[1:]:
        for cell in line.split(",")[1:5]:
            float(cell)


def test_bcs_grid_default_shape(capsys):
    code, out, _ = run_cli(capsys, "bcs-grid", "--format", "csv")
    assert code == 0
    lines = out.splitlines()
    assert len(lines) == 1 + 121 * 61
    assert lines[0] == "eps_over_Delta,qe_over_Delta,c_z,c_x,degenerate"


def test_bcs_grid_config_ranges(tmp_path, capsys):
    cfg = tmp_path / "grid.toml"
    cfg.write_text(
        'command = "bcs-grid"\nformat = "csv"\n\n'
        "[bcs_grid]\neps_num = 3\nqe_num = 2\n"
    )
    code, out, _ = run_cli(capsys, "--config", str(cfg))
    assert code == 0
    assert len(out.splitlines()) == 1 + 3 * 2


def test_kernels_check_passes(capsys):
    code, out, _ = run_cli(capsys, "kernels-check")
    assert code == 0
    assert json.loads(out)["all_passed"] is True


def test_crb_flags(capsys):
    code, out, _ = run_cli(capsys, "crb", "--M", "481", "--modes", "1e10")
    assert code == 0
    body = json.loads(out)
    assert body["bound_theta"] == pytest.approx(2.2798037629377656e-07, rel=1e-12)
    assert body["regime"] == "Intermediate"


def test_crb_requires_m(capsys):
    code, _, err = run_cli(capsys, "crb")
    assert code == 2
    assert "--M" in err


def test_hybrid_scan_flags(capsys):
    code, out, _ = run_cli(
        capsys,
        "hybrid-scan",
        "--NB",
        "2e6",
        "--Rs",
        "1e-6",
        "--D",
        "3e-6",
        "--format",
        "csv",
    )
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "N_B,Rs_over_D,kappa_energy_K,lambda,M,amplification"
    assert len(lines) == 2
    assert float(lines[1].split(",")[2]) == pytest.approx(561.414, rel=1e-5)


def test_hybrid_scan_geometry_names(tmp_path, capsys):
    cfg = tmp_path / "scan.toml"
    cfg.write_text(
        'command = "hybrid-scan"\nformat = "csv"\n\n'
        '[hybrid_scan]\ngeometries = ["baseline", "extreme"]\n'
    )
    code, out, _ = run_cli(capsys, "--config", str(cfg))
    assert code == 0
    assert len(out.splitlines()) == 3


def test_console_script_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "fluxmacro.cli", "macro", "--z", "0.5"],
        capture_output=True,
        text=True,
        timeout=60,
    )
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["M"] == 1.0


def test_seed_flows_into_brute_force(tmp_path, capsys):
    cfg = tmp_path / "bf.toml"
    cfg.write_text(
        'command = "macro"\nseed = 3\n\n'
        "[macro]\nreals = [0.8, 0.4]\nbrute_force = true\nstarts = 4\n"
    )
    code, out, _ = run_cli(capsys, "--config", str(cfg))
    assert code == 0
    body = json.loads(out)
    assert body["brute_force"]["seed"] == 3
    assert body["brute_force"]["variance"] == pytest.approx(
        body["variance"], abs=1e-4
    )


def test_load_config_missing_file():
    with pytest.raises(ConfigError, match="no such file"):
        load_config("/nonexistent/path/run.toml")

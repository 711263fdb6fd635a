import json

import numpy as np
import pytest
from click.testing import CliRunner

from dunkl.cli import main
from dunkl.experiments import ConfigError, resolve_config

FAST = ["--grid-n", "256", "--function", "gaussian"]


def run_cli(args):
    return CliRunner().invoke(main, args, catch_exceptions=False)


def test_transform_writes_report_and_spectrum(tmp_path):
    out = tmp_path / "run"
    res = run_cli(["transform", "--out", str(out), "--freq-n", "17", *FAST])
    assert res.exit_code == 0
    report = json.loads((out / "report.json").read_text())
    assert report["experiment"] == "transform"
    assert report["parameters"]["grid_n"] == 256
    assert report["summary"]["max_identity_residual"] < 1e-6
    assert (out / "spectrum_gaussian.csv").exists()
    assert (out / "identity.csv").exists()


def test_transform_zero_function_writes_zero_spectrum(tmp_path):
    out = tmp_path / "zero"
    res = run_cli(["transform", "--out", str(out), "--grid-n", "256",
                   "--freq-n", "9", "--function", "zero"])
    assert res.exit_code == 0
    rows = (out / "spectrum_zero.csv").read_text().splitlines()[1:]
    assert rows and all(r.split(",")[1] == "0.0" and r.split(",")[2] == "0.0" for r in rows)


def test_invalid_alpha_exits_2(tmp_path):
    res = CliRunner().invoke(main, ["transform", "--out", str(tmp_path), "--alpha", "-0.6"])
    assert res.exit_code == 2
    res = CliRunner().invoke(main, ["weaktype", "--out", str(tmp_path), "--alpha", "-0.5"])
    assert res.exit_code == 2
    assert "alpha > -1/2 strictly" in res.output


def test_unknown_config_key_exits_2(tmp_path):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"no_such_knob": 1}))
    res = CliRunner().invoke(main, ["transform", "--config", str(cfg), "--out", str(tmp_path)])
    assert res.exit_code == 2
    assert "no_such_knob" in res.output


def test_config_file_and_cli_precedence(tmp_path):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"alpha": 0.5, "grid_n": 256, "freq_n": 9,
                               "functions": ["gaussian"]}))
    out = tmp_path / "run"
    res = run_cli(["transform", "--config", str(cfg), "--out", str(out), "--alpha", "1.0"])
    assert res.exit_code == 0
    report = json.loads((out / "report.json").read_text())
    assert report["parameters"]["alpha"] == 1.0  # CLI beats file
    assert report["parameters"]["grid_n"] == 256  # file beats default


def test_tail_cap_exits_3(tmp_path):
    # a truncation radius of 2 leaves visible gaussian mass outside the
    # integration window, so the tail diagnostic must trip the hard cap
    out = tmp_path / "bad"
    res = run_cli(["transform", "--out", str(out), "--radius", "2.0",
                   "--grid-n", "256", "--freq-n", "9", "--function", "gaussian"])
    assert res.exit_code == 3
    report = json.loads((out / "report.json").read_text())
    assert report["summary"]["max_tail_estimate"] > report["parameters"]["tail_cap"]
    assert any(d["warning"] for d in report["tail_diagnostics"])


def test_converge_rows_and_summary(tmp_path):
    # needs a realistic sampling density: on very coarse grids the spectrum
    # floor between R = 8 and 16 is interpolation noise, not decay
    out = tmp_path / "conv"
    res = run_cli(["converge", "--out", str(out), "--grid-n", "1024", "--function", "gaussian"])
    assert res.exit_code == 0
    report = json.loads((out / "report.json").read_text())
    rows = [r for r in report["rows"] if r["function"] == "gaussian"]
    assert [r["R"] for r in rows] == [2.0, 4.0, 8.0, 16.0]
    assert report["summary"]["monotone_decrease"]["gaussian"] is True
    assert report["summary"]["final_sup_error"]["gaussian"] < 1e-3
    lines = (out / "errors.csv").read_text().splitlines()
    assert lines[0] == "function,R,sup_error,lp_error"
    assert len(lines) == 5


def test_weaktype_report_structure(tmp_path):
    out = tmp_path / "wk"
    res = run_cli(["weaktype", "--out", str(out), "--rmax", "8", *FAST])
    assert res.exit_code == 0
    report = json.loads((out / "report.json").read_text())
    ratio_rows = [r for r in report["rows"] if "function" in r]
    assert {r["endpoint"] for r in ratio_rows} == {0, 1}
    assert all(r["status"] == "ok" and np.isfinite(r["ratio"]) for r in ratio_rows)
    stability = report["summary"]["power_function_stability"]
    assert stability["alpha_plus_half"]["weak_rel_change"] < 0.01
    assert stability["alpha_plus_half"]["strong_mass_growth"] > 1.5
    assert (out / "power_norms.csv").exists() and (out / "ratios.csv").exists()


def test_weaktype_zero_function_skipped(tmp_path):
    out = tmp_path / "wk0"
    res = run_cli(["weaktype", "--out", str(out), "--rmax", "4", "--grid-n", "256",
                   "--function", "zero", "--endpoint-index", "1"])
    assert res.exit_code == 0
    report = json.loads((out / "report.json").read_text())
    rows = [r for r in report["rows"] if "function" in r]
    assert rows and all(r["status"] == "skipped" and r["ratio"] is None for r in rows)


def test_prange_verdicts_agree(tmp_path):
    out = tmp_path / "pr"
    res = run_cli(["prange", "--out", str(out), "--rmax", "4",
                   "--p-values", "1.2,2,3.9,4.1,5", *FAST])
    assert res.exit_code == 0
    report = json.loads((out / "report.json").read_text())
    assert report["summary"]["verdict_agreement_rate"] == 1.0
    in_range = {r["p"]: r["in_range_endpoints"] for r in report["rows"]}
    assert in_range[2.0] is True and in_range[5.0] is False
    assert all(np.isfinite(r["max_ratio"]) for r in report["rows"])


def test_reports_embed_effective_config(tmp_path):
    out = tmp_path / "emb"
    run_cli(["transform", "--out", str(out), "--freq-n", "9", *FAST])
    report = json.loads((out / "report.json").read_text())
    for key in ("alpha", "grid_n", "radius", "rmax", "tail_cap", "functions",
                "freq_n", "freq_max", "nodes_per_panel", "max_panel_width"):
        assert key in report["parameters"]


@pytest.mark.parametrize(
    "command,extra",
    [
        ("transform", ["--freq-n", "17"]),
        ("converge", []),
        ("weaktype", ["--rmax", "4"]),
        ("prange", ["--rmax", "4", "--p-values", "2,5"]),
    ],
)
def test_byte_identical_reruns(tmp_path, command, extra):
    outs = []
    for tag in ("a", "b"):
        out = tmp_path / tag
        res = run_cli([command, "--out", str(out), *extra, *FAST])
        assert res.exit_code == 0
        outs.append(out)
    files_a = sorted(p.name for p in outs[0].iterdir())
    files_b = sorted(p.name for p in outs[1].iterdir())
    assert files_a == files_b
    for name in files_a:
        assert (outs[0] / name).read_bytes() == (outs[1] / name).read_bytes()


def test_resolve_config_rejects_bad_schedule():
    with pytest.raises(ConfigError):
        resolve_config("converge", {"r_schedule": [4.0, 2.0]})
    with pytest.raises(ConfigError):
        resolve_config("converge", {"r_schedule": [2.0, 32.0]})  # beyond rmax
    with pytest.raises(ConfigError):
        resolve_config("prange", {"p_values": [0.9]})
    with pytest.raises(ConfigError):
        resolve_config("weaktype", {"endpoint_indices": [2]})
    with pytest.raises(ConfigError):
        resolve_config("transform", {"functions": ["nope"]})

import json
import math

import numpy as np
import pytest

from cavityq import cli, config
from cavityq.config import ConfigError, parse_config_text, system_params


PAPER_CONFIG = """\
# reference operating point
ej_ghz = 6.5
ech4_ghz = 149
ng = 0.634233
omega_ghz = 40          # cavity mode
g_rad_s = 4e6
q_factor = 5e5
alpha = 4
phi = 3.141592653589793
"""


@pytest.fixture
def config_path(tmp_path):
    path = tmp_path / "run.cfg"
    path.write_text(PAPER_CONFIG)
    return path


def test_parse_basic():
    cfg = parse_config_text(PAPER_CONFIG)
    assert cfg.get("ej_ghz") == 6.5
    assert cfg.get("alpha") == 4.0 + 0.0j
    assert cfg.get("missing", 7) == 7


def test_parse_errors_carry_line_numbers():
    with pytest.raises(ConfigError, match=":2: unknown key"):
        parse_config_text("ng = 0.6\nbogus_key = 1\n")
    with pytest.raises(ConfigError, match=":3: duplicate"):
        parse_config_text("ng = 0.6\n\nng = 0.7\n")
    with pytest.raises(ConfigError, match=":1: bad value"):
        parse_config_text("ng = zebra\n")
    with pytest.raises(ConfigError, match="expected 'key = value'"):
        parse_config_text("just some words\n")
    with pytest.raises(ConfigError, match="not both"):
        parse_config_text("eta_ratio = 1e-4\ng_rad_s = 4e6\n")


def test_system_params_conversion():
    cfg = parse_config_text(PAPER_CONFIG)
    p = system_params(cfg)
    assert p.ej == pytest.approx(2.0 * math.pi * 6.5e9, rel=1e-15)
    assert p.ech == pytest.approx(2.0 * math.pi * 149e9 / 4.0, rel=1e-15)
    assert p.omega == pytest.approx(2.0 * math.pi * 40e9, rel=1e-15)
    assert p.g == pytest.approx(4e6, rel=1e-12)
    assert p.quality == 5e5


def test_system_params_requires_coupling():
    cfg = parse_config_text("ej_ghz = 6.5\nech4_ghz = 149\nng = 0.634233\nomega_ghz = 40\n")
    with pytest.raises(ConfigError, match="eta_ratio or g_rad_s"):
        system_params(cfg)


def test_system_params_missing_key():
    cfg = parse_config_text("ej_ghz = 6.5\n")
    with pytest.raises(ConfigError, match="ech4_ghz"):
        system_params(cfg)


def test_cli_prepare(config_path, capsys):
    rc = cli.main(["prepare", "--config", str(config_path), "--outcome", "e"])
    out = capsys.readouterr().out
    assert rc == 0
    assert "phi (rad)" in out
    assert "sign +1" in out
    rc = cli.main(["prepare", "--config", str(config_path), "--outcome", "g"])
    assert rc == 0
    assert "sign -1" in capsys.readouterr().out


def test_cli_prepare_dump_state(config_path, tmp_path, capsys):
    dump = tmp_path / "state.csv"
    rc = cli.main([
        "prepare", "--config", str(config_path), "--dump-state", str(dump)
    ])
    capsys.readouterr()
    assert rc == 0
    assert dump.exists()
    manifest = json.loads((tmp_path / "state.csv.manifest.json").read_text())
    assert manifest["subcommand"] == "prepare"
    assert "config" in manifest["input_digests"]
    assert len(manifest["input_digests"]["config"]) == 64


def test_cli_wigner_deterministic(config_path, tmp_path, capsys):
    cfg2 = tmp_path / "small.cfg"
    cfg2.write_text(PAPER_CONFIG + "grid_points = 33\n")
    out1 = tmp_path / "w1.csv"
    out2 = tmp_path / "w2.csv"
    assert cli.main(["wigner", "--config", str(cfg2), "--out", str(out1)]) == 0
    assert cli.main(["wigner", "--config", str(cfg2), "--out", str(out2)]) == 0
    capsys.readouterr()
    assert out1.read_bytes() == out2.read_bytes()
    header = out1.read_text().splitlines()[0]
    assert header == "x,p,w"
    assert (tmp_path / "w1.csv.manifest.json").exists()


def test_cli_readout_and_estimate(config_path, tmp_path, capsys):
    data = tmp_path / "curve.csv"
    rc = cli.main([
        "readout", "--config", str(config_path),
        "--taus", "5e-8:1e-6:20", "--phase-override", "0.0", "--out", str(data),
    ])
    capsys.readouterr()
    assert rc == 0
    assert data.read_text().splitlines()[0] == "tau_s,p_g,p_e"

    report = tmp_path / "fit.txt"
    rc = cli.main([
        "estimate", "--config", str(config_path), "--data", str(data),
        "--phase-override", "0.0", "--bracket", "1e5,2e6", "--out", str(report),
    ])
    out = capsys.readouterr().out
    assert rc == 0
    assert "q_hat" in out
    q_hat = float(report.read_text().splitlines()[0].split("=")[1])
    assert abs(q_hat - 5e5) / 5e5 < 1e-3


def test_cli_readout_seeded_shots_reproducible(config_path, tmp_path, capsys):
    outs = []
    for name in ("a.csv", "b.csv"):
        out = tmp_path / name
        rc = cli.main([
            "readout", "--config", str(config_path),
            "--taus", "5e-8:1e-6:10", "--shots", "1000", "--seed", "11",
            "--out", str(out),
        ])
        assert rc == 0
        outs.append(out.read_bytes())
    capsys.readouterr()
    assert outs[0] == outs[1]


def test_cli_validate(tmp_path, capsys):
    report = tmp_path / "report.json"
    rc = cli.main(["validate", "--report", str(report)])
    out = capsys.readouterr().out
    assert rc == 0
    assert "all checks passed" in out
    payload = json.loads(report.read_text())
    assert payload["ok"] is True
    names = {c["check"] for c in payload["checks"]}
    assert "density_trace_1" in names
    assert "readout_probabilities_sum" in names
    assert "wigner_unit_integral" in names


def test_cli_validate_mutation_detected(capsys):
    rc = cli.main(["validate", "--mutate"])
    out = capsys.readouterr().out
    assert rc == 1
    assert "FAIL" in out


def test_cli_bad_config_exit_code(tmp_path, capsys):
    bad = tmp_path / "bad.cfg"
    bad.write_text("nonsense = 12\n")
    rc = cli.main(["prepare", "--config", str(bad)])
    err = capsys.readouterr().err
    assert rc == 2
    assert "unknown key" in err

"""Command-line interface: parsing, emission, determinism, exit codes."""

import json
import math

import pytest

from spinfridge.cli import main, parse_config


def run_cli(args, path):
    return main(args + ["--out", str(path)])


def read_csv(path):
    lines = path.read_text().splitlines()
    header = lines[0].split(",")
    rows = [dict(zip(header, line.split(","))) for line in lines[1:]]
    return header, rows


def test_defaults_are_the_reference_operating_point():
    cfg = parse_config(["exchange"])
    assert (cfg.e1, cfg.e2, cfg.e3) == (1.0, 3.0, 2.0)
    assert (cfg.t1, cfg.t2, cfg.t3) == (2.0, 2.0, 10.0)
    assert cfg.theta == (math.pi / 2.0,)
    assert cfg.format == "csv"
    assert cfg.delta_scale == 1.0


def test_theta_list_parsing():
    cfg = parse_config(["cycles", "--theta", "0.3927,0.7854,1.1781,1.5708"])
    assert cfg.theta == (0.3927, 0.7854, 1.1781, 1.5708)


def test_invalid_gap_combination_is_rejected(capsys, tmp_path):
    assert main(["exchange", "--e3", "2.5"]) == 1
    err = capsys.readouterr().err
    assert "E2 must equal E1" in err


def test_config_file_roundtrip_and_flag_override(tmp_path):
    config = tmp_path / "run.cfg"
    config.write_text("t3 = 8.0\ncycles = 12\n# comment line\ntheta = 0.5\n")
    cfg = parse_config(["cycles", "--config", str(config)])
    assert cfg.t3 == 8.0
    assert cfg.cycles == 12
    assert cfg.theta == (0.5,)
    # flags win over the file
    cfg = parse_config(["cycles", "--config", str(config), "--t3", "9.0"])
    assert cfg.t3 == 9.0


def test_config_file_unknown_key_names_the_key(tmp_path, capsys):
    config = tmp_path / "run.cfg"
    config.write_text("tee3 = 8.0\n")
    assert main(["exchange", "--config", str(config)]) == 1
    assert "tee3" in capsys.readouterr().err


def test_exchange_csv_contract(tmp_path):
    out = tmp_path / "exchange.csv"
    assert run_cli(["exchange"], out) == 0
    header, rows = read_csv(out)
    assert header == [
        "P010_before", "P101_before", "P010_after", "P101_after",
        "dQ1", "dQ2", "dQ3", "T1_after", "T2_after", "T3_after",
    ]
    assert len(rows) == 1
    assert float(rows[0]["dQ1"]) < 0.0


def test_cycles_csv_contract_and_determinism(tmp_path):
    first = tmp_path / "a.csv"
    second = tmp_path / "b.csv"
    args = ["cycles", "--cycles", "10", "--theta", "1.5707963267948966"]
    assert run_cli(args, first) == 0
    assert run_cli(args, second) == 0
    assert first.read_bytes() == second.read_bytes()

    header, rows = read_csv(first)
    assert header == ["n", "theta", "T1", "entropy_q1", "energy_q1", "dQ1"]
    assert len(rows) == 11  # n = 0 plus ten cycles
    assert float(rows[-1]["T1"]) < float(rows[0]["T1"])


def test_ledger_csv_contract(tmp_path):
    out = tmp_path / "ledger.csv"
    assert run_cli(["ledger"], out) == 0
    header, rows = read_csv(out)
    assert header == ["step_index", "dW1", "dQ1", "dW2", "net_work", "cumulative_work"]
    assert len(rows) == 40
    assert abs(float(rows[-1]["cumulative_work"])) <= 1e-9


def test_phase_diagram_row_count(tmp_path):
    out = tmp_path / "phase.csv"
    assert run_cli(["phase-diagram", "--grid", "2,6,2,10,5"], out) == 0
    header, rows = read_csv(out)
    assert header == ["T2", "T3", "dQ1"]
    assert len(rows) == 25


def test_cop_sweep(tmp_path):
    out = tmp_path / "cop.csv"
    assert run_cli(["cop", "--grid", "2,6,2,10,9"], out) == 0
    header, rows = read_csv(out)
    assert header == ["T2", "cop", "carnot_limit", "dQ1", "dQ3"]
    assert len(rows) == 9
    assert all(float(r["cop"]) == 0.5 for r in rows)
    assert float(rows[0]["carnot_limit"]) == math.inf  # T2 = T1 endpoint


def test_bcs_csv_contract(tmp_path):
    out = tmp_path / "bcs.csv"
    assert run_cli(["bcs", "--bits", "10000", "--rounds", "2", "--seed", "5"], out) == 0
    header, rows = read_csv(out)
    assert header == ["round", "analytic_bias", "empirical_bias", "retained_bits"]
    assert len(rows) == 3
    assert float(rows[1]["analytic_bias"]) == 0.8


def test_verify_decomposition_dump_and_gate(tmp_path):
    out = tmp_path / "seq.csv"
    assert run_cli(["verify-decomposition", "--theta", "0,1.5707963267948966"], out) == 0
    header, rows = read_csv(out)
    assert header == ["index", "label", "duration"]
    assert len(rows) == 40
    assert rows[0]["label"] == "H@1;H@2;H@3"


def test_verify_decomposition_gate_trips_on_low_fidelity(tmp_path, monkeypatch):
    import spinfridge.cli as cli_module

    monkeypatch.setattr(cli_module, "verify", lambda seq: 0.5)
    assert run_cli(["verify-decomposition"], tmp_path / "seq.csv") == 1


def test_json_output_carries_metadata(tmp_path):
    out = tmp_path / "cycles.json"
    again = tmp_path / "again.json"
    assert run_cli(["cycles", "--cycles", "3", "--format", "json"], out) == 0
    assert run_cli(["cycles", "--cycles", "3", "--format", "json"], again) == 0
    assert out.read_bytes() == again.read_bytes()
    document = json.loads(out.read_text())
    assert document["meta"]["command"] == "cycles"
    assert document["meta"]["version"]
    assert document["meta"]["delta_scale"] == 1.0
    assert document["meta"]["config"]["E2"] == 3.0
    assert len(document["data"]) == 4


def test_delta_scale_multiplies_energy_columns_only(tmp_path):
    plain = tmp_path / "plain.csv"
    scaled = tmp_path / "scaled.csv"
    args = ["cycles", "--cycles", "3"]
    assert run_cli(args, plain) == 0
    assert run_cli(args + ["--delta-scale", "2"], scaled) == 0
    _, rows_plain = read_csv(plain)
    _, rows_scaled = read_csv(scaled)
    for a, b in zip(rows_plain, rows_scaled):
        assert float(b["T1"]) == pytest.approx(2.0 * float(a["T1"]), rel=1e-12)
        assert float(b["entropy_q1"]) == pytest.approx(float(a["entropy_q1"]), rel=1e-12)


def test_exit_codes():
    assert main(["exchange", "--t1", "-3"]) == 1  # validation
    assert main(["exchange", "--out", "/nonexistent-dir/x.csv"]) == 2  # I/O
    assert main(["no-such-command"]) == 1  # parser error
    assert main(["cycles", "--cycles", "0"]) == 1
    assert main(["phase-diagram", "--grid", "2,6,2,10,1"]) == 1

"""Command-line front end emitting deterministic CSV/JSON artifacts.

Configuration comes from built-in defaults (the reference operating
point), overridden by a flat key=value config file, overridden by flags.
All emitted numbers are in internal units (delta = k_B = 1) unless a
--delta-scale multiplier is given; the scale is recorded in JSON metadata.

Exit codes: 0 success, 1 validation failure (single-line diagnostic on
stderr), 2 I/O failure.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from dataclasses import asdict, dataclass, replace

from . import __version__
from .cooling import PRNG_ID, simulate_bcs
from .compiler import compile_exchange, run_with_ledger, verify
from .cycles import run_cycles, scan_phase_diagram
from .fridge import FridgeConfig, carnot_limit, cop, exchange, initial_state, system_hamiltonian

COMMANDS = (
    "exchange",
    "ledger",
    "cycles",
    "phase-diagram",
    "cop",
    "bcs",
    "verify-decomposition",
)

FIDELITY_GATE = 1.0 - 1e-8

_DEFAULTS = {
    "e1": 1.0,
    "e2": 3.0,
    "e3": 2.0,
    "t1": 2.0,
    "t2": 2.0,
    "t3": 10.0,
    "g": 1.0,
    "theta": (math.pi / 2.0,),
    "cycles": 60,
    "grid": (2.0, 6.0, 2.0, 10.0, 41),
    "bits": 1_000_000,
    "epsilon0": 0.5,
    "rounds": 1,
    "seed": 0,
    "out": None,
    "format": "csv",
    "delta_scale": 1.0,
}

# columns carrying delta (or delta/k_B) units, per command
_SCALED_COLUMNS = {
    "exchange": {"dQ1", "dQ2", "dQ3", "T1_after", "T2_after", "T3_after"},
    "ledger": {"dW1", "dQ1", "dW2", "net_work", "cumulative_work"},
    "cycles": {"T1", "energy_q1", "dQ1"},
    "phase-diagram": {"T2", "T3", "dQ1"},
    "cop": {"T2", "dQ1", "dQ3"},
    "bcs": set(),
    "verify-decomposition": set(),
}


@dataclass
class RunConfig:
    command: str
    e1: float = 1.0
    e2: float = 3.0
    e3: float = 2.0
    t1: float = 2.0
    t2: float = 2.0
    t3: float = 10.0
    g: float = 1.0
    theta: tuple[float, ...] = (math.pi / 2.0,)
    cycles: int = 60
    grid: tuple[float, float, float, float, int] = (2.0, 6.0, 2.0, 10.0, 41)
    bits: int = 1_000_000
    epsilon0: float = 0.5
    rounds: int = 1
    seed: int = 0
    out: str | None = None
    format: str = "csv"
    delta_scale: float = 1.0

    def fridge(self, theta: float | None = None) -> FridgeConfig:
        return FridgeConfig(
            E1=self.e1,
            E2=self.e2,
            E3=self.e3,
            T1=self.t1,
            T2=self.t2,
            T3=self.t3,
            g=self.g,
            theta=self.theta[0] if theta is None else theta,
        )


class _Parser(argparse.ArgumentParser):
    # keep exit code 1 for all validation problems (argparse defaults to 2)
    def error(self, message: str) -> None:  # type: ignore[override]
        print(f"error: {message}", file=sys.stderr)
        raise SystemExit(1)


def _parse_theta(text: str) -> tuple[float, ...]:
    values = tuple(float(part) for part in text.split(",") if part.strip())
    if not values:
        raise ValueError("theta list must not be empty")
    return values


def _parse_grid(text: str) -> tuple[float, float, float, float, int]:
    parts = [part.strip() for part in text.split(",")]
    if len(parts) != 5:
        raise ValueError("grid must be 'T2_min,T2_max,T3_min,T3_max,steps'")
    t2_min, t2_max, t3_min, t3_max = (float(p) for p in parts[:4])
    steps = int(parts[4])
    return (t2_min, t2_max, t3_min, t3_max, steps)


_FILE_PARSERS = {
    "e1": float,
    "e2": float,
    "e3": float,
    "t1": float,
    "t2": float,
    "t3": float,
    "g": float,
    "theta": _parse_theta,
    "cycles": int,
    "grid": _parse_grid,
    "bits": int,
    "epsilon0": float,
    "rounds": int,
    "seed": int,
    "out": str,
    "format": str,
    "delta_scale": float,
}


def _read_config_file(path: str) -> dict:
    values: dict = {}
    with open(path, "r", encoding="utf-8") as handle:
        for lineno, raw in enumerate(handle, start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ValueError(f"{path}:{lineno}: expected key=value, got {line!r}")
            key, _, value = line.partition("=")
            key = key.strip().lower()
            if key not in _FILE_PARSERS:
                raise ValueError(f"{path}:{lineno}: unknown key {key!r}")
            values[key] = _FILE_PARSERS[key](value.strip())
    return values


def _build_parser() -> _Parser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="flat key=value config file")
    common.add_argument("--out", help="output path (default: stdout)")
    common.add_argument("--format", choices=("csv", "json"), help="output format")
    common.add_argument("--delta-scale", type=float, dest="delta_scale",
                        help="display multiplier for delta-unit columns")
    common.add_argument("--theta", type=_parse_theta, help="comma-separated angles in radians")
    common.add_argument("--cycles", type=int, help="number of refrigeration cycles")
    common.add_argument("--grid", type=_parse_grid,
                        help="T2_min,T2_max,T3_min,T3_max,steps")
    common.add_argument("--seed", type=int, help="PRNG seed")
    for name in ("e1", "e2", "e3", "t1", "t2", "t3", "g"):
        common.add_argument(f"--{name}", type=float)

    parser = _Parser(prog="spinfridge",
                     description="three-spin self-contained refrigerator simulator")
    sub = parser.add_subparsers(dest="command", required=True)
    for command in COMMANDS:
        cmd = sub.add_parser(command, parents=[common])
        if command == "bcs":
            cmd.add_argument("--bits", type=int, help="pool size (even)")
            cmd.add_argument("--epsilon0", type=float, help="bath bias")
            cmd.add_argument("--rounds", type=int, help="compression rounds")
    return parser


def parse_config(argv: list[str] | None = None) -> RunConfig:
    """Resolve defaults, config file, and flags into a validated RunConfig."""
    namespace = _build_parser().parse_args(argv)
    values = dict(_DEFAULTS)
    if namespace.config:
        values.update(_read_config_file(namespace.config))
    for key in values:
        flag = getattr(namespace, key, None)
        if flag is not None:
            values[key] = flag
    cfg = RunConfig(command=namespace.command, **values)

    cfg.fridge()  # validates gaps/temperatures, including E2 = E1 + E3
    if cfg.format not in ("csv", "json"):
        raise ValueError(f"format must be csv or json, got {cfg.format!r}")
    if cfg.cycles < 1:
        raise ValueError(f"cycles must be at least 1, got {cfg.cycles}")
    if cfg.grid[4] < 2:
        raise ValueError(f"grid must have at least 2 steps per axis, got {cfg.grid[4]}")
    if not cfg.delta_scale > 0.0:
        raise ValueError(f"delta-scale must be positive, got {cfg.delta_scale}")
    return cfg


def _scaled(rows: list[dict], columns: set[str], scale: float) -> list[dict]:
    if scale == 1.0 or not columns:
        return rows
    return [
        {k: (v * scale if k in columns else v) for k, v in row.items()}
        for row in rows
    ]


def _json_value(value):
    if isinstance(value, float):
        value = float(value)
        if not math.isfinite(value):
            return repr(value)  # 'inf', '-inf', 'nan'
        return value
    if isinstance(value, dict):
        return {k: _json_value(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_json_value(v) for v in value]
    if isinstance(value, (int, str)) or value is None:
        return value
    return str(value)


def emit(rows: list[dict], fmt: str, path: str | None, meta: dict) -> int:
    """Write rows as CSV or JSON; byte-identical for identical inputs."""
    if fmt == "csv":
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator="\n")
        if rows:
            writer.writerow(list(rows[0].keys()))
            for row in rows:
                writer.writerow(
                    [repr(float(v)) if isinstance(v, float) else str(v) for v in row.values()]
                )
        payload = buffer.getvalue()
    else:
        document = {
            "meta": {k: _json_value(v) for k, v in meta.items()},
            "data": [{k: _json_value(v) for k, v in row.items()} for row in rows],
        }
        payload = json.dumps(document, indent=2) + "\n"
    if path is None or path == "-":
        sys.stdout.write(payload)
    else:
        with open(path, "w", encoding="utf-8", newline="") as handle:
            handle.write(payload)
    return 0


def _meta(cfg: RunConfig) -> dict:
    meta = {
        "command": cfg.command,
        "version": __version__,
        "delta_scale": cfg.delta_scale,
        "config": {
            "E1": cfg.e1, "E2": cfg.e2, "E3": cfg.e3,
            "T1": cfg.t1, "T2": cfg.t2, "T3": cfg.t3,
            "g": cfg.g, "theta": list(cfg.theta), "cycles": cfg.cycles,
            "grid": list(cfg.grid), "bits": cfg.bits, "epsilon0": cfg.epsilon0,
            "rounds": cfg.rounds, "seed": cfg.seed,
        },
    }
    if cfg.command == "bcs":
        meta["prng"] = PRNG_ID
    return meta


def _rows_exchange(cfg: RunConfig) -> list[dict]:
    report = exchange(cfg.fridge())
    return [asdict(report)]


def _rows_ledger(cfg: RunConfig) -> list[dict]:
    fridge_cfg = cfg.fridge()
    sequence = compile_exchange(cfg.theta[0], fridge_cfg.g)
    _, entries = run_with_ledger(sequence, initial_state(fridge_cfg), system_hamiltonian(fridge_cfg))
    return [
        {
            "step_index": e.step_index,
            "dW1": e.dW1,
            "dQ1": e.dQ1,
            "dW2": e.dW2,
            "net_work": e.net_work,
            "cumulative_work": e.cumulative_work,
        }
        for e in entries
    ]


def _rows_cycles(cfg: RunConfig) -> list[dict]:
    rows: list[dict] = []
    for theta in cfg.theta:
        for record in run_cycles(cfg.fridge(theta), cfg.cycles, theta):
            rows.append(
                {
                    "n": record.n,
                    "theta": theta,
                    "T1": record.T1,
                    "entropy_q1": record.entropy_q1,
                    "energy_q1": record.energy_q1,
                    "dQ1": record.dQ1,
                }
            )
    return rows


def _rows_phase_diagram(cfg: RunConfig) -> list[dict]:
    t2_min, t2_max, t3_min, t3_max, steps = cfg.grid
    points = scan_phase_diagram(
        (t2_min, t2_max),
        (t3_min, t3_max),
        steps,
        cfg.t1,
        cfg.theta[0],
        base=cfg.fridge(),
    )
    return [{"T2": p.T2, "T3": p.T3, "dQ1": p.dQ1} for p in points]


def _rows_cop(cfg: RunConfig) -> list[dict]:
    t2_min, t2_max, _, _, steps = cfg.grid
    base = cfg.fridge()
    rows = []
    for index in range(steps):
        t2 = t2_min + (t2_max - t2_min) * index / (steps - 1)
        point = replace(base, T2=t2)
        report = exchange(point)
        if base.T1 <= t2 < base.T3:
            limit = carnot_limit(base.T1, t2, base.T3)
        else:
            limit = math.nan  # outside the engine+fridge ordering
        rows.append(
            {
                "T2": t2,
                "cop": cop(point),
                "carnot_limit": limit,
                "dQ1": report.dQ1,
                "dQ3": report.dQ3,
            }
        )
    return rows


def _rows_bcs(cfg: RunConfig) -> list[dict]:
    result = simulate_bcs(cfg.bits, cfg.epsilon0, cfg.rounds, cfg.seed)
    return [
        {
            "round": r.round_index,
            "analytic_bias": r.analytic_bias,
            "empirical_bias": r.empirical_bias,
            "retained_bits": r.retained_bits,
        }
        for r in result.rounds
    ]


def run(cfg: RunConfig) -> int:
    """Dispatch one command; returns the process exit code."""
    if cfg.command == "verify-decomposition":
        fidelities = []
        dump_rows: list[dict] = []
        for position, theta in enumerate(cfg.theta):
            sequence = compile_exchange(theta, cfg.g)
            fidelity = verify(sequence)
            fidelities.append(fidelity)
            print(f"theta={theta!r} fidelity={fidelity!r}", file=sys.stderr)
            if position == 0:
                dump_rows = [
                    {"index": i, "label": s.label, "duration": s.duration}
                    for i, s in enumerate(sequence.steps, start=1)
                ]
        emit(dump_rows, cfg.format, cfg.out, _meta(cfg))
        return 0 if min(fidelities) >= FIDELITY_GATE else 1

    builders = {
        "exchange": _rows_exchange,
        "ledger": _rows_ledger,
        "cycles": _rows_cycles,
        "phase-diagram": _rows_phase_diagram,
        "cop": _rows_cop,
        "bcs": _rows_bcs,
    }
    rows = builders[cfg.command](cfg)
    rows = _scaled(rows, _SCALED_COLUMNS[cfg.command], cfg.delta_scale)
    return emit(rows, cfg.format, cfg.out, _meta(cfg))


def main(argv: list[str] | None = None) -> int:
    try:
        cfg = parse_config(argv)
    except SystemExit as exc:  # argparse help/usage paths
        code = exc.code
        return int(code) if isinstance(code, int) else 0
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    try:
        return run(cfg)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    raise SystemExit(main())

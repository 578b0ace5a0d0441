"""Command-line front end.

    becgate gate [--preset reference] [--config FILE] [overrides...]
    becgate ramp design|trace ...
    becgate sweep --axis F --values 1,2,3 [gate options...]
    becgate verify [--json]

Exit codes: 0 all checks pass, 1 input error, 2 a feasibility flag failed.
Bare numbers on the command line use the flag's default unit (s, Hz, nm).
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import math
import os
import sys
from dataclasses import replace
from typing import Any, Sequence

import numpy as np

from . import config as cfgmod
from .acceptance import run_acceptance
from .dynamics import SHAPES, RampSchedule, ermakov_evolve, excitation_trace
from .protocol import (
    SWEEP_AXES,
    GateConfig,
    GateConfigError,
    PhaseOvershootError,
    design_ramp,
    simulate_gate,
    sweep,
)
from .quantities import RB87, Constants, Dimension, UnitError, hz, parse_si
from .tdse import tdse_oracle
from .twobody import NoInteractionError

log = logging.getLogger("becgate")

EXIT_OK, EXIT_INPUT, EXIT_FLAGS = 0, 1, 2

# flag dest -> (config key, default unit for bare numbers)
GATE_FLAGS = {
    "a00": ("a00", "nm"),
    "a01": ("a01", "nm"),
    "a02": ("a02", "nm"),
    "a12": ("a12", "nm"),
    "f": ("feshbach_factor", None),
    "omega_tilde_0": ("omega_tilde_0", "Hz"),
    "omega_tilde_1": ("omega_tilde_1", "Hz"),
    "shape": ("shape", None),
    "ta": ("t_a", "s"),
    "tf": ("t_f", "s"),
    "target_phase": ("target_phase", None),
    "atoms": ("atom_number", None),
    "omega_ratio": ("omega_ratio", None),
    "pmax": ("p_max", None),
}

INPUT_ERRORS = (
    cfgmod.ConfigError,
    UnitError,
    GateConfigError,
    PhaseOvershootError,
    NoInteractionError,
    ValueError,
)


def _add_output(p: argparse.ArgumentParser, default: str = "table") -> None:
    p.add_argument("--format", choices=("table", "json", "csv"), default=None, help=f"output format (default {default})")
    p.add_argument("--output", "-o", help="write to this file instead of stdout")


def _add_gate_options(p: argparse.ArgumentParser) -> None:
    p.add_argument("--preset", default="reference", help="base parameter set: reference or baseline")
    p.add_argument("--config", help="key = value config file; flags override it")
    p.add_argument("--a00")
    p.add_argument("--a01")
    p.add_argument("--a02")
    p.add_argument("--a12")
    p.add_argument("--f", help="Feshbach factor on a12")
    p.add_argument("--omega-tilde-0", dest="omega_tilde_0", help="initial effective trap frequency, e.g. '2pi*10 Hz'")
    p.add_argument("--omega-tilde-1", dest="omega_tilde_1", help="compressed effective trap frequency")
    p.add_argument("--shape", choices=SHAPES)
    p.add_argument("--ta", help="ramp duration")
    g = p.add_mutually_exclusive_group()
    g.add_argument("--tf", help="hold time")
    g.add_argument("--target-phase", dest="target_phase", help="target total phase, e.g. pi")
    p.add_argument("--atoms", help="condensate atom number")
    p.add_argument("--omega-ratio", dest="omega_ratio", help="bare / effective trap frequency")
    p.add_argument("--pmax", help="allowed excitation per ramp")
    p.add_argument("--no-compression", action="store_true", help="hold at omega_tilde_0 with t_a = 0")
    _add_output(p)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="becgate", description="Photon-photon phase gate in a BEC")
    parser.add_argument("-v", "--verbose", action="count", default=0)
    sub = parser.add_subparsers(dest="command", required=True)

    g = sub.add_parser("gate", help="simulate compress / hold / decompress")
    _add_gate_options(g)

    r = sub.add_parser("ramp", help="design or trace a compression ramp")
    rsub = r.add_subparsers(dest="ramp_command", required=True)
    for name in ("design", "trace"):
        rp = rsub.add_parser(name)
        rp.add_argument("--omega-0", dest="omega_0", default="2pi*10 Hz")
        rp.add_argument("--omega-1", dest="omega_1", default="2pi*80 Hz")
        rp.add_argument("--shape", choices=SHAPES, default="smoothstep")
        _add_output(rp, "csv")
    design = rsub.choices["design"]
    design.add_argument("--pmax", type=float, default=0.002)
    trace = rsub.choices["trace"]
    trace.add_argument("--ta", default="0.14 s")
    trace.add_argument("--samples", type=int, default=51)
    trace.add_argument("--oracle", action="store_true", help="add the grid-oracle excitation column")

    s = sub.add_parser("sweep", help="gate reports over one parameter")
    s.add_argument("--axis", required=True, choices=SWEEP_AXES)
    s.add_argument("--values", required=True, help="comma-separated values (units allowed)")
    s.add_argument("--workers", type=int, default=1)
    _add_gate_options(s)

    v = sub.add_parser("verify", help="run the acceptance checks")
    v.add_argument("--json", action="store_true")
    v.add_argument(
        "--perturb",
        action="append",
        default=[],
        metavar="NAME=FACTOR",
        help="multiply a physical constant (hbar, atom_mass) by FACTOR; fault injection",
    )
    return parser


# --- config assembly -------------------------------------------------------


def gate_config(args: argparse.Namespace) -> tuple[GateConfig, dict[str, Any]]:
    """preset < config file < flags."""
    cfg = cfgmod.base_config(args.preset)
    file_values: dict[str, Any] = cfgmod.load(args.config) if args.config else {}
    cfg = cfgmod.apply_overrides(cfg, file_values)
    flag_values: dict[str, Any] = {}
    for dest, (key, unit) in GATE_FLAGS.items():
        raw = getattr(args, dest, None)
        if raw is None:
            continue
        try:
            flag_values[key] = cfgmod.KEYS[key](raw, unit) if unit else cfgmod.KEYS[key](raw)
        except (ValueError, UnitError) as exc:
            flag = "--" + dest.replace("_", "-")
            raise cfgmod.ConfigError(f"{flag}: {exc}") from None
    if args.no_compression:
        w0 = flag_values.get("omega_tilde_0", cfg.omega_tilde_0)
        flag_values.update(omega_tilde_1=w0, t_a=0.0)
    cfg = cfgmod.apply_overrides(cfg, flag_values)
    options = {
        "format": args.format or file_values.get("format", "table"),
        "output": args.output or file_values.get("output"),
    }
    return cfg, options


# --- rendering -------------------------------------------------------------


def _flatten(d: dict, prefix: str = "") -> list[tuple[str, Any, str]]:
    rows = []
    for k, v in d.items():
        name = f"{prefix}{k}"
        if isinstance(v, dict) and "value" in v and "unit" in v:
            rows.append((name, v["value"], v["unit"]))
        elif isinstance(v, dict):
            rows.extend(_flatten(v, name + "."))
        else:
            rows.append((name, v, ""))
    return rows


def _csv(header: Sequence[str], rows: Sequence[Sequence[Any]]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow([repr(x) if isinstance(x, float) else x for x in row])
    return buf.getvalue()


def _table(rows: Sequence[tuple[str, Any, str]]) -> str:
    width = max(len(r[0]) for r in rows)
    out = []
    for name, value, unit in rows:
        shown = f"{value:.6g}" if isinstance(value, float) else str(value)
        out.append(f"{name:<{width}}  {shown:>14} {unit}".rstrip())
    return "\n".join(out) + "\n"


def render_report(doc: dict, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(doc, indent=2) + "\n"
    rows = _flatten(doc)
    if fmt == "csv":
        return _csv(("quantity", "value", "unit"), rows)
    return _table(rows)


def _emit(text: str, path: str | None) -> None:
    if path:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


# --- commands --------------------------------------------------------------


def cmd_gate(args: argparse.Namespace, c: Constants = RB87) -> int:
    cfg, opts = gate_config(args)
    log.info("gate config: %s", cfg)
    report = simulate_gate(cfg, c)
    doc = report.to_dict()
    _emit(render_report(doc, opts["format"]), opts["output"])
    for name, ok in report.flags.items():
        if not ok:
            print(f"warning: check failed: {name}", file=sys.stderr)
    return EXIT_OK if report.ok else EXIT_FLAGS


def _ramp_freqs(args) -> tuple[float, float]:
    w0 = parse_si(args.omega_0, Dimension.ANGULAR_FREQUENCY, "Hz")
    w1 = parse_si(args.omega_1, Dimension.ANGULAR_FREQUENCY, "Hz")
    return w0, w1


def cmd_ramp(args: argparse.Namespace) -> int:
    w0, w1 = _ramp_freqs(args)
    fmt = args.format or "csv"
    if args.ramp_command == "design":
        d = design_ramp(w0, w1, args.pmax, args.shape)
        doc = {
            "omega_0": {"value": hz(w0), "unit": "Hz"},
            "omega_1": {"value": hz(w1), "unit": "Hz"},
            "shape": args.shape,
            "p_max": {"value": args.pmax, "unit": "1"},
            "t_a": {"value": d.t_a if d.t_a is not None else math.nan, "unit": "s"},
            "p_exc": {"value": d.p_exc if d.p_exc is not None else math.nan, "unit": "1"},
            "feasible": d.feasible,
        }
        _emit(render_report(doc, fmt), args.output)
        return EXIT_OK if d.feasible else EXIT_FLAGS

    t_a = parse_si(args.ta, Dimension.TIME, "s")
    ramp = RampSchedule(w0, w1, t_a, args.shape)
    traj = ermakov_evolve(ramp, n_samples=args.samples)
    p = excitation_trace(traj)
    header = ["t_s", "omega_tilde_Hz", "b", "bdot_per_s", "p_exc"]
    cols = [traj.t, hz(traj.omega), traj.b, traj.bdot, p]
    if args.oracle:
        o = tdse_oracle(ramp, sample_times=traj.t)
        header.append("p_exc_oracle")
        cols.append(o.sample_excitation)
    rows = [[float(v) for v in row] for row in np.column_stack(cols)]
    if fmt == "json":
        text = json.dumps({"columns": header, "rows": rows}, indent=2) + "\n"
    elif fmt == "table":
        text = " ".join(f"{h:>16}" for h in header) + "\n"
        text += "".join(" ".join(f"{v:>16.8g}" for v in row) + "\n" for row in rows)
    else:
        text = _csv(header, rows)
    _emit(text, args.output)
    return EXIT_OK


def _sweep_values(text: str, axis: str) -> list[float]:
    dims = {"omega_tilde_1": (Dimension.ANGULAR_FREQUENCY, "Hz"), "t_a": (Dimension.TIME, "s"), "l0": (Dimension.LENGTH, "um")}
    parts = [p.strip() for p in text.split(",") if p.strip()]
    if axis in dims:
        dim, unit = dims[axis]
        return [parse_si(p, dim, unit) for p in parts]
    return [float(p) for p in parts]


def cmd_sweep(args: argparse.Namespace, c: Constants = RB87) -> int:
    cfg, opts = gate_config(args)
    values = _sweep_values(args.values, args.axis)
    rows = sweep(cfg, args.axis, values, c, workers=args.workers)
    fmt = opts["format"]
    unit = {"omega_tilde_1": "rad/s", "t_a": "s", "l0": "m"}.get(args.axis, "1")
    if fmt == "json":
        doc = [
            {
                args.axis: {"value": r.value, "unit": unit},
                "report": r.report.to_dict() if r.report else None,
                "error": r.error,
            }
            for r in rows
        ]
        text = json.dumps(doc, indent=2) + "\n"
    else:
        header = [f"{args.axis}[{unit}]", "t_a[s]", "t_f[s]", "t_total[s]", "phi_a[rad]", "phi_total[rad]",
                  "p_exc_ramp[1]", "fidelity_metric[1]", "ok", "error"]
        table = []
        for r in rows:
            if r.report is None:
                table.append([r.value] + [math.nan] * 7 + [False, r.error])
            else:
                rep = r.report
                table.append([r.value, rep.t_a, rep.t_f, rep.t_total, rep.phi_a, rep.phi_total,
                              rep.p_exc_ramp, rep.fidelity_metric, rep.ok, ""])
        if fmt == "csv":
            text = _csv(header, table)
        else:
            text = " ".join(f"{h:>18}" for h in header[:-1]) + "\n"
            for row in table:
                text += " ".join(f"{v:>18.6g}" if isinstance(v, float) else f"{str(v):>18}" for v in row[:-1])
                text += f"  {row[-1]}\n" if row[-1] else "\n"
    _emit(text, opts["output"])
    return EXIT_OK if all(r.report is not None and r.report.ok for r in rows) else EXIT_FLAGS


def _perturbed_constants(specs: Sequence[str]) -> Constants:
    c = RB87
    for item in specs:
        name, _, factor = item.partition("=")
        if name not in ("hbar", "atom_mass") or not factor:
            raise cfgmod.ConfigError(f"--perturb expects hbar=FACTOR or atom_mass=FACTOR, got {item!r}")
        c = replace(c, **{name: getattr(c, name) * float(factor)})
    return c


def cmd_verify(args: argparse.Namespace) -> int:
    c = _perturbed_constants(args.perturb)
    rows = run_acceptance(c)
    if args.json:
        sys.stdout.write(json.dumps([r.to_dict() for r in rows], indent=2) + "\n")
    else:
        for r in rows:
            print(r.line())
        n_ok = sum(r.passed for r in rows)
        print(f"{n_ok}/{len(rows)} checks passed")
    return EXIT_OK if all(r.passed for r in rows) else EXIT_FLAGS


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    level = logging.WARNING - 10 * min(args.verbose, 2)
    logging.basicConfig(level=level, format="%(levelname)s %(name)s: %(message)s")
    handlers = {"gate": cmd_gate, "ramp": cmd_ramp, "sweep": cmd_sweep, "verify": cmd_verify}
    try:
        return handlers[args.command](args)
    except INPUT_ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())

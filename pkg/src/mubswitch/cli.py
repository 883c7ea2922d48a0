"""Command-line entry point.

    mubswitch verify [--dim-max N] [--tol T] [--seed S] [--states N] [--report PATH]
    mubswitch qubit-sweep --p a:b:n --theta a:b:n --phi a:b:n [--control K] --out PATH [--format F]
    mubswitch qudit-sweep --dim D --p a:b:n [--states N] --seed S --out PATH [--control K] [--format F]
    mubswitch single --p P --theta T --phi F [--control K] [--print-matrix]

Any option may also come from a ``key=value`` file given with ``--config``;
keys are the long option names (``dim-max`` or ``dim_max``). Command-line
flags win over the file.

Exit status: 0 success, 1 verification or consistency failure, 2 bad input.
"""
import argparse
import logging
import sys
from pathlib import Path

import numpy as np

from .bases import computational_basis, fourier_basis, projectors
from .channels import ControlState, switch_apply
from .errors import ConsistencyError, DomainError
from .qubit import TWO_PI, BlochVector, bloch_state
from .sweep import (
    SweepConfig,
    evaluate_point,
    parse_grid,
    run_qubit_sweep,
    run_qudit_sweep,
    write_records,
)
from .verify import FAULTS, backend_name, run_verify

log = logging.getLogger("mubswitch")

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2

# option name -> (converter, default); None default means required
_OPTIONS = {
    "verify": {
        "dim_max": (int, 16),
        "tol": (float, 1e-10),
        "seed": (int, 0),
        "states": (int, 100),
        "report": (str, ""),
        "inject_fault": (str, ""),
    },
    "qubit-sweep": {
        "p": (parse_grid, None),
        "theta": (parse_grid, None),
        "phi": (parse_grid, None),
        "control": (str, "coherent"),
        "out": (str, None),
        "format": (str, "csv"),
        "tol": (float, 1e-10),
    },
    "qudit-sweep": {
        "dim": (int, None),
        "p": (parse_grid, None),
        "states": (int, 10),
        "seed": (int, None),
        "out": (str, None),
        "control": (str, "coherent"),
        "format": (str, "csv"),
        "tol": (float, 1e-10),
    },
    "single": {
        "p": (float, None),
        "theta": (float, None),
        "phi": (float, None),
        "control": (str, "coherent"),
        "print_matrix": (bool, False),
    },
}


class UsageError(Exception):
    pass


def _flag(name: str) -> str:
    return "--" + name.replace("_", "-")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="mubswitch", description=__doc__.splitlines()[0])
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)
    helps = {
        "verify": "run every invariant check",
        "qubit-sweep": "sweep (p, theta, phi) for the qubit switch",
        "qudit-sweep": "sweep p for basis and random qudit inputs",
        "single": "evaluate one qubit point",
    }
    for command, options in _OPTIONS.items():
        sp = sub.add_parser(command, help=helps[command])
        sp.add_argument("--config", help="key=value file with option values")
        for name, (conv, _) in options.items():
            if conv is bool:
                sp.add_argument(_flag(name), action="store_true", default=None)
            elif name == "inject_fault":
                sp.add_argument(_flag(name), choices=FAULTS, default=None, help=argparse.SUPPRESS)
            else:
                sp.add_argument(_flag(name), default=None)
    return parser


def read_config(path) -> dict:
    values = {}
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise UsageError(f"cannot read config {path}: {exc}") from None
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise UsageError(f"{path}:{lineno}: expected key=value")
        key, value = (s.strip() for s in line.split("=", 1))
        values[key.lstrip("-").replace("-", "_")] = value
    return values


def _to_bool(value) -> bool:
    if isinstance(value, bool):
        return value
    if str(value).lower() in ("1", "true", "yes", "on"):
        return True
    if str(value).lower() in ("0", "false", "no", "off", ""):
        return False
    raise ValueError(f"not a boolean: {value!r}")


def resolve_options(command: str, args: argparse.Namespace) -> dict:
    """Merge flags over config-file values over defaults, converting types."""
    options = _OPTIONS[command]
    config = read_config(args.config) if args.config else {}
    mode = config.pop("mode", command)
    if mode != command:
        raise UsageError(f"config is for mode {mode!r}, not {command!r}")
    unknown = set(config) - set(options)
    if unknown:
        raise UsageError(f"unknown config keys for {command}: {', '.join(sorted(unknown))}")
    resolved = {}
    for name, (conv, default) in options.items():
        raw = getattr(args, name)
        if raw is None:
            raw = config.get(name)
        if raw is None:
            if default is None:
                raise UsageError(f"{command}: missing required option {_flag(name)}")
            resolved[name] = default
            continue
        try:
            resolved[name] = _to_bool(raw) if conv is bool else conv(raw)
        except (ValueError, DomainError) as exc:
            raise UsageError(f"{command}: bad value for {_flag(name)}: {exc}") from None
    return resolved


def _cmd_verify(opts) -> int:
    if opts["tol"] <= 0:
        raise UsageError("--tol must be positive")
    if not 2 <= opts["dim_max"] <= 64:
        raise UsageError("--dim-max must lie in [2, 64]")
    if opts["seed"] < 0 or opts["states"] < 1:
        raise UsageError("--seed must be >= 0 and --states >= 1")
    log.info("verify on %s backend", backend_name())
    report = run_verify(
        dim_max=opts["dim_max"],
        tolerance=opts["tol"],
        seed=opts["seed"],
        n_states=opts["states"],
        fault=opts["inject_fault"] or None,
        progress=lambda name: log.info("checking %s", name),
    )
    text = report.to_text()
    sys.stdout.write(text)
    if opts["report"]:
        path = Path(opts["report"])
        body = report.to_json() if path.suffix == ".json" else text
        path.write_text(body, encoding="utf-8")
    return EXIT_OK if report.passed else EXIT_FAIL


def _cmd_qubit_sweep(opts) -> int:
    cfg = SweepConfig(
        mode="qubit-sweep",
        d=2,
        p_grid=opts["p"],
        theta_grid=opts["theta"],
        phi_grid=opts["phi"],
        control_kind=opts["control"],
        output_path=opts["out"],
        output_format=opts["format"],
        tolerance=opts["tol"],
    )
    records = run_qubit_sweep(cfg)
    write_records(records, cfg.output_path, cfg.output_format)
    log.info("wrote %d records to %s", len(records), cfg.output_path)
    return EXIT_OK


def _cmd_qudit_sweep(opts) -> int:
    cfg = SweepConfig(
        mode="qudit-sweep",
        d=opts["dim"],
        p_grid=opts["p"],
        control_kind=opts["control"],
        seed=opts["seed"],
        n_states=opts["states"],
        output_path=opts["out"],
        output_format=opts["format"],
        tolerance=opts["tol"],
    )
    records = run_qudit_sweep(cfg)
    write_records(records, cfg.output_path, cfg.output_format)
    log.info("wrote %d records to %s", len(records), cfg.output_path)
    return EXIT_OK


def _cmd_single(opts) -> int:
    phi = opts["phi"] % TWO_PI
    control = ControlState(opts["p"], opts["control"])
    mk = projectors(computational_basis(2))
    ml = projectors(fourier_basis(2))
    out = switch_apply(control, bloch_state(BlochVector(opts["theta"], phi)), mk, ml)
    metrics = evaluate_point(control, out, 2)
    for key, value in metrics.items():
        print(f"{key} = {value:.12g}")
    if opts["print_matrix"]:
        for row in out:
            print("  ".join(_complex_str(z) for z in row))
    return EXIT_OK


def _complex_str(z: complex) -> str:
    re, im = float(z.real) + 0.0, float(z.imag) + 0.0
    return f"{re:.12g}{im:+.12g}j"


_COMMANDS = {
    "verify": _cmd_verify,
    "qubit-sweep": _cmd_qubit_sweep,
    "qudit-sweep": _cmd_qudit_sweep,
    "single": _cmd_single,
}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(
        level=logging.INFO if args.verbose else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s",
    )
    try:
        opts = resolve_options(args.command, args)
        return _COMMANDS[args.command](opts)
    except (UsageError, DomainError) as exc:
        print(f"mubswitch: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"mubswitch: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ConsistencyError as exc:
        print(f"mubswitch: consistency failure: {exc}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())

"""
Command-line front end.

    kitaev-sensing point     --mu 2 --delta 1e-7 --L 1000
    kitaev-sensing sweep     --mu-range 1.5:2.5:21 --delta-range 1e-4:0.5:11 --L 1000
    kitaev-sensing scaling   --mu 2 --delta 1e-7 --sizes 400,600,800,1000 --quantity g
    kitaev-sensing verify    --mu 1 --delta 0.4 --L 64 --tolerance 1e-4
    kitaev-sensing phase     --mu 1 --delta 0.5
    kitaev-sensing occupancy --mu 2 --delta-range 0.1:1:10 --sizes 400,600,800

Any flag can also come from a flat ``key = value`` file passed with
``--config``; flags given on the command line win.  Output is CSV (default)
or JSON ``{"config": ..., "records": [...]}``, written to ``--output`` or stdout.

Exit codes: 0 success, 1 usage error, 2 domain error, 3 verification
failure, 4 IO error.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from dataclasses import asdict, dataclass
from typing import List, Optional, Sequence, Tuple

import numpy as np

from . import __version__
from .errors import ConvergenceError, CriticalLineError
from .model import DEFAULT_WINDING_STEPS, ModelParams, average_occupation, ground_state, winding_number
from .oracle import DEFAULT_H, DEFAULT_STEP, crosscheck
from .qfim import multiparam_bound, precision_scalar, qfim, singleparam_bound
from .scaling import DEFAULT_SIZES, SWEEP_QUANTITIES, scaling_sweep

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_DOMAIN = 2
EXIT_VERIFY = 3
EXIT_IO = 4

COMMANDS = ("point", "sweep", "scaling", "verify", "phase", "occupancy")

POINT_COLUMNS = (
    "mu", "delta", "L", "f_mm", "f_md", "f_dd", "g", "multiparam_bound", "singleparam_bound",
)
COLUMNS = {
    "point": POINT_COLUMNS,
    "sweep": POINT_COLUMNS,
    "scaling": ("mu", "delta", "quantity", "L", "value", "exponent", "log_prefactor", "r_squared"),
    "verify": (
        "mu", "delta", "L", "h", "step",
        "f_mm", "f_md", "f_dd", "fd_f_mm", "fd_f_md", "fd_f_dd", "fid_f_mm", "fid_f_dd",
        "berry_term", "max_rel_error", "tolerance", "passed",
    ),
    "phase": ("mu", "delta", "winding"),
    "occupancy": ("mu", "delta", "L", "occupation"),
}


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    command: str
    mu: Optional[float] = None
    mu_range: Optional[Tuple[float, float, int]] = None
    delta: Optional[float] = None
    delta_range: Optional[Tuple[float, float, int]] = None
    L: Optional[int] = None
    sizes: Optional[List[int]] = None
    m: Optional[int] = None
    quantity: Optional[str] = None
    h: Optional[float] = None
    step: Optional[float] = None
    tolerance: Optional[float] = None
    steps: Optional[int] = None
    output: Optional[str] = None
    format: str = "csv"

    def to_record(self) -> dict:
        return {k: v for k, v in asdict(self).items() if v is not None}


# --- argument types -------------------------------------------------------


def _real(text: str) -> float:
    try:
        value = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a real number: {text!r}")
    if not math.isfinite(value):
        raise argparse.ArgumentTypeError(f"not a finite number: {text!r}")
    return value


def _positive_real(text: str) -> float:
    value = _real(text)
    if value <= 0:
        raise argparse.ArgumentTypeError(f"must be positive: {text!r}")
    return value


def _positive_int(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}")
    if value < 1:
        raise argparse.ArgumentTypeError(f"must be a positive integer: {text!r}")
    return value


def _even_size(text: str) -> int:
    value = _positive_int(text)
    if value < 2 or value % 2:
        raise argparse.ArgumentTypeError(f"system size must be an even integer >= 2: {text!r}")
    return value


def _size_list(text: str) -> List[int]:
    sizes = [_even_size(part.strip()) for part in text.split(",") if part.strip()]
    if not sizes:
        raise argparse.ArgumentTypeError("empty size list")
    return sizes


def _range(text: str) -> Tuple[float, float, int]:
    parts = text.split(":")
    if len(parts) != 3:
        raise argparse.ArgumentTypeError(f"range must look like start:stop:count, got {text!r}")
    start, stop = _real(parts[0]), _real(parts[1])
    count = _positive_int(parts[2])
    if count < 2:
        raise argparse.ArgumentTypeError(f"range count must be at least 2: {text!r}")
    if not start < stop:
        raise argparse.ArgumentTypeError(f"range start must be below stop: {text!r}")
    return start, stop, count


# --- parser ---------------------------------------------------------------


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def _output_flags(p: argparse.ArgumentParser):
    p.add_argument("--output", help="output file (default: stdout)")
    p.add_argument("--format", choices=("csv", "json"), default="csv")


def _coupling(p: argparse.ArgumentParser, name: str, ranged: bool):
    if ranged:
        g = p.add_mutually_exclusive_group(required=True)
        g.add_argument(f"--{name}", type=_real)
        g.add_argument(f"--{name}-range", type=_range, metavar="START:STOP:COUNT")
    else:
        p.add_argument(f"--{name}", type=_real, required=True)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="kitaev-sensing", description="QFIM of the Kitaev chain ground state.")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)

    p = sub.add_parser("point", help="QFIM, G and bounds at one parameter point")
    _coupling(p, "mu", False)
    _coupling(p, "delta", False)
    p.add_argument("--L", type=_even_size, required=True)
    p.add_argument("--m", type=_positive_int, default=1)
    _output_flags(p)

    p = sub.add_parser("sweep", help="point records over a (mu, delta) grid, mu outer")
    _coupling(p, "mu", True)
    _coupling(p, "delta", True)
    p.add_argument("--L", type=_even_size, required=True)
    p.add_argument("--m", type=_positive_int, default=1)
    _output_flags(p)

    p = sub.add_parser("scaling", help="values over system sizes and the fitted exponent")
    _coupling(p, "mu", False)
    _coupling(p, "delta", False)
    p.add_argument("--sizes", type=_size_list, default=list(DEFAULT_SIZES))
    p.add_argument("--quantity", choices=SWEEP_QUANTITIES, default="g")
    _output_flags(p)

    p = sub.add_parser("verify", help="cross-check the analytic QFIM against numerical oracles")
    _coupling(p, "mu", False)
    _coupling(p, "delta", False)
    p.add_argument("--L", type=_even_size, required=True)
    p.add_argument("--h", type=_positive_real, default=DEFAULT_H)
    p.add_argument("--step", type=_positive_real, default=DEFAULT_STEP)
    p.add_argument("--tolerance", type=_positive_real, default=1e-4)
    _output_flags(p)

    p = sub.add_parser("phase", help="winding number")
    _coupling(p, "mu", False)
    _coupling(p, "delta", False)
    p.add_argument("--steps", type=_positive_int, default=DEFAULT_WINDING_STEPS)
    _output_flags(p)

    p = sub.add_parser("occupancy", help="average particle number of the ground state")
    _coupling(p, "mu", False)
    _coupling(p, "delta", True)
    sizes = p.add_mutually_exclusive_group(required=True)
    sizes.add_argument("--L", type=_even_size)
    sizes.add_argument("--sizes", type=_size_list)
    _output_flags(p)
    return parser


def read_config_file(path: str) -> List[Tuple[str, str]]:
    """Parse ``key = value`` lines; blank lines and ``#`` comments are skipped."""
    try:
        with open(path, encoding="utf-8") as fh:
            lines = fh.read().splitlines()
    except OSError as exc:
        raise UsageError(f"cannot read config file {path!r}: {exc}")
    entries = []
    for n, raw in enumerate(lines, 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise UsageError(f"{path}:{n}: expected 'key = value', got {raw!r}")
        key, value = (part.strip() for part in line.split("=", 1))
        key = key.lstrip("-").replace("_", "-")
        if not key:
            raise UsageError(f"{path}:{n}: empty key")
        entries.append((key, value))
    return entries


# a flag on the command line also displaces its mutually exclusive partner from the file
_ALTERNATIVES = {
    "mu": "mu-range", "mu-range": "mu",
    "delta": "delta-range", "delta-range": "delta",
    "L": "sizes", "sizes": "L",
}


def _split_config(argv: Sequence[str]) -> Tuple[Optional[str], List[str]]:
    rest, path = [], None
    it = iter(argv)
    for arg in it:
        if arg == "--config":
            path = next(it, None)
            if path is None:
                raise UsageError("--config needs a file path")
        elif arg.startswith("--config="):
            path = arg.split("=", 1)[1]
        else:
            rest.append(arg)
    return path, rest


def parse_config(argv: Sequence[str]) -> RunConfig:
    """Flags plus an optional config file into a ``RunConfig``; flags win."""
    path, argv = _split_config(list(argv))
    given = {a[2:].split("=", 1)[0] for a in argv if a.startswith("--")}
    injected: List[str] = []
    command = None
    if path is not None:
        for key, value in read_config_file(path):
            if key == "command":
                command = value
            elif key not in given and _ALTERNATIVES.get(key) not in given:
                injected.append(f"--{key}={value}")
    if argv and argv[0] in COMMANDS:
        command, argv = argv[0], argv[1:]
    elif argv and not argv[0].startswith("-"):
        raise UsageError(f"unknown command {argv[0]!r}; expected one of {', '.join(COMMANDS)}")
    if command is None:
        if argv and argv[0] == "--version":
            build_parser().parse_args(argv)
        raise UsageError(f"missing command; expected one of {', '.join(COMMANDS)}")
    if command not in COMMANDS:
        raise UsageError(f"unknown command {command!r}")
    # later occurrences override earlier ones in argparse, so file values go first
    ns = build_parser().parse_args([command, *injected, *argv])
    return RunConfig(**vars(ns))


# --- evaluation -----------------------------------------------------------


def _axis(value: Optional[float], span: Optional[Tuple[float, float, int]]) -> List[float]:
    if span is not None:
        return [float(x) for x in np.linspace(span[0], span[1], span[2])]
    return [float(value)]


def _point_record(mu: float, delta: float, L: int, m: int) -> dict:
    q = qfim(ModelParams(mu, delta), L)
    bound = multiparam_bound(q, m)
    single = singleparam_bound(q, m) if q.f_mm > 0 and q.f_dd > 0 else math.inf
    return {
        "mu": mu, "delta": delta, "L": L,
        "f_mm": q.f_mm, "f_md": q.f_md, "f_dd": q.f_dd, "g": precision_scalar(q),
        "multiparam_bound": bound.bound, "singleparam_bound": single,
    }


def evaluate(config: RunConfig) -> Tuple[List[dict], int]:
    """Records for ``config`` and the exit status they imply."""
    c = config
    if c.command == "point":
        return [_point_record(c.mu, c.delta, c.L, c.m)], EXIT_OK
    if c.command == "sweep":
        records = [
            _point_record(mu, delta, c.L, c.m)
            for mu in _axis(c.mu, c.mu_range)
            for delta in _axis(c.delta, c.delta_range)
        ]
        return records, EXIT_OK
    if c.command == "scaling":
        fit = scaling_sweep(ModelParams(c.mu, c.delta), c.sizes, c.quantity)
        records = [
            {
                "mu": c.mu, "delta": c.delta, "quantity": c.quantity, "L": L, "value": value,
                "exponent": fit.exponent, "log_prefactor": fit.log_prefactor,
                "r_squared": fit.r_squared,
            }
            for L, value in fit.points
        ]
        return records, EXIT_OK
    if c.command == "verify":
        rep = crosscheck(ModelParams(c.mu, c.delta), c.L, c.h, c.step)
        passed = rep.max_rel_error <= c.tolerance
        record = {
            "mu": c.mu, "delta": c.delta, "L": c.L, "h": c.h, "step": c.step,
            "f_mm": rep.analytic.f_mm, "f_md": rep.analytic.f_md, "f_dd": rep.analytic.f_dd,
            "fd_f_mm": rep.finite_difference.f_mm, "fd_f_md": rep.finite_difference.f_md,
            "fd_f_dd": rep.finite_difference.f_dd,
            "fid_f_mm": rep.fidelity_diag[0], "fid_f_dd": rep.fidelity_diag[1],
            "berry_term": rep.berry_term, "max_rel_error": rep.max_rel_error,
            "tolerance": c.tolerance, "passed": passed,
        }
        return [record], EXIT_OK if passed else EXIT_VERIFY
    if c.command == "phase":
        w = winding_number(ModelParams(c.mu, c.delta), c.steps)
        return [{"mu": c.mu, "delta": c.delta, "winding": w}], EXIT_OK
    if c.command == "occupancy":
        sizes = c.sizes if c.sizes is not None else [c.L]
        records = [
            {"mu": c.mu, "delta": delta, "L": L,
             "occupation": average_occupation(ground_state(ModelParams(c.mu, delta), L))}
            for L in sizes
            for delta in _axis(c.delta, c.delta_range)
        ]
        return records, EXIT_OK
    raise UsageError(f"unknown command {c.command!r}")


# --- rendering ------------------------------------------------------------


def format_number(value) -> str:
    if isinstance(value, (bool, np.bool_)):
        return "true" if value else "false"
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (float, np.floating)):
        value = float(value)
        if math.isnan(value):
            return "nan"
        if math.isinf(value):
            return "inf" if value > 0 else "-inf"
        return format(value, ".17g")
    return str(value)


def render_csv(command: str, records: List[dict]) -> str:
    columns = COLUMNS[command]
    lines = [",".join(columns)]
    lines += [",".join(format_number(r[col]) for col in columns) for r in records]
    return "\n".join(lines) + "\n"


def _json_value(value) -> str:
    if isinstance(value, (bool, np.bool_)):
        return "true" if value else "false"
    if isinstance(value, (float, np.floating)):
        text = format_number(value)
        return text if math.isfinite(value) else json.dumps(text)
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (list, tuple)):
        return "[" + ", ".join(_json_value(v) for v in value) + "]"
    if value is None:
        return "null"
    return json.dumps(str(value))


def _json_object(pairs, indent: str) -> str:
    inner = indent + "  "
    body = ",\n".join(f"{inner}{json.dumps(k)}: {_json_value(v)}" for k, v in pairs)
    return "{\n" + body + "\n" + indent + "}"


def render_json(config: RunConfig, records: List[dict]) -> str:
    columns = COLUMNS[config.command]
    cfg = _json_object(config.to_record().items(), "  ")
    recs = ",\n".join("    " + _json_object(((c, r[c]) for c in columns), "    ") for r in records)
    return '{\n  "config": ' + cfg + ',\n  "records": [\n' + recs + "\n  ]\n}\n"


def run(config: RunConfig, stdout=None) -> int:
    """Evaluate ``config``, write its output artifact, return the exit status."""
    stdout = stdout if stdout is not None else sys.stdout
    try:
        records, status = evaluate(config)
    except (CriticalLineError, ConvergenceError, ValueError) as exc:
        print(f"kitaev-sensing: domain error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    if config.format == "json":
        text = render_json(config, records)
    else:
        text = render_csv(config.command, records)
    if config.output:
        try:
            with open(config.output, "w", encoding="utf-8", newline="") as fh:
                fh.write(text)
        except OSError as exc:
            print(f"kitaev-sensing: cannot write {config.output!r}: {exc}", file=sys.stderr)
            return EXIT_IO
    else:
        stdout.write(text)
    if status == EXIT_VERIFY:
        print("kitaev-sensing: verification failed: max_rel_error exceeds tolerance", file=sys.stderr)
    return status


def main(argv: Optional[Sequence[str]] = None) -> int:
    argv = sys.argv[1:] if argv is None else list(argv)
    try:
        config = parse_config(argv)
    except UsageError as exc:
        print(exc, file=sys.stderr)
        return EXIT_USAGE
    return run(config)


if __name__ == "__main__":
    sys.exit(main())

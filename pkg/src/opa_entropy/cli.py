"""Command-line front end.

    opa-entropy entropy thermal --xi 1.0
    opa-entropy entropy superposition --m 1 --z 2 --xi 1.0 --format json
    opa-entropy sweep --m 1 --xi 0.5 1.0 1.5 --z-max 4 --z-step 0.5 -o fig2.csv
    opa-entropy moments fock --m 2 --xi 0.8 --n-max 12 --hausdorff
    opa-entropy validate --grid small

Exit codes: 0 success, 1 validation failure, 2 usage error, 3 numerical
failure.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from datetime import datetime, timezone
from importlib import metadata, resources
from typing import Optional, Sequence

import numpy as np

from . import oracle, replica
from .core import CapacityError, DomainError, SqueezeParams, VacuumFockInput

EXIT_OK = 0
EXIT_VALIDATION = 1
EXIT_USAGE = 2
EXIT_NUMERICAL = 3

CSV_COLUMNS = ("m", "xi", "z", "S_closed", "S_oracle", "discrepancy", "truncation")
METHODS = ("closed", "oracle", "both")


def tool_version() -> str:
    try:
        return metadata.version("artifact")
    except metadata.PackageNotFoundError:
        return "unknown"


def load_schema() -> dict:
    text = resources.files("opa_entropy").joinpath("schema/run_record.schema.json").read_text()
    return json.loads(text)


class UsageError(Exception):
    pass


@dataclass(frozen=True)
class SweepSpec:
    m: int
    xi_list: tuple
    z_min: float
    z_max: float
    z_step: float
    method: str = "both"

    def __post_init__(self):
        if not self.xi_list:
            raise UsageError("xi list must be nonempty")
        if self.z_min > self.z_max:
            raise UsageError("z_min must not exceed z_max")
        if not self.z_step > 0:
            raise UsageError("z_step must be positive")
        if self.method not in METHODS:
            raise UsageError(f"unknown method {self.method!r}")

    def z_values(self) -> list:
        count = int(np.floor((self.z_max - self.z_min) / self.z_step + 1e-9)) + 1
        # rounding keeps grid values free of accumulated step error in the CSV
        return [round(self.z_min + i * self.z_step, 12) for i in range(count)]

    def points(self) -> list:
        return [(self.m, xi, z) for xi in self.xi_list for z in self.z_values()]


def evaluate_point(state: str, m: int, xi: float, z: float, method: str, phase: float = 0.0,
                   deficit: float = oracle.DEFAULT_DEFICIT_TARGET) -> dict:
    """Entropy of one (state, m, xi, z) point by the requested method(s)."""
    start = time.perf_counter()
    params = SqueezeParams(xi, phase)
    if state == "thermal":
        m, z = 0, 0.0
        closed = lambda: replica.thermal_entropy(params)  # noqa: E731
        source = 0
    elif state == "fock":
        z = 0.0
        closed = lambda: replica.fock_entropy(params, m)  # noqa: E731
        source = m
    else:
        inp = VacuumFockInput(m, z)
        closed = lambda: replica.superposition_entropy(params, inp)  # noqa: E731
        source = inp
    row = {"state": state, "m": m, "xi": xi, "z": z, "S_closed": None, "S_oracle": None,
           "discrepancy": None, "truncation": None, "error_estimate": None}
    err = 0.0
    if method in ("closed", "both"):
        res = closed()
        row["S_closed"] = res.value
        err += res.error_estimate
    if method in ("oracle", "both"):
        res = oracle.spectral_entropy(oracle.output_spectrum(params, source, deficit))
        row["S_oracle"] = res.value
        row["truncation"] = res.truncation
        err += res.error_estimate
    if method == "both":
        row["discrepancy"] = abs(row["S_closed"] - row["S_oracle"])
    row["error_estimate"] = err
    row["wall_time"] = time.perf_counter() - start
    return row


def _sweep_worker(args):
    return evaluate_point("superposition", *args)


def run_sweep(spec: SweepSpec, jobs: int = 1) -> list:
    """Rows ordered by (xi, z) regardless of completion order."""
    tasks = [(m, xi, z, spec.method) for m, xi, z in spec.points()]
    if jobs <= 1:
        return [_sweep_worker(t) for t in tasks]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(_sweep_worker, tasks))


def _fmt(value) -> str:
    if value is None:
        return ""
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    return format(float(value), ".17g")


def render_csv(rows: Sequence[dict], meta: dict) -> str:
    buf = io.StringIO()
    buf.write(f"# {meta['tool']} {meta['version']} {meta['command']} generated {meta['timestamp']}\n")
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    for row in rows:
        writer.writerow([_fmt(row[c]) for c in CSV_COLUMNS])
    return buf.getvalue()


def render_json(rows: Sequence[dict], meta: dict, extra: Optional[dict] = None) -> str:
    doc = {"metadata": meta, "rows": list(rows)}
    if extra:
        doc.update(extra)
    return json.dumps(doc, indent=2) + "\n"


def _metadata(command: str, inputs: dict) -> dict:
    return {
        "tool": "opa-entropy",
        "version": tool_version(),
        "timestamp": datetime.now(timezone.utc).isoformat(timespec="seconds"),
        "command": command,
        "inputs": inputs,
    }


def _add_state_args(p: argparse.ArgumentParser):
    p.add_argument("state", choices=("thermal", "fock", "superposition"))
    p.add_argument("--xi", type=float, required=True, help="squeezing magnitude |xi|")
    p.add_argument("--phase", type=float, default=0.0, help="squeezing phase (radians)")
    p.add_argument("--m", type=int, default=None, help="Fock index of the excited component")
    p.add_argument("--z", type=float, default=None, help="superposition weight z >= 0")
    p.add_argument("--deficit", type=float, default=oracle.DEFAULT_DEFICIT_TARGET,
                   help="oracle trace-deficit target")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="opa-entropy", description=__doc__.split("\n")[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {tool_version()}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("entropy", help="entropy of one amplified input state")
    _add_state_args(p)
    p.add_argument("--method", choices=METHODS, default=None)
    p.add_argument("--format", choices=("text", "json", "csv"), default="text")

    p = sub.add_parser("sweep", help="S(z) curves for |0> + z|m>")
    p.add_argument("--m", type=int, default=1)
    p.add_argument("--xi", type=float, nargs="+", required=True)
    p.add_argument("--z-min", type=float, default=0.0)
    p.add_argument("--z-max", type=float, default=4.0)
    p.add_argument("--z-step", type=float, default=0.5)
    p.add_argument("--method", choices=METHODS, default="both")
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("-o", "--output", default="-", help="output path, '-' for stdout")

    p = sub.add_parser("moments", help="trace moments tr(rho^n), n = 1..n_max")
    _add_state_args(p)
    p.add_argument("--n-max", type=int, default=8)
    p.add_argument("--source", choices=("closed", "oracle"), default=None)
    p.add_argument("--hausdorff", action="store_true", help="check Hausdorff positivity")
    p.add_argument("--format", choices=("text", "json"), default="text")

    p = sub.add_parser("validate", help="closed form versus oracle suites")
    p.add_argument("--grid", choices=("small", "full"), default="small")
    p.add_argument("--seed", type=int, default=0)
    return parser


def _state_inputs(args) -> tuple:
    m, z = args.m, args.z
    if args.state in ("fock", "superposition") and (m is None or m < 0):
        raise UsageError(f"{args.state} needs --m >= 0")
    if args.state == "superposition":
        if z is None:
            raise UsageError("superposition needs --z")
        if m < 1:
            raise UsageError("superposition needs --m >= 1")
    return (m or 0), (z or 0.0)


def cmd_entropy(args, out) -> int:
    m, z = _state_inputs(args)
    method = args.method or ("both" if args.state == "superposition" else "closed")
    row = evaluate_point(args.state, m, args.xi, z, method, args.phase, args.deficit)
    meta = _metadata("entropy", {"state": args.state, "m": m, "xi": args.xi, "z": z,
                                 "phase": args.phase, "method": method})
    if args.format == "json":
        out.write(render_json([row], meta))
    elif args.format == "csv":
        out.write(render_csv([row], meta))
    else:
        if method == "both":
            out.write(f"S_closed = {_fmt(row['S_closed'])}\n")
            out.write(f"S_oracle = {_fmt(row['S_oracle'])}\n")
            out.write(f"discrepancy = {_fmt(row['discrepancy'])}\n")
            out.write(f"error_estimate = {_fmt(row['error_estimate'])}\n")
        else:
            value = row["S_closed"] if method == "closed" else row["S_oracle"]
            out.write(f"S = {_fmt(value)}\n")
    return EXIT_OK


def cmd_sweep(args, out) -> int:
    spec = SweepSpec(args.m, tuple(args.xi), args.z_min, args.z_max, args.z_step, args.method)
    if spec.m < 1:
        raise UsageError("sweep needs --m >= 1")
    rows = run_sweep(spec, args.jobs)
    meta = _metadata("sweep", {"m": spec.m, "xi": list(spec.xi_list), "z_min": spec.z_min,
                               "z_max": spec.z_max, "z_step": spec.z_step, "method": spec.method})
    text = render_csv(rows, meta) if args.format == "csv" else render_json(rows, meta)
    if args.output == "-":
        out.write(text)
    else:
        try:
            with open(args.output, "w", newline="") as fh:
                fh.write(text)
        except OSError as exc:
            raise UsageError(f"cannot write {args.output}: {exc}") from exc
    return EXIT_OK


def cmd_moments(args, out) -> int:
    m, z = _state_inputs(args)
    source = args.source or ("oracle" if args.state == "superposition" else "closed")
    if args.n_max < 1:
        raise UsageError("--n-max must be >= 1")
    params = SqueezeParams(args.xi, args.phase)
    if source == "closed":
        if args.state == "superposition":
            raise UsageError("superposition moments have no closed form; use --source oracle")
        seq = (replica.thermal_moments(params, args.n_max) if args.state == "thermal"
               else replica.fock_moments(params, m, args.n_max))
    else:
        if args.state == "superposition":
            st = VacuumFockInput(m, z)
        else:
            st = m if args.state == "fock" else 0
        seq = oracle.spectral_moments(oracle.output_spectrum(params, st, args.deficit), args.n_max)
    report = None
    if args.hausdorff:
        k_max = max(1, args.n_max // 2)
        if args.n_max - k_max < 1:
            raise UsageError("--hausdorff needs --n-max >= 2")
        report = oracle.hausdorff_check(seq, k_max)
    if args.format == "json":
        rows = [{"state": args.state, "m": m, "xi": args.xi, "z": z, "n": n, "moment": v,
                 "source": seq.source} for n, v in zip(seq.orders, seq.values)]
        extra = None
        if report is not None:
            extra = {"hausdorff": {"passed": report.passed,
                                   "witness": list(report.witness) if report.witness else None}}
        meta = _metadata("moments", {"state": args.state, "m": m, "xi": args.xi, "z": z,
                                     "n_max": args.n_max, "source": seq.source})
        out.write(render_json(rows, meta, extra))
    else:
        for n, v in zip(seq.orders, seq.values):
            out.write(f"{n} {_fmt(v)}\n")
        if report is not None:
            status = "pass" if report.passed else f"fail witness (n, k) = {report.witness}"
            out.write(f"hausdorff: {status}\n")
    if report is not None and not report.passed:
        return EXIT_VALIDATION
    return EXIT_OK


def cmd_validate(args, out) -> int:
    from .validation import run_validation

    results = run_validation(args.grid, args.seed)
    for r in results:
        out.write(r.line() + "\n")
    ok = all(r.passed for r in results)
    out.write(f"{'all suites passed' if ok else 'validation FAILED'}\n")
    return EXIT_OK if ok else EXIT_VALIDATION


COMMANDS = {"entropy": cmd_entropy, "sweep": cmd_sweep, "moments": cmd_moments, "validate": cmd_validate}


def main(argv: Optional[Sequence[str]] = None, out=None) -> int:
    out = out if out is not None else sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code is not None else EXIT_OK
    try:
        return COMMANDS[args.command](args, out)
    except (UsageError, DomainError) as exc:
        print(f"opa-entropy: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (ArithmeticError, CapacityError) as exc:
        print(f"opa-entropy: numerical failure: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL


if __name__ == "__main__":
    sys.exit(main())

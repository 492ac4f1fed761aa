"""Command-line front end.

Exit codes: 0 success, 1 verification failure, 2 input error, 3 no defined
rows in an analysis.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
import warnings
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

import numpy as np

from . import __version__, hydrogen as hy
from .chi import bounds, chi_ratio, chi_table, max_occupancy
from .report import analyze_spectrum
from .spectrum import (
    DEFAULT_ZERO_THRESHOLD,
    SpectrumError,
    geometric,
    load_spectrum,
    purity,
    random_dirichlet,
    uniform,
)
from .verify import corrupted_chi_table, run_verification
from .wavefunction import GridError, load_grid_wavefunction, schmidt_from_grid

OUTPUT_DIR_ENV = "COBOSON_OUTPUT_DIR"

EXIT_OK, EXIT_VERIFY, EXIT_INPUT, EXIT_NO_ROWS = 0, 1, 2, 3


class InputError(Exception):
    pass


def _emit(text: str, output: str | None) -> None:
    if output is None:
        sys.stdout.write(text)
        return
    path = Path(output)
    if not path.is_absolute() and os.environ.get(OUTPUT_DIR_ENV):
        path = Path(os.environ[OUTPUT_DIR_ENV]) / path
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(text)


def _render(report, fmt: str) -> str:
    return report.to_csv() if fmt == "csv" else report.to_json()


def _spectrum_from_args(args):
    thr = args.zero_threshold
    if args.spectrum is not None:
        try:
            spec = load_spectrum(args.spectrum, thr)
        except OSError as exc:
            raise InputError(f"cannot read {args.spectrum}: {exc.strerror}") from None
        return spec, {"source": "file", "path": str(args.spectrum)}
    if args.uniform is not None:
        return uniform(args.uniform), {"source": "uniform", "M": args.uniform}
    if args.geometric is not None:
        spec = geometric(args.geometric, args.tail_cutoff)
        return spec, {"source": "geometric", "z": args.geometric, "tail_cutoff": args.tail_cutoff}
    spec = random_dirichlet(args.dirichlet, args.concentration, args.seed)
    return spec, {"source": "dirichlet", "M": args.dirichlet, "concentration": args.concentration, "seed": args.seed}


def _finish_report(report, args) -> int:
    for w in report.warnings:
        print(f"warning: {w}", file=sys.stderr)
    _emit(_render(report, args.format), args.output)
    return EXIT_OK if report.metrics else EXIT_NO_ROWS


def cmd_analyze(args) -> int:
    spec, descriptor = _spectrum_from_args(args)
    report = analyze_spectrum(spec, descriptor, args.n_max)
    return _finish_report(report, args)


def cmd_wavefunction(args) -> int:
    try:
        gw = load_grid_wavefunction(args.grid)
    except OSError as exc:
        raise InputError(f"cannot read {args.grid}: {exc.strerror}") from None
    spec = schmidt_from_grid(gw, args.zero_threshold)
    descriptor = {
        "source": "grid",
        "path": str(args.grid),
        "grid_a": gw.grid_a.to_dict(),
        "grid_b": gw.grid_b.to_dict(),
    }
    report = analyze_spectrum(spec, descriptor, args.n_max)
    return _finish_report(report, args)


def hydrogen_summary(b_over_a0: float, delta: float) -> tuple[dict, int]:
    """Hydrogen-in-a-trap report and exit code."""
    caught_warnings: list[str] = []
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        model = hy.HydrogenTrapModel(b_over_a0)
        closed = hy.hydrogen_purity_closed(model)
        quad = hy.hydrogen_purity_quadrature(model) if b_over_a0 >= 1 else None
    caught_warnings.extend(str(w.message) for w in caught)
    if 0.1 <= closed < 1.0:
        caught_warnings.append(f"purity {closed:.6g} >= 0.1: NP << 1 cannot hold for more than a few atoms")
    valid = closed < 1.0
    out = {
        "b_over_a0": b_over_a0,
        "delta": delta,
        "purity_closed": closed,
        "purity_quadrature": quad,
        "relative_difference": None if quad is None else abs(quad - closed) / closed,
        "valid": valid,
        "max_atoms": hy.max_atoms(model, delta) if valid else None,
        "warnings": caught_warnings,
    }
    return out, EXIT_OK if valid else EXIT_INPUT


def cmd_hydrogen(args) -> int:
    if not args.b > 0:
        raise InputError("--b must be positive")
    if not 0 < args.delta < 1:
        raise InputError("--delta must lie in (0, 1)")
    out, code = hydrogen_summary(args.b, args.delta)
    for w in out["warnings"]:
        print(f"warning: {w}", file=sys.stderr)
    if not out["valid"]:
        print(f"error: purity {out['purity_closed']:.6g} is not a valid purity; trap too small", file=sys.stderr)
    _emit(json.dumps(out, indent=2) + "\n", args.output)
    return code


def cmd_verify(args) -> int:
    chi_fn = corrupted_chi_table if args.inject_fault else chi_table
    try:
        result = run_verification(args.m_max, args.trials, args.seed, chi_fn=chi_fn)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    print("\n".join(result.summary_lines()))
    print("PASS" if result.ok else "FAIL")
    return EXIT_OK if result.ok else EXIT_VERIFY


def _sweep_row(task: tuple) -> dict:
    param, value, N, delta, tail = task
    if param == "b":
        out, _ = hydrogen_summary(value, delta)
        return {
            "b_over_a0": value,
            "purity_closed": out["purity_closed"],
            "purity_quadrature": out["purity_quadrature"],
            "max_atoms": out["max_atoms"],
        }
    if param == "M":
        spec = uniform(int(value))
        row = {"M": int(value)}
    else:
        spec = geometric(value, tail)
        row = {"z": value}
    table = chi_table(spec, N + 1)
    lo, hi = bounds(spec, N)
    ratio = chi_ratio(table, N) if table.is_defined(N) else None
    occ_bound, occ_exact = max_occupancy(spec, delta)
    row.update(
        purity=purity(spec),
        mode_count=spec.effective_mode_count,
        N=N,
        chi_ratio=ratio,
        lower_bound=lo,
        upper_bound=hi,
        max_occupancy_bound=occ_bound,
        max_occupancy_exact=occ_exact,
    )
    return row


def _sweep_values(args) -> list[float]:
    if args.values is not None:
        try:
            values = [float(v) for v in args.values.split(",") if v.strip()]
        except ValueError:
            raise InputError(f"cannot parse --values {args.values!r}") from None
    else:
        start, stop, num = args.range
        values = list(np.linspace(float(start), float(stop), int(num)))
    if args.param == "M":
        values = [float(int(round(v))) for v in values]
        if any(v < 1 for v in values):
            raise InputError("M values must be >= 1")
    if not values:
        raise InputError("empty sweep")
    return values


def cmd_sweep(args) -> int:
    values = _sweep_values(args)
    tasks = [(args.param, v, args.n, args.delta, args.tail_cutoff) for v in values]
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", hy.RegimeWarning)
        if args.jobs > 1:
            with ProcessPoolExecutor(args.jobs) as pool:
                rows = list(pool.map(_sweep_row, tasks))
        else:
            rows = [_sweep_row(t) for t in tasks]
    if args.format == "json":
        text = json.dumps(rows, indent=2) + "\n"
    else:
        buf = io.StringIO()
        writer = csv.DictWriter(buf, fieldnames=list(rows[0]), lineterminator="\n")
        writer.writeheader()
        writer.writerows({k: ("" if v is None else v) for k, v in r.items()} for r in rows)
        text = buf.getvalue()
    _emit(text, args.output)
    return EXIT_OK


def _add_output_args(p, default_format="json"):
    p.add_argument("--format", choices=["json", "csv"], default=default_format)
    p.add_argument("-o", "--output", help=f"output file (relative paths go under ${OUTPUT_DIR_ENV} if set)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="coboson", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", help="chi-ratio metrics and purity bounds for a spectrum")
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--spectrum", type=Path, help="JSON array or one-number-per-line file")
    src.add_argument("--uniform", type=int, metavar="M")
    src.add_argument("--geometric", type=float, metavar="Z")
    src.add_argument("--dirichlet", type=int, metavar="M")
    p.add_argument("--tail-cutoff", type=float, default=1e-12)
    p.add_argument("--concentration", type=float, default=1.0)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--n-max", type=int, default=None)
    p.add_argument("--zero-threshold", type=float, default=DEFAULT_ZERO_THRESHOLD)
    _add_output_args(p)
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("wavefunction", help="Schmidt spectrum of a gridded two-particle wavefunction")
    p.add_argument("grid", type=Path)
    p.add_argument("--n-max", type=int, default=None)
    p.add_argument("--zero-threshold", type=float, default=DEFAULT_ZERO_THRESHOLD)
    _add_output_args(p)
    p.set_defaults(func=cmd_wavefunction)

    p = sub.add_parser("hydrogen", help="trapped hydrogen purity and atom count")
    p.add_argument("--b", type=float, required=True, help="trap width in Bohr radii")
    p.add_argument("--delta", type=float, default=0.1)
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_hydrogen)

    p = sub.add_parser("verify", help="cross-check the chi engine against brute-force oracles")
    p.add_argument("--m-max", type=int, default=6)
    p.add_argument("--trials", type=int, default=200)
    p.add_argument("--seed", type=int, default=42)
    p.add_argument("--inject-fault", action="store_true", help=argparse.SUPPRESS)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("sweep", help="one report row per M, z or b value")
    p.add_argument("--param", choices=["M", "z", "b"], required=True)
    vals = p.add_mutually_exclusive_group(required=True)
    vals.add_argument("--values", help="comma-separated values")
    vals.add_argument("--range", nargs=3, metavar=("START", "STOP", "NUM"))
    p.add_argument("--n", type=int, default=1, help="N at which to evaluate the chi-ratio")
    p.add_argument("--delta", type=float, default=0.1)
    p.add_argument("--tail-cutoff", type=float, default=1e-12)
    p.add_argument("--jobs", type=int, default=1)
    _add_output_args(p, default_format="csv")
    p.set_defaults(func=cmd_sweep)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (InputError, SpectrumError, GridError, hy.RegimeError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())

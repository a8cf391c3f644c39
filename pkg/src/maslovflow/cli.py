"""Command-line front end.

Three subcommands, one JSON report each:

  maslov path     --input cfg.json --output report.json
  maslov interval --input cfg.json --output report.json
  maslov line     --input cfg.json --output report.json

Float values in reports are rounded to 12 significant digits and keys are
sorted, so identical inputs produce byte-identical outputs.  Exit status:
0 success, 1 bad input or computation error, 2 unresolved crossing
ambiguity, 3 oracle disagreement under --verify.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

import numpy as np

from .errors import AmbiguousCrossing, MaslovError
from .flow import arnold_path, maslov_index, path_from_frames
from .frames import frame_from_dict
from .interval import interval_problem, morse_index_interval
from .line import line_problem, morse_index_line
from .potentials import interval_potential_from_dict, line_potential_from_dict

BUILTIN_PATHS = ("arnold_normalization",)


def _round_floats(obj, digits=12):
    """Round every float to a fixed number of significant digits."""
    if isinstance(obj, float):
        return float(f"{obj:.{digits}g}")
    if isinstance(obj, dict):
        return {k: _round_floats(v, digits) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_round_floats(v, digits) for v in obj]
    return obj


def _write_report(report, output):
    text = json.dumps(_round_floats(report), indent=2, sort_keys=True) + "\n"
    with open(output, "w") as fh:
        fh.write(text)


def _trace_target(output, label=None):
    base = output[:-5] if output.endswith(".json") else output
    if label is None:
        return f"{base}.trace.csv"
    return f"{base}.{label}.trace.csv"


def _build_path(config):
    if "builtin" in config:
        name = config["builtin"]
        if name not in BUILTIN_PATHS:
            raise MaslovError(
                f"unknown builtin path {name!r}; available: {', '.join(BUILTIN_PATHS)}"
            )
        a, b = config.get("interval", (-np.pi / 4, np.pi / 4))
        samples = int(config.get("samples", 41))
        return arnold_path(float(a), float(b), samples)
    grid = config["grid"]
    pairs = [
        (frame_from_dict(entry["first"]), frame_from_dict(entry["second"]))
        for entry in config["pairs"]
    ]
    return path_from_frames(grid, pairs)


def cmd_path(config, args):
    tol = args.tol_phase if args.tol_phase is not None else 1e-6
    path = _build_path(config)
    result = maslov_index(path, tol_phase=tol)
    report = result.to_json_dict()
    report["command"] = "path"
    report["seed"] = args.seed
    if args.trace:
        result.trace.to_csv(_trace_target(args.output))
    return report, 0


def cmd_interval(config, args):
    problem = interval_problem(
        interval_potential_from_dict(config["potential"]),
        np.asarray(config["alpha1"], dtype=float),
        np.asarray(config["alpha2"], dtype=float),
        np.asarray(config["beta1"], dtype=float),
        np.asarray(config["beta2"], dtype=float),
    )
    kwargs = {}
    if args.s0 is not None:
        kwargs["s0"] = args.s0
    elif "s0" in config:
        kwargs["s0"] = float(config["s0"])
    if args.lambda_inf is not None:
        kwargs["lambda_inf"] = args.lambda_inf
    elif "lambda_inf" in config:
        kwargs["lambda_inf"] = float(config["lambda_inf"])
    if args.steps is not None:
        kwargs["steps"] = args.steps
    elif "steps" in config:
        kwargs["steps"] = int(config["steps"])
    if "edge_samples" in config:
        kwargs["edge_samples"] = int(config["edge_samples"])
    if args.tol_phase is not None:
        kwargs["tol_phase"] = args.tol_phase
    report_obj = morse_index_interval(problem, verify=args.verify, **kwargs)
    report = report_obj.to_json_dict()
    report["command"] = "interval"
    report["seed"] = args.seed
    if args.trace:
        for name, edge in report_obj.edges.items():
            edge.trace.to_csv(_trace_target(args.output, name))
    code = 0
    if args.verify and not report_obj.oracle_match:
        code = 3
    return report, code


def cmd_line(config, args):
    problem = line_problem(
        line_potential_from_dict(config["potential"]),
        config.get("L", "auto"),
    )
    kwargs = {}
    if "delta" in config:
        kwargs["delta"] = float(config["delta"])
    if args.lambda_inf is not None:
        kwargs["lambda_inf"] = args.lambda_inf
    elif "lambda_inf" in config:
        kwargs["lambda_inf"] = float(config["lambda_inf"])
    if args.steps is not None:
        kwargs["steps_per_unit"] = args.steps
    elif "steps_per_unit" in config:
        kwargs["steps_per_unit"] = int(config["steps_per_unit"])
    if "samples" in config:
        kwargs["samples"] = int(config["samples"])
    if args.tol_phase is not None:
        kwargs["tol_phase"] = args.tol_phase
    if config.get("full_box"):
        kwargs["full_box"] = True
    if config.get("check_truncation"):
        kwargs["check_truncation"] = True
    report_obj = morse_index_line(problem, verify=args.verify, **kwargs)
    report = report_obj.to_json_dict()
    report["command"] = "line"
    report["seed"] = args.seed
    if args.trace:
        for name, edge in report_obj.edges.items():
            edge.trace.to_csv(_trace_target(args.output, name))
    code = 0
    if args.verify and not report_obj.oracle_match:
        code = 3
    return report, code


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="maslov",
        description="Signed crossing counts for Lagrangian pair paths and "
        "Morse indices of Schrodinger operators.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name, fn in (("path", cmd_path), ("interval", cmd_interval), ("line", cmd_line)):
        p = sub.add_parser(name)
        p.add_argument("--input", required=True, help="JSON problem description")
        p.add_argument("--output", required=True, help="where to write the JSON report")
        p.add_argument("--trace", action="store_true",
                       help="also write phase-trace CSV files next to the output")
        p.add_argument("--verify", action="store_true",
                       help="cross-check against the finite-difference oracle")
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--steps", type=int, default=None)
        p.add_argument("--lambda-inf", dest="lambda_inf", type=float, default=None)
        p.add_argument("--s0", type=float, default=None)
        p.add_argument("--tol-phase", dest="tol_phase", type=float, default=None)
        p.set_defaults(handler=fn)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    threads = os.environ.get("MASLOV_THREADS")
    limiter = None
    if threads:
        try:
            from threadpoolctl import threadpool_limits

            limiter = threadpool_limits(limits=int(threads))
        except ValueError:
            print(f"maslov: bad MASLOV_THREADS value {threads!r}", file=sys.stderr)
            return 1
    try:
        try:
            with open(args.input) as fh:
                config = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            print(f"maslov: cannot read input: {exc}", file=sys.stderr)
            return 1
        try:
            report, code = args.handler(config, args)
        except AmbiguousCrossing as exc:
            print(f"maslov: ambiguous crossing: {exc}", file=sys.stderr)
            return 2
        except (MaslovError, KeyError, TypeError, ValueError) as exc:
            kind = type(exc).__name__
            print(f"maslov: {kind}: {exc}", file=sys.stderr)
            return 1
        _write_report(report, args.output)
        return code
    finally:
        if limiter is not None:
            limiter.restore_original_limits()


if __name__ == "__main__":
    sys.exit(main())

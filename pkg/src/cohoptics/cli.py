"""Command-line front end.

Subcommands: compose, run, scan, ensemble, verify. Exit codes: 0 success,
1 verification failure, 2 usage or parse error.
"""

from __future__ import annotations

import argparse
import json
import math
import sys

import numpy as np

from . import netdsl
from .ensemble import PhaseDistribution, washout_scan
from .observables import coincidence_rate, fmt, format_csv, format_json, linear_grid, scan_network
from .verify import run_checks
from .xfer import unitarity_residual

DEFAULT_STEPS = 1000
DEFAULT_ENSEMBLE_STEPS = 64


class UsageError(Exception):
    pass


def parse_setting(text: str) -> tuple[str, float]:
    name, eq, value = text.partition("=")
    if not eq or not name:
        raise UsageError(f"--set expects NAME=VALUE, got {text!r}")
    try:
        return name, netdsl.const_value(value)
    except ValueError as err:
        raise UsageError(f"--set {name}: {err}") from None


def parse_dist(text: str) -> PhaseDistribution:
    """``uniform:LO,HI`` | ``delta:T`` | ``discrete:T1,W1;T2,W2``."""
    kind, _, body = text.partition(":")
    try:
        if kind == "uniform":
            lo, hi = body.split(",")
            return PhaseDistribution.uniform(netdsl.const_value(lo), netdsl.const_value(hi))
        if kind == "delta":
            return PhaseDistribution.delta(netdsl.const_value(body))
        if kind == "discrete":
            pairs = []
            for item in body.split(";"):
                t, w = item.split(",")
                pairs.append((netdsl.const_value(t), netdsl.const_value(w)))
            return PhaseDistribution.discrete(pairs)
    except ValueError as err:
        raise UsageError(f"bad --dist {text!r}: {err}") from None
    raise UsageError(f"unknown distribution {kind!r} (uniform, delta, discrete)")


def parse_scan(values: list[str], default_steps: int):
    name = values[0]
    if len(values) == 1:
        return name, 0.0, 2 * math.pi, default_steps
    if len(values) != 4:
        raise UsageError("--scan expects NAME [LO HI STEPS]")
    try:
        lo, hi = netdsl.const_value(values[1]), netdsl.const_value(values[2])
        steps = int(values[3])
    except ValueError as err:
        raise UsageError(f"bad --scan: {err}") from None
    if steps < 2:
        raise UsageError("--scan STEPS must be >= 2")
    if not lo < hi:
        raise UsageError("--scan needs LO < HI")
    return name, lo, hi, steps


def _load(args) -> netdsl.Program:
    if not args.network:
        raise UsageError("--network is required")
    try:
        return netdsl.load(args.network)
    except OSError as err:
        raise UsageError(f"cannot read {args.network}: {err}") from None


def _bindings(args) -> dict:
    return dict(parse_setting(s) for s in args.set or [])


def _emit(text: str, args) -> None:
    if args.output:
        with open(args.output, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def cmd_compose(args) -> int:
    network = netdsl.bind(_load(args), _bindings(args))
    m = network.matrix()
    res = unitarity_residual(m)
    if args.out == "json":
        payload = {
            "matrix": [[[float(fmt(z.real)), float(fmt(z.imag))] for z in row] for row in m],
            "unitarity_residual": res,
        }
        _emit(json.dumps(payload, indent=1) + "\n", args)
    else:
        rows = [(f"m{i + 1}{j + 1}", m[i, j].real, m[i, j].imag) for i in range(2) for j in range(2)]
        text = format_csv(("entry", "re", "im"), rows)
        _emit(text + f"unitarity_residual,{res:.3e},\n", args)
    return 0


def cmd_run(args) -> int:
    network = netdsl.bind(_load(args), _bindings(args))
    i_a, i_b, r = coincidence_rate(network.matrix(), network.input)
    fmt_out = format_json if args.out == "json" else format_csv
    _emit(fmt_out(("i_a", "i_b", "r"), [(i_a, i_b, r)]), args)
    return 0


def cmd_scan(args) -> int:
    program = _load(args)
    if not args.scan:
        raise UsageError("scan needs --scan NAME [LO HI STEPS]")
    name, lo, hi, steps = parse_scan(args.scan, DEFAULT_STEPS)
    if name not in program.parameters:
        raise UsageError(f"{name} is not a parameter of the network (have: {', '.join(program.parameters) or 'none'})")
    bindings = _bindings(args)
    grid = linear_grid(lo, hi, steps)
    bindings[name] = grid
    result = scan_network(netdsl.bind(program, bindings), name, grid)
    _emit(result.to_json() if args.out == "json" else result.to_csv(), args)
    return 0


def cmd_ensemble(args) -> int:
    program = _load(args)
    if args.samples < 1:
        raise UsageError("--samples must be >= 1")
    if not args.scan:
        raise UsageError("ensemble needs --scan NAME [LO HI STEPS] naming the randomized parameter")
    name, lo, hi, steps = parse_scan(args.scan, DEFAULT_ENSEMBLE_STEPS)
    if name not in program.parameters:
        raise UsageError(f"{name} is not a parameter of the network")
    dist = parse_dist(args.dist)
    fixed = _bindings(args)
    netdsl.bind(program, {**fixed, name: 0.0})  # surface bind errors before sampling

    def rate(thetas):
        network = netdsl.bind(program, {**fixed, name: np.asarray(thetas, dtype=float)})
        return coincidence_rate(network.matrix(), network.input)[2]

    results = washout_scan(dist, linear_grid(lo, hi, steps), args.samples, args.seed, rate, args.workers)
    rows = [(z, res.mean_r, res.std_error, res.samples) for z, res in results]
    header = ("param", "mean_r", "std_error", "samples")
    _emit(format_json(header, rows) if args.out == "json" else format_csv(header, rows), args)
    return 0


def cmd_verify(args) -> int:
    if args.max_n < 1:
        raise UsageError("--max-n must be >= 1")
    checks = run_checks(args.max_n)
    lines = [c.line() for c in checks]
    ok = all(c.ok for c in checks)
    lines.append(f"{'ALL PASS' if ok else 'FAILED'} (n = 1..{args.max_n})")
    _emit("\n".join(lines) + "\n", args)
    return 0 if ok else 1


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--network", help="network description (.mzn)")
    common.add_argument("--set", action="append", metavar="NAME=VALUE", help="bind a parameter (repeatable)")
    common.add_argument("--out", choices=("csv", "json"), default="csv")
    common.add_argument("--output", help="write to this path instead of stdout")

    parser = argparse.ArgumentParser(prog="cohoptics", description="Two-mode coherence optics simulator.")
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("compose", parents=[common], help="print the composed transfer matrix")
    sub.add_parser("run", parents=[common], help="evaluate intensities and coincidence")

    p = sub.add_parser("scan", parents=[common], help="sweep one parameter")
    p.add_argument("--scan", nargs="+", metavar="ARG", help="NAME [LO HI STEPS]; default 0 2*pi 1000")

    p = sub.add_parser("ensemble", parents=[common], help="random-phase averaged coincidence")
    p.add_argument("--scan", nargs="+", metavar="ARG", help="randomized NAME [LO HI STEPS]; default 0 2*pi 64")
    p.add_argument("--dist", default="uniform:0,2*pi")
    p.add_argument("--samples", type=int, default=10_000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--workers", type=int, default=1)

    p = sub.add_parser("verify", help="closed forms vs matrix composition")
    p.add_argument("--max-n", type=int, default=8)
    p.add_argument("--output")
    return parser


COMMANDS = {
    "compose": cmd_compose,
    "run": cmd_run,
    "scan": cmd_scan,
    "ensemble": cmd_ensemble,
    "verify": cmd_verify,
}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except (UsageError, netdsl.ParseError, netdsl.BindError) as err:
        print(f"cohoptics {args.command}: {err}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())

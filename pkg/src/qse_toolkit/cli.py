"""Command-line front end.

Subcommands: ``qse`` (ellipsoid export), ``scan`` (p sweep to CSV),
``c3scan`` (discord-profile table over c3), ``demo-needle`` and ``verify``.
Exit codes: 0 success, 1 usage error, 2 invalid input, 3 verification failure.
"""

import argparse
import json
import logging
import sys

import numpy as np

from .channels import amplitude_damping, apply_local_B
from .exceptions import QSEError
from .formats import load_channel, read_json, state_from_dict
from .scan import (
    C3_COLUMNS,
    CHANNEL_FAMILIES,
    ScanConfig,
    argmax_delta_d,
    demo_needle,
    export_ellipsoid,
    rows_to_csv,
    run_c3_scan,
    run_p_scan,
)
from .verify import SUITES, run_verify

EXIT_OK, EXIT_USAGE, EXIT_INPUT, EXIT_VERIFY = 0, 1, 2, 3

SCAN_DEFAULTS = {
    "channel": "ad",
    "p_start": 0.0,
    "p_end": 1.0,
    "steps": 201,
    "discord_method": "auto",
    "seed": 0,
}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _add_state_args(p):
    g = p.add_mutually_exclusive_group()
    g.add_argument("--state", metavar="FILE", help="state JSON file")
    g.add_argument("--bell", nargs=3, type=float, metavar=("C1", "C2", "C3"), help="Bell-diagonal c vector")


def _state_record(args, config=None):
    if getattr(args, "state", None):
        return read_json(args.state)
    if getattr(args, "bell", None):
        return {"format": "bell_diag", "c": list(args.bell)}
    if config and "state" in config:
        st = config["state"]
        return read_json(st) if isinstance(st, str) else st
    raise UsageError("a state is required (--state FILE or --bell C1 C2 C3)")


def build_parser():
    parser = _Parser(prog="qse-toolkit", description=__doc__.splitlines()[0])
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)

    q = sub.add_parser("qse", help="export a steering ellipsoid as JSON")
    _add_state_args(q)
    q.add_argument("--side", choices=("A", "B"), default="B")
    q.add_argument("--ad", type=float, metavar="P", help="apply amplitude damping with this p to B first")
    q.add_argument("--channel", metavar="FILE", help="channel JSON applied to B first")
    q.add_argument("--out", metavar="FILE")

    s = sub.add_parser("scan", help="sweep a channel parameter and write CSV")
    _add_state_args(s)
    s.add_argument("--config", metavar="FILE", help="JSON config; flags override its fields")
    s.add_argument("--channel", choices=sorted(CHANNEL_FAMILIES))
    s.add_argument("--channel-file", metavar="FILE", help="fixed channel applied at every grid point")
    s.add_argument("--p-start", type=float)
    s.add_argument("--p-end", type=float)
    s.add_argument("--steps", type=int)
    s.add_argument("--gamma", type=float, help="decay rate; use with --t-grid")
    s.add_argument("--t-grid", nargs=3, type=float, metavar=("T0", "T1", "N"))
    s.add_argument("--discord-method", choices=("auto", "numeric", "xstate"))
    s.add_argument("--seed", type=int)
    s.add_argument("--out", metavar="FILE")

    c = sub.add_parser("c3scan", help="discord profile (D0, Dm, dD) versus c3 under amplitude damping")
    c.add_argument("--c1", type=float, default=0.9)
    c.add_argument("--c2", type=float, default=-0.1)
    g = c.add_mutually_exclusive_group()
    g.add_argument("--c3", type=float, nargs="+", help="explicit c3 values")
    g.add_argument("--c3-grid", nargs=3, type=float, metavar=("START", "END", "N"))
    c.add_argument("--p-start", type=float, default=0.0)
    c.add_argument("--p-end", type=float, default=1.0)
    c.add_argument("--steps", type=int, default=201)
    c.add_argument("--out", metavar="FILE")

    d = sub.add_parser("demo-needle", help="A-needle length comparison of the rho1/rho2 pair")
    d.add_argument("--delta", type=float, default=0.1)

    v = sub.add_parser("verify", help="run the randomized property suites")
    v.add_argument("--trials", type=int, default=100)
    v.add_argument("--seed", type=int, default=42)
    v.add_argument("--suite", action="append", choices=sorted(SUITES))
    v.add_argument("--inflate-length", type=float, default=0.0, help=argparse.SUPPRESS)
    return parser


def _cmd_qse(args):
    state = state_from_dict(_state_record(args))
    if args.ad is not None:
        state = apply_local_B(state, amplitude_damping(args.ad))
    if args.channel:
        state = apply_local_B(state, load_channel(args.channel))
    record = export_ellipsoid(state, args.side, args.out)
    if not args.out:
        print(json.dumps(record, indent=2))
    return EXIT_OK


def scan_config(args):
    config = read_json(args.config) if args.config else {}
    merged = dict(SCAN_DEFAULTS)
    merged.update({k: v for k, v in config.items() if k != "state"})
    for key in ("channel", "p_start", "p_end", "steps", "gamma", "t_grid", "discord_method", "seed"):
        value = getattr(args, key)
        if value is not None:
            merged[key] = value
    if args.channel_file:
        merged["channel"] = read_json(args.channel_file)
    if args.out:
        merged["output"] = args.out
    if merged.get("t_grid") is not None:
        merged["t_grid"] = tuple(merged["t_grid"])
    try:
        return ScanConfig(state=_state_record(args, config), **merged)
    except (TypeError, ValueError) as exc:
        if isinstance(exc, QSEError):
            raise
        raise UsageError(str(exc)) from exc


def _cmd_scan(args):
    cfg = scan_config(args)
    rows = run_p_scan(cfg)
    if not cfg.output:
        sys.stdout.write(rows_to_csv(rows))
    return EXIT_OK


def _cmd_c3scan(args):
    if args.c3:
        c3_values = args.c3
    elif args.c3_grid:
        start, end, n = args.c3_grid
        c3_values = np.linspace(start, end, int(n))
    else:
        c3_values = np.linspace(0.0, 0.2, 41)
    rows = run_c3_scan(args.c1, args.c2, c3_values, args.p_start, args.p_end, args.steps, args.out)
    if not args.out:
        sys.stdout.write(rows_to_csv(rows, C3_COLUMNS))
    if any(r.valid for r in rows):
        best = argmax_delta_d(rows)
        peak = next(r.p_peak for r in rows if r.c3 == best)
        print(f"# argmax dD at c3={best:.6g} (discord peak at p={peak:.6g})", file=sys.stderr)
    return EXIT_OK


def _cmd_demo(args):
    out = demo_needle(args.delta)
    print(f"delta = {out['delta']}")
    print(f"l(E_A^1) = {out['lA1']:.12f}  (sqrt(2)(1-delta) = {out['lA1_expected']:.12f})")
    print(f"l(E_A^2) = {out['lA2']:.12f}  (sqrt(2) = {out['lA2_expected']:.12f})")
    print(f"I(rho1) = {out['mutual_info1']:.6f} bits, I(rho2) = {out['mutual_info2']:.6f} bits")
    verdict = "possible" if out["rho1_to_rho2_possible"] else "impossible"
    print(f"rho1 -> rho2 by a local channel on B: {verdict} (A-needle cannot lengthen)")
    return EXIT_OK


def _cmd_verify(args):
    if args.trials < 1:
        raise UsageError("--trials must be >= 1")
    report = run_verify(
        args.trials, args.seed, args.suite, args.inflate_length, progress=lambda r: print(r.line(), flush=True)
    )
    for line in report.lines()[len(report.suites):]:
        print(line)
    return EXIT_OK if report.ok else EXIT_VERIFY


COMMANDS = {
    "qse": _cmd_qse,
    "scan": _cmd_scan,
    "c3scan": _cmd_c3scan,
    "demo-needle": _cmd_demo,
    "verify": _cmd_verify,
}


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    if args.command is None:
        parser.print_help(sys.stderr)
        return EXIT_USAGE
    try:
        return COMMANDS[args.command](args)
    except UsageError as exc:
        print(f"qse-toolkit {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (QSEError, OSError, json.JSONDecodeError) as exc:
        print(f"qse-toolkit {args.command}: invalid input: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())

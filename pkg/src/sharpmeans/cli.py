"""Command line: ``run``, ``list`` and ``probe``."""
from __future__ import annotations

import argparse
import json
import sys

from . import checks as registry
from .suite import ConfigError, exit_status, parse_config, run_suite, summary_lines


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="sharpmeans",
                                     description="Numerical checks of sharp operator-mean inequalities.")
    sub = parser.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", help="run a suite from a JSON config")
    run.add_argument("--config", required=True, help="path to JSON config")
    run.add_argument("--seed", type=int, help="override the config seed")
    run.add_argument("--report", help="override the report path")

    sub.add_parser("list", help="list registered checks")

    probe = sub.add_parser("probe", help="print the sharpness gap of a constant")
    probe.add_argument("--check", required=True, choices=registry.SHARPNESS_CHECKS)
    probe.add_argument("--s", type=float, required=True)
    probe.add_argument("--t", type=float, required=True)
    probe.add_argument("--v", type=float, required=True)
    for name in ("m", "M", "m2", "m1", "M1", "M2"):
        probe.add_argument(f"--{name}", type=float, default=None)
    return parser


def _run(args) -> int:
    try:
        with open(args.config, encoding="utf-8") as fh:
            text = fh.read()
        cfg = parse_config(text)
        if args.seed is not None:
            if not 0 <= args.seed < 2**64:
                raise ConfigError(f"seed must be a 64-bit unsigned integer, got {args.seed}")
            cfg.seed = args.seed
        if args.report is not None:
            cfg.report_path = args.report
    except (OSError, ConfigError) as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    try:
        report = run_suite(cfg)
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    for line in summary_lines(report):
        print(line)
    print(f"elapsed {report['elapsed_seconds']:.1f}s")
    return exit_status(report)


def _list() -> int:
    for check_id, anchor, kind, schema in registry.list_checks():
        print(f"{check_id:28s} {kind:16s} {','.join(schema):32s} {anchor}")
    return 0


def _probe(args) -> int:
    extra = {k: getattr(args, k) for k in ("m", "M", "m2", "m1", "M1", "M2")}
    try:
        params = registry.probe_params(args.check, args.s, args.t, args.v, **extra)
        gap, where = registry.sharpness_probe(args.check, params)
    except (ValueError, ArithmeticError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    print(json.dumps({"check_id": args.check, "params": params, "gap": gap, "attained_at": where}))
    return 0


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    if args.command == "run":
        return _run(args)
    if args.command == "list":
        return _list()
    return _probe(args)


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())

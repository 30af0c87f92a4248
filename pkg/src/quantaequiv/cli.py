"""Command line entry point for the suite runner.

Exit codes: 0 all checks passed, 1 at least one check failed, 2 the config
or invocation was invalid.
"""

import argparse
import os
import sys

from .harness import (
    SUITE_NAMES,
    ConfigError,
    default_config,
    emit_tables,
    load_config,
    report_to_json,
    run_suite,
    validate_config,
)


def _build_parser():
    parser = argparse.ArgumentParser(
        prog="quantaequiv",
        description="run seeded verification suites for the deformation toolkit",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", help="execute one suite and write its report")
    run.add_argument("suite", choices=SUITE_NAMES)
    run.add_argument("--config", help="JSON config file; defaults are per suite")
    run.add_argument("--seed", type=int, help="override the config seed")
    run.add_argument("--out", default=".", help="directory for report and tables")
    run.add_argument("--format", choices=("csv", "json"), default="json",
                     dest="table_format", help="numeric table format")

    sub.add_parser("list-suites", help="print the available suite names")
    return parser


def main(argv=None):
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits 2 on bad usage already; normalize other codes
        return 0 if exc.code in (0, None) else 2

    if args.command == "list-suites":
        for name in SUITE_NAMES:
            print(name)
        return 0

    try:
        if args.config:
            config = load_config(args.config)
            if config["suite"] != args.suite:
                raise ConfigError(
                    "config is for suite %r, not %r" % (config["suite"], args.suite)
                )
        else:
            config = default_config(args.suite)
        if args.seed is not None:
            config["seed"] = args.seed
        validate_config(config)
    except ConfigError as exc:
        print("config error: %s" % exc, file=sys.stderr)
        return 2

    report = run_suite(config)
    os.makedirs(args.out, exist_ok=True)
    report_path = os.path.join(args.out, "%s.report.json" % report["suite"])
    with open(report_path, "w", encoding="utf-8") as fh:
        fh.write(report_to_json(report))
    written = emit_tables(report, args.out, args.table_format)

    summary = report["summary"]
    print(
        "%s: %d checks, %d passed, %d failed, %d saturated"
        % (
            report["suite"],
            summary["total"],
            summary["passed"],
            summary["failed"],
            summary["saturated"],
        )
    )
    for path in [report_path] + written:
        print("wrote %s" % path)
    return 1 if summary["failed"] else 0


if __name__ == "__main__":
    sys.exit(main())

"""
Command-line driver: `twistkit <command> <specfile> [options]`.

Exit codes: 0 when every check passes, 1 when a check failed, 2 for usage,
parse and build errors.
"""
import argparse
import json
import logging
import os
import sys
from typing import Any, Dict, List, Optional

from twistkit import __version__
from twistkit.dsl import parse_spec
from twistkit.errors import SpecError, TwistkitError
from twistkit.report import Report, all_passed, reports_to_json
from twistkit.runner import COMMANDS, RunOptions, run_command
from twistkit.utils import init_log

logger = logging.getLogger(__name__)

# The configurations
CONFIG: Dict[str, Any] = {}
CONFIG["order"] = 6
CONFIG["cutoffs"] = {
    "torus": 2,
    "affine": 3
}
CONFIG["grid"] = 64
CONFIG["random_samples"] = 25
CONFIG["seed"] = 0
CONFIG["workers"] = os.cpu_count() or 1
CONFIG["tolerance"] = 1e-10
CONFIG["format"] = "text"

EXIT_PASS = 0
EXIT_FAIL = 1
EXIT_USAGE = 2


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog='twistkit',
                                     description='''Verify Drinfel'd twists, twist star products,
                                     deformed modules and Chern numbers declared in a .twk file''')
    parser.add_argument('command', action='store',
                        help='Check campaign to run', choices=COMMANDS)
    parser.add_argument('specfile', action='store', nargs='?',
                        help='Path to the .twk spec file (optional for chern --degree)',
                        type=str, default=None)
    parser.add_argument('--order', action='store', dest='order',
                        help='Truncation order N of every h-series. Defaults to 6',
                        type=int, required=False, default=None)
    parser.add_argument('--cutoff', action='store', dest='cutoff',
                        help='Basis cutoff of exhaustive checks, for every model kind',
                        type=int, required=False, default=None)
    parser.add_argument('--grid', action='store', dest='grid',
                        help='Quadrature grid size for Chern numbers. Defaults to 64',
                        type=int, required=False, default=None)
    parser.add_argument('--samples', action='store', dest='random_samples',
                        help='Number of seeded random samples per check. Defaults to 25',
                        type=int, required=False, default=None)
    parser.add_argument('--seed', action='store', dest='seed',
                        help='Seed of the random samples. Defaults to 0',
                        type=int, required=False, default=None)
    parser.add_argument('--workers', action='store', dest='workers',
                        help='''Worker processes for associativity checks. Defaults to the CPU count;
                        reports do not depend on it. all on the Moyal corpus file runs
                        about 15,000 associativity triples at the defaults''',
                        type=int, required=False, default=None)
    parser.add_argument('--degree', action='store', dest='degree',
                        help='Also report the standard degree-d bundle (chern)',
                        type=int, required=False, default=None)
    parser.add_argument('--pair', action='store', dest='pair', nargs=2, metavar=('F', 'G'),
                        help='Two function expressions to multiply (star-eval)',
                        type=str, required=False, default=None)
    parser.add_argument('--report', action='store', dest='report',
                        help='Also write the report to this path',
                        type=str, required=False, default=None)
    parser.add_argument('--format', action='store', dest='format',
                        help='Output format, text or machine (JSON). Defaults to text',
                        choices=("text", "machine"), required=False, default=None)
    parser.add_argument('--config', action='store', dest='config',
                        help='JSON file whose entries override the defaults',
                        type=str, required=False, default=None)
    parser.add_argument('--log-level', action='store', dest='log_level',
                        help='Level of the log on stderr. Defaults to WARNING',
                        type=str, required=False, default="WARNING")
    parser.add_argument('--log-file', action='store', dest='log_file',
                        help='Also log everything to this file',
                        type=str, required=False, default=None)
    return parser


def load_config(path: Optional[str]) -> Dict[str, Any]:
    config = json.loads(json.dumps(CONFIG))
    if path is not None:
        with open(path, encoding="utf-8") as f:
            overrides = json.load(f)
        for key, value in overrides.items():
            if key == "cutoffs":
                config["cutoffs"].update(value)
            else:
                config[key] = value
    return config


def make_options(args: argparse.Namespace, config: Dict[str, Any]) -> RunOptions:
    for key in ("order", "grid", "random_samples", "seed", "workers", "format"):
        if getattr(args, key) is not None:
            config[key] = getattr(args, key)
    if args.cutoff is not None:
        config["cutoffs"] = {kind: args.cutoff for kind in config["cutoffs"]}
    return RunOptions(order=config["order"], cutoffs=config["cutoffs"], grid=config["grid"],
                      random_samples=config["random_samples"], seed=config["seed"],
                      workers=config["workers"], tolerance=config["tolerance"],
                      degree=args.degree, pair=tuple(args.pair) if args.pair else None)


def render(reports: List[Report], command: str, output_format: str) -> str:
    if output_format == "machine":
        return reports_to_json(reports, {"tool": "twistkit", "version": __version__,
                                         "command": command})
    lines = [report.render_text() for report in reports]
    failed = sum(1 for report in reports if report.failed)
    lines.append(f"{len(reports)} checks, {failed} failed")
    return "\n".join(lines) + "\n"


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    init_log(stdout_level=args.log_level.upper(), filename=args.log_file)
    try:
        config = load_config(args.config)
        options = make_options(args, config)
        document = None
        if args.specfile is not None:
            with open(args.specfile, encoding="utf-8") as f:
                document = parse_spec(f.read())
        reports = run_command(args.command, document, options)
    except SpecError as e:
        print(f"{args.specfile}:{e.line}:{e.column}: {e.code}: {e.message}", file=sys.stderr)
        return EXIT_USAGE
    except (TwistkitError, OSError, ValueError) as e:
        print(f"twistkit: error: {e}", file=sys.stderr)
        return EXIT_USAGE
    output = render(reports, args.command, config["format"])
    sys.stdout.write(output)
    if args.report is not None:
        with open(args.report, "w", encoding="utf-8") as f:
            f.write(output)
    return EXIT_PASS if all_passed(reports) else EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())

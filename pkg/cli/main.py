"""
Command-line entry point.

Usage:
    python run.py gen cusp --alpha 0.6
    python run.py analyze --input output/signals/cusp_alpha0.6_L16.csv
    python run.py classify comb --alpha -0.2 --gamma 3 --L 18
    python run.py analyze --config run.yaml --s 0.3

Exit codes: 0 success, 2 usage / input error, 3 estimation failure.
"""

import argparse
import logging
import sys
from typing import List, Optional

from pydantic import ValidationError

import config
from cli.analysis_commands import cmd_analyze, cmd_classify
from cli.gen_commands import cmd_gen
from cli.run_config import resolve_config
from src.errors import PExpError
from src.generators.signals import GENERATORS, SCHEDULES

logger = logging.getLogger(__name__)

COMMANDS = {
    "gen": cmd_gen,
    "analyze": cmd_analyze,
    "classify": cmd_classify,
}

EXIT_USAGE = 2


# ============================================================
# PARSER
# ============================================================

def _add_signal_args(sp: argparse.ArgumentParser, positional: bool):
    if positional:
        sp.add_argument("generator", choices=GENERATORS)
    else:
        sp.add_argument("generator", nargs="?", choices=GENERATORS, default=None)
        sp.add_argument("--input", help="signal CSV written by gen")
    sp.add_argument("--alpha", type=float)
    sp.add_argument("--beta", type=float)
    sp.add_argument("--gamma", type=float)
    sp.add_argument("--pieces", type=float, nargs="+", metavar="A B",
                    help="general comb pieces as a flat list a0 b0 a1 b1 ...")
    sp.add_argument("--family-p0", dest="family_p0")
    sp.add_argument("--damping", action="store_true", default=None)
    sp.add_argument("--schedule", choices=SCHEDULES)
    sp.add_argument("--ratio", type=float)
    sp.add_argument("--omega-plus", dest="omega_plus", type=float, nargs="+")
    sp.add_argument("--omega-minus", dest="omega_minus", type=float, nargs="+")
    sp.add_argument("--x0", type=float)
    sp.add_argument("--L", type=int)
    sp.add_argument("--seed", type=int)


def _add_analysis_args(sp: argparse.ArgumentParser):
    sp.add_argument("--n-vanishing", dest="n_vanishing", type=int)
    sp.add_argument("--J", type=int)
    sp.add_argument("--p-grid", dest="p_grid", nargs="+", help="e.g. 0.25 0.5 1 2 4 8 inf")
    sp.add_argument("--s", type=float, help="(p,s)-leader integration order")
    sp.add_argument("--integrate-fourier", dest="integrate_fourier", type=float)
    sp.add_argument("--s-list", dest="s_list", nargs="+")
    sp.add_argument("--fit", dest="fit", type=int, nargs=2, metavar=("J1", "J2"))
    sp.add_argument("--global-fit", dest="global_fit", type=int, nargs=2, metavar=("J1", "J2"))
    sp.add_argument("--margin", type=float)
    sp.add_argument("--include-clipped", dest="include_clipped", action="store_true", default=None)
    sp.add_argument("--no-direct", dest="with_direct", action="store_false", default=None)
    sp.add_argument("--export-fields", dest="export_fields", action="store_true", default=None)
    sp.add_argument("--tol-invariance", dest="tol_invariance", type=float)
    sp.add_argument("--tol-canonical", dest="tol_canonical", type=float)
    sp.add_argument("--beta-significance", dest="beta_significance", type=float)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="pexp", description="p-exponent and p-leader singularity analysis")
    parser.add_argument("--log-level", dest="log_level", default=None)
    sub = parser.add_subparsers(dest="command", required=True)

    for name, help_text in (("gen", "generate a reference signal"),
                            ("analyze", "scaling function and p-exponent profile"),
                            ("classify", "classify the singularity at x0")):
        sp = sub.add_parser(name, help=help_text)
        _add_signal_args(sp, positional=name == "gen")
        if name != "gen":
            _add_analysis_args(sp)
        sp.add_argument("--config", help="JSON or YAML file with any RunConfig field")
        sp.add_argument("--output-dir", dest="output_dir")
        sp.add_argument("--stem")
    return parser


def _flags(args: argparse.Namespace) -> dict:
    flags = {k: v for k, v in vars(args).items() if k not in ("command", "config", "log_level", "fit", "global_fit")}
    if flags.get("pieces") is not None:
        flat = flags["pieces"]
        if len(flat) % 2:
            raise ValueError("--pieces needs an even number of values")
        flags["pieces"] = [(flat[i], flat[i + 1]) for i in range(0, len(flat), 2)]
    if getattr(args, "fit", None):
        flags["fit_j1"], flags["fit_j2"] = args.fit
    if getattr(args, "global_fit", None):
        flags["global_j1"], flags["global_j2"] = args.global_fit
    return flags


# ============================================================
# MAIN
# ============================================================

def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return 0 if e.code == 0 else EXIT_USAGE

    config.setup_logging(args.log_level)
    try:
        cfg = resolve_config(args.command, _flags(args), args.config)
    except ValidationError as e:
        print(f"Error: invalid configuration\n{e}", file=sys.stderr)
        return EXIT_USAGE
    except ValueError as e:
        print(f"Error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except PExpError as e:
        print(f"Error: {e.detail}", file=sys.stderr)
        return e.exit_code

    try:
        COMMANDS[cfg.command](cfg)
    except PExpError as e:
        print(f"Error: {e.detail}", file=sys.stderr)
        return e.exit_code
    return 0


if __name__ == "__main__":
    sys.exit(main())

#!filepath squeezing_measure/cli.py
import argparse
import logging
import sys
from typing import Callable, List, Optional, TextIO

from .commands.base_command import EXIT_INVALID_INPUT, EXIT_PARSE_ERROR
from .commands.command_factory import CommandFactory
from .config import GRADIENT_MODES, SDP_METHODS, SolveOptions

logger = logging.getLogger(__name__)


SOLVER_FLAG_DEFAULTS = {
    "tol_step": 1e-6,
    "tol_f": 1e-8,
    "tol_constraint": 1e-8,
    "max_iter": 20000,
    "grad": "analytic",
    "seed": 0,
    "workers": 1,
    "sdp_method": "auto",
    "verbose": False,
}


def add_solver_flags(parser: argparse.ArgumentParser, suppress: bool = False) -> None:
    """
    Add the solver flags shared by every command

    With suppress=True unset flags leave no attribute, so a sub-parser
    does not overwrite values given before the command name.
    """
    def default(name: str):
        return argparse.SUPPRESS if suppress else SOLVER_FLAG_DEFAULTS[name]

    parser.add_argument("--tol-step", type=float, default=default("tol_step"), help="Step-size stopping tolerance")
    parser.add_argument("--tol-f", type=float, default=default("tol_f"), help="Objective improvement tolerance")
    parser.add_argument("--tol-constraint", type=float, default=default("tol_constraint"), help="Feasibility tolerance")
    parser.add_argument("--max-iter", type=int, default=default("max_iter"), help="Iteration cap summed over all penalty rounds")
    parser.add_argument("--grad", choices=GRADIENT_MODES, default=default("grad"), help="Subgradient source")
    parser.add_argument("--seed", type=int, default=default("seed"), help="Random seed")
    parser.add_argument("--workers", type=int, default=default("workers"), help="Threads used by sweeps")
    parser.add_argument("--sdp-method", choices=SDP_METHODS, default=default("sdp_method"), help="How the SDP bound is computed")
    parser.add_argument("-v", "--verbose", action="store_true", default=default("verbose"), help="Debug logging")


def build_parser() -> argparse.ArgumentParser:
    """Top-level parser with solver flags and one sub-parser per command"""
    parser = argparse.ArgumentParser(
        prog="squeezeopt",
        description="Operational squeezing measure of Gaussian covariance matrices",
    )
    add_solver_flags(parser)
    common = argparse.ArgumentParser(add_help=False)
    add_solver_flags(common, suppress=True)

    subparsers = parser.add_subparsers(dest="command", metavar="command")
    subparsers.required = True
    for name, command_class in CommandFactory.get_all_command_names().items():
        sub = subparsers.add_parser(name, parents=[common], help=command_class.help_text(),
                                    description=command_class.help_text())
        command_class.add_arguments(sub)
    return parser


def options_from_args(args: argparse.Namespace) -> SolveOptions:
    """
    Build solver options from parsed global flags

    Raises:
        ValueError: If a flag value is out of range
    """
    return SolveOptions({
        "step_tol": args.tol_step,
        "f_tol": args.tol_f,
        "constraint_tol": args.tol_constraint,
        "max_iter": args.max_iter,
        "gradient_mode": args.grad,
        "seed": args.seed,
        "workers": args.workers,
        "sdp_method": args.sdp_method,
    })


def main(argv: Optional[List[str]] = None, out: Optional[TextIO] = None,
         log_setup: Optional[Callable[[bool], None]] = None) -> int:
    """
    Parse arguments, run one sub-command and return its exit code

    Args:
        argv: Arguments without the program name, sys.argv[1:] by default
        out: Stream for the report, stdout by default
        log_setup: Called with the verbose flag before the command runs
    """
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        # --help exits with 0
        return int(e.code) if e.code == 0 else EXIT_PARSE_ERROR

    if log_setup is not None:
        log_setup(args.verbose)
    elif args.verbose:
        logging.getLogger().setLevel(logging.DEBUG)

    try:
        options = options_from_args(args)
    except ValueError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INVALID_INPUT

    command = CommandFactory.create_command(args.command, options, out)
    logger.debug(f"Running '{args.command}' with options {options.to_dict()}")
    return command.execute(args)

#!filepath squeezing_measure/commands/gradcheck_command.py
import argparse
from typing import List

from ..solver import gradient_check
from ..utils.report_utils import key_value_table
from .base_command import BaseCommand, EXIT_OK, EXIT_SOLVER_FAILURE


class GradcheckCommand(BaseCommand):
    """Compare analytic subgradients with central differences"""

    @classmethod
    def get_names(cls) -> List[str]:
        return ["gradcheck"]

    @classmethod
    def add_arguments(cls, parser: argparse.ArgumentParser) -> None:
        parser.add_argument("--n", type=int, default=2, help="Number of modes")
        parser.add_argument("--samples", type=int, default=20, help="Number of random points")
        parser.add_argument("--fd-step", type=float, default=1e-6, help="Central difference step")

    def run(self, args: argparse.Namespace) -> int:
        if args.n < 1 or args.samples < 1:
            raise ValueError("--n and --samples must be at least 1")
        report = gradient_check(args.n, args.samples, self.options.seed, h=args.fd_step)
        self.emit(key_value_table([
            ("n", report.n),
            ("samples", report.samples),
            ("seed", report.seed),
            ("objective_max_rel_error", report.max_objective_error),
            ("constraint_max_rel_error", report.max_constraint_error),
            ("tolerance", report.tolerance),
            ("result", "pass" if report.passed else "fail"),
        ]))
        return EXIT_OK if report.passed else EXIT_SOLVER_FAILURE

#!filepath squeezing_measure/commands/measure_command.py
import argparse
import logging
from typing import List

from ..measure import to_decibel
from ..solver import SolveStatus, minimize_G
from ..utils.report_utils import key_value_table, save_json
from .base_command import BaseCommand, EXIT_INVALID_INPUT, EXIT_OK, EXIT_SOLVER_FAILURE

logger = logging.getLogger(__name__)


class MeasureCommand(BaseCommand):
    """Compute the squeezing measure of a covariance matrix"""

    @classmethod
    def get_names(cls) -> List[str]:
        return ["measure"]

    @classmethod
    def add_arguments(cls, parser: argparse.ArgumentParser) -> None:
        parser.add_argument("file", help="Matrix file")
        parser.add_argument("--json", dest="json_out", default=None, help="Also write the report as JSON")

    def run(self, args: argparse.Namespace) -> int:
        gamma = self.load_covariance(args.file)
        result = minimize_G(gamma, self.options)

        if result.status is SolveStatus.INFEASIBLE:
            self.emit("status      infeasible (not a valid covariance matrix)")
            return EXIT_INVALID_INPUT

        self.emit(key_value_table([
            ("value_nats", result.value),
            ("value_dB", to_decibel(result.value)),
            ("status", result.status.value),
            ("prep_error", result.prep_error),
            ("residual", result.residual),
            ("iterations", result.iterations),
            ("gradients", result.gradient_mode.value),
        ]))

        if args.json_out:
            report = {
                "value": result.value,
                "status": result.status.value,
                "prep_error": result.prep_error,
                "residual": result.residual,
                "iterations": result.iterations,
                "S_opt": result.S_opt,
                "bounds": result.bounds.to_dict() if result.bounds else None,
            }
            if not save_json(report, args.json_out):
                logger.warning(f"Report not written to {args.json_out}")

        return EXIT_OK if result.ok else EXIT_SOLVER_FAILURE

#!filepath squeezing_measure/commands/bounds_command.py
import argparse
from typing import List

from ..measure import achieves_lower_check, bounds, minimal_eigenvalue_squeezing
from ..utils.report_utils import key_value_table
from .base_command import BaseCommand, EXIT_OK


class BoundsCommand(BaseCommand):
    """Print the spectral, Williamson and SDP bounds of a covariance matrix"""

    @classmethod
    def get_names(cls) -> List[str]:
        return ["bounds"]

    @classmethod
    def add_arguments(cls, parser: argparse.ArgumentParser) -> None:
        parser.add_argument("file", help="Matrix file")
        parser.add_argument("--no-sdp", action="store_true", help="Skip the SDP bound")

    def run(self, args: argparse.Namespace) -> int:
        gamma = self.load_covariance(args.file)
        report = bounds(gamma, self.options, with_sdp=not args.no_sdp)
        self.emit(key_value_table([
            ("spectral_lower", report.spectral_lower),
            ("spectral_upper", report.spectral_upper),
            ("williamson_lower", report.williamson_lower),
            ("williamson_upper", report.williamson_upper),
            ("sdp_lower", report.sdp_lower),
            ("best_lower", report.best_lower),
            ("best_upper", report.best_upper),
            ("single_quadrature", minimal_eigenvalue_squeezing(gamma)),
            ("lower_attained", str(achieves_lower_check(gamma)).lower()),
        ]))
        return EXIT_OK

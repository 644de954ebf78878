#!filepath squeezing_measure/commands/sweep_command.py
import argparse
import logging
from typing import List

from ..sweep import MistaSweep, SWEEP_COLUMNS, grid_points, summarize
from ..utils.report_utils import frame_table, key_value_table
from .base_command import BaseCommand, EXIT_OK, EXIT_SOLVER_FAILURE

logger = logging.getLogger(__name__)


class SweepCommand(BaseCommand):
    """Sweep the three-mode family at the separability threshold and write a CSV"""

    @classmethod
    def get_names(cls) -> List[str]:
        return ["sweep-mista"]

    @classmethod
    def add_arguments(cls, parser: argparse.ArgumentParser) -> None:
        parser.add_argument("--imax", type=int, default=30, help="Largest i index (d offset)")
        parser.add_argument("--jmax", type=int, default=30, help="Largest j index (r offset)")
        parser.add_argument("--stride", type=int, default=1, help="Take every stride-th index")
        parser.add_argument("--out", default="mista_sweep.csv", help="CSV output path")
        parser.add_argument("--with-sdp", action="store_true", help="Include the SDP bound in the lower column")

    def run(self, args: argparse.Namespace) -> int:
        points = grid_points(args.imax, args.jmax, args.stride)
        MistaSweep.check_output_path(args.out)
        sweep = MistaSweep(self.options, status_callback=logger.info, with_sdp=args.with_sdp)
        frame = sweep.run(points)
        sweep.write_csv(frame, args.out)

        self.emit(frame_table(SWEEP_COLUMNS, frame[SWEEP_COLUMNS].itertuples(index=False)))
        summary = summarize(frame)
        self.emit()
        self.emit(key_value_table(list(summary.items()) + [("csv", args.out)]))

        if (frame["status"] != "converged").any():
            return EXIT_SOLVER_FAILURE
        return EXIT_OK

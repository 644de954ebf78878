#!filepath squeezing_measure/commands/decompose_command.py
import argparse
from typing import List

import numpy as np

from ..symplectic import Basis, euler, permute_basis, williamson
from ..utils.matrix_io import read_raw_matrix_file
from ..utils.report_utils import format_value, matrix_table
from .base_command import BaseCommand, EXIT_OK


class DecomposeCommand(BaseCommand):
    """Show the Williamson form of a covariance matrix or the Euler form of a symplectic matrix"""

    @classmethod
    def get_names(cls) -> List[str]:
        return ["decompose"]

    @classmethod
    def add_arguments(cls, parser: argparse.ArgumentParser) -> None:
        parser.add_argument("file", help="Matrix file")
        parser.add_argument("--which", choices=["williamson", "euler"], default="williamson",
                            help="Decomposition to compute")

    def run(self, args: argparse.Namespace) -> int:
        if args.which == "euler":
            return self._euler(args.file)
        return self._williamson(args.file)

    def _williamson(self, path: str) -> int:
        gamma = self.load_covariance(path)
        form = williamson(gamma)
        self.emit("Williamson form gamma = S^T D S (J basis)")
        self.emit(f"symplectic eigenvalues: {' '.join(format_value(d) for d in form.spectrum)}")
        self.emit("S =")
        self.emit(matrix_table(form.S))
        self.emit(f"reconstruction residual: {format_value(form.residual(gamma), 3)}")
        return EXIT_OK

    def _euler(self, path: str) -> int:
        matrix, basis = read_raw_matrix_file(path)
        S = permute_basis(matrix, basis, Basis.J)
        form = euler(S)
        residual = float(np.max(np.abs(form.reconstruct() - S)))
        self.emit("Euler form S = K Z K' (J basis)")
        self.emit(f"squeezing parameters: {' '.join(format_value(s) for s in form.squeeze_params)}")
        self.emit("K =")
        self.emit(matrix_table(form.K))
        self.emit("K' =")
        self.emit(matrix_table(form.K_prime))
        self.emit(f"reconstruction residual: {format_value(residual, 3)}")
        return EXIT_OK

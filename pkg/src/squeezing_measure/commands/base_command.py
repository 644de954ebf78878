#!filepath squeezing_measure/commands/base_command.py
import argparse
import logging
import sys
from typing import List, Optional, TextIO

from ..config import SolveOptions
from ..errors import MatrixParseError, SqueezingError
from ..symplectic import CovarianceMatrix
from ..utils.matrix_io import read_matrix_file

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_PARSE_ERROR = 1
EXIT_INVALID_INPUT = 2
EXIT_SOLVER_FAILURE = 3


class BaseCommand:
    """Base class for command-line sub-commands"""

    def __init__(self, options: SolveOptions, out: Optional[TextIO] = None) -> None:
        """
        Initialize the command with solver options

        Args:
            options: Solver options shared by all sub-commands
            out: Stream for the report, stdout by default
        """
        self.options: SolveOptions = options
        self.out: TextIO = out if out is not None else sys.stdout

    @classmethod
    def get_names(cls) -> List[str]:
        """
        Get the sub-command names handled by this command.
        Override in subclasses.

        Returns:
            List[str]: Sub-command names (e.g., ['measure'])
        """
        return []

    @classmethod
    def help_text(cls) -> str:
        doc = (cls.__doc__ or "").strip()
        return doc.splitlines()[0] if doc else ""

    @classmethod
    def add_arguments(cls, parser: argparse.ArgumentParser) -> None:
        """Add sub-command specific arguments. Override in subclasses."""

    def run(self, args: argparse.Namespace) -> int:
        """
        Run the command and return its exit code

        Args:
            args: Parsed command-line arguments
        """
        raise NotImplementedError("Subclasses must implement the run method")

    def execute(self, args: argparse.Namespace) -> int:
        """
        Run the command with standardized error handling

        Parse errors give exit code 1, other input errors 2 and anything
        unexpected 3.
        """
        try:
            return self.run(args)
        except MatrixParseError as e:
            logger.error(f"Could not parse input: {e}")
            print(f"error: {e}", file=sys.stderr)
            return EXIT_PARSE_ERROR
        except (SqueezingError, ValueError, OSError) as e:
            logger.error(f"Invalid input: {e}")
            print(f"error: {e}", file=sys.stderr)
            return EXIT_INVALID_INPUT
        except Exception as e:
            logger.error(f"Command failed: {e}", exc_info=True)
            print(f"error: {e}", file=sys.stderr)
            return EXIT_SOLVER_FAILURE

    def load_covariance(self, path: str) -> CovarianceMatrix:
        return read_matrix_file(path)

    def emit(self, text: str = "") -> None:
        print(text, file=self.out)

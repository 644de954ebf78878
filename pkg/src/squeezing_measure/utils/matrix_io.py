#!filepath squeezing_measure/utils/matrix_io.py
"""
Plain-text matrix files.

    # optional comments
    n 2 basis sigma
    <4 rows of 4 numbers>

'#' starts a comment anywhere on a line; blank lines are ignored.
"""
import logging
import os
from typing import List, Tuple, Union

import numpy as np

from ..errors import MatrixParseError
from ..symplectic import Basis, CovarianceMatrix

logger = logging.getLogger(__name__)

FILE_SYM_TOL = 1e-8


def _content_lines(text: str) -> List[str]:
    lines = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if line:
            lines.append(line)
    return lines


def parse_matrix_text(text: str, sym_tol: float = FILE_SYM_TOL) -> CovarianceMatrix:
    """
    Parse the matrix file format into a covariance matrix

    Args:
        text (str): File contents
        sym_tol (float): Allowed relative asymmetry before symmetrization

    Returns:
        CovarianceMatrix: Matrix in the basis named by the header

    Raises:
        MatrixParseError: On a malformed header, row count or entry
        NotSymmetricError: If the parsed matrix is not symmetric
    """
    matrix, basis = parse_raw_matrix(text)
    return CovarianceMatrix.from_array(matrix, basis, sym_tol=sym_tol)


def parse_raw_matrix(text: str) -> Tuple[np.ndarray, Basis]:
    """
    Parse the matrix file format without any symmetry requirement

    Raises:
        MatrixParseError: On a malformed header, row count or entry
    """
    lines = _content_lines(text)
    if not lines:
        raise MatrixParseError("Matrix file is empty")

    header = lines[0].split()
    if len(header) != 4 or header[0] != "n" or header[2] != "basis":
        raise MatrixParseError(f"Bad header '{lines[0]}', expected 'n <int> basis <sigma|J>'")
    try:
        n = int(header[1])
    except ValueError as e:
        raise MatrixParseError(f"Mode count '{header[1]}' is not an integer") from e
    if n < 1:
        raise MatrixParseError(f"Mode count must be at least 1, got {n}")
    try:
        basis = Basis.parse(header[3])
    except ValueError as e:
        raise MatrixParseError(str(e)) from e

    rows = lines[1:]
    if len(rows) != 2 * n:
        raise MatrixParseError(f"Expected {2 * n} rows for n={n}, found {len(rows)}")
    values = []
    for k, row in enumerate(rows, start=1):
        fields = row.split()
        if len(fields) != 2 * n:
            raise MatrixParseError(f"Row {k} has {len(fields)} entries, expected {2 * n}")
        try:
            values.append([float(v) for v in fields])
        except ValueError as e:
            raise MatrixParseError(f"Row {k} contains a non-numeric entry: {e}") from e
    matrix = np.array(values)
    if not np.all(np.isfinite(matrix)):
        raise MatrixParseError("Matrix contains non-finite entries")
    return matrix, basis


def _read_text(path: str) -> str:
    try:
        with open(path, "r", encoding="utf-8") as f:
            text = f.read()
    except OSError as e:
        raise MatrixParseError(f"Cannot read matrix file {path}: {e}") from e
    logger.info(f"Reading matrix file: {path}")
    return text


def read_matrix_file(path: str) -> CovarianceMatrix:
    """
    Read a covariance matrix file

    Raises:
        MatrixParseError: If the file cannot be read or parsed
        NotSymmetricError: If the matrix is not symmetric
    """
    return parse_matrix_text(_read_text(path))


def read_raw_matrix_file(path: str) -> Tuple[np.ndarray, Basis]:
    """Read a matrix file that need not be symmetric, e.g. a symplectic matrix"""
    return parse_raw_matrix(_read_text(path))


def format_matrix_text(matrix, basis: Union[str, Basis] = Basis.J) -> str:
    """Render a matrix in the file format, full double precision"""
    M = np.asarray(matrix, dtype=float)
    basis = Basis.parse(basis)
    lines = [f"n {M.shape[0] // 2} basis {basis.value}"]
    for row in M:
        lines.append(" ".join(f"{v:.17g}" for v in row))
    return "\n".join(lines) + "\n"


def write_matrix_file(path: str, matrix, basis: Union[str, Basis] = Basis.J) -> bool:
    """
    Write a matrix file, creating parent directories

    Returns:
        bool: True on success
    """
    try:
        parent = os.path.dirname(path)
        if parent:
            os.makedirs(parent, exist_ok=True)
        with open(path, "w", encoding="utf-8") as f:
            f.write(format_matrix_text(matrix, basis))
        return True
    except OSError as e:
        logger.error(f"Failed to write matrix file {path}: {e}")
        return False

#!filepath squeezing_measure/__init__.py
from .config import SolveOptions
from .errors import SqueezingError
from .symplectic import Basis, CovarianceMatrix, williamson, euler, symplectic_eigenvalues, is_valid_covariance
from .measure import bounds, G_exact_n1, G_exact_pure
from .solver import minimize_G, SolveResult, SolveStatus
from .gaussian_ops import mista_korolkova, x_sep

__all__ = [
    'SolveOptions', 'SqueezingError',
    'Basis', 'CovarianceMatrix', 'williamson', 'euler', 'symplectic_eigenvalues', 'is_valid_covariance',
    'bounds', 'G_exact_n1', 'G_exact_pure',
    'minimize_G', 'SolveResult', 'SolveStatus',
    'mista_korolkova', 'x_sep',
]

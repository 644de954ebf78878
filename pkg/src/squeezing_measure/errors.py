#!filepath squeezing_measure/errors.py


class SqueezingError(Exception):
    """Base class for all errors raised by the squeezing_measure package"""


class DimensionError(SqueezingError, ValueError):
    """Matrix or vector has the wrong shape, or a mode index is out of range"""


class NotSymmetricError(SqueezingError, ValueError):
    """Matrix is not symmetric within tolerance"""


class NotPositiveDefiniteError(SqueezingError, ValueError):
    """Matrix is not positive definite"""


class InvalidCovarianceError(SqueezingError, ValueError):
    """Matrix violates the uncertainty relation (a symplectic eigenvalue is below one)"""


class NotSymplecticError(SqueezingError, ValueError):
    """Matrix does not preserve the symplectic form"""


class OutsideDomainError(SqueezingError, ValueError):
    """Point lies outside the Cayley domain, or the Cayley transform is singular there"""


class NotPureError(SqueezingError, ValueError):
    """Covariance matrix does not describe a pure state"""


class MatrixParseError(SqueezingError):
    """Matrix file could not be parsed"""


class InactiveConstraintError(SqueezingError, ValueError):
    """Constraint subgradient requested at a feasible point"""


class BasisMismatchError(SqueezingError, ValueError):
    """Operands are written in different bases"""


class ParameterDomainError(SqueezingError, ValueError):
    """State or measurement parameter outside its allowed range"""

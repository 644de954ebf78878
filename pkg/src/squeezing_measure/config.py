#!filepath squeezing_measure/config.py
from typing import Dict, Any, Optional

# Numerical tolerances shared across the package
SYM_TOL: float = 1e-10
RECON_TOL: float = 1e-8
VALIDITY_TOL: float = 1e-9
STRUCT_TOL: float = 1e-9
EIG_TOL: float = 1e-12
PURE_TOL: float = 1e-8
IN_H_MARGIN: float = 1e-12
PINV_RCOND: float = 1e-12
SENTINEL_FACTOR: float = 1e7

GRADIENT_MODES = ("analytic", "numeric", "hybrid")
SDP_METHODS = ("auto", "cvxpy", "subgradient")


class SolveOptions:
    """Configuration for the penalty-subgradient solver"""

    def __init__(self, config_dict: Optional[Dict[str, Any]] = None) -> None:
        """
        Initialize options with default values or from provided dictionary

        Args:
            config_dict (dict, optional): Dictionary of option values

        Raises:
            ValueError: If an option is out of range
        """
        config_dict = config_dict or {}
        # Stopping tolerances
        self.step_tol: float = float(config_dict.get("step_tol", 1e-6))
        self.f_tol: float = float(config_dict.get("f_tol", 1e-8))
        self.constraint_tol: float = float(config_dict.get("constraint_tol", 1e-8))
        self.max_iter: int = int(config_dict.get("max_iter", 20000))

        # Subgradients and penalty
        self.gradient_mode: str = str(config_dict.get("gradient_mode", "analytic")).lower()
        self.penalty_growth: float = float(config_dict.get("penalty_growth", 10.0))
        self.max_penalty_rounds: int = int(config_dict.get("max_penalty_rounds", 8))
        self.fd_step: float = float(config_dict.get("fd_step", 1e-7))

        # r-algorithm
        self.dilation: float = float(config_dict.get("dilation", 3.0))
        self.initial_step: float = float(config_dict.get("initial_step", 0.1))

        # Bounds and sweeps
        self.sdp_method: str = str(config_dict.get("sdp_method", "auto")).lower()
        self.seed: int = int(config_dict.get("seed", 0))
        self.workers: int = int(config_dict.get("workers", 1))

        self._validate()

    def _validate(self) -> None:
        """Reject options the solver cannot work with"""
        for key in ("step_tol", "f_tol", "constraint_tol", "fd_step", "initial_step"):
            if not getattr(self, key) > 0:
                raise ValueError(f"Option {key} must be positive, got {getattr(self, key)}")
        if self.max_iter < 1:
            raise ValueError(f"Option max_iter must be at least 1, got {self.max_iter}")
        if self.max_penalty_rounds < 1:
            raise ValueError(f"Option max_penalty_rounds must be at least 1, got {self.max_penalty_rounds}")
        if not self.penalty_growth > 1:
            raise ValueError(f"Option penalty_growth must exceed 1, got {self.penalty_growth}")
        if not self.dilation > 1:
            raise ValueError(f"Option dilation must exceed 1, got {self.dilation}")
        if self.gradient_mode not in GRADIENT_MODES:
            raise ValueError(f"Unknown gradient_mode '{self.gradient_mode}', expected one of {GRADIENT_MODES}")
        if self.sdp_method not in SDP_METHODS:
            raise ValueError(f"Unknown sdp_method '{self.sdp_method}', expected one of {SDP_METHODS}")
        if self.workers < 1:
            raise ValueError(f"Option workers must be at least 1, got {self.workers}")

    def to_dict(self) -> Dict[str, Any]:
        """Convert options to dictionary"""
        return {
            "step_tol": self.step_tol,
            "f_tol": self.f_tol,
            "constraint_tol": self.constraint_tol,
            "max_iter": self.max_iter,
            "gradient_mode": self.gradient_mode,
            "penalty_growth": self.penalty_growth,
            "max_penalty_rounds": self.max_penalty_rounds,
            "fd_step": self.fd_step,
            "dilation": self.dilation,
            "initial_step": self.initial_step,
            "sdp_method": self.sdp_method,
            "seed": self.seed,
            "workers": self.workers
        }

    @classmethod
    def from_dict(cls, config_dict: Dict[str, Any]) -> 'SolveOptions':
        """Create options from dictionary"""
        return cls(config_dict)

    def replace(self, **changes: Any) -> 'SolveOptions':
        """Return a copy with some options changed"""
        values = self.to_dict()
        values.update(changes)
        return SolveOptions(values)

    def get(self, key: str, default: Any = None) -> Any:
        """Get option value by key"""
        return getattr(self, key, default)

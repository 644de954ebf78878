#!filepath squeezing_measure/sweep.py
import logging
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass
from typing import Any, Callable, Dict, List, Optional, Union

import numpy as np
import pandas as pd

from .config import SolveOptions
from .gaussian_ops import mista_korolkova, protocol_cost, x_sep
from .measure import bounds
from .solver import minimize_G

logger = logging.getLogger(__name__)

SWEEP_COLUMNS = ["i", "j", "r", "d", "x_sep", "lower", "upper", "value", "prep_error", "cost_2d"]


@dataclass(frozen=True)
class SweepPoint:
    i: int
    j: int
    r: float
    d: float


@dataclass
class SweepRow:
    i: int
    j: int
    r: float
    d: float
    x_sep: float
    lower: float
    upper: float
    value: float
    prep_error: float
    cost_2d: float
    status: str = ""


def grid_points(imax: int = 30, jmax: int = 30, stride: int = 1) -> List[SweepPoint]:
    """
    Grid r = 0.1 + 0.05 j, d = r + 0.03 i with i, j starting at 1

    Raises:
        ValueError: If a bound or the stride is below 1
    """
    if imax < 1 or jmax < 1 or stride < 1:
        raise ValueError(f"Grid bounds and stride must be at least 1, got imax={imax}, jmax={jmax}, stride={stride}")
    points = []
    for i in range(1, imax + 1, stride):
        for j in range(1, jmax + 1, stride):
            r = 0.1 + 0.05 * j
            points.append(SweepPoint(i=i, j=j, r=r, d=r + 0.03 * i))
    return points


class MistaSweep:
    """Runs the solver over the three-mode family at the separability threshold"""

    def __init__(self, options: Optional[Union[Dict[str, Any], SolveOptions]] = None,
                 status_callback: Optional[Callable[[str], None]] = None,
                 progress_callback: Optional[Callable[[float], None]] = None,
                 with_sdp: bool = False) -> None:
        """
        Initialize the sweep

        Args:
            options (dict or SolveOptions, optional): Solver options; workers sets the thread count
            status_callback (callable, optional): Function to call with status updates
            progress_callback (callable, optional): Function to call with progress in percent
            with_sdp (bool): Include the SDP bound in the lower column
        """
        self.options = options if isinstance(options, SolveOptions) else SolveOptions(options)
        self.status_callback = status_callback
        self.progress_callback = progress_callback
        self.with_sdp = with_sdp

    def _update_status(self, message: str) -> None:
        """Update status via callback if available"""
        if self.status_callback:
            self.status_callback(message)

    def _update_progress(self, value: float) -> None:
        """Update progress via callback if available"""
        if self.progress_callback:
            self.progress_callback(value)

    def evaluate_point(self, point: SweepPoint) -> SweepRow:
        """Bounds, solver value and preparation error for one grid point"""
        x = x_sep(point.r, point.d)
        gamma = mista_korolkova(point.r, point.d, x)
        result = minimize_G(gamma, self.options)
        report = result.bounds
        if self.with_sdp or report is None:
            report = bounds(gamma, self.options, with_sdp=self.with_sdp)
        logger.debug(f"Point ({point.i}, {point.j}): value={result.value:.8g}, status={result.status.value}")
        return SweepRow(
            i=point.i, j=point.j, r=point.r, d=point.d, x_sep=x,
            lower=report.best_lower, upper=report.best_upper,
            value=result.value, prep_error=result.prep_error,
            cost_2d=protocol_cost(point.d), status=result.status.value,
        )

    def run(self, points: List[SweepPoint]) -> pd.DataFrame:
        """
        Evaluate all points, concurrently when options.workers > 1

        Returns:
            pd.DataFrame: One row per point in the order of `points`
        """
        total = len(points)
        self._update_status(f"Sweeping {total} grid points with {self.options.workers} worker(s).")
        rows: List[Optional[SweepRow]] = [None] * total

        if self.options.workers == 1:
            for k, point in enumerate(points):
                rows[k] = self.evaluate_point(point)
                self._update_progress((k + 1) / total * 100)
        else:
            with ThreadPoolExecutor(max_workers=self.options.workers) as pool:
                futures = [pool.submit(self.evaluate_point, point) for point in points]
                for k, future in enumerate(futures):
                    rows[k] = future.result()
                    self._update_progress((k + 1) / total * 100)

        failures = sum(1 for row in rows if row.status != "converged")
        if failures:
            logger.warning(f"{failures} of {total} sweep points did not converge")
        self._update_status("Sweep complete.")
        frame = pd.DataFrame([asdict(row) for row in rows])
        return frame if not frame.empty else pd.DataFrame(columns=SWEEP_COLUMNS + ["status"])

    @staticmethod
    def check_output_path(path: str) -> None:
        """
        Fail early when the CSV cannot be written

        Raises:
            OSError: If the target directory is missing or the path is not writable
        """
        directory = os.path.dirname(os.path.abspath(path))
        if not os.path.isdir(directory):
            raise OSError(f"Output directory does not exist: {directory}")
        target = path if os.path.exists(path) else directory
        if os.path.isdir(path) or not os.access(target, os.W_OK):
            raise OSError(f"Cannot write sweep output to {path}")

    @staticmethod
    def write_csv(frame: pd.DataFrame, path: str) -> None:
        """
        Write the sweep columns as CSV

        Raises:
            OSError: If the path cannot be written
        """
        frame[SWEEP_COLUMNS].to_csv(path, index=False, float_format="%.12g")
        logger.info(f"Wrote {len(frame)} sweep rows to {path}")


def summarize(frame: pd.DataFrame, tol: float = 1e-4) -> Dict[str, Any]:
    """Counts used to judge a sweep: sandwich violations, wins over 2d, small prep errors"""
    if frame.empty:
        return {"points": 0, "sandwich_violations": 0, "below_cost": 0, "small_prep_error": 0}
    sandwich = (frame["lower"] <= frame["value"] + tol) & (frame["value"] <= frame["cost_2d"] + tol)
    return {
        "points": int(len(frame)),
        "sandwich_violations": int((~sandwich).sum()),
        "below_cost": int((frame["value"] < frame["cost_2d"]).sum()),
        "small_prep_error": int((frame["prep_error"] <= 1e-6).sum()),
        "max_prep_error": float(np.max(frame["prep_error"])),
    }

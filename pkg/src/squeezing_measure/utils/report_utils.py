#!filepath squeezing_measure/utils/report_utils.py
import json
import logging
from typing import Any, Dict, Iterable, Optional, Sequence, Tuple

import numpy as np
from tabulate import tabulate

logger = logging.getLogger(__name__)


def format_value(value: Optional[float], digits: int = 10) -> str:
    if value is None:
        return "unavailable"
    return f"{value:.{digits}g}"


def key_value_table(rows: Iterable[Tuple[str, Any]]) -> str:
    """Two-column plain table of labelled values"""
    body = [(label, format_value(v) if isinstance(v, (float, np.floating)) or v is None else v)
            for label, v in rows]
    return tabulate(body, tablefmt="plain", disable_numparse=True)


def matrix_table(matrix: np.ndarray, digits: int = 8) -> str:
    return tabulate(np.asarray(matrix), tablefmt="plain", floatfmt=f".{digits}g")


def frame_table(columns: Sequence[str], records: Iterable[Sequence[Any]]) -> str:
    return tabulate(list(records), headers=list(columns), tablefmt="github", floatfmt=".6g")


def save_json(data: Dict[str, Any], filepath: str) -> bool:
    """
    Save a report dictionary as JSON

    Returns:
        bool: True if the file was written
    """
    try:
        with open(filepath, "w", encoding="utf-8") as f:
            json.dump(data, f, indent=4, default=_json_default)
        return True
    except (OSError, TypeError) as e:
        logger.error(f"Failed to save report {filepath}: {e}")
        return False


def _json_default(obj: Any) -> Any:
    if isinstance(obj, np.ndarray):
        return obj.tolist()
    if isinstance(obj, (np.floating, np.integer)):
        return obj.item()
    raise TypeError(f"Object of type {type(obj).__name__} is not JSON serializable")

"""
JSON and CSV report emission.
"""

import json
import logging
from pathlib import Path
from typing import Any, Dict, List, Optional, Union

import numpy as np
import pandas as pd

from .config import RunConfig
from .hash_manager import HashManager, config_hash, strip_volatile

# Configure logging
logger = logging.getLogger(__name__)

FLOAT_FORMAT = '%.12g'


def to_jsonable(obj: Any) -> Any:
    """Convert numpy values and matrices to plain JSON types."""
    if isinstance(obj, dict):
        return {str(k): to_jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [to_jsonable(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return to_jsonable(obj.tolist())
    if isinstance(obj, (np.integer,)):
        return int(obj)
    if isinstance(obj, (np.floating,)):
        return to_jsonable(float(obj))
    if isinstance(obj, (np.bool_,)):
        return bool(obj)
    if isinstance(obj, float):
        if np.isnan(obj):
            return "nan"
        if np.isinf(obj):
            return "inf" if obj > 0 else "-inf"
        return obj
    if isinstance(obj, Path):
        return str(obj)
    return obj


def matrix_row_major(m: np.ndarray) -> List[float]:
    """Row-major flattening used for matrices in reports and tables."""
    return [float(v) for v in np.asarray(m, dtype=float).ravel(order='C')]


class ReportWriter:
    """Writes reports stamped with the config hash, seed and tolerances."""

    def __init__(self, config: RunConfig):
        self.config = config
        self.config.ensure_directories()
        self.hashes = HashManager(config.cache_path)
        self.config_hash = config_hash(config.to_dict(include_volatile=False))

    def stamp(self, payload: Dict[str, Any]) -> Dict[str, Any]:
        return {
            "config_hash": self.config_hash,
            "seed": self.config.seed,
            "tolerances": self.config.tolerances.to_dict(),
            **payload,
        }

    def write_json(self, name: str, payload: Dict[str, Any]) -> Path:
        """Write a stamped JSON report; volatile fields are removed."""
        document = strip_volatile(to_jsonable(self.stamp(payload)))
        path = self.config.reports_path / f"{name}.json"
        with open(path, 'w') as f:
            json.dump(document, f, indent=2, sort_keys=True)
            f.write('\n')

        if self.hashes.has_changed(name, document, self.config_hash):
            logger.info(f"📁 Wrote report {path}")
        else:
            logger.info(f"♻️  Report {name} unchanged since last run")
        return path

    def write_csv(self, name: str, rows: Union[pd.DataFrame, List[Dict[str, Any]]],
                  columns: Optional[List[str]] = None) -> Path:
        """Write a CSV table with a fixed float format."""
        frame = rows if isinstance(rows, pd.DataFrame) else pd.DataFrame(rows, columns=columns)
        path = self.config.tables_path / f"{name}.csv"
        frame.to_csv(path, index=False, float_format=FLOAT_FORMAT)
        logger.info(f"📁 Wrote table {path} ({len(frame)} rows)")
        return path
